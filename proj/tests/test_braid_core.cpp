#include "braidflow/braid.hpp"
#include "braidflow/brooks.hpp"
#include "braidflow/free_word.hpp"
#include "braidflow/rng.hpp"
#include "braidflow/sl2.hpp"

#include "doctest.h"

#include <algorithm>

using namespace braidflow;

namespace {

BraidWord word3(std::initializer_list<int> ints) {
    return BraidWord::from_ints(3, std::vector<int>(ints));
}

BraidWord random_word(Rng& rng, int strands, int length) {
    BraidWord w(strands);
    for (int i = 0; i < length; ++i) {
        const int index = 1 + static_cast<int>(rng.uniform_index(strands - 1));
        const int sign = rng.uniform() < 0.5 ? 1 : -1;
        w.append({index, sign});
    }
    return w;
}

BraidWord random_pure_word(Rng& rng, int max_length) {
    for (;;) {
        const int length = 2 + 2 * static_cast<int>(rng.uniform_index(max_length / 2));
        const BraidWord w = random_word(rng, 3, length);
        if (is_pure(w)) return w;
    }
}

FreeWord random_free_word(Rng& rng, int length) {
    FreeWord w;
    static const std::int8_t alphabet[4] = {+1, -1, +2, -2};
    for (int i = 0; i < length; ++i) w.push(alphabet[rng.uniform_index(4)]);
    return w;
}

} // namespace

TEST_CASE("free_reduce: examples and idempotence") {
    CHECK(free_reduce(word3({1, -1})).empty());
    CHECK(free_reduce(word3({1, 2, -2, 1})) == word3({1, 1}));
    CHECK(free_reduce(word3({1, 2})) == word3({1, 2}));

    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        const BraidWord w = random_word(rng, 3, 40);
        const BraidWord r = free_reduce(w);
        CHECK(free_reduce(r) == r);
        CHECK(permutation(r) == permutation(w));
        CHECK(writhe(r) == writhe(w));
        CHECK(sl2_matrix(r) == sl2_matrix(w));
    }
}

TEST_CASE("permutation and purity") {
    CHECK(permutation(word3({1})) == std::vector<int>{2, 1, 3});
    CHECK(is_pure(word3({1, 1})));
    CHECK(is_pure(word3({1, 2, 1, 2, 1, 2}))); // (s1 s2)^3
    CHECK_FALSE(is_pure(word3({1, 2})));
}

TEST_CASE("writhe") {
    CHECK(writhe(BraidWord(3)) == 0);
    CHECK(writhe(word3({1, 1})) == 2);
    CHECK(writhe(eta(2, 3) * eta(3, 3)) == 6);
}

TEST_CASE("eta words") {
    CHECK(eta(2, 3) == word3({1, 1}));
    CHECK(eta(3, 3) == word3({2, 1, 1, -2, 2, 2}));
    CHECK_THROWS(eta(1, 3));
    CHECK_THROWS(eta(4, 3));
    // one loop of strand i around the earlier strands: writhe 2(i-1), pure
    const BraidWord e44 = eta(4, 4);
    CHECK(writhe(e44) == 6);
    CHECK(is_pure(e44));
}

TEST_CASE("full twist") {
    CHECK(full_twist(2) == BraidWord::from_ints(2, {1, 1}));
    CHECK(is_pure(full_twist(3)));
    CHECK_THROWS(full_twist(1));
}

TEST_CASE("sl2 representation") {
    const IntMatrix2 s1 = sl2_matrix(word3({1}));
    CHECK(s1 == IntMatrix2{1, 1, 0, 1});
    CHECK(sl2_matrix(word3({1, 1})) == IntMatrix2{1, 2, 0, 1});
    CHECK(sl2_matrix(word3({1, 2, 1, 2, 1, 2})) == IntMatrix2{-1, 0, 0, -1});
    // braid relation
    CHECK(sl2_matrix(word3({1, 2, 1})) == sl2_matrix(word3({2, 1, 2})));
    CHECK_THROWS(sl2_matrix(BraidWord::from_ints(4, {1, 3})));

    Rng rng(23);
    for (int t = 0; t < 100; ++t)
        CHECK(sl2_matrix(random_word(rng, 3, 30)).det() == 1);
}

TEST_CASE("center identity: eta(2,3)*eta(3,3) equals the full twist") {
    const BraidWord delta = eta(2, 3) * eta(3, 3);
    const BraidWord ft = full_twist(3);
    CHECK(sl2_matrix(delta) == IntMatrix2{-1, 0, 0, -1});
    CHECK(sl2_matrix(delta) == sl2_matrix(ft));
    CHECK(writhe(delta) == writhe(ft));
    CHECK(permutation(delta) == permutation(ft));
}

TEST_CASE("p3_to_f2: pinned values") {
    CHECK(p3_to_f2(word3({1, 1})) == FreeWord::parse("x"));
    CHECK(p3_to_f2(word3({2, 2})) == FreeWord::parse("y"));
    CHECK(sl2_matrix(eta(3, 3)) == IntMatrix2{-1, 2, 0, -1});
    CHECK(p3_to_f2(eta(3, 3)) == FreeWord::parse("X"));
    CHECK(p3_to_f2(full_twist(3)).empty());
    CHECK_THROWS(p3_to_f2(word3({1, 2})));
}

TEST_CASE("p3_to_f2: round-trip on random pure words") {
    Rng rng(37);
    for (int t = 0; t < 300; ++t) {
        const BraidWord w = random_pure_word(rng, 40);
        const IntMatrix2 m = sl2_matrix(w);
        const IntMatrix2 image = eval_free_word(p3_to_f2(w));
        const bool match = (image == m) || (image == -m);
        CHECK(match);
    }
}

TEST_CASE("brooks_count: examples") {
    const BrooksQM q = BrooksQM::from_string("xy");
    CHECK(brooks_count(q, FreeWord::parse("xyxy")) == 2);
    CHECK(brooks_count(q, FreeWord::parse("xxxxx")) == 0);
    CHECK(brooks_count(q, FreeWord::parse("YX")) == -1);
}

TEST_CASE("brooks_hom: examples and exact homogeneity") {
    const BrooksQM q = BrooksQM::from_string("xy");
    CHECK(brooks_hom(q, FreeWord::parse("xy")) == 1);
    CHECK(brooks_hom(q, FreeWord::parse("x")) == 0);
    CHECK(brooks_hom(q, FreeWord::parse("yx")) == 1);

    Rng rng(41);
    for (int t = 0; t < 150; ++t) {
        const FreeWord g = random_free_word(rng, 2 + static_cast<int>(rng.uniform_index(20)));
        const long base = brooks_hom(q, g);
        for (int k = 2; k <= 4; ++k) CHECK(brooks_hom(q, g.power(k)) == k * base);
        CHECK(brooks_hom(q, g.inverse()) == -base);
        const FreeWord h = random_free_word(rng, 10);
        CHECK(brooks_hom(q, g.conjugate(h)) == base);
    }
}

TEST_CASE("brooks_hom agrees with the power-limit oracle") {
    const int p = 64;
    Rng rng(53);
    const BrooksQM patterns[] = {BrooksQM::from_string("xy"), BrooksQM::from_string("xY"),
                                 BrooksQM::from_string("xxy")};
    for (int t = 0; t < 80; ++t) {
        const FreeWord g = random_free_word(rng, 1 + static_cast<int>(rng.uniform_index(30)));
        const FreeWord gp = g.power(p);
        for (const auto& q : patterns) {
            const double limit = static_cast<double>(brooks_count(q, gp)) / p;
            const double hom = static_cast<double>(brooks_hom(q, g));
            CHECK(std::abs(hom - limit) <= 0.125 + 1e-12);
        }
    }
}

TEST_CASE("quasi-morphism defect stays bounded as words grow") {
    const BrooksQM q = BrooksQM::from_string("xy");
    Rng rng(61);
    long max_short = 0, max_long = 0;
    for (int t = 0; t < 400; ++t) {
        const FreeWord g = random_free_word(rng, 50);
        const FreeWord h = random_free_word(rng, 50);
        max_short = std::max(max_short, std::abs(brooks_hom(q, g * h) - brooks_hom(q, g) -
                                                 brooks_hom(q, h)));
    }
    for (int t = 0; t < 400; ++t) {
        const FreeWord g = random_free_word(rng, 200);
        const FreeWord h = random_free_word(rng, 200);
        max_long = std::max(max_long, std::abs(brooks_hom(q, g * h) - brooks_hom(q, g) -
                                               brooks_hom(q, h)));
    }
    CHECK(max_long >= 1);      // a genuine quasi-morphism, not a homomorphism
    CHECK(max_long <= 12);     // defect plateaus: no growth with word length
    CHECK(max_long <= max_short + 3);
}

TEST_CASE("qm_on_braid: vanishing on the eta subgroup") {
    const BrooksQM q = BrooksQM::from_string("xy");
    for (int m = -3; m <= 3; ++m) CHECK(qm_on_braid(q, eta(2, 3).power(m)) == 0);
    CHECK(qm_on_braid(q, word3({1, 1, 2, 2})) == 1);

    const BraidWord delta = full_twist(3);
    const BraidWord conj = delta * word3({1, 1, 2, 2}) * delta.inverse();
    CHECK(qm_on_braid(q, conj) == 1);

    CHECK_THROWS(qm_on_braid(BrooksQM::from_string("xx"), word3({1, 1})));

    Rng rng(71);
    for (int t = 0; t < 60; ++t) {
        const int a = static_cast<int>(rng.uniform_index(9)) - 4;
        const int b = static_cast<int>(rng.uniform_index(9)) - 4;
        CHECK(qm_on_braid(q, eta(2, 3).power(a) * eta(3, 3).power(b)) == 0);
    }
}

TEST_CASE("serialization round-trips") {
    const BraidWord w = word3({1, 2, -1});
    CHECK(w.letters_string() == "1 2 -1");
    CHECK(BraidWord::from_ints(3, w.to_ints()) == w);

    const FreeWord f = FreeWord::parse("xYxx");
    CHECK(f.str() == "xYxx");
    CHECK(FreeWord::parse(f.str()) == f);
    CHECK(FreeWord::parse("xX").empty());
}

TEST_CASE("BraidQM combinations") {
    BraidQM combo;
    combo.add_term(0.5, BrooksQM::from_string("xy"));
    combo.add_term(-1.0, BrooksQM::from_string("xY"));
    const BraidWord w = word3({1, 1, 2, 2});
    CHECK(combo.eval_braid(w) == doctest::Approx(0.5));
    CHECK(combo.eval_free(FreeWord::parse("xY")) == doctest::Approx(-1.0));
}
