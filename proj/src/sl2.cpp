#include "braidflow/sl2.hpp"

#include <array>
#include <cstdlib>
#include <stdexcept>

namespace braidflow {

namespace {

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r))
        throw std::overflow_error("IntMatrix2 entry overflow");
    return r;
}

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r))
        throw std::overflow_error("IntMatrix2 entry overflow");
    return r;
}

std::int64_t checked_abs(std::int64_t x) {
    if (x == INT64_MIN) throw std::overflow_error("IntMatrix2 entry overflow");
    return x < 0 ? -x : x;
}

const IntMatrix2 kX{1, 2, 0, 1};
const IntMatrix2 kXInv{1, -2, 0, 1};
const IntMatrix2 kY{1, 0, -2, 1};
const IntMatrix2 kYInv{1, 0, 2, 1};

} // namespace

IntMatrix2 IntMatrix2::operator*(const IntMatrix2& o) const {
    return {checked_add(checked_mul(a, o.a), checked_mul(b, o.c)),
            checked_add(checked_mul(a, o.b), checked_mul(b, o.d)),
            checked_add(checked_mul(c, o.a), checked_mul(d, o.c)),
            checked_add(checked_mul(c, o.b), checked_mul(d, o.d))};
}

std::int64_t IntMatrix2::det() const {
    return checked_add(checked_mul(a, d), -checked_mul(b, c));
}

std::int64_t IntMatrix2::abs_sum() const {
    return checked_add(checked_add(checked_abs(a), checked_abs(b)),
                       checked_add(checked_abs(c), checked_abs(d)));
}

bool IntMatrix2::is_identity_mod2() const {
    return (a & 1) && (d & 1) && !(b & 1) && !(c & 1);
}

IntMatrix2 sl2_letter(BraidLetter l) {
    if (l.index == 1) return l.sign > 0 ? IntMatrix2{1, 1, 0, 1} : IntMatrix2{1, -1, 0, 1};
    if (l.index == 2) return l.sign > 0 ? IntMatrix2{1, 0, -1, 1} : IntMatrix2{1, 0, 1, 1};
    throw std::invalid_argument("sl2_letter is defined for 3-strand braids only");
}

IntMatrix2 sl2_matrix(const BraidWord& w) {
    if (w.strands() != 3)
        throw std::invalid_argument("sl2_matrix requires a 3-strand braid word");
    IntMatrix2 m;
    for (const auto& l : w.letters()) m = m * sl2_letter(l);
    return m;
}

IntMatrix2 eval_free_word(const FreeWord& w) {
    IntMatrix2 m;
    for (std::int8_t l : w.letters()) {
        switch (l) {
            case +1: m = m * kX; break;
            case -1: m = m * kXInv; break;
            case +2: m = m * kY; break;
            case -2: m = m * kYInv; break;
        }
    }
    return m;
}

FreeWord sl2_descent(IntMatrix2 m) {
    if (!m.is_identity_mod2())
        throw std::invalid_argument("sl2_descent: matrix not congruent to I mod 2");

    // candidate left-multipliers and the output letter each one records
    struct Step {
        const IntMatrix2* mult;
        std::int8_t letter; // inverse of the multiplier
    };
    static const std::array<Step, 4> kSteps = {{
        {&kXInv, +1},
        {&kX, -1},
        {&kYInv, +2},
        {&kY, -2},
    }};

    FreeWord out;
    while (!m.is_pm_identity()) {
        const std::int64_t current = m.abs_sum();
        const Step* best = nullptr;
        IntMatrix2 best_m;
        std::int64_t best_sum = current;
        for (const auto& step : kSteps) {
            const IntMatrix2 cand = *step.mult * m;
            const std::int64_t s = cand.abs_sum();
            if (s < best_sum) {
                best_sum = s;
                best = &step;
                best_m = cand;
            }
        }
        if (best == nullptr)
            throw std::runtime_error(
                "sl2_descent stuck: input is not a pure 3-braid image (or corrupted word)");
        m = best_m;
        out.push(best->letter);
    }
    return out;
}

FreeWord p3_to_f2(const BraidWord& w) {
    if (w.strands() != 3)
        throw std::invalid_argument("p3_to_f2 requires a 3-strand braid word");
    if (!is_pure(w))
        throw std::invalid_argument("p3_to_f2 requires a pure braid word");

    // The prefix is pure exactly when the accumulated matrix is congruent
    // to I mod 2; descend chunkwise so entries never grow with word length.
    FreeWord out;
    IntMatrix2 m;
    for (const auto& l : w.letters()) {
        m = m * sl2_letter(l);
        if (m.is_identity_mod2()) {
            const FreeWord chunk = sl2_descent(m);
            for (std::int8_t c : chunk.letters()) out.push(c);
            m = IntMatrix2::identity();
        }
    }
    if (!m.is_pm_identity())
        throw std::runtime_error("p3_to_f2: residual non-pure chunk");
    return out;
}

} // namespace braidflow
