#pragma once

#include "braidflow/braid.hpp"
#include "braidflow/free_word.hpp"

#include <vector>

namespace braidflow {

// Counting quasi-morphism on F_2 with a fixed non-empty, freely and
// cyclically reduced pattern word.
class BrooksQM {
public:
    explicit BrooksQM(FreeWord pattern);
    static BrooksQM from_string(std::string_view s) { return BrooksQM(FreeWord::parse(s)); }

    const FreeWord& pattern() const { return pattern_; }
    // pattern mentions both x and y (in some powers)
    bool mixed() const;

    bool operator==(const BrooksQM&) const = default;

private:
    FreeWord pattern_;
};

// occurrences of the pattern as a subword of g (all starting positions,
// overlaps counted) minus occurrences of the inverse pattern
long brooks_count(const BrooksQM& q, const FreeWord& g);

// exact homogenization of brooks_count: per-period signed occurrence count
// in the bi-infinite periodic word of the cyclic reduction of g; satisfies
// brooks_hom(q, g^k) = k * brooks_hom(q, g) exactly and is
// conjugation-invariant
long brooks_hom(const BrooksQM& q, const FreeWord& g);

// pull-back to pure 3-strand braids through p3_to_f2; vanishes on the
// abelian subgroup generated by eta(2,3) and eta(3,3). Requires a mixed
// pattern (otherwise the vanishing contract would fail).
long qm_on_braid(const BrooksQM& q, const BraidWord& w);

// Rational combination of Brooks quasi-morphisms, the element type
// produced by dual-basis extraction.
class BraidQM {
public:
    BraidQM() = default;
    BraidQM(double coefficient, BrooksQM q) { terms_.emplace_back(coefficient, std::move(q)); }

    void add_term(double coefficient, BrooksQM q) {
        terms_.emplace_back(coefficient, std::move(q));
    }
    const std::vector<std::pair<double, BrooksQM>>& terms() const { return terms_; }

    double eval_braid(const BraidWord& w) const;
    double eval_free(const FreeWord& g) const;
    std::string describe() const;

private:
    std::vector<std::pair<double, BrooksQM>> terms_;
};

} // namespace braidflow
