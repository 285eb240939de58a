#pragma once

#include "braidflow/braid.hpp"
#include "braidflow/free_word.hpp"

#include <cstdint>

namespace braidflow {

// Integer 2x2 matrix with overflow-checked arithmetic. Every matrix
// produced by sl2_matrix has determinant 1.
struct IntMatrix2 {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    static IntMatrix2 identity() { return {}; }

    IntMatrix2 operator*(const IntMatrix2& o) const;
    std::int64_t det() const;
    std::int64_t abs_sum() const;
    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
    bool is_minus_identity() const { return a == -1 && b == 0 && c == 0 && d == -1; }
    bool is_pm_identity() const { return is_identity() || is_minus_identity(); }
    // congruent to the identity mod 2 (diagonal odd, off-diagonal even)
    bool is_identity_mod2() const;

    bool operator==(const IntMatrix2&) const = default;
    IntMatrix2 operator-() const { return {-a, -b, -c, -d}; }
};

// Image of a single Artin generator of B_3:
// sigma_1 -> [[1,1],[0,1]], sigma_2 -> [[1,0],[-1,1]].
IntMatrix2 sl2_letter(BraidLetter l);

// Homomorphic image of a 3-strand braid word, letters multiplied left to
// right. Throws on words with n != 3 and on int64 overflow.
IntMatrix2 sl2_matrix(const BraidWord& w);

// x -> X = [[1,2],[0,1]], y -> Y = [[1,0],[-2,1]]; used by round-trip checks.
IntMatrix2 eval_free_word(const FreeWord& w);

// Decompose M in the level-2 congruence subgroup as a word in X, Y up to
// sign: greedy left-multiplication by X^-+1 / Y^-+1, each step strictly
// decreasing the entry magnitude sum, terminating at +-I. Throws if the
// descent gets stuck (input not in the subgroup).
FreeWord sl2_descent(IntMatrix2 m);

// F_2-component of a pure 3-strand braid under P_3 = F_2 x Z(P_3) with
// x = sigma_1^2, y = sigma_2^2. Evaluating the result on X, Y reproduces
// sl2_matrix(w) up to global sign. Processes the word in minimal pure
// prefix chunks so matrix entries stay small on long inputs.
FreeWord p3_to_f2(const BraidWord& w);

} // namespace braidflow
