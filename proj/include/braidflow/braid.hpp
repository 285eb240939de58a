#pragma once

#include <string>
#include <vector>

namespace braidflow {

// One Artin generator occurrence: sigma_index^sign.
struct BraidLetter {
    int index; // 1 .. strands-1
    int sign;  // +1 or -1

    bool operator==(const BraidLetter&) const = default;
};

inline BraidLetter inverse(BraidLetter l) { return {l.index, -l.sign}; }

// A word in the Artin generators of B_n. Words are kept as free words;
// element-level identities are checked through the (matrix, writhe,
// permutation) invariants rather than a normal form.
class BraidWord {
public:
    explicit BraidWord(int strands);
    BraidWord(int strands, std::vector<BraidLetter> letters);

    static BraidWord identity(int strands) { return BraidWord(strands); }

    int strands() const { return strands_; }
    const std::vector<BraidLetter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    BraidWord& append(BraidLetter l);
    BraidWord& append(const BraidWord& w);

    BraidWord operator*(const BraidWord& other) const;
    BraidWord inverse() const;
    BraidWord power(int k) const;

    bool operator==(const BraidWord&) const = default;

    // serialization: signed generator indices, e.g. "1 2 -1"
    std::string letters_string() const;
    std::vector<int> to_ints() const;
    static BraidWord from_ints(int strands, const std::vector<int>& ints);

private:
    int strands_;
    std::vector<BraidLetter> letters_;
};

// Cancel adjacent inverse pairs until none remain. Idempotent; preserves
// the braid group element.
BraidWord free_reduce(const BraidWord& w);

// Underlying permutation: sigma_i acts as the transposition of positions
// i, i+1, letters applied left to right. Returned 1-based: result[k] is
// the strand occupying position k+1 at the end.
std::vector<int> permutation(const BraidWord& w);

bool is_pure(const BraidWord& w);

// exponent sum; invariant under free reduction and braid relations
int writhe(const BraidWord& w);

// Pure braid in which strand i makes one full positive loop around
// strands 1..i-1: the product A_{1,i} ... A_{i-1,i} with
// A_{j,i} = (s_{i-1} ... s_{j+1}) s_j^2 (s_{j+1}^-1 ... s_{i-1}^-1).
BraidWord eta(int i, int n);

// (s_1 s_2 ... s_{n-1})^n, the generator of the center for n = 3.
BraidWord full_twist(int n);

} // namespace braidflow
