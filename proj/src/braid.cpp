#include "braidflow/braid.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace braidflow {

namespace {

void check_letter(int strands, BraidLetter l) {
    if (l.index < 1 || l.index >= strands)
        throw std::invalid_argument("braid letter index out of range for strand count");
    if (l.sign != 1 && l.sign != -1)
        throw std::invalid_argument("braid letter sign must be +1 or -1");
}

} // namespace

BraidWord::BraidWord(int strands) : strands_(strands) {
    if (strands < 2) throw std::invalid_argument("braid word needs at least 2 strands");
}

BraidWord::BraidWord(int strands, std::vector<BraidLetter> letters)
    : strands_(strands), letters_(std::move(letters)) {
    if (strands < 2) throw std::invalid_argument("braid word needs at least 2 strands");
    for (const auto& l : letters_) check_letter(strands_, l);
}

BraidWord& BraidWord::append(BraidLetter l) {
    check_letter(strands_, l);
    letters_.push_back(l);
    return *this;
}

BraidWord& BraidWord::append(const BraidWord& w) {
    if (w.strands_ != strands_)
        throw std::invalid_argument("cannot concatenate braid words with different strand counts");
    letters_.insert(letters_.end(), w.letters_.begin(), w.letters_.end());
    return *this;
}

BraidWord BraidWord::operator*(const BraidWord& other) const {
    BraidWord out = *this;
    out.append(other);
    return out;
}

BraidWord BraidWord::inverse() const {
    BraidWord out(strands_);
    out.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
        out.letters_.push_back(braidflow::inverse(*it));
    return out;
}

BraidWord BraidWord::power(int k) const {
    const BraidWord base = k >= 0 ? *this : inverse();
    const int reps = k >= 0 ? k : -k;
    BraidWord out(strands_);
    for (int i = 0; i < reps; ++i) out.append(base);
    return out;
}

std::string BraidWord::letters_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) os << ' ';
        os << letters_[i].sign * letters_[i].index;
    }
    return os.str();
}

std::vector<int> BraidWord::to_ints() const {
    std::vector<int> out;
    out.reserve(letters_.size());
    for (const auto& l : letters_) out.push_back(l.sign * l.index);
    return out;
}

BraidWord BraidWord::from_ints(int strands, const std::vector<int>& ints) {
    BraidWord out(strands);
    for (int v : ints) {
        if (v == 0) throw std::invalid_argument("braid letter 0 is not a generator");
        out.append(BraidLetter{v > 0 ? v : -v, v > 0 ? 1 : -1});
    }
    return out;
}

BraidWord free_reduce(const BraidWord& w) {
    std::vector<BraidLetter> stack;
    stack.reserve(w.size());
    for (const auto& l : w.letters()) {
        if (!stack.empty() && stack.back().index == l.index && stack.back().sign == -l.sign)
            stack.pop_back();
        else
            stack.push_back(l);
    }
    return BraidWord(w.strands(), std::move(stack));
}

std::vector<int> permutation(const BraidWord& w) {
    std::vector<int> pos(w.strands());
    std::iota(pos.begin(), pos.end(), 1);
    for (const auto& l : w.letters()) std::swap(pos[l.index - 1], pos[l.index]);
    return pos;
}

bool is_pure(const BraidWord& w) {
    const auto p = permutation(w);
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != static_cast<int>(i) + 1) return false;
    return true;
}

int writhe(const BraidWord& w) {
    int sum = 0;
    for (const auto& l : w.letters()) sum += l.sign;
    return sum;
}

BraidWord eta(int i, int n) {
    if (i < 2 || i > n) throw std::invalid_argument("eta(i, n) requires 2 <= i <= n");
    BraidWord out(n);
    for (int j = 1; j < i; ++j) {
        // A_{j,i}
        for (int k = i - 1; k > j; --k) out.append({k, 1});
        out.append({j, 1});
        out.append({j, 1});
        for (int k = j + 1; k <= i - 1; ++k) out.append({k, -1});
    }
    return out;
}

BraidWord full_twist(int n) {
    if (n < 2) throw std::invalid_argument("full_twist requires n >= 2");
    BraidWord out(n);
    for (int rep = 0; rep < n; ++rep)
        for (int k = 1; k < n; ++k) out.append({k, 1});
    return out;
}

} // namespace braidflow
