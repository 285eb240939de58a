#include "braidflow/free_word.hpp"

#include <stdexcept>

namespace braidflow {

FreeWord::FreeWord(std::vector<std::int8_t> letters) {
    letters_.reserve(letters.size());
    for (std::int8_t l : letters) push(l);
}

void FreeWord::push(std::int8_t letter) {
    if (letter != 1 && letter != -1 && letter != 2 && letter != -2)
        throw std::invalid_argument("free word letter must be one of +-1, +-2");
    if (!letters_.empty() && letters_.back() == -letter)
        letters_.pop_back();
    else
        letters_.push_back(letter);
}

FreeWord FreeWord::parse(std::string_view text) {
    FreeWord out;
    for (char c : text) {
        switch (c) {
            case 'x': out.push(+1); break;
            case 'X': out.push(-1); break;
            case 'y': out.push(+2); break;
            case 'Y': out.push(-2); break;
            case ' ': break;
            default: throw std::invalid_argument(std::string("bad free word character: ") + c);
        }
    }
    return out;
}

FreeWord FreeWord::operator*(const FreeWord& other) const {
    FreeWord out = *this;
    for (std::int8_t l : other.letters_) out.push(l);
    return out;
}

FreeWord FreeWord::inverse() const {
    FreeWord out;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push(-*it);
    return out;
}

FreeWord FreeWord::power(int k) const {
    const FreeWord base = k >= 0 ? *this : inverse();
    const int reps = k >= 0 ? k : -k;
    FreeWord out;
    for (int i = 0; i < reps; ++i) out = out * base;
    return out;
}

FreeWord FreeWord::conjugate(const FreeWord& by) const {
    return by * *this * by.inverse();
}

FreeWord FreeWord::cyclic_reduce() const {
    std::size_t lo = 0, hi = letters_.size();
    while (hi - lo >= 2 && letters_[lo] == -letters_[hi - 1]) {
        ++lo;
        --hi;
    }
    FreeWord out;
    out.letters_.assign(letters_.begin() + lo, letters_.begin() + hi);
    return out;
}

bool FreeWord::is_cyclically_reduced() const {
    if (letters_.size() < 2) return true;
    return letters_.front() != -letters_.back();
}

std::string FreeWord::str() const {
    std::string out;
    out.reserve(letters_.size());
    for (std::int8_t l : letters_) {
        switch (l) {
            case +1: out += 'x'; break;
            case -1: out += 'X'; break;
            case +2: out += 'y'; break;
            case -2: out += 'Y'; break;
        }
    }
    return out;
}

} // namespace braidflow
