#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace braidflow {

// Letters of the free group on {x, y}: +1 = x, -1 = x^-1, +2 = y, -2 = y^-1.
// String form uses capitals for inverses: "xYx" = x y^-1 x.
class FreeWord {
public:
    FreeWord() = default;
    explicit FreeWord(std::vector<std::int8_t> letters); // reduces on construction

    static FreeWord parse(std::string_view text);
    static FreeWord x() { return FreeWord({+1}); }
    static FreeWord y() { return FreeWord({+2}); }

    const std::vector<std::int8_t>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    FreeWord operator*(const FreeWord& other) const;
    FreeWord inverse() const;
    FreeWord power(int k) const;
    FreeWord conjugate(const FreeWord& by) const; // by * this * by^-1

    // strip matching first/last letters; result is cyclically reduced
    FreeWord cyclic_reduce() const;
    bool is_cyclically_reduced() const;

    std::string str() const; // "" for the empty word

    bool operator==(const FreeWord&) const = default;

    // append a single letter with free reduction
    void push(std::int8_t letter);

private:
    std::vector<std::int8_t> letters_; // invariant: freely reduced
};

} // namespace braidflow
