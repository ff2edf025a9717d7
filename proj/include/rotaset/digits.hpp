#pragma once

#include "rotaset/interval.hpp"
#include "rotaset/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rotaset {

/// Finite word over the alphabet {0, ..., d-1}; equality is positional,
/// ordering is lexicographic.
struct DigitString {
    int d = 2;
    std::vector<std::uint8_t> digits;

    DigitString() = default;
    DigitString(int d_, std::vector<std::uint8_t> ds) : d(d_), digits(std::move(ds)) {
        for (auto g : digits)
            if (g >= d) throw std::invalid_argument("digit out of range for alphabet");
    }

    std::size_t size() const { return digits.size(); }
    bool empty() const { return digits.empty(); }

    bool operator==(const DigitString& o) const { return d == o.d && digits == o.digits; }
    bool operator!=(const DigitString& o) const { return !(*this == o); }

    /// Lexicographic three-way compare; a strict prefix sorts first.
    int lex_cmp(const DigitString& o) const {
        std::size_t n = std::min(size(), o.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (digits[i] != o.digits[i]) return digits[i] < o.digits[i] ? -1 : 1;
        }
        if (size() == o.size()) return 0;
        return size() < o.size() ? -1 : 1;
    }

    /// Drops the first digit (the shift map).
    DigitString shifted() const {
        if (empty()) throw std::invalid_argument("shift of empty digit string");
        return {d, std::vector<std::uint8_t>(digits.begin() + 1, digits.end())};
    }

    DigitString prefix(std::size_t n) const {
        if (n >= size()) return *this;
        return {d, std::vector<std::uint8_t>(digits.begin(), digits.begin() + n)};
    }

    /// Drops the first k digits (k-fold shift).
    DigitString suffix(std::size_t k) const {
        if (k >= size()) return {d, {}};
        return {d, std::vector<std::uint8_t>(digits.begin() + static_cast<std::ptrdiff_t>(k), digits.end())};
    }

    /// The rational value sum a_j d^-(j+1) of the word read as a d-adic expansion.
    Rat value() const {
        Int acc = 0;
        for (auto g : digits) acc = acc * d + g;
        return Rat(acc, pow_int(d, static_cast<unsigned>(size())));
    }

    /// Half-open d-adic enclosure [v, v + d^-n) of any extension of the word.
    RatInterval enclosure() const {
        Rat v = value();
        return {v, v + Rat(1, pow_int(d, static_cast<unsigned>(size())))};
    }

    /// Longest run of the top digit d-1 at the end of the word.
    std::size_t trailing_top_digits() const {
        std::size_t k = 0;
        while (k < size() && digits[size() - 1 - k] == d - 1) ++k;
        return k;
    }

    std::string str() const {
        if (d > 10) throw std::invalid_argument("digit strings render only for d <= 10");
        std::string s;
        s.reserve(size());
        for (auto g : digits) s.push_back(static_cast<char>('0' + g));
        return s;
    }
};

inline DigitString parse_digits(const std::string& s, int d) {
    if (d < 2 || d > 10) throw std::invalid_argument("alphabet size must be in [2,10]");
    std::vector<std::uint8_t> out;
    out.reserve(s.size());
    for (char c : s) {
        if (c < '0' || c >= '0' + d) throw std::invalid_argument("bad digit in word: " + s);
        out.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return {d, std::move(out)};
}

}  // namespace rotaset
