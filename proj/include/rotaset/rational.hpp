#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace rotaset {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

/// Floor of a rational, exact (rounds toward -inf).
inline Int floor_rat(const Rat& r) {
    Int q = num(r) / den(r);
    if (num(r) < 0 && q * den(r) != num(r)) --q;
    return q;
}

inline Int ceil_rat(const Rat& r) { return -floor_rat(-r); }

inline int sign_rat(const Rat& r) { return r.sign(); }

/// 2^bits as an Int.
inline Int pow2(unsigned bits) { return Int(1) << bits; }

/// base^e for small nonnegative e.
inline Int pow_int(const Int& base, unsigned e) {
    Int acc = 1, b = base;
    for (unsigned k = e; k != 0; k >>= 1) {
        if (k & 1) acc *= b;
        b *= b;
    }
    return acc;
}

/// Renders "p/q", or just "p" for integers (matches the file formats used throughout).
inline std::string format_rational(const Rat& r) {
    std::string s = num(r).str();
    if (den(r) != 1) s += "/" + den(r).str();
    return s;
}

/// Parses "p", "p/q", or a plain decimal such as "-0.25" into an exact rational.
inline Rat parse_rational(const std::string& s) {
    auto bad = [&] { return std::invalid_argument("not a rational: '" + s + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            Int p(s.substr(0, slash)), q(s.substr(slash + 1));
            if (q == 0) throw bad();
            return Rat(p, q);
        }
        auto dot = s.find('.');
        if (dot == std::string::npos) return Rat(Int(s));
        std::string head = s.substr(0, dot), frac = s.substr(dot + 1);
        if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) throw bad();
        bool neg = !head.empty() && head[0] == '-';
        if (head.empty() || head == "-" || head == "+") head += "0";
        Rat mag = Rat(boost::multiprecision::abs(Int(head))) +
                  Rat(Int(frac), pow_int(10, static_cast<unsigned>(frac.size())));
        return neg ? -mag : mag;
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

/// Decimal-literal test: a digit string with one '.' and no '/'.
inline bool looks_decimal(const std::string& s) {
    return s.find('.') != std::string::npos && s.find('/') == std::string::npos;
}

/// Number of digits after the decimal point (0 if none); used for input radius 10^-digits.
inline unsigned decimal_places(const std::string& s) {
    auto dot = s.find('.');
    return dot == std::string::npos ? 0 : static_cast<unsigned>(s.size() - dot - 1);
}

}  // namespace rotaset
