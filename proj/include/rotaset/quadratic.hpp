#pragma once

#include "rotaset/rational.hpp"

#include <string>
#include <utility>

namespace rotaset {

enum class Sign { negative = -1, zero = 0, positive = 1 };

/// Exact value a + b*sqrt(D) in a fixed real quadratic field.
/// D square-free; D == 0 or b == 0 encodes a plain rational.
/// All operations are closed in the field and never touch floating point.
struct QuadraticNumber {
    Rat a;
    Rat b;
    Int D = 0;

    QuadraticNumber() = default;
    QuadraticNumber(Rat a_, Rat b_, Int D_) : a(std::move(a_)), b(std::move(b_)), D(std::move(D_)) {}
    /*implicit*/ QuadraticNumber(const Rat& r) : a(r), b(0), D(0) {}
    /*implicit*/ QuadraticNumber(long n) : a(n), b(0), D(0) {}

    bool is_rational() const { return b == 0 || D == 0; }
};

/// Exact sign of a + b*sqrt(D), decided by comparing a^2 against b^2*D
/// with case analysis on the signs of a and b.
Sign surd_sign(const QuadraticNumber& q);

inline int sign_int(Sign s) { return static_cast<int>(s); }

/// Throws std::logic_error if lhs and rhs live in different quadratic fields.
/// Returns the common D (0 if both rational).
Int common_field(const QuadraticNumber& lhs, const QuadraticNumber& rhs);

QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y);
QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y);
QuadraticNumber operator-(const QuadraticNumber& x);
QuadraticNumber operator*(const Rat& c, const QuadraticNumber& x);

inline bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return surd_sign(x - y) == Sign::zero;
}
inline bool operator!=(const QuadraticNumber& x, const QuadraticNumber& y) { return !(x == y); }
inline bool operator<(const QuadraticNumber& x, const QuadraticNumber& y) {
    return surd_sign(x - y) == Sign::negative;
}
inline bool operator<=(const QuadraticNumber& x, const QuadraticNumber& y) {
    return surd_sign(x - y) != Sign::positive;
}
inline bool operator>(const QuadraticNumber& x, const QuadraticNumber& y) { return y < x; }
inline bool operator>=(const QuadraticNumber& x, const QuadraticNumber& y) { return y <= x; }

/// Exact floor, located by sign tests against integer candidates.
Int floor_quad(const QuadraticNumber& q);

/// q - floor(q), in [0,1).
QuadraticNumber reduce_mod1_quad(const QuadraticNumber& q);

/// Rational enclosure [lo, hi] of sqrt(D) with hi - lo = 2^-bits.
std::pair<Rat, Rat> sqrt_enclosure(const Int& D, unsigned bits);

/// Rational enclosure [lo, hi] of the value, width <= |b| * 2^-bits.
std::pair<Rat, Rat> quad_enclosure(const QuadraticNumber& q, unsigned bits);

/// True iff n > 0 and no square > 1 divides n (trial division; desk-scale discriminants).
bool is_square_free(const Int& n);

std::string quad_to_string(const QuadraticNumber& q);

}  // namespace rotaset
