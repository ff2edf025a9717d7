#include "rotaset/quadratic.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace rotaset {

Sign surd_sign(const QuadraticNumber& q) {
    if (q.is_rational()) {
        int s = sign_rat(q.a);
        return s < 0 ? Sign::negative : s > 0 ? Sign::positive : Sign::zero;
    }
    int sa = sign_rat(q.a), sb = sign_rat(q.b);
    if (sa == 0) return sb < 0 ? Sign::negative : Sign::positive;
    if (sa > 0 && sb > 0) return Sign::positive;
    if (sa < 0 && sb < 0) return Sign::negative;
    // Opposite signs: |a| vs |b|*sqrt(D), squared to rationals.
    Rat a2 = q.a * q.a, b2D = q.b * q.b * Rat(q.D);
    if (a2 == b2D) return Sign::zero;  // only possible if D is a perfect square; callers validate D
    bool rational_part_wins = a2 > b2D;
    if (sa > 0) return rational_part_wins ? Sign::positive : Sign::negative;
    return rational_part_wins ? Sign::negative : Sign::positive;
}

Int common_field(const QuadraticNumber& lhs, const QuadraticNumber& rhs) {
    bool lr = lhs.is_rational(), rr = rhs.is_rational();
    if (lr && rr) return 0;
    if (lr) return rhs.D;
    if (rr) return lhs.D;
    if (lhs.D != rhs.D) throw std::logic_error("mixed quadratic fields: sqrt(" + lhs.D.str() + ") vs sqrt(" + rhs.D.str() + ")");
    return lhs.D;
}

QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
    Int D = common_field(x, y);
    return {x.a + y.a, x.b + y.b, D};
}

QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) {
    Int D = common_field(x, y);
    return {x.a - y.a, x.b - y.b, D};
}

QuadraticNumber operator-(const QuadraticNumber& x) { return {-x.a, -x.b, x.D}; }

QuadraticNumber operator*(const Rat& c, const QuadraticNumber& x) { return {c * x.a, c * x.b, x.D}; }

std::pair<Rat, Rat> sqrt_enclosure(const Int& D, unsigned bits) {
    // lo = floor(sqrt(D * 4^bits)) / 2^bits; sqrt lands between lo and lo + 2^-bits.
    Int scaled = D << (2 * bits);
    Int s = boost::multiprecision::sqrt(scaled);
    Rat denom(pow2(bits));
    return {Rat(s) / denom, Rat(s + 1) / denom};
}

std::pair<Rat, Rat> quad_enclosure(const QuadraticNumber& q, unsigned bits) {
    if (q.is_rational()) return {q.a, q.a};
    auto [slo, shi] = sqrt_enclosure(q.D, bits);
    if (q.b > 0) return {q.a + q.b * slo, q.a + q.b * shi};
    return {q.a + q.b * shi, q.a + q.b * slo};
}

Int floor_quad(const QuadraticNumber& q) {
    if (q.is_rational()) return floor_rat(q.a);
    for (unsigned bits = 32;; bits *= 2) {
        auto [lo, hi] = quad_enclosure(q, bits);
        Int flo = floor_rat(lo), fhi = floor_rat(hi);
        if (flo == fhi) return flo;
        // b != 0 and D nonsquare make the value irrational, so the
        // enclosure eventually separates from the integer between flo and fhi.
        if (bits > 1u << 20) throw std::logic_error("floor_quad: enclosure failed to separate (square D?)");
    }
}

QuadraticNumber reduce_mod1_quad(const QuadraticNumber& q) {
    Int f = floor_quad(q);
    return {q.a - Rat(f), q.b, q.D};
}

bool is_square_free(const Int& n) {
    if (n <= 0) return false;
    Int m = n;
    for (Int p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            m /= p;
            if (m % p == 0) return false;
        }
    }
    return true;
}

std::string quad_to_string(const QuadraticNumber& q) {
    if (q.is_rational()) return format_rational(q.a);
    return format_rational(q.a) + " + " + format_rational(q.b) + "*sqrt(" + q.D.str() + ")";
}

}  // namespace rotaset
