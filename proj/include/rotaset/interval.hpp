#pragma once

#include "rotaset/quadratic.hpp"
#include "rotaset/rational.hpp"

#include <optional>

namespace rotaset {

/// Working precision (fractional bits) for interval fallback paths.
/// Settable once at startup from ROTASET_PRECISION; default 256.
unsigned working_precision();
void set_working_precision(unsigned bits);

/// Closed rational interval [lo, hi]; lo == hi encodes an exact value.
/// d-adic enclosures reuse the type with half-open [lo, hi) semantics,
/// which only matters at shared endpoints and is noted at each use.
struct RatInterval {
    Rat lo;
    Rat hi;

    RatInterval() = default;
    RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("interval with lo > hi");
    }
    /*implicit*/ RatInterval(const Rat& v) : lo(v), hi(v) {}

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool is_point() const { return lo == hi; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool intersects(const RatInterval& o) const { return lo <= o.hi && o.lo <= hi; }
};

inline RatInterval operator+(const RatInterval& x, const RatInterval& y) {
    return {x.lo + y.lo, x.hi + y.hi};
}
inline RatInterval operator-(const RatInterval& x, const RatInterval& y) {
    return {x.lo - y.hi, x.hi - y.lo};
}
inline RatInterval scale(const Rat& c, const RatInterval& x) {
    return c >= 0 ? RatInterval{c * x.lo, c * x.hi} : RatInterval{c * x.hi, c * x.lo};
}

/// Shrinks denominators to 2^bits, rounding outward (never narrows the truth).
inline RatInterval round_outward(const RatInterval& x, unsigned bits) {
    Int scale = pow2(bits);
    return {Rat(floor_rat(x.lo * Rat(scale)), scale), Rat(ceil_rat(x.hi * Rat(scale)), scale)};
}

/// Certified three-way comparison: -1 if x entirely below y, +1 if entirely
/// above, nullopt when the enclosures overlap (sign not certified).
inline std::optional<int> interval_cmp(const RatInterval& x, const RatInterval& y) {
    if (x.hi < y.lo) return -1;
    if (x.lo > y.hi) return 1;
    if (x.is_point() && y.is_point()) return 0;
    return std::nullopt;
}

/// Enclosure of an exact field value at the working precision.
inline RatInterval enclose_quad(const QuadraticNumber& q, unsigned bits) {
    auto [lo, hi] = quad_enclosure(q, bits);
    return {lo, hi};
}

/// An arc on the circle: the mod-1 image of [lo, hi], width < 1.
/// Endpoints are kept unreduced so orbit arithmetic stays additive.
struct Arc {
    RatInterval span;

    /// True iff the whole arc lies inside [u, v) mod 1 (u < v, both in [0,1]).
    bool inside_half_open(const Rat& u, const Rat& v) const {
        Rat lo = span.lo - Rat(floor_rat(span.lo));
        Rat hi = lo + span.width();
        // After the shift lo is in [0,1); the arc may overhang past 1 into [u,v)+1.
        return (u <= lo && hi < v) || (u + 1 <= lo && hi < v + 1);
    }

    /// True iff the reduced arc certifiedly avoids the circle point t (0 <= t < 1).
    bool avoids_point(const Rat& t) const {
        Rat lo = span.lo - Rat(floor_rat(span.lo));
        Rat hi = lo + span.width();
        // Candidate hits at t and t+1 relative to the shifted window [lo, hi].
        return !(lo <= t && t <= hi) && !(lo <= t + 1 && t + 1 <= hi);
    }
};

}  // namespace rotaset
