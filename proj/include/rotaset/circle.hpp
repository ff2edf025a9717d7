#pragma once

#include "rotaset/interval.hpp"
#include "rotaset/quadratic.hpp"

#include <functional>
#include <variant>

namespace rotaset {

/// A point of the circle, parameterized by [0,1): either an exact field value
/// reduced into [0,1), or a rational interval enclosure with 0 <= lo <= hi <= 1.
struct CirclePoint {
    std::variant<QuadraticNumber, RatInterval> rep;

    CirclePoint() : rep(QuadraticNumber{}) {}
    /*implicit*/ CirclePoint(QuadraticNumber q) : rep(std::move(q)) {}
    /*implicit*/ CirclePoint(RatInterval iv) : rep(std::move(iv)) {}
    /*implicit*/ CirclePoint(const Rat& r) : rep(QuadraticNumber{r}) {}

    bool is_exact() const { return std::holds_alternative<QuadraticNumber>(rep); }
    const QuadraticNumber& exact() const { return std::get<QuadraticNumber>(rep); }
    const RatInterval& box() const { return std::get<RatInterval>(rep); }

    /// Enclosure at the given precision (exact points get tight dyadic boxes).
    RatInterval enclosure(unsigned bits) const {
        if (is_exact()) return enclose_quad(exact(), bits);
        return box();
    }
};

enum class Orientation { positive, negative, degenerate, uncertain };

/// Reduces any exact field value into [0,1).
CirclePoint reduce_mod1(const QuadraticNumber& q);

/// Counterclockwise orientation of a circle triple:
/// positive iff reduce_mod1(Q - P) < reduce_mod1(R - P); degenerate when two
/// points coincide; uncertain when interval enclosures overlap.
Orientation orientation(const CirclePoint& P, const CirclePoint& Q, const CirclePoint& R);

enum class Tri { yes, no, uncertain };

/// True iff the images are not pairwise distinct (vacuous per the definition)
/// or the image triple has the same orientation as the input triple.
Tri preserves_order_on_triple(const std::function<CirclePoint(const CirclePoint&)>& f,
                              const CirclePoint& P, const CirclePoint& Q, const CirclePoint& R);

/// Circle metric on representatives in [0,1).
Rat circle_dist(const Rat& u, const Rat& v);

}  // namespace rotaset
