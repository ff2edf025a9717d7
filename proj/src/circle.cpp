#include "rotaset/circle.hpp"

#include <cstdlib>

namespace rotaset {

namespace {
unsigned g_precision = [] {
    if (const char* env = std::getenv("ROTASET_PRECISION")) {
        long v = std::atol(env);
        if (v >= 8 && v <= (1 << 20)) return static_cast<unsigned>(v);
    }
    return 256u;
}();
}  // namespace

unsigned working_precision() { return g_precision; }
void set_working_precision(unsigned bits) { g_precision = bits; }

CirclePoint reduce_mod1(const QuadraticNumber& q) { return CirclePoint{reduce_mod1_quad(q)}; }

namespace {

// Difference Q - P reduced to [0,1), staying exact when both points are exact.
// Interval path: subtract enclosures, then shift the span into [0,1)+-width.
CirclePoint reduced_diff(const CirclePoint& P, const CirclePoint& Q) {
    if (P.is_exact() && Q.is_exact()) return reduce_mod1(Q.exact() - P.exact());
    RatInterval d = Q.enclosure(working_precision()) - P.enclosure(working_precision());
    Rat shift{floor_rat(d.lo)};
    RatInterval r{d.lo - shift, d.hi - shift};
    // A span straddling an integer wraps on the circle and has no linear
    // order against anything; widen to the full circle so comparisons report
    // uncertain rather than a false certificate.
    if (r.hi > 1) r = RatInterval{Rat(0), Rat(1)};
    return CirclePoint{r};
}

// Certified three-way comparison of circle points; nullopt when uncertain.
std::optional<int> cmp_points(const CirclePoint& x, const CirclePoint& y) {
    if (x.is_exact() && y.is_exact()) return sign_int(surd_sign(x.exact() - y.exact()));
    return interval_cmp(x.enclosure(working_precision()), y.enclosure(working_precision()));
}

}  // namespace

Orientation orientation(const CirclePoint& P, const CirclePoint& Q, const CirclePoint& R) {
    auto pq = cmp_points(P, Q), pr = cmp_points(P, R), qr = cmp_points(Q, R);
    if (!pq || !pr || !qr) return Orientation::uncertain;
    if (*pq == 0 || *pr == 0 || *qr == 0) return Orientation::degenerate;
    CirclePoint u = reduced_diff(P, Q), v = reduced_diff(P, R);
    auto c = cmp_points(u, v);
    if (!c) return Orientation::uncertain;
    return *c < 0 ? Orientation::positive : Orientation::negative;
}

Tri preserves_order_on_triple(const std::function<CirclePoint(const CirclePoint&)>& f,
                              const CirclePoint& P, const CirclePoint& Q, const CirclePoint& R) {
    CirclePoint fP = f(P), fQ = f(Q), fR = f(R);
    Orientation img = orientation(fP, fQ, fR);
    if (img == Orientation::degenerate) return Tri::yes;  // distinct-image hypothesis fails: vacuous
    if (img == Orientation::uncertain) return Tri::uncertain;
    Orientation src = orientation(P, Q, R);
    if (src == Orientation::uncertain) return Tri::uncertain;
    if (src == Orientation::degenerate) return Tri::yes;
    return src == img ? Tri::yes : Tri::no;
}

Rat circle_dist(const Rat& u, const Rat& v) {
    Rat d = u > v ? u - v : v - u;
    d -= Rat(floor_rat(d));
    return d <= Rat(1, 2) ? d : 1 - d;
}

}  // namespace rotaset
