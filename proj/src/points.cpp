#include "rotaset/points.hpp"

#include "rotaset/dadic.hpp"

#include <algorithm>
#include <stdexcept>

namespace rotaset {

APoint APoint::rational(Rat v, int t) {
    APoint p;
    p.kind = Kind::rational;
    p.r = std::move(v);
    p.time = t;
    return p;
}

APoint APoint::field(QuadraticNumber v, int t) {
    APoint p;
    p.kind = Kind::field;
    p.q = std::move(v);
    p.time = t;
    return p;
}

APoint APoint::coded(SampleSet* s, std::size_t idx, int t) {
    APoint p;
    p.kind = Kind::coded;
    p.src = s;
    p.src_idx = idx;
    p.time = t;
    return p;
}

APoint APoint::coded_static(DigitString digits, int t) {
    APoint p;
    p.kind = Kind::coded;
    p.static_digits = std::move(digits);
    p.time = t;
    return p;
}

APoint APoint::boxed(RatInterval box, int t) {
    APoint p;
    p.kind = Kind::boxed;
    p.fixed_box = std::move(box);
    p.time = t;
    return p;
}

namespace {

RatInterval reflect_box(const RatInterval& b) { return RatInterval{Rat(1) - b.hi, Rat(1) - b.lo}; }

bool entry_deepenable(const SampleSet& s, std::size_t idx) {
    return s.spec.all_exact() && s.entries[idx].omega.is_exact();
}

// Grows the backing stream toward `want` digits past the shift (where the
// source allows it) and reports how many are now available.
std::size_t coded_grow(const APoint& p, std::size_t want) {
    if (p.src != nullptr) {
        std::size_t limit = p.shift + want;
        if (!entry_deepenable(*p.src, p.src_idx))
            limit = std::min(limit, p.src->entries[p.src_idx].digits.size());
        const DigitString& full = p.src->digits_at(p.src_idx, limit);
        return full.size() > p.shift ? full.size() - p.shift : 0;
    }
    return p.static_digits.size() > p.shift ? p.static_digits.size() - p.shift : 0;
}

const std::uint8_t* coded_base(const APoint& p) {
    const std::vector<std::uint8_t>& v =
        p.src != nullptr ? p.src->entries[p.src_idx].digits.digits : p.static_digits.digits;
    return v.size() > p.shift ? v.data() + p.shift : nullptr;
}

int coded_radix(const APoint& p) { return p.src != nullptr ? p.src->spec.d : p.static_digits.d; }

DigitString coded_digits(const APoint& p, std::size_t want) {
    std::size_t have = coded_grow(p, want);
    DigitString out;
    out.d = coded_radix(p);
    if (std::size_t n = std::min(want, have); n > 0) {
        const std::uint8_t* base = coded_base(p);
        out.digits.assign(base, base + n);
    }
    return out;
}

}  // namespace

RatInterval APoint::enclosure(std::size_t digits) const {
    RatInterval box;
    switch (kind) {
        case Kind::rational:
            box = RatInterval{r, r};
            break;
        case Kind::field:
            box = enclose_quad(q, std::max<std::size_t>(digits, 8));
            break;
        case Kind::coded:
            box = coded_digits(*this, digits).enclosure();
            break;
        case Kind::boxed:
            box = fixed_box;
            break;
    }
    return reflected ? reflect_box(box) : box;
}

bool APoint::refinable(std::size_t digits) const {
    switch (kind) {
        case Kind::rational:
        case Kind::boxed:
            return false;
        case Kind::field:
            return true;
        case Kind::coded:
            if (src != nullptr) {
                const SampleEntry& e = src->entries[src_idx];
                if (shift + digits < e.digits.size()) return true;
                return src->spec.all_exact() && e.omega.is_exact();
            }
            return shift + digits < static_digits.size();
    }
    return false;
}

std::optional<int> cmp_points(const APoint& a, const APoint& b, std::size_t depth_cap) {
    // Exact fast paths.
    if (!a.reflected && !b.reflected) {
        if (a.kind == APoint::Kind::rational && b.kind == APoint::Kind::rational)
            return a.r < b.r ? -1 : (a.r == b.r ? 0 : 1);
        if (a.kind == APoint::Kind::field && b.kind == APoint::Kind::field && a.q.D == b.q.D) {
            Sign s = surd_sign(a.q - b.q);
            return s == Sign::negative ? -1 : (s == Sign::zero ? 0 : 1);
        }
        if (a.kind == APoint::Kind::rational && b.kind == APoint::Kind::field) {
            Sign s = surd_sign(QuadraticNumber(a.r, Rat(0), b.q.D) - b.q);
            return s == Sign::negative ? -1 : (s == Sign::zero ? 0 : 1);
        }
        if (a.kind == APoint::Kind::field && b.kind == APoint::Kind::rational) {
            Sign s = surd_sign(a.q - QuadraticNumber(b.r, Rat(0), a.q.D));
            return s == Sign::negative ? -1 : (s == Sign::zero ? 0 : 1);
        }
    }
    if (a.kind == APoint::Kind::coded && b.kind == APoint::Kind::coded && a.src != nullptr && a.src == b.src &&
        a.src_idx == b.src_idx && a.shift == b.shift && a.reflected == b.reflected)
        return 0;

    if (a.kind == APoint::Kind::coded && b.kind == APoint::Kind::coded && !a.reflected && !b.reflected &&
        coded_radix(a) == coded_radix(b)) {
        // Lexicographic digit walk.  Both enclosures are half-open [v, v + d^-n),
        // so the first differing digit certifies strict order without ever
        // materializing the enclosure endpoints as exact rationals.
        std::size_t have = 0;
        for (std::size_t depth = 64;;) {
            std::size_t na = std::min(coded_grow(a, depth), depth);
            std::size_t nb = std::min(coded_grow(b, depth), depth);
            // Pointers are taken only after both streams have grown: the two
            // points may share a backing entry whose digit vector reallocates.
            const std::uint8_t* pa = coded_base(a);
            const std::uint8_t* pb = coded_base(b);
            std::size_t m = std::min(na, nb);
            for (std::size_t k = have; k < m; ++k)
                if (pa[k] != pb[k]) return pa[k] < pb[k] ? -1 : 1;
            have = m;
            // A stream that cannot refine past the common prefix encloses the
            // other from here on; no further digits can separate them.
            if (na <= nb && !a.refinable(na)) return std::nullopt;
            if (nb <= na && !b.refinable(nb)) return std::nullopt;
            if (depth >= depth_cap) return std::nullopt;
            depth = std::min(depth * 2, depth_cap);
        }
    }

    for (std::size_t depth = 64;; depth *= 2) {
        RatInterval ia = a.enclosure(depth);
        RatInterval ib = b.enclosure(depth);
        // Strict separation, honoring half-open coded enclosures: a value sits
        // in [lo, hi) so touching endpoints still certify strictness.
        if (ia.hi < ib.lo || (ia.hi == ib.lo && (a.open_hi() || b.open_lo()))) return -1;
        if (ib.hi < ia.lo || (ib.hi == ia.lo && (b.open_hi() || a.open_lo()))) return 1;
        if (ia.lo == ia.hi && ib.lo == ib.hi && ia.lo == ib.lo) return 0;
        bool more = (a.refinable(depth) || b.refinable(depth)) && depth < depth_cap;
        if (!more) return std::nullopt;
    }
}

PointMap PointMap::TimesD(int d) {
    PointMap m;
    m.kind = Kind::times_d;
    m.d = d;
    return m;
}

PointMap PointMap::Rotation(QuadraticNumber theta) {
    PointMap m;
    m.kind = Kind::rotation;
    m.theta = std::move(theta);
    return m;
}

PointMap PointMap::Piecewise(PiecewiseMap T) {
    PointMap m;
    m.kind = Kind::piecewise;
    m.d = T.d;
    m.pw = std::make_shared<PiecewiseMap>(std::move(T));
    return m;
}

PointMap PointMap::Reflection() {
    PointMap m;
    m.kind = Kind::reflection;
    return m;
}

std::string PointMap::name() const {
    switch (kind) {
        case Kind::times_d:
            return "times-" + std::to_string(d);
        case Kind::rotation:
            return "rotation";
        case Kind::piecewise:
            return "piecewise";
        case Kind::reflection:
            return "reflection";
    }
    return "?";
}

namespace {

Rat frac_rat(const Rat& x) { return x - Rat(floor_rat(x)); }

APoint wide_box(int t) { return APoint::boxed(RatInterval{Rat(0), Rat(1)}, t); }

}  // namespace

APoint apply_map(const PointMap& pm, const APoint& p) {
    auto dbox = [&pm](const RatInterval& b) {  // enclosure image under x -> d*x mod 1
        Rat lo = Rat(pm.d) * b.lo, hi = Rat(pm.d) * b.hi;
        Rat f = Rat(floor_rat(lo));
        lo -= f;
        hi -= f;
        if (hi > 1) return RatInterval{Rat(0), Rat(1)};  // straddles the wrap
        return RatInterval{lo, hi};
    };
    switch (pm.kind) {
        case PointMap::Kind::times_d: {
            if (p.reflected) return APoint::boxed(dbox(p.enclosure(64)), p.time);
            switch (p.kind) {
                case APoint::Kind::rational:
                    return APoint::rational(frac_rat(Rat(pm.d) * p.r), p.time);
                case APoint::Kind::field:
                    return APoint::field(reduce_mod1_quad(Rat(pm.d) * p.q), p.time);
                case APoint::Kind::coded: {
                    APoint img = p;
                    img.shift += 1;
                    return img;
                }
                case APoint::Kind::boxed:
                    return APoint::boxed(dbox(p.fixed_box), p.time);
            }
            break;
        }
        case PointMap::Kind::rotation: {
            switch (p.kind) {
                case APoint::Kind::rational:
                    if (!p.reflected) return APoint::field(reduce_mod1_quad(pm.theta + p.r), p.time);
                    break;
                case APoint::Kind::field:
                    if (!p.reflected) return APoint::field(reduce_mod1_quad(pm.theta + p.q), p.time);
                    break;
                default:
                    break;
            }
            RatInterval b = p.enclosure(128);
            RatInterval th = enclose_quad(pm.theta, 128);
            RatInterval sum{b.lo + th.lo, b.hi + th.hi};
            if (sum.lo >= 1) sum = RatInterval{sum.lo - 1, sum.hi - 1};
            if (sum.hi > 1) return wide_box(p.time);
            return APoint::boxed(sum, p.time);
        }
        case PointMap::Kind::piecewise: {
            if (!p.reflected) {
                if (p.kind == APoint::Kind::rational) return APoint::rational(eval_map(*pm.pw, p.r), p.time);
                if (p.kind == APoint::Kind::field) return APoint::field(eval_map(*pm.pw, p.q), p.time);
            }
            try {
                return APoint::boxed(eval_map(*pm.pw, CirclePoint(p.enclosure(64))).enclosure(64), p.time);
            } catch (const MapError&) {
                return wide_box(p.time);  // enclosure straddles a branch cut
            }
        }
        case PointMap::Kind::reflection: {
            switch (p.kind) {
                case APoint::Kind::rational: {
                    Rat y = p.r == 0 ? Rat(0) : Rat(1) - p.r;
                    APoint img = APoint::rational(p.reflected ? frac_rat(Rat(1) - y) : y, p.time);
                    return img;
                }
                case APoint::Kind::field:
                    return APoint::field(reduce_mod1_quad(Rat(1) - (p.reflected ? Rat(1) - p.q : p.q)), p.time);
                case APoint::Kind::coded: {
                    APoint img = p;
                    img.reflected = !img.reflected;
                    return img;
                }
                case APoint::Kind::boxed:
                    return APoint::boxed(RatInterval{Rat(1) - p.fixed_box.hi, Rat(1) - p.fixed_box.lo}, p.time);
            }
            break;
        }
    }
    throw std::logic_error("apply_map: unsupported point/map combination");
}

std::vector<std::size_t> AnalysisSample::temporal_order() const {
    std::vector<std::size_t> order(pts.size(), 0);
    std::vector<std::pair<int, std::size_t>> by_time;
    by_time.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) by_time.emplace_back(pts[i].time, i);
    std::sort(by_time.begin(), by_time.end());
    for (std::size_t k = 0; k < by_time.size(); ++k) order[k] = by_time[k].second;
    return order;
}

AnalysisSample analysis_from_sample(std::shared_ptr<SampleSet> s) {
    AnalysisSample a;
    a.backing = std::move(s);
    a.depth = a.backing->depth;
    a.source = "coded-sample";
    a.pts.reserve(a.backing->entries.size());
    for (std::size_t i = 0; i < a.backing->entries.size(); ++i)
        a.pts.push_back(APoint::coded(a.backing.get(), i, static_cast<int>(i)));
    for (std::size_t i = 0; i + 1 < a.pts.size(); ++i) {
        std::optional<int> c = cmp_points(a.pts[i], a.pts[i + 1]);
        if (!c || *c >= 0) throw std::runtime_error("analysis_from_sample: positions not strictly increasing");
    }
    a.has_time = false;
    return a;
}

AnalysisSample analysis_from_pullback(const PullbackOrbit& orbit) {
    AnalysisSample a;
    a.source = "pullback-orbit";
    a.has_time = true;
    a.pts.reserve(orbit.points.size());
    for (const OrbitPoint& op : orbit.points) a.pts.push_back(APoint::rational(op.x, static_cast<int>(op.time)));
    std::sort(a.pts.begin(), a.pts.end(), [](const APoint& x, const APoint& y) { return x.r < y.r; });
    for (std::size_t i = 0; i + 1 < a.pts.size(); ++i)
        if (a.pts[i].r == a.pts[i + 1].r) throw std::runtime_error("analysis_from_pullback: duplicate positions");
    return a;
}

AnalysisSample analysis_from_rotation_orbit(const QuadraticNumber& omega0, const QuadraticNumber& theta,
                                            std::size_t L) {
    AnalysisSample a;
    a.source = "rotation-orbit";
    a.has_time = true;
    a.pts.reserve(L);
    QuadraticNumber w = reduce_mod1_quad(omega0);
    for (std::size_t k = 0; k < L; ++k) {
        a.pts.push_back(APoint::field(w, static_cast<int>(k)));
        w = reduce_mod1_quad(w + theta);
    }
    std::sort(a.pts.begin(), a.pts.end(), [](const APoint& x, const APoint& y) {
        return surd_sign(x.q - y.q) == Sign::negative;
    });
    for (std::size_t i = 0; i + 1 < a.pts.size(); ++i)
        if (surd_sign(a.pts[i].q - a.pts[i + 1].q) == Sign::zero)
            throw std::runtime_error("analysis_from_rotation_orbit: duplicate positions");
    return a;
}

AnalysisSample analysis_from_rationals(std::vector<Rat> xs, bool keep_times) {
    AnalysisSample a;
    a.source = "rational-points";
    a.has_time = keep_times;
    a.pts.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        a.pts.push_back(APoint::rational(std::move(xs[i]), keep_times ? static_cast<int>(i) : -1));
    std::sort(a.pts.begin(), a.pts.end(), [](const APoint& x, const APoint& y) { return x.r < y.r; });
    for (std::size_t i = 0; i + 1 < a.pts.size(); ++i)
        if (a.pts[i].r == a.pts[i + 1].r) throw std::runtime_error("analysis_from_rationals: duplicate positions");
    return a;
}

}  // namespace rotaset
