#include "rotaset/piecewise.hpp"

#include <algorithm>
#include <ostream>

namespace rotaset {

int PiecewiseMap::branch_of(const Rat& x) const {
    if (x < 0 || x >= 1) throw std::invalid_argument("point outside [0,1)");
    int k = static_cast<int>(std::upper_bound(breakpoints.begin(), breakpoints.end(), x) -
                             breakpoints.begin()) - 1;
    return k;
}

void validate_map(const PiecewiseMap& T) {
    if (T.d < 2) throw MapError(MapError::Kind::bad_breakpoints, "degree must be at least 2");
    if (static_cast<int>(T.breakpoints.size()) != T.d + 1 ||
        static_cast<int>(T.branches.size()) != T.d)
        throw MapError(MapError::Kind::bad_breakpoints, "need d+1 breakpoints and d branches");
    if (T.breakpoints.front() != 0 || T.breakpoints.back() != 1)
        throw MapError(MapError::Kind::bad_breakpoints, "breakpoints must start at 0 and end at 1");
    for (int k = 0; k < T.d; ++k) {
        if (T.breakpoints[k] >= T.breakpoints[k + 1])
            throw MapError(MapError::Kind::bad_breakpoints, "breakpoints not strictly increasing");
        const auto& knots = T.branches[k];
        if (knots.size() < 2)
            throw MapError(MapError::Kind::bad_knots, "branch " + std::to_string(k) + " needs at least 2 knots");
        if (knots.front().x != T.breakpoints[k] || knots.back().x != T.breakpoints[k + 1])
            throw MapError(MapError::Kind::bad_knots,
                           "branch " + std::to_string(k) + " knots must span its breakpoint interval");
        if (knots.front().y != 0 || knots.back().y != 1)
            throw MapError(MapError::Kind::bad_range,
                           "branch " + std::to_string(k) + " must rise from 0 to left-limit 1");
        for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
            if (knots[i].x >= knots[i + 1].x || knots[i].y >= knots[i + 1].y)
                throw MapError(MapError::Kind::bad_knots,
                               "branch " + std::to_string(k) + " knots not strictly increasing");
        }
    }
}

PiecewiseMap times_d_map(int d) {
    PiecewiseMap T;
    T.d = d;
    for (int k = 0; k <= d; ++k) T.breakpoints.emplace_back(Rat(k, d));
    for (int k = 0; k < d; ++k) T.branches.push_back({{Rat(k, d), Rat(0)}, {Rat(k + 1, d), Rat(1)}});
    return T;
}

namespace {

// Interpolation on the knot segment holding x (exact; works for Rat and field values).
template <typename Num>
Num interpolate(const std::vector<Knot>& knots, const Rat& probe, const Num& x) {
    std::size_t i = 0;
    while (i + 2 < knots.size() && probe >= knots[i + 1].x) ++i;
    Rat slope = (knots[i + 1].y - knots[i].y) / (knots[i + 1].x - knots[i].x);
    return Num{knots[i].y} + slope * (x - Num{knots[i].x});
}

}  // namespace

Rat eval_map(const PiecewiseMap& T, const Rat& x) {
    const auto& knots = T.branches[T.branch_of(x)];
    return interpolate<Rat>(knots, x, x);
}

QuadraticNumber eval_map(const PiecewiseMap& T, const QuadraticNumber& x) {
    QuadraticNumber r = reduce_mod1_quad(x);
    if (r.is_rational()) return QuadraticNumber{eval_map(T, r.a)};
    // Locate the branch and knot segment with exact sign tests against the
    // rational grid, then apply the affine piece in the field.
    auto below = [&](const Rat& c) { return surd_sign(r - QuadraticNumber{c}) == Sign::negative; };
    int k = T.d - 1;
    for (int i = 1; i <= T.d; ++i) {
        if (below(T.breakpoints[i])) { k = i - 1; break; }
    }
    const auto& knots = T.branches[k];
    std::size_t i = 0;
    while (i + 2 < knots.size() && !below(knots[i + 1].x)) ++i;
    Rat slope = (knots[i + 1].y - knots[i].y) / (knots[i + 1].x - knots[i].x);
    return QuadraticNumber{knots[i].y} + slope * (r - QuadraticNumber{knots[i].x});
}

CirclePoint eval_map(const PiecewiseMap& T, const CirclePoint& x) {
    if (x.is_exact()) return CirclePoint{eval_map(T, x.exact())};
    const RatInterval& box = x.box();
    if (box.lo < 0 || box.hi > 1) throw std::invalid_argument("circle box outside [0,1]");
    int klo = T.branch_of(box.lo);
    int khi = box.hi == 1 ? T.d - 1 : T.branch_of(box.hi);
    if (klo != khi)
        throw MapError(MapError::Kind::uncertain_branch,
                       "enclosure straddles breakpoint x_" + std::to_string(khi));
    const auto& knots = T.branches[klo];
    Rat ylo = interpolate<Rat>(knots, box.lo, box.lo);
    Rat yhi = box.hi == T.breakpoints[klo + 1] ? Rat(1) : interpolate<Rat>(knots, box.hi, box.hi);
    return CirclePoint{RatInterval{ylo, yhi}};
}

DigitString iota(const PiecewiseMap& T, const Rat& x, std::size_t n) {
    std::vector<std::uint8_t> out;
    out.reserve(n);
    Rat p = x;
    for (std::size_t j = 0; j < n; ++j) {
        int k = T.branch_of(p);
        out.push_back(static_cast<std::uint8_t>(k));
        p = interpolate<Rat>(T.branches[k], p, p);
    }
    return {T.d, std::move(out)};
}

namespace {

// Inverse of branch k at y in [0,1]; y = 1 maps to the right breakpoint.
Rat branch_inverse(const PiecewiseMap& T, int k, const Rat& y) {
    const auto& knots = T.branches[k];
    if (y >= 1) return knots.back().x;
    std::size_t i = 0;
    while (i + 2 < knots.size() && y >= knots[i + 1].y) ++i;
    Rat slope = (knots[i + 1].x - knots[i].x) / (knots[i + 1].y - knots[i].y);
    return knots[i].x + slope * (y - knots[i].y);
}

}  // namespace

CylinderInterval cylinder(const PiecewiseMap& T, const DigitString& word) {
    if (word.empty()) throw std::invalid_argument("cylinder of empty word");
    if (word.d != T.d) throw std::invalid_argument("word alphabet does not match map degree");
    Rat lo(0), hi(1);
    for (auto it = word.digits.rbegin(); it != word.digits.rend(); ++it) {
        int k = *it;
        lo = branch_inverse(T, k, lo);
        hi = branch_inverse(T, k, hi);
    }
    return {word, lo, hi};
}

Realization realize_word(const PiecewiseMap& T, const DigitString& word) {
    CylinderInterval cyl = cylinder(T, word);
    Realization r;
    r.enclosure = RatInterval{cyl.lo, cyl.hi};
    r.candidate = cyl.lo;
    r.suspicious_all_top = word.trailing_top_digits() * 2 >= word.size();
    DigitString got = iota(T, r.candidate, word.size());
    r.verified = got == word;
    if (!r.verified) {
        for (std::size_t j = 0; j < word.size(); ++j) {
            if (got.digits[j] != word.digits[j]) {
                r.first_mismatch = static_cast<long long>(j);
                break;
            }
        }
    }
    return r;
}

PullbackOrbit pullback_sample(const PiecewiseMap& T, const PartitionSpec& spec, std::size_t depth,
                              std::size_t L, std::size_t grid_N, std::size_t depth_margin) {
    if (L < 1) throw std::invalid_argument("orbit length must be at least 1");

    // omega* = the D0 grid point nearest 1/2 (ties toward the smaller value).
    std::optional<Rat> omega_star;
    Rat best_dist;
    for (std::size_t j = 0; j < grid_N; ++j) {
        Rat w(2 * Int(j) + 1, 2 * Int(grid_N));
        D0Result dr = in_D0(spec, CirclePoint{w});
        if (dr.verdict == D0Result::Verdict::no || dr.verdict == D0Result::Verdict::uncertain) continue;
        Rat dist = boost::multiprecision::abs(w - Rat(1, 2));
        if (!omega_star || dist < best_dist) {
            omega_star = w;
            best_dist = dist;
        }
    }
    if (!omega_star) throw std::runtime_error("no grid point survives the domain filter");

    PullbackOrbit orbit;
    orbit.map = T;
    orbit.spec = spec;
    orbit.depth = depth;
    orbit.omega_star = *omega_star;

    std::size_t word_len = depth + L * depth_margin;
    Realization real;
    DigitString word;
    for (int attempt = 0;; ++attempt) {
        word = itinerary(spec, CirclePoint{*omega_star}, word_len);
        real = realize_word(T, word);
        if (real.verified) break;
        if (attempt >= 4)
            throw std::runtime_error("realization failed verification at word length " +
                                     std::to_string(word_len) + " (first mismatch at digit " +
                                     std::to_string(real.first_mismatch) + ")");
        word_len += 64;
    }
    orbit.word_len = word_len;

    const QuadraticNumber th = spec.theta0.is_exact() ? spec.theta0.exact() : QuadraticNumber{};
    QuadraticNumber w = spec.theta0.is_exact() ? QuadraticNumber{*omega_star} : QuadraticNumber{};
    Rat x = real.candidate;
    for (std::size_t k = 0; k < L; ++k) {
        int b = T.branch_of(x);
        if (b != word.digits[k])
            throw std::runtime_error("orbit lost branch certification at step " + std::to_string(k) +
                                     "; increase the word depth margin");
        OrbitPoint pt;
        pt.time = static_cast<long long>(k);
        pt.x = x;
        std::size_t take = std::min(depth, word.size() - k);
        pt.digits = DigitString{T.d, std::vector<std::uint8_t>(word.digits.begin() + k,
                                                               word.digits.begin() + k + take)};
        if (spec.theta0.is_exact()) {
            pt.omega = w;
            w = reduce_mod1_quad(w + th);
        }
        orbit.points.push_back(std::move(pt));
        x = eval_map(T, x);
    }
    return orbit;
}

void write_orbit_csv(const PullbackOrbit& orbit, std::ostream& out, bool decimal_columns) {
    out << "time,omega_lo,omega_hi,digits,x_lo,x_hi";
    if (decimal_columns) out << ",x_dec";
    out << "\n";
    const unsigned bits = working_precision();
    for (const auto& pt : orbit.points) {
        RatInterval ob = enclose_quad(pt.omega, bits);
        out << pt.time << "," << format_rational(ob.lo) << "," << format_rational(ob.hi) << ","
            << pt.digits.str() << "," << format_rational(pt.x) << "," << format_rational(pt.x);
        if (decimal_columns) out << "," << static_cast<double>(pt.x);
        out << "\n";
    }
}

PiecewiseMap map_from_json(const nlohmann::json& j) {
    PiecewiseMap T;
    for (auto& [key, _] : j.items()) {
        if (key != "breakpoints" && key != "branches")
            throw std::invalid_argument("unknown field in map: " + key);
    }
    for (const auto& b : j.at("breakpoints")) T.breakpoints.push_back(parse_rational(b.get<std::string>()));
    for (const auto& br : j.at("branches")) {
        std::vector<Knot> knots;
        for (const auto& kn : br)
            knots.push_back({parse_rational(kn.at(0).get<std::string>()),
                             parse_rational(kn.at(1).get<std::string>())});
        T.branches.push_back(std::move(knots));
    }
    T.d = static_cast<int>(T.branches.size());
    return T;
}

nlohmann::json map_to_json(const PiecewiseMap& T) {
    nlohmann::json bps = nlohmann::json::array();
    for (const auto& b : T.breakpoints) bps.push_back(format_rational(b));
    nlohmann::json brs = nlohmann::json::array();
    for (const auto& br : T.branches) {
        nlohmann::json knots = nlohmann::json::array();
        for (const auto& kn : br) knots.push_back({format_rational(kn.x), format_rational(kn.y)});
        brs.push_back(knots);
    }
    return {{"breakpoints", bps}, {"branches", brs}};
}

}  // namespace rotaset
