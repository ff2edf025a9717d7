#include "rotaset/coder.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace rotaset {

namespace {

// Integer-lattice walker for exact itineraries: the orbit position is carried
// as (u + v*sqrt(D))/q with integer u, v and fixed q > 0, so one rotation step
// costs a few word-sized integer operations instead of gcd-normalized rational
// arithmetic.  Interior nodes are premultiplied onto the same shape once.
class LatticeWalker {
  public:
    LatticeWalker(const PartitionSpec& spec, const QuadraticNumber& start) {
        const QuadraticNumber th = spec.theta0.exact();
        D_ = th.b != 0 ? th.D : start.D;
        if (start.b != 0 && start.D != D_)
            throw std::logic_error("itinerary start lies outside the partition's field");
        q_ = lcm(lcm(den(start.a), den(start.b)), lcm(den(th.a), den(th.b)));
        u_ = num(start.a) * (q_ / den(start.a));
        v_ = num(start.b) * (q_ / den(start.b));
        ut_ = num(th.a) * (q_ / den(th.a));
        vt_ = num(th.b) * (q_ / den(th.b));
        int ell = spec.ell();
        nodes_.reserve(static_cast<std::size_t>(ell) - 1);
        for (int i = 1; i < ell; ++i) {
            const QuadraticNumber t = spec.nodes[i].exact();
            if (t.b != 0 && t.D != D_) throw std::logic_error("node lies outside the partition's field");
            Int r = lcm(den(t.a), den(t.b));
            nodes_.push_back({num(t.a) * (r / den(t.a)), num(t.b) * (r / den(t.b)), r});
        }
    }

    // Piece index of the current position: i with t_i <= p < t_{i+1}.
    // Returns -(i+1) when p equals node t_i exactly.
    int locate() const {
        if (u_ == 0 && v_ == 0) return -1;  // exactly on t_0 = 0
        int piece = 0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const NodeInts& t = nodes_[i];
            int s = surd_int(u_ * t.r - t.x * q_, v_ * t.r - t.y * q_);
            if (s == 0) return -(static_cast<int>(i) + 2);
            if (s < 0) break;  // nodes are sorted: below this one, below the rest
            piece = static_cast<int>(i) + 1;
        }
        return piece;
    }

    // One rotation step staying reduced: p in [0,1), theta in (0,1).
    void advance() {
        u_ += ut_;
        v_ += vt_;
        if (surd_int(u_ - q_, v_) >= 0) u_ -= q_;
    }

    QuadraticNumber position() const { return {Rat(u_, q_), Rat(v_, q_), D_}; }

  private:
    struct NodeInts {
        Int x, y, r;  // the node as (x + y*sqrt(D))/r
    };

    // Sign of X + Y*sqrt(D).
    int surd_int(const Int& X, const Int& Y) const {
        int sx = X.sign(), sy = Y.sign();
        if (sy == 0) return sx;
        if (sx == 0) return sy;
        if (sx == sy) return sx;
        Int l = X * X, r = Y * Y * D_;
        return l == r ? 0 : (l > r ? sx : sy);
    }

    Int u_, v_, q_, D_, ut_, vt_;
    std::vector<NodeInts> nodes_;
};

struct ArcState {
    RatInterval span;  // reduced: lo in [0,1), hi = lo + width
};

// Piece index of a reduced arc, or -1 when no containment is certified.
int locate_piece_arc(const PartitionSpec& spec, const ArcState& p, unsigned bits) {
    int ell = spec.ell();
    for (int i = 0; i < ell; ++i) {
        RatInterval lo = spec.nodes[i].enclosure(bits);
        RatInterval hi = spec.nodes[i + 1].enclosure(bits);
        if (p.span.lo >= lo.hi && p.span.hi < hi.lo) return i;
    }
    return -1;
}

ArcState rotate_arc(const ArcState& p, const RatInterval& theta, unsigned bits) {
    RatInterval s = round_outward(p.span + theta, bits);
    Rat shift{floor_rat(s.lo)};
    return {RatInterval{s.lo - shift, s.hi - shift}};
}

}  // namespace

D0Result in_D0(const PartitionSpec& spec, const CirclePoint& omega, long long horizon) {
    const bool exact = spec.all_exact() && omega.is_exact();
    int ell = spec.ell();

    if (exact) {
        const QuadraticNumber th = spec.theta0.exact();
        const QuadraticNumber w = reduce_mod1_quad(omega.exact());
        std::optional<std::pair<Int, int>> best;  // (n, node index)
        for (int i = 0; i < ell; ++i) {  // t_ell = 1 is the same circle point as t_0
            const QuadraticNumber t = spec.nodes[i].exact();
            // omega + n*theta = t + j: the sqrt coefficient forces n.
            Rat nr = (t.b - w.b) / th.b;
            if (den(nr) != 1 || nr < 0) continue;
            Int n = num(nr);
            Rat j = t.a - w.a - Rat(n) * th.a;
            if (den(j) != 1) continue;
            if (!best || n < best->first) best = {n, i};
        }
        if (best) {
            return {D0Result::Verdict::no, best->first.convert_to<long long>(), best->second, 0};
        }
        return {D0Result::Verdict::yes, -1, -1, 0};
    }

    const unsigned bits = working_precision();
    RatInterval theta = spec.theta0.enclosure(bits);
    ArcState p{omega.enclosure(bits)};
    {
        Rat shift{floor_rat(p.span.lo)};
        p.span = RatInterval{p.span.lo - shift, p.span.hi - shift};
    }
    for (long long n = 0; n < horizon; ++n) {
        for (int i = 0; i < ell; ++i) {
            RatInterval t = spec.nodes[i].enclosure(bits);
            // Compare on the circle: the reduced arc may overhang past 1.
            bool clear = (p.span.hi < t.lo || p.span.lo > t.hi) && (p.span.hi < t.lo + 1 || p.span.lo > t.hi + 1);
            if (!clear) return {D0Result::Verdict::uncertain, n, i, horizon};
        }
        p = rotate_arc(p, theta, bits);
        if (p.span.hi > 1 && p.span.lo > 0) {
            // Straddles 0 = t_0 after reduction; cannot certify avoidance.
            return {D0Result::Verdict::uncertain, n + 1, 0, horizon};
        }
    }
    return {D0Result::Verdict::yes_up_to_horizon, -1, -1, horizon};
}

namespace {

std::vector<std::uint8_t> itinerary_digits(const PartitionSpec& spec, const CirclePoint& omega,
                                           std::size_t n, QuadraticNumber* final_pos) {
    std::vector<std::uint8_t> out;
    out.reserve(n);
    if (spec.all_exact() && omega.is_exact()) {
        LatticeWalker w(spec, reduce_mod1_quad(omega.exact()));
        for (std::size_t j = 0; j < n; ++j) {
            int piece = w.locate();
            if (piece < 0) throw NodeHitError(static_cast<long long>(j), -piece - 1);
            out.push_back(static_cast<std::uint8_t>(spec.coding[piece]));
            w.advance();
        }
        if (final_pos) *final_pos = w.position();
        return out;
    }
    const unsigned bits = working_precision();
    RatInterval theta = spec.theta0.enclosure(bits);
    ArcState p{omega.enclosure(bits)};
    Rat shift{floor_rat(p.span.lo)};
    p.span = RatInterval{p.span.lo - shift, p.span.hi - shift};
    for (std::size_t j = 0; j < n; ++j) {
        if (p.span.hi > 1) throw UncertainAtStep(static_cast<long long>(j));
        int piece = locate_piece_arc(spec, p, bits);
        if (piece < 0) throw UncertainAtStep(static_cast<long long>(j));
        out.push_back(static_cast<std::uint8_t>(spec.coding[piece]));
        p = rotate_arc(p, theta, bits);
    }
    return out;
}

}  // namespace

DigitString itinerary(const PartitionSpec& spec, const CirclePoint& omega, std::size_t n) {
    return {spec.d, itinerary_digits(spec, omega, n, nullptr)};
}

RatInterval encode(const PartitionSpec& spec, const CirclePoint& omega, std::size_t n) {
    return itinerary(spec, omega, n).enclosure();
}

bool SampleSet::deepenable() const {
    if (!spec.all_exact()) return false;
    for (const auto& e : entries)
        if (!e.omega.is_exact()) return false;
    return true;
}

const DigitString& SampleSet::digits_at(std::size_t idx, std::size_t want) {
    SampleEntry& e = entries.at(idx);
    if (e.digits.size() >= want) return e.digits;
    if (!spec.all_exact() || !e.omega.is_exact())
        throw UncertainAtStep(static_cast<long long>(e.digits.size()));
    if (!e.orbit_pos) {
        // Prime the continuation cache by replaying the stored prefix length.
        QuadraticNumber pos;
        itinerary_digits(spec, e.omega, e.digits.size(), &pos);
        e.orbit_pos = pos;
        e.orbit_steps = e.digits.size();
    }
    LatticeWalker w(spec, *e.orbit_pos);
    e.digits.digits.reserve(want);
    for (std::size_t j = e.orbit_steps; j < want; ++j) {
        int piece = w.locate();
        if (piece < 0) throw NodeHitError(static_cast<long long>(j), -piece - 1);
        e.digits.digits.push_back(static_cast<std::uint8_t>(spec.coding[piece]));
        w.advance();
    }
    e.orbit_pos = w.position();
    e.orbit_steps = want;
    return e.digits;
}

SampleSet sample_set(const PartitionSpec& spec, std::size_t N, std::size_t depth,
                     const std::vector<Rat>* grid, long long horizon) {
    if (N < 2) throw std::invalid_argument("sample size must be at least 2");
    if (depth < 1) throw std::invalid_argument("depth must be at least 1");
    std::vector<Rat> g;
    if (grid) {
        g = *grid;
        std::sort(g.begin(), g.end());
    } else {
        g.reserve(N);
        for (std::size_t j = 0; j < N; ++j) g.emplace_back(Rat(2 * Int(j) + 1, 2 * Int(N)));
    }

    SampleSet out;
    out.spec = spec;
    out.depth = depth;

    std::vector<Rat> used;
    for (std::size_t j = 0; j < g.size(); ++j) {
        std::size_t k = j;
        std::optional<std::string> slide_reason;
        while (k < g.size()) {
            const Rat& cand = g[k];
            if (!used.empty() && cand == used.back()) {
                slide_reason = "duplicate after substitution";
                ++k;
                continue;
            }
            D0Result dr = in_D0(spec, CirclePoint{cand}, horizon);
            if (dr.verdict == D0Result::Verdict::no || dr.verdict == D0Result::Verdict::uncertain) {
                slide_reason = dr.verdict == D0Result::Verdict::no
                                   ? "orbit hits node t_" + std::to_string(dr.node_index) + " at step " +
                                         std::to_string(dr.witness_n)
                                   : "membership uncertain at working precision";
                ++k;
                continue;
            }
            if (dr.verdict == D0Result::Verdict::yes_up_to_horizon) out.horizon_used = dr.horizon;
            SampleEntry e;
            e.omega = CirclePoint{cand};
            try {
                e.digits = itinerary(spec, e.omega, depth);
            } catch (const NodeHitError& nh) {
                slide_reason = std::string("node hit during itinerary: ") + nh.what();
                ++k;
                continue;
            } catch (const UncertainAtStep& us) {
                slide_reason = std::string("itinerary uncertain: ") + us.what();
                ++k;
                continue;
            }
            if (e.digits.trailing_top_digits() * 2 >= depth) {
                slide_reason = "digit prefix ends in a long run of top digits";
                ++k;
                continue;
            }
            e.enclosure = e.digits.enclosure();
            if (slide_reason) out.substitutions.push_back({g[j], cand, *slide_reason});
            out.entries.push_back(std::move(e));
            used.push_back(cand);
            break;
        }
        if (k >= g.size() && slide_reason)
            out.substitutions.push_back({g[j], Rat(-1), *slide_reason + " (no later grid point free)"});
    }

    if (out.entries.size() * 2 < g.size())
        throw std::runtime_error("fewer than half the grid points survived the domain filter (" +
                                 std::to_string(out.entries.size()) + "/" + std::to_string(g.size()) + ")");
    return out;
}

void write_sample_csv(const SampleSet& s, std::ostream& out, bool decimal_columns) {
    out << "omega_lo,omega_hi,digits,x_lo,x_hi";
    if (decimal_columns) out << ",omega_dec,x_dec";
    out << "\n";
    const unsigned bits = working_precision();
    for (const auto& e : s.entries) {
        RatInterval ob = e.omega.enclosure(bits);
        out << format_rational(ob.lo) << "," << format_rational(ob.hi) << "," << e.digits.prefix(s.depth).str()
            << "," << format_rational(e.enclosure.lo) << "," << format_rational(e.enclosure.hi);
        if (decimal_columns) {
            out << "," << static_cast<double>(ob.mid()) << "," << static_cast<double>(e.enclosure.mid());
        }
        out << "\n";
    }
}

SampleSet read_sample_csv(std::istream& in, const PartitionSpec& spec, std::size_t depth) {
    SampleSet s;
    s.spec = spec;
    s.depth = depth;
    std::string line;
    do {  // skip comment lines, then the header row
        if (!std::getline(in, line)) throw std::runtime_error("empty sample file");
    } while (line.empty() || line[0] == '#');
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cols.push_back(cell);
        if (cols.size() < 5) throw std::runtime_error("bad sample row: " + line);
        SampleEntry e;
        Rat olo = parse_rational(cols[0]), ohi = parse_rational(cols[1]);
        e.omega = olo == ohi ? CirclePoint{olo} : CirclePoint{RatInterval{olo, ohi}};
        e.digits = parse_digits(cols[2], spec.d);
        e.enclosure = RatInterval{parse_rational(cols[3]), parse_rational(cols[4])};
        s.entries.push_back(std::move(e));
    }
    return s;
}

}  // namespace rotaset
