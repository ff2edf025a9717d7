#include "rotaset/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

namespace rotaset {

std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::pass:
            return "pass";
        case Verdict::fail:
            return "fail";
        case Verdict::uncertain:
            return "uncertain";
    }
    return "?";
}

namespace {

double to_dbl(const Rat& r) { return r.convert_to<double>(); }

std::string dec(const Rat& r) {
    std::ostringstream os;
    os << std::setprecision(9) << to_dbl(r);
    return os.str();
}

std::string point_dec(const APoint& p) {
    RatInterval b = p.enclosure(64);
    return dec((b.lo + b.hi) / 2);
}

void add_witness(CheckRecord& rec, const AnalyzerOptions& opt, const std::string& w) {
    if (rec.witnesses.size() < opt.witness_cap) rec.witnesses.push_back(w);
}

Verdict settle(long long violations, long long uncertain) {
    if (violations > 0 && uncertain == 0) return Verdict::fail;
    if (violations > 0 || uncertain > 0) return Verdict::uncertain;
    return Verdict::pass;
}

/// Number of sample points with position strictly below p; nullopt when a
/// needed comparison does not resolve.
std::optional<std::size_t> rank_below(AnalysisSample& s, const APoint& p, std::size_t cap) {
    std::size_t lo = 0, hi = s.pts.size();
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        std::optional<int> c = cmp_points(s.pts[mid], p, cap);
        if (!c) return std::nullopt;
        if (*c < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

/// Number of sample points with position <= p.
std::optional<std::size_t> rank_leq(AnalysisSample& s, const APoint& p, std::size_t cap) {
    std::size_t lo = 0, hi = s.pts.size();
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        std::optional<int> c = cmp_points(s.pts[mid], p, cap);
        if (!c) return std::nullopt;
        if (*c <= 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

Rat circle_dist_rat(const Rat& a, const Rat& b) {
    Rat d = a < b ? b - a : a - b;
    return d <= Rat(1) - d ? d : Rat(1) - d;
}

QuadraticNumber circle_dist_quad(const QuadraticNumber& delta) {
    QuadraticNumber d = reduce_mod1_quad(delta);
    QuadraticNumber rest = QuadraticNumber(Rat(1), Rat(0), d.D) - d;
    return surd_sign(d - rest) == Sign::positive ? rest : d;
}

}  // namespace

CheckRecord check_cyclic_order(AnalysisSample& s, const PointMap& map, const AnalyzerOptions& opt) {
    const std::size_t n = s.size();
    if (n < 3) throw std::invalid_argument("too-few-points: cyclic-order check needs at least 3 points");

    CheckRecord rec;
    rec.name = "cyclic-order";
    std::vector<APoint> img;
    img.reserve(n);
    for (const APoint& p : s.pts) img.push_back(apply_map(map, p));

    long long total = static_cast<long long>(n) * (n - 1) * (n - 2) / 6;
    bool exhaustive = total <= opt.exhaustive_cap;

    long long equal_skipped = 0;
    auto examine = [&](std::size_t i, std::size_t j, std::size_t k) {
        ++rec.checked;
        std::optional<int> uv = cmp_points(img[i], img[j], opt.depth_cap);
        std::optional<int> uw = cmp_points(img[i], img[k], opt.depth_cap);
        std::optional<int> vw = cmp_points(img[j], img[k], opt.depth_cap);
        if (!uv || !uw || !vw) {
            ++rec.uncertain;
            add_witness(rec, opt, "unresolved triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                      std::to_string(k) + ")");
            return;
        }
        if (*uv == 0 || *uw == 0 || *vw == 0) {
            ++equal_skipped;  // images not certified distinct: vacuous
            return;
        }
        int ru = (*uv > 0) + (*uw > 0);
        int rv = (*uv < 0) + (*vw > 0);
        int rw = (*uw < 0) + (*vw < 0);
        bool positive = (ru == 0 && rv == 1 && rw == 2) || (ru == 1 && rv == 2 && rw == 0) ||
                        (ru == 2 && rv == 0 && rw == 1);
        bool negative = (ru == 2 && rv == 1 && rw == 0) || (ru == 1 && rv == 0 && rw == 2) ||
                        (ru == 0 && rv == 2 && rw == 1);
        if (!positive && !negative) throw std::logic_error("inconsistent certified comparisons in triple");
        if (!positive) {
            ++rec.violations;
            add_witness(rec, opt, "triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                      std::to_string(k) + ") images reverse orientation: " + point_dec(img[i]) +
                                      ", " + point_dec(img[j]) + ", " + point_dec(img[k]));
        }
    };

    if (exhaustive) {
        for (std::size_t i = 0; i + 2 < n; ++i)
            for (std::size_t j = i + 1; j + 1 < n; ++j)
                for (std::size_t k = j + 1; k < n; ++k) examine(i, j, k);
        rec.details = "exhaustive over " + std::to_string(total) + " triples";
    } else {
        std::mt19937_64 gen(opt.seed);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (long long t = 0; t < opt.trials; ++t) {
            std::size_t a = pick(gen), b = pick(gen), c = pick(gen);
            while (b == a) b = pick(gen);
            while (c == a || c == b) c = pick(gen);
            std::size_t lo = std::min({a, b, c}), hi = std::max({a, b, c});
            std::size_t mid = a + b + c - lo - hi;
            examine(lo, mid, hi);
        }
        rec.details = "seeded sample of " + std::to_string(opt.trials) + " of " + std::to_string(total) + " triples";
    }
    if (equal_skipped > 0) rec.details += "; " + std::to_string(equal_skipped) + " triples with equal images skipped";
    rec.verdict = settle(rec.violations, rec.uncertain);
    return rec;
}

CheckRecord check_fibers(AnalysisSample& s, const PointMap& map, const Rat& eps, const Rat& delta,
                         const AnalyzerOptions& opt) {
    if (!(eps < delta / 4)) throw std::invalid_argument("fiber check requires resolution < separation/4");

    CheckRecord rec;
    rec.name = "fiber-cardinality";
    rec.tolerance = "resolution " + dec(eps) + ", separation " + dec(delta);
    const std::size_t n = s.size();
    rec.checked = static_cast<long long>(n);

    std::vector<APoint> img;
    img.reserve(n);
    for (const APoint& p : s.pts) img.push_back(apply_map(map, p));

    // Order images by enclosure; resolution below eps/4 keeps the clustering
    // scan conservative.
    std::vector<RatInterval> box(n);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        box[i] = img[i].enclosure(96);
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return box[a].lo < box[b].lo || (box[a].lo == box[b].lo && a < b);
    });

    auto preimage_sep = [&](std::size_t a, std::size_t b) {  // certified position gap > delta?
        RatInterval pa = s.pts[a].enclosure(96), pb = s.pts[b].enclosure(96);
        if (pb.lo > pa.hi) return pb.lo - pa.hi > delta;
        if (pa.lo > pb.hi) return pa.lo - pb.hi > delta;
        return false;
    };

    // Decides whether adjacent (in image order) entries are within eps.  A gap
    // pinned near the threshold gets refined before conceding uncertainty: on
    // coded samples, image gaps cling to exact powers of the radix until the
    // digit tails part ways.
    const std::size_t bit_cap = std::min<std::size_t>(opt.depth_cap, 8192);
    auto gap_state = [&](std::size_t a, std::size_t b, const Rat& offset) {  // -1 separated, 0 unknown, 1 close
        RatInterval ga = box[a], gb = box[b];
        for (std::size_t bits = 96;;) {
            if (gb.lo + offset - ga.hi > eps) return -1;
            if (gb.hi + offset - ga.lo <= eps) return 1;
            if (bits >= bit_cap) return 0;
            bits = std::min(bits * 2, bit_cap);
            ga = img[a].enclosure(bits);
            gb = img[b].enclosure(bits);
        }
    };

    std::vector<std::vector<std::size_t>> clusters;
    std::vector<std::size_t> cluster;
    for (std::size_t pos = 0; pos < n; ++pos) {
        std::size_t i = order[pos];
        if (!cluster.empty()) {
            int st = gap_state(order[pos - 1], i, Rat(0));
            if (st < 0) {
                clusters.push_back(std::move(cluster));
                cluster.clear();
            } else if (st == 0) {
                ++rec.uncertain;  // keep chaining: merging is the conservative reading
            }
        }
        cluster.push_back(i);
    }
    if (!cluster.empty()) clusters.push_back(std::move(cluster));

    // Images live on the circle: the trailing cluster may chain into the
    // leading one through the wrap at 1.
    if (clusters.size() >= 2) {
        int st = gap_state(clusters.back().back(), clusters.front().front(), Rat(1));
        if (st > 0) {
            std::vector<std::size_t>& first = clusters.front();
            first.insert(first.begin(), clusters.back().begin(), clusters.back().end());
            clusters.pop_back();
        } else if (st == 0) {
            ++rec.uncertain;
        }
    }

    for (std::vector<std::size_t>& cl : clusters) {
        if (cl.size() < 3) continue;
        std::sort(cl.begin(), cl.end());  // sample order = position order
        std::vector<std::size_t> far;
        for (std::size_t idx : cl) {
            if (far.empty() || preimage_sep(far.back(), idx)) far.push_back(idx);
        }
        // Positions also wrap: the extremes of the separated list may meet
        // through 1 and then witness only far.size()-1 distinct spots.
        std::size_t distinct = far.size();
        if (distinct >= 3) {
            RatInterval lo = s.pts[far.front()].enclosure(96), hi = s.pts[far.back()].enclosure(96);
            if (!(lo.lo + 1 - hi.hi > delta)) --distinct;
        }
        if (distinct >= 3) {
            ++rec.violations;
            std::string w = "images near " + point_dec(img[cl.front()]) + " with separated preimages";
            for (std::size_t j = 0; j < std::min<std::size_t>(far.size(), 4); ++j) w += " #" + std::to_string(far[j]);
            add_witness(rec, opt, w);
        }
    }

    rec.details = "eps-chained image clusters screened for >=3 delta-separated preimages";
    rec.verdict = settle(rec.violations, rec.uncertain);
    return rec;
}

std::pair<ExtremalData, CheckRecord> extremes_and_gap(AnalysisSample& s, const PointMap& map,
                                                      const AnalyzerOptions& opt) {
    CheckRecord rec;
    rec.name = "gap-structure";
    ExtremalData X;
    const std::size_t n = s.size();
    if (n == 0) throw std::invalid_argument("extremes_and_gap: empty sample");
    X.i_alpha = 0;
    X.i_beta = n - 1;
    X.alpha = s.pts[0].enclosure(64);
    X.beta = s.pts[n - 1].enclosure(64);
    if (n == 1) {
        rec.verdict = Verdict::uncertain;
        rec.details = "single point: boundary structure undefined";
        return {X, rec};
    }

    std::ptrdiff_t best_alpha = -1, best_beta = -1;
    for (std::size_t i = 0; i < n; ++i) {
        APoint im = apply_map(map, s.pts[i]);
        std::optional<std::size_t> leq = rank_leq(s, im, opt.depth_cap);
        std::optional<std::size_t> blw = rank_below(s, im, opt.depth_cap);
        if (!leq || !blw) {
            ++X.uncertain;
            continue;
        }
        // points strictly between the image and beta (overshoots count zero)
        long long toward_beta = static_cast<long long>(n) - 1 - static_cast<long long>(*leq);
        if (toward_beta <= 0) best_alpha = static_cast<std::ptrdiff_t>(i);  // scan ascending: keeps the max
        // points strictly between alpha and the image (undershoots count zero)
        long long toward_alpha = static_cast<long long>(*blw) - 1;
        if (toward_alpha <= 0 && best_beta < 0) best_beta = static_cast<std::ptrdiff_t>(i);  // first hit: the min
    }
    rec.checked = static_cast<long long>(n);
    rec.uncertain = X.uncertain;

    X.i_alpha_prime = best_alpha;
    X.i_beta_prime = best_beta;
    if (best_alpha >= 0) X.alpha_prime = s.pts[static_cast<std::size_t>(best_alpha)].enclosure(64);
    if (best_beta >= 0) X.beta_prime = s.pts[static_cast<std::size_t>(best_beta)].enclosure(64);

    if (!X.valid()) {
        rec.verdict = Verdict::uncertain;
        rec.details = best_alpha < 0 ? "no point maps adjacent to the maximum at this resolution"
                                     : "no point maps adjacent to the minimum at this resolution";
        return {X, rec};
    }

    std::size_t ia = static_cast<std::size_t>(best_alpha), ib = static_cast<std::size_t>(best_beta);
    bool chain = 0 < ia && ia < ib && ib < n - 1;
    if (!chain) {
        ++rec.violations;
        add_witness(rec, opt,
                    "inequality chain broken: indices alpha=0, alpha'=" + std::to_string(ia) +
                        ", beta'=" + std::to_string(ib) + ", beta=" + std::to_string(n - 1));
    } else {
        for (std::size_t j = ia + 1; j < ib; ++j) {
            ++rec.violations;
            add_witness(rec, opt, "point #" + std::to_string(j) + " at " + point_dec(s.pts[j]) +
                                      " lies strictly inside the gap");
        }
    }
    rec.details = "alpha'=" + dec((X.alpha_prime.lo + X.alpha_prime.hi) / 2) +
                  " beta'=" + dec((X.beta_prime.lo + X.beta_prime.hi) / 2);
    rec.verdict = settle(rec.violations, rec.uncertain);
    return {X, rec};
}

CheckRecord check_boundary_images(AnalysisSample& s, const ExtremalData& X, const PointMap& map,
                                  const AnalyzerOptions& opt) {
    CheckRecord rec;
    rec.name = "boundary-images";
    const APoint& alpha = s.pts[X.i_alpha];
    const APoint& beta = s.pts[X.i_beta];
    APoint t_alpha = apply_map(map, alpha);
    APoint t_beta = apply_map(map, beta);
    rec.checked = 3;

    std::optional<int> c1 = cmp_points(alpha, t_beta, opt.depth_cap);
    std::optional<int> c2 = cmp_points(t_beta, t_alpha, opt.depth_cap);
    std::optional<int> c3 = cmp_points(t_alpha, beta, opt.depth_cap);

    auto judge = [&](const char* label, const std::optional<int>& c, bool strict) {
        if (!c) {
            ++rec.uncertain;
            add_witness(rec, opt, std::string(label) + ": enclosures overlap");
            return;
        }
        bool ok = strict ? *c < 0 : *c <= 0;
        if (!ok) {
            ++rec.violations;
            add_witness(rec, opt, std::string(label) + " violated (alpha=" + point_dec(alpha) +
                                      ", T(beta)=" + point_dec(t_beta) + ", T(alpha)=" + point_dec(t_alpha) +
                                      ", beta=" + point_dec(beta) + ")");
        }
    };
    judge("alpha < T(beta)", c1, true);
    judge("T(beta) <= T(alpha)", c2, false);
    judge("T(alpha) < beta", c3, true);

    rec.verdict = settle(rec.violations, rec.uncertain);
    return rec;
}

CheckRecord check_monotone_halves(AnalysisSample& s, const PointMap& map, const ExtremalData& X,
                                  const AnalyzerOptions& opt) {
    CheckRecord rec;
    rec.name = "monotone-halves";
    if (!X.valid()) {
        rec.verdict = Verdict::uncertain;
        rec.details = "boundary points not located; halves undefined";
        return rec;
    }
    std::size_t ia = static_cast<std::size_t>(X.i_alpha_prime);
    std::size_t ib = static_cast<std::size_t>(X.i_beta_prime);

    auto run_half = [&](std::size_t lo, std::size_t hi, int want_sign, const char* label) {
        std::vector<APoint> img;
        img.reserve(hi - lo + 1);
        for (std::size_t i = lo; i <= hi; ++i) img.push_back(apply_map(map, s.pts[i]));
        for (std::size_t i = lo; i <= hi; ++i) {
            ++rec.checked;
            std::optional<int> c = cmp_points(img[i - lo], s.pts[i], opt.depth_cap);
            if (!c) {
                ++rec.uncertain;
                continue;
            }
            if (*c == 0) {
                ++rec.violations;
                add_witness(rec, opt, std::string(label) + ": fixed point at #" + std::to_string(i) + " (" +
                                          point_dec(s.pts[i]) + ")");
            } else if (*c != want_sign) {
                ++rec.violations;
                add_witness(rec, opt, std::string(label) + ": displacement sign wrong at #" + std::to_string(i) +
                                          " (" + point_dec(s.pts[i]) + " -> " + point_dec(img[i - lo]) + ")");
            }
        }
        for (std::size_t i = lo; i < hi; ++i) {
            ++rec.checked;
            std::optional<int> c = cmp_points(img[i - lo], img[i - lo + 1], opt.depth_cap);
            if (!c) {
                ++rec.uncertain;
                continue;
            }
            if (*c >= 0) {
                ++rec.violations;
                add_witness(rec, opt, std::string(label) + ": order not preserved between #" + std::to_string(i) +
                                          " and #" + std::to_string(i + 1));
            }
        }
    };

    if (ia >= X.i_alpha)
        run_half(X.i_alpha, ia, 1, "left half");
    else
        rec.details += "left half empty; ";
    if (X.i_beta >= ib)
        run_half(ib, X.i_beta, -1, "right half");
    else
        rec.details += "right half empty; ";

    rec.verdict = settle(rec.violations, rec.uncertain);
    return rec;
}

std::vector<Rat> empirical_phi(const AnalysisSample& s) {
    const std::size_t n = s.size();
    if (n == 0) throw std::invalid_argument("empirical_phi: empty sample");
    std::vector<Rat> phi(n);
    for (std::size_t i = 0; i < n; ++i) phi[i] = Rat(Int(i + 1), Int(n));
    return phi;
}

CheckRecord check_semiconjugacy(AnalysisSample& s, const PointMap& map, const QuadraticNumber& theta0,
                                const Rat& tol, const AnalyzerOptions& opt) {
    CheckRecord rec;
    rec.name = "semiconjugacy";
    rec.tolerance = dec(tol);
    const std::size_t n = s.size();
    if (n == 0) throw std::invalid_argument("check_semiconjugacy: empty sample");

    QuadraticNumber max_defect(Rat(0), Rat(0), theta0.D);
    std::ptrdiff_t arg_max = -1;
    for (std::size_t i = 0; i < n; ++i) {
        ++rec.checked;
        APoint im = apply_map(map, s.pts[i]);
        std::optional<std::size_t> r = rank_leq(s, im, opt.depth_cap);
        if (!r) {
            ++rec.uncertain;
            continue;
        }
        Rat phi_tx = Rat(Int(*r), Int(n));
        Rat phi_x = Rat(Int(i + 1), Int(n));
        QuadraticNumber defect = circle_dist_quad(QuadraticNumber(phi_tx - phi_x, Rat(0), theta0.D) - theta0);
        if (surd_sign(defect - max_defect) == Sign::positive) {
            max_defect = defect;
            arg_max = static_cast<std::ptrdiff_t>(i);
        }
    }
    RatInterval md = enclose_quad(max_defect, 64);
    rec.details = "max defect " + dec((md.lo + md.hi) / 2) +
                  (arg_max >= 0 ? " at #" + std::to_string(arg_max) : "");
    bool over = surd_sign(max_defect - QuadraticNumber(tol, Rat(0), theta0.D)) == Sign::positive;
    if (over) {
        ++rec.violations;
        add_witness(rec, opt, "defect " + dec((md.lo + md.hi) / 2) + " at #" + std::to_string(arg_max) +
                                  " exceeds tolerance " + dec(tol));
    }
    rec.verdict = settle(rec.violations, rec.uncertain);
    return rec;
}

FrequencyResult visit_frequency(AnalysisSample& s, const APoint& lo, const APoint& hi, bool inclusive_hi,
                                std::size_t depth_cap) {
    const std::size_t n = s.size();
    if (n == 0) throw std::invalid_argument("visit_frequency: empty orbit");
    FrequencyResult out;
    out.total = static_cast<long long>(n);

    std::optional<int> span = cmp_points(lo, hi, depth_cap);
    if (!span) {
        out.uncertain = out.total;
        out.value = Rat(0);
        return out;
    }
    if (*span == 0 && !inclusive_hi) {
        out.value = Rat(0);
        return out;
    }
    bool wraps = *span > 0;

    for (const APoint& p : s.pts) {
        std::optional<int> cl = cmp_points(p, lo, depth_cap);
        std::optional<int> ch = cmp_points(p, hi, depth_cap);
        if (!cl || !ch) {
            ++out.uncertain;
            continue;
        }
        bool ge_lo = *cl >= 0;
        bool lt_hi = inclusive_hi ? *ch <= 0 : *ch < 0;
        bool in = wraps ? (ge_lo || lt_hi) : (ge_lo && lt_hi);
        if (in) ++out.hits;
    }
    out.value = Rat(Int(out.hits), Int(out.total));
    return out;
}

RotationEstimate rotation_number(AnalysisSample& s, const ExtremalData& X, std::size_t depth_cap) {
    RotationEstimate est;
    est.n = static_cast<long long>(s.size());
    if (est.n < 2 || !X.valid()) {
        est.degenerate = true;
    } else {
        std::size_t ia = static_cast<std::size_t>(X.i_alpha_prime);
        std::size_t ib = static_cast<std::size_t>(X.i_beta_prime);
        if (!(X.i_alpha < ia && ia < ib && ib < X.i_beta)) est.degenerate = true;
    }
    if (X.i_beta_prime >= 0) {
        FrequencyResult f = visit_frequency(s, s.pts[static_cast<std::size_t>(X.i_beta_prime)], s.pts[X.i_beta],
                                            /*inclusive_hi=*/true, depth_cap);
        est.value = f.value;
    }
    if (est.n >= 1) est.radius = 3.0 * std::log(static_cast<double>(est.n)) / static_cast<double>(est.n);
    return est;
}

Rat star_discrepancy(std::vector<Rat> u) {
    const std::size_t n = u.size();
    if (n == 0) throw std::invalid_argument("star_discrepancy: empty sequence");
    for (const Rat& x : u)
        if (x < 0 || x >= 1) throw std::invalid_argument("star_discrepancy: values must lie in [0,1)");
    std::sort(u.begin(), u.end());
    Rat best(0);
    for (std::size_t i = 1; i <= n; ++i) {
        Rat hi = Rat(Int(i), Int(n)) - u[i - 1];
        Rat lo = u[i - 1] - Rat(Int(i - 1), Int(n));
        if (hi > best) best = hi;
        if (lo > best) best = lo;
    }
    return best;
}

CheckRecord minimality_density(AnalysisSample& s, const Rat& eps) {
    CheckRecord rec;
    rec.name = "minimality-density";
    rec.heuristic = true;
    rec.tolerance = dec(eps);
    const std::size_t n = s.size();
    if (n < 2) throw std::invalid_argument("minimality_density: orbit needs at least 2 points");

    int max_time = -1;
    for (const APoint& p : s.pts) max_time = std::max(max_time, p.time);
    std::vector<Rat> net;
    std::vector<Rat> mids(n);
    for (std::size_t i = 0; i < n; ++i) {
        RatInterval b = s.pts[i].enclosure(64);
        mids[i] = (b.lo + b.hi) / 2;
        if (2 * s.pts[i].time >= max_time) net.push_back(mids[i]);
    }
    std::sort(net.begin(), net.end());
    if (net.empty()) {
        rec.verdict = Verdict::uncertain;
        rec.details = "empty tail net";
        return rec;
    }

    AnalyzerOptions wopt;  // default witness cap
    for (std::size_t i = 0; i < n; ++i) {
        ++rec.checked;
        auto it = std::lower_bound(net.begin(), net.end(), mids[i]);
        Rat best(1);
        if (it != net.end()) best = std::min(best, circle_dist_rat(*it, mids[i]));
        if (it != net.begin()) best = std::min(best, circle_dist_rat(*std::prev(it), mids[i]));
        best = std::min(best, circle_dist_rat(net.front(), mids[i]));
        best = std::min(best, circle_dist_rat(net.back(), mids[i]));
        if (best > eps) {
            ++rec.violations;
            add_witness(rec, wopt, "point #" + std::to_string(i) + " at " + dec(mids[i]) + " is " + dec(best) +
                                       " from the tail net");
        }
    }
    rec.details = "tail net of " + std::to_string(net.size()) + " points; positions at depth-64 midpoints";
    rec.verdict = rec.violations > 0 ? Verdict::fail : Verdict::pass;
    return rec;
}

bool AnalysisReport::any_fail() const {
    for (const CheckRecord& c : checks)
        if (c.verdict == Verdict::fail) return true;
    return false;
}

bool AnalysisReport::any_uncertain() const {
    for (const CheckRecord& c : checks)
        if (c.verdict == Verdict::uncertain) return true;
    return false;
}

AnalysisReport run_full_suite(AnalysisSample& s, const PointMap& map,
                              const std::optional<QuadraticNumber>& theta0, const AnalyzerOptions& opt) {
    AnalysisReport rep;
    const std::size_t n = s.size();
    Rat rank_tol = opt.rank_tol ? *opt.rank_tol : Rat(Int(2), Int(std::max<std::size_t>(n, 1)));

    rep.metadata["source"] = s.source;
    rep.metadata["n"] = n;
    rep.metadata["depth"] = s.depth;
    rep.metadata["map"] = map.name();
    {
        std::ostringstream os;
        os << "0x" << std::hex << opt.seed;
        rep.metadata["seed"] = os.str();
    }
    rep.metadata["trials"] = opt.trials;
    rep.metadata["rank_tolerance"] = dec(rank_tol);

    rep.checks.push_back(check_cyclic_order(s, map, opt));
    rep.checks.push_back(check_fibers(s, map, opt.fiber_eps, opt.fiber_delta, opt));
    auto [X, gap_rec] = extremes_and_gap(s, map, opt);
    rep.checks.push_back(gap_rec);
    rep.checks.push_back(check_boundary_images(s, X, map, opt));
    rep.checks.push_back(check_monotone_halves(s, map, X, opt));
    if (theta0) rep.checks.push_back(check_semiconjugacy(s, map, *theta0, rank_tol, opt));

    if (s.has_time) {
        {
            CheckRecord rec;
            rec.name = "rotation-number";
            RotationEstimate est = rotation_number(s, X, opt.depth_cap);
            std::ostringstream os;
            os << dec(est.value) << " +- " << std::setprecision(3) << est.radius << " (heuristic radius)";
            rec.details = os.str();
            rec.heuristic = true;
            rec.checked = est.n;
            if (est.degenerate) {
                rec.verdict = Verdict::uncertain;
                rec.details += "; degenerate boundary structure";
            } else if (theta0) {
                RatInterval th = enclose_quad(*theta0, 64);
                Rat target = (th.lo + th.hi) / 2;
                Rat err = circle_dist_rat(est.value, target);
                std::ostringstream tos;
                tos << std::setprecision(3) << est.radius;
                rec.tolerance = tos.str();
                rec.verdict = to_dbl(err) <= est.radius ? Verdict::pass : Verdict::uncertain;
                rec.details += "; distance to rotation angle " + dec(err);
            } else {
                rec.verdict = Verdict::pass;
            }
            rep.checks.push_back(rec);
        }
        {
            CheckRecord rec;
            rec.name = "cdf-push-discrepancy";
            std::vector<std::size_t> order = s.temporal_order();
            std::vector<Rat> push;
            push.reserve(n);
            for (std::size_t k = 0; k < n; ++k) push.push_back(Rat(Int(order[k]), Int(n)));
            Rat dstar = star_discrepancy(push);
            rec.checked = static_cast<long long>(n);
            rec.details = "push D* = " + dec(dstar);
            if (theta0 && n > 0) {
                Rat omega0 = Rat(Int(order[0]), Int(n));
                std::vector<Rat> rot;
                rot.reserve(n);
                QuadraticNumber w(omega0, Rat(0), theta0->D);
                for (std::size_t k = 0; k < n; ++k) {
                    RatInterval b = enclose_quad(w, 128);
                    Rat v = (b.lo + b.hi) / 2;
                    if (v < 0) v = Rat(0);
                    if (v >= 1) v -= 1;
                    rot.push_back(v);
                    w = reduce_mod1_quad(w + *theta0);
                }
                Rat dstar_rot = star_discrepancy(rot);
                Rat diff = dstar > dstar_rot ? dstar - dstar_rot : dstar_rot - dstar;
                rec.tolerance = dec(rank_tol);
                rec.details += "; rotation D* = " + dec(dstar_rot) + "; |diff| = " + dec(diff);
                if (diff > rank_tol) {
                    ++rec.violations;
                    rec.witnesses.push_back("discrepancy mismatch " + dec(diff) + " exceeds " + dec(rank_tol));
                    rec.verdict = Verdict::fail;
                } else {
                    rec.verdict = Verdict::pass;
                }
            } else {
                rec.verdict = Verdict::pass;
            }
            rep.checks.push_back(rec);
        }
        rep.checks.push_back(minimality_density(s, opt.density_eps));
    }
    return rep;
}

nlohmann::ordered_json check_to_json(const CheckRecord& c) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["verdict"] = verdict_str(c.verdict);
    j["tolerance"] = c.tolerance;
    j["checked"] = c.checked;
    j["violations"] = c.violations;
    j["uncertain"] = c.uncertain;
    j["witnesses"] = c.witnesses;
    j["details"] = c.details;
    j["heuristic"] = c.heuristic;
    return j;
}

nlohmann::ordered_json report_to_json(const AnalysisReport& r) {
    nlohmann::ordered_json j;
    j["metadata"] = r.metadata;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const CheckRecord& c : r.checks) checks.push_back(check_to_json(c));
    j["checks"] = checks;
    j["any_fail"] = r.any_fail();
    return j;
}

namespace {
std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += "\"";
    return out;
}
}  // namespace

std::string report_to_csv(const AnalysisReport& r) {
    std::ostringstream os;
    os << "name,verdict,tolerance,checked,violations,uncertain,heuristic,details,witnesses\n";
    for (const CheckRecord& c : r.checks) {
        std::string ws;
        for (std::size_t i = 0; i < c.witnesses.size(); ++i) {
            if (i) ws += " | ";
            ws += c.witnesses[i];
        }
        os << c.name << ',' << verdict_str(c.verdict) << ',' << csv_quote(c.tolerance) << ',' << c.checked << ','
           << c.violations << ',' << c.uncertain << ',' << (c.heuristic ? 1 : 0) << ',' << csv_quote(c.details)
           << ',' << csv_quote(ws) << '\n';
    }
    return os.str();
}

}  // namespace rotaset
