#pragma once

#include "rotaset/points.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rotaset {

enum class Verdict { pass, fail, uncertain };

std::string verdict_str(Verdict v);

/// One line of an analysis report. A fail always carries at least one witness.
struct CheckRecord {
    std::string name;
    Verdict verdict = Verdict::uncertain;
    std::string tolerance;  // empty when the check is exact
    long long checked = 0;
    long long violations = 0;
    long long uncertain = 0;
    std::vector<std::string> witnesses;
    std::string details;
    bool heuristic = false;
};

/// Sample extremes and the forward-boundary points located inside the sample:
/// alpha/beta are the min/max positions; alpha' is the largest point whose
/// image has no sample point strictly between it and beta, and beta' the
/// smallest point whose image has none strictly between it and alpha.
struct ExtremalData {
    std::size_t i_alpha = 0, i_beta = 0;
    std::ptrdiff_t i_alpha_prime = -1, i_beta_prime = -1;  // -1: not located
    RatInterval alpha, beta, alpha_prime, beta_prime;
    long long uncertain = 0;  // points whose image rank did not resolve

    bool valid() const { return i_alpha_prime >= 0 && i_beta_prime >= 0; }
};

struct AnalyzerOptions {
    long long trials = 20000;          // random triples when C(N,3) exceeds the cap
    long long exhaustive_cap = 1000000;
    std::uint64_t seed = 0;
    std::size_t depth_cap = 1 << 17;   // digit budget for certified compares
    std::optional<Rat> rank_tol;       // default 2/N
    Rat fiber_eps = Rat(Int(1), Int(1) << 30);
    Rat fiber_delta = Rat(Int(1), Int(1) << 10);
    Rat density_eps = Rat(Int(1), Int(100));
    std::size_t witness_cap = 8;
};

/// Cyclic-order preservation of the map on the sample, over all triples when
/// feasible and seeded random triples otherwise.
CheckRecord check_cyclic_order(AnalysisSample& s, const PointMap& map, const AnalyzerOptions& opt);

/// Fiber-cardinality screen: flags any eps-cluster of images with three or
/// more preimages that are pairwise separated by more than delta.
CheckRecord check_fibers(AnalysisSample& s, const PointMap& map, const Rat& eps, const Rat& delta,
                         const AnalyzerOptions& opt);

/// Locates alpha', beta' and verifies alpha < alpha' < beta' < beta with no
/// sample point strictly inside (alpha', beta').
std::pair<ExtremalData, CheckRecord> extremes_and_gap(AnalysisSample& s, const PointMap& map,
                                                      const AnalyzerOptions& opt);

/// The boundary-image chain alpha < T(beta) <= T(alpha) < beta.
CheckRecord check_boundary_images(AnalysisSample& s, const ExtremalData& X, const PointMap& map,
                                  const AnalyzerOptions& opt);

/// Order preservation and strict displacement signs on the two halves
/// [alpha, alpha'] (where Tx > x) and [beta', beta] (where Tx < x).
CheckRecord check_monotone_halves(AnalysisSample& s, const PointMap& map, const ExtremalData& X,
                                  const AnalyzerOptions& opt);

/// Empirical CDF heights at the sorted sample points: rank/N for rank 1..N.
std::vector<Rat> empirical_phi(const AnalysisSample& s);

/// Max circle distance between CDF(T x) and CDF(x) + theta0 over the sample,
/// with image CDF values read off by nearest rank.
CheckRecord check_semiconjugacy(AnalysisSample& s, const PointMap& map, const QuadraticNumber& theta0,
                                const Rat& tol, const AnalyzerOptions& opt);

struct FrequencyResult {
    Rat value;  // hits / total
    long long hits = 0;
    long long total = 0;
    long long uncertain = 0;
};

/// Exact visit count of the arc [lo, hi) (or [lo, hi] with inclusive_hi) over
/// all points; wrapping arcs (lo > hi) supported.
FrequencyResult visit_frequency(AnalysisSample& s, const APoint& lo, const APoint& hi,
                                bool inclusive_hi = false, std::size_t depth_cap = 1 << 17);

struct RotationEstimate {
    Rat value;          // visit frequency of [beta', beta]
    double radius = 0;  // heuristic 3 ln(n)/n
    long long n = 0;
    bool degenerate = false;
};

/// Rotation-number estimate as the visit frequency of the arc [beta', beta].
RotationEstimate rotation_number(AnalysisSample& s, const ExtremalData& X,
                                 std::size_t depth_cap = 1 << 17);

/// Exact star discrepancy of a finite sequence in [0,1) by the sorted-sample
/// formula.
Rat star_discrepancy(std::vector<Rat> u);

/// Heuristic epsilon-density proxy: every orbit point lies within eps (circle
/// metric) of the net formed by the orbit's own tail half.
CheckRecord minimality_density(AnalysisSample& s, const Rat& eps);

struct AnalysisReport {
    nlohmann::ordered_json metadata;
    std::vector<CheckRecord> checks;

    bool any_fail() const;
    bool any_uncertain() const;
};

/// Runs every applicable check in a fixed order. theta0 enables the
/// semiconjugacy and rotation-target comparisons; temporal inputs additionally
/// get rotation-number, CDF-push discrepancy, and density checks.
AnalysisReport run_full_suite(AnalysisSample& s, const PointMap& map,
                              const std::optional<QuadraticNumber>& theta0, const AnalyzerOptions& opt);

nlohmann::ordered_json check_to_json(const CheckRecord& c);
nlohmann::ordered_json report_to_json(const AnalysisReport& r);
std::string report_to_csv(const AnalysisReport& r);

}  // namespace rotaset
