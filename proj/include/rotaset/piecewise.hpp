#pragma once

#include "rotaset/coder.hpp"
#include "rotaset/digits.hpp"

#include <json.hpp>

namespace rotaset {

struct MapError : std::runtime_error {
    enum class Kind { bad_breakpoints, bad_knots, bad_range, uncertain_branch } kind;
    MapError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

struct Knot {
    Rat x, y;
};

/// Degree-d circle map with d strictly increasing piecewise-linear branches;
/// branch k maps [x_k, x_{k+1}) onto [0,1), starting at 0 with left-limit 1.
struct PiecewiseMap {
    int d = 2;
    std::vector<Rat> breakpoints;           // x_0 = 0 < ... < x_d = 1
    std::vector<std::vector<Knot>> branches;  // knots per branch, endpoints included

    /// Branch index containing x in [0,1): k with x_k <= x < x_{k+1}.
    int branch_of(const Rat& x) const;
};

/// Checks every structural invariant; throws MapError.
void validate_map(const PiecewiseMap& T);

/// The times-d map written as d affine branches.
PiecewiseMap times_d_map(int d);

Rat eval_map(const PiecewiseMap& T, const Rat& x);
QuadraticNumber eval_map(const PiecewiseMap& T, const QuadraticNumber& x);
/// Interval form: outward image box; throws uncertain_branch if the box
/// straddles a breakpoint.
CirclePoint eval_map(const PiecewiseMap& T, const CirclePoint& x);

/// Branch itinerary: digit j is the branch index of the j-th iterate.
DigitString iota(const PiecewiseMap& T, const Rat& x, std::size_t n);

/// Half-open interval of points whose itinerary starts with the word.
struct CylinderInterval {
    DigitString word;
    Rat lo, hi;  // [lo, hi)

    Rat width() const { return hi - lo; }
};

/// Pulls the word back through inverse branches; every word is admissible
/// because each branch is onto [0,1).
CylinderInterval cylinder(const PiecewiseMap& T, const DigitString& word);

struct Realization {
    RatInterval enclosure;     // closure of the cylinder
    Rat candidate;             // left endpoint
    bool verified = false;     // iota(candidate, n) == word
    long long first_mismatch = -1;
    bool suspicious_all_top = false;  // word ends in a long run of d-1 digits
};

/// Encloses a point whose itinerary extends the word, with a verified
/// candidate; callers deepen the word when verification fails.
Realization realize_word(const PiecewiseMap& T, const DigitString& word);

struct OrbitPoint {
    long long time = 0;
    Rat x;
    DigitString digits;     // remaining-word itinerary prefix at this point
    QuadraticNumber omega;  // rotation parameter driving this point's word
};

/// Orbit record for the pullback set Y: exact forward orbit of a realized
/// point whose itinerary follows the rotation word; temporal order.
struct PullbackOrbit {
    PiecewiseMap map;
    PartitionSpec spec;
    std::size_t depth = 0;
    Rat omega_star;
    std::size_t word_len = 0;
    std::vector<OrbitPoint> points;
};

/// Realizes the itinerary of omega* (the D0 grid point nearest 1/2) at depth
/// n + L*margin and iterates T with per-step branch certification.
PullbackOrbit pullback_sample(const PiecewiseMap& T, const PartitionSpec& spec, std::size_t depth,
                              std::size_t L, std::size_t grid_N = 500, std::size_t depth_margin = 2);

void write_orbit_csv(const PullbackOrbit& orbit, std::ostream& out, bool decimal_columns = false);

PiecewiseMap map_from_json(const nlohmann::json& j);
nlohmann::json map_to_json(const PiecewiseMap& T);

}  // namespace rotaset
