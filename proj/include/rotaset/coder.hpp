#pragma once

#include "rotaset/digits.hpp"
#include "rotaset/partition.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace rotaset {

/// Thrown when an orbit point lands exactly on a partition node.
struct NodeHitError : std::runtime_error {
    long long step;
    int node_index;
    NodeHitError(long long s, int i)
        : std::runtime_error("orbit hits node t_" + std::to_string(i) + " at step " + std::to_string(s)),
          step(s), node_index(i) {}
};

/// Thrown when an interval-form orbit point straddles a node at working precision.
struct UncertainAtStep : std::runtime_error {
    long long step;
    explicit UncertainAtStep(long long s)
        : std::runtime_error("orbit enclosure straddles a node at step " + std::to_string(s) +
                             "; raise ROTASET_PRECISION or supply exact inputs"),
          step(s) {}
};

struct D0Result {
    enum class Verdict { yes, yes_up_to_horizon, no, uncertain } verdict;
    long long witness_n = -1;  // least node-hit step for `no`; first straddle for `uncertain`
    int node_index = -1;
    long long horizon = 0;  // set for horizon-limited verdicts

    bool certified_yes() const { return verdict == Verdict::yes; }
};

/// Decides whether the forward rotation orbit of omega avoids every node.
/// Exact inputs get a closed-form certified answer: omega + n*theta0 = t_i + j
/// pins n on the sqrt(D) coefficient, leaving an integrality test.
/// Interval inputs are checked up to `horizon` steps.
D0Result in_D0(const PartitionSpec& spec, const CirclePoint& omega, long long horizon = 10000);

/// First n itinerary digits of omega: digit j is k_i when
/// omega + j*theta0 mod 1 lies in [t_i, t_{i+1}).
/// Throws NodeHitError / UncertainAtStep.
DigitString itinerary(const PartitionSpec& spec, const CirclePoint& omega, std::size_t n);

/// Half-open d-adic enclosure [v, v + d^-n) of E(omega) from the depth-n itinerary.
RatInterval encode(const PartitionSpec& spec, const CirclePoint& omega, std::size_t n);

struct SampleEntry {
    CirclePoint omega;
    DigitString digits;      // may be extended lazily past the nominal depth
    RatInterval enclosure;   // d-adic box at the nominal depth

    // Orbit continuation cache for lazy deepening (exact pipeline only).
    std::optional<QuadraticNumber> orbit_pos;
    std::size_t orbit_steps = 0;
};

struct Substitution {
    Rat from, to;
    std::string reason;
};

/// Finite, sorted stand-in for the rotational set: records (omega, digit
/// prefix, enclosure of E(omega)) in strictly increasing omega order.
struct SampleSet {
    PartitionSpec spec;
    std::size_t depth = 0;
    std::vector<SampleEntry> entries;
    std::vector<Substitution> substitutions;
    long long horizon_used = 0;  // nonzero when membership was horizon-certified

    std::size_t size() const { return entries.size(); }

    /// Digits of entry idx to at least `depth` places, extending the stored
    /// prefix incrementally from the exact omega handle when needed.
    const DigitString& digits_at(std::size_t idx, std::size_t depth);

    /// True when entries carry exact omega handles (deepening available).
    bool deepenable() const;
};

/// Builds a SampleSet over the default midpoint grid (2j+1)/(2N) or a caller
/// grid. Points failing the D0 filter slide to the next grid point (logged);
/// fails if fewer than N/2 points survive.
SampleSet sample_set(const PartitionSpec& spec, std::size_t N, std::size_t depth,
                     const std::vector<Rat>* grid = nullptr, long long horizon = 10000);

/// CSV columns: omega_lo, omega_hi, digits, x_lo, x_hi (rationals as "p/q").
/// With decimal_columns, appends omega_dec and x_dec convenience columns.
void write_sample_csv(const SampleSet& s, std::ostream& out, bool decimal_columns = false);

/// Reads entries back; exact omegas are recovered where omega_lo == omega_hi,
/// and re-attached to the spec (from metadata) for certified deepening.
SampleSet read_sample_csv(std::istream& in, const PartitionSpec& spec, std::size_t depth);

}  // namespace rotaset
