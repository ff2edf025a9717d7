#pragma once

#include "rotaset/coder.hpp"

#include <json.hpp>

namespace rotaset {

/// Distinguished points of the times-d map: xi_k = k/d (breakpoints) and
/// eta_k = k/(d-1) (the fixed point inside I_k = [xi_k, xi_{k+1}]).
struct DadicContext {
    int d;

    explicit DadicContext(int d_) : d(d_) {
        if (d < 2) throw std::invalid_argument("degree must be at least 2");
    }

    Rat xi(int k) const { return Rat(k, d); }
    Rat eta(int k) const { return Rat(k, d - 1); }
    RatInterval I(int k) const { return {xi(k), xi(k + 1)}; }
};

/// d*x mod 1, exact on exact inputs, outward-rounded span on intervals.
CirclePoint times_d(const DadicContext& ctx, const CirclePoint& x);
Rat times_d(int d, const Rat& x);

/// The shift map on d-adic expansions: drops the first digit.
DigitString shift_digits(const DigitString& s);

struct DerivedPartition {
    int d = 2;
    std::vector<Rat> nodes;  // t_0 = 0, ..., t_ell = 1 (empirical, exact rationals)
    Rat node_radius;         // empirical-CDF resolution 1/N
    std::vector<int> coding;
    int m = 0;               // 1-based index of the last all-increasing piece
    Rat theta0_hat;          // 1 - t_m
    Rat theta0_radius;
};

struct DerivationError : std::runtime_error {
    enum class Kind { ambiguous_piece, piece_straddles_fixed_point, single_piece, structure_violation } kind;
    DerivationError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

/// Forward recovery of partition data from a rotational sample under times-d:
/// groups points by containing I_k (the coding), reads nodes off the empirical
/// CDF at piece boundaries, and finds m by the certified sign of Tx - x.
DerivedPartition derive_partition(SampleSet& sample);

nlohmann::json derived_to_json(const DerivedPartition& dp);

}  // namespace rotaset
