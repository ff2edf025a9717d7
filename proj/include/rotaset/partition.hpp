#pragma once

#include "rotaset/circle.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace rotaset {

enum class SpecError {
    bad_degree,
    bad_endpoints,
    unsorted_nodes,
    missing_theta_node,
    non_increasing_coding,
    coding_out_of_range,
    too_many_pieces,
    rational_theta0,
    theta0_out_of_range,
    bad_index_m,
    bad_field,
    uncertain_comparison,
};

const char* spec_error_name(SpecError e);

struct SpecValidationError : std::runtime_error {
    SpecError code;
    SpecValidationError(SpecError c, const std::string& msg)
        : std::runtime_error(std::string(spec_error_name(c)) + ": " + msg), code(c) {}
};

/// Inverse-process input: degree d, rotation angle theta0, partition nodes
/// t_0 = 0 < t_1 < ... < t_ell = 1 with t_m = 1 - theta0, and a strictly
/// increasing digit coding k_0 < ... < k_{ell-1} in {0, ..., d-1}.
struct PartitionSpec {
    int d = 2;
    CirclePoint theta0;
    bool theta0_irrational_asserted = false;  // set when theta0 arrives in interval form
    std::vector<CirclePoint> nodes;
    int m = 1;
    std::vector<int> coding;

    int ell() const { return static_cast<int>(nodes.size()) - 1; }
    bool all_exact() const;
};

/// Returns the spec unchanged iff every invariant holds; throws
/// SpecValidationError with a distinct code otherwise.
PartitionSpec validate_spec(const PartitionSpec& raw);

/// Point syntax: {"a":"p/q","b":"r/s","D":n} exact; {"lo":"p/q","hi":"r/s"}
/// interval; "p/q" exact rational; decimal literal "0.25" interval with
/// radius 10^-places; plain integers exact.
CirclePoint point_from_json(const nlohmann::json& j);
nlohmann::json point_to_json(const CirclePoint& p);

PartitionSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const PartitionSpec& spec);

}  // namespace rotaset
