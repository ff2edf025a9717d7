#include "rotaset/partition.hpp"

#include <limits>

namespace rotaset {

const char* spec_error_name(SpecError e) {
    switch (e) {
        case SpecError::bad_degree: return "bad-degree";
        case SpecError::bad_endpoints: return "bad-endpoints";
        case SpecError::unsorted_nodes: return "unsorted-nodes";
        case SpecError::missing_theta_node: return "missing-theta-node";
        case SpecError::non_increasing_coding: return "non-increasing-coding";
        case SpecError::coding_out_of_range: return "coding-out-of-range";
        case SpecError::too_many_pieces: return "too-many-pieces";
        case SpecError::rational_theta0: return "rational-theta0";
        case SpecError::theta0_out_of_range: return "theta0-out-of-range";
        case SpecError::bad_index_m: return "bad-index-m";
        case SpecError::bad_field: return "bad-field";
        case SpecError::uncertain_comparison: return "uncertain-comparison";
    }
    return "unknown";
}

bool PartitionSpec::all_exact() const {
    if (!theta0.is_exact()) return false;
    for (const auto& n : nodes)
        if (!n.is_exact()) return false;
    return true;
}

namespace {

std::optional<int> certified_cmp(const CirclePoint& x, const CirclePoint& y) {
    if (x.is_exact() && y.is_exact()) return sign_int(surd_sign(x.exact() - y.exact()));
    return interval_cmp(x.enclosure(working_precision()), y.enclosure(working_precision()));
}

}  // namespace

PartitionSpec validate_spec(const PartitionSpec& raw) {
    if (raw.d < 2) throw SpecValidationError(SpecError::bad_degree, "degree must be at least 2");
    int ell = raw.ell();
    if (ell < 2)
        throw SpecValidationError(SpecError::bad_endpoints, "need nodes t_0 = 0 < interior < t_ell = 1");
    if (ell > raw.d)
        throw SpecValidationError(SpecError::too_many_pieces,
                                  "partition has " + std::to_string(ell) + " pieces but degree is " +
                                      std::to_string(raw.d));

    // theta0: irrational, inside (0,1).
    if (raw.theta0.is_exact()) {
        const QuadraticNumber& th = raw.theta0.exact();
        if (th.is_rational())
            throw SpecValidationError(SpecError::rational_theta0, "theta0 = " + quad_to_string(th));
        if (!is_square_free(th.D))
            throw SpecValidationError(SpecError::bad_field, "D = " + th.D.str() + " is not square-free");
        if (surd_sign(th) != Sign::positive || surd_sign(th - QuadraticNumber{Rat(1)}) != Sign::negative)
            throw SpecValidationError(SpecError::theta0_out_of_range, quad_to_string(th));
    } else {
        const RatInterval& box = raw.theta0.box();
        if (!raw.theta0_irrational_asserted)
            throw SpecValidationError(SpecError::rational_theta0,
                                      "interval theta0 requires an explicit irrationality assertion");
        if (box.lo <= 0 || box.hi >= 1)
            throw SpecValidationError(SpecError::theta0_out_of_range,
                                      "[" + format_rational(box.lo) + ", " + format_rational(box.hi) + "]");
    }

    // Endpoints pinned to 0 and 1 exactly.
    auto is_exact_value = [](const CirclePoint& p, long v) {
        return p.is_exact() && surd_sign(p.exact() - QuadraticNumber{Rat(v)}) == Sign::zero;
    };
    if (!is_exact_value(raw.nodes.front(), 0) || !is_exact_value(raw.nodes.back(), 1))
        throw SpecValidationError(SpecError::bad_endpoints, "t_0 must be 0 and t_ell must be 1 exactly");

    for (int i = 0; i + 1 <= ell; ++i) {
        auto c = certified_cmp(raw.nodes[i], raw.nodes[i + 1]);
        if (!c) throw SpecValidationError(SpecError::uncertain_comparison,
                                          "cannot certify t_" + std::to_string(i) + " < t_" + std::to_string(i + 1) +
                                              " at working precision");
        if (*c >= 0)
            throw SpecValidationError(SpecError::unsorted_nodes,
                                      "t_" + std::to_string(i) + " >= t_" + std::to_string(i + 1));
    }

    if (raw.m <= 0 || raw.m >= ell)
        throw SpecValidationError(SpecError::bad_index_m, "m must name an interior node");

    // t_m = 1 - theta0, verified exactly or by enclosure intersection.
    const CirclePoint& tm = raw.nodes[raw.m];
    if (tm.is_exact() && raw.theta0.is_exact()) {
        QuadraticNumber want = QuadraticNumber{Rat(1)} - raw.theta0.exact();
        if (surd_sign(tm.exact() - want) != Sign::zero)
            throw SpecValidationError(SpecError::missing_theta_node,
                                      "t_m != 1 - theta0 (t_m = " + quad_to_string(tm.exact()) + ")");
    } else {
        RatInterval want = RatInterval{Rat(1), Rat(1)} - raw.theta0.enclosure(working_precision());
        if (!tm.enclosure(working_precision()).intersects(want))
            throw SpecValidationError(SpecError::missing_theta_node,
                                      "enclosures of t_m and 1 - theta0 are disjoint");
    }

    if (static_cast<int>(raw.coding.size()) != ell)
        throw SpecValidationError(SpecError::coding_out_of_range,
                                  "coding needs exactly one digit per piece");
    for (int i = 0; i < ell; ++i) {
        if (raw.coding[i] < 0 || raw.coding[i] > raw.d - 1)
            throw SpecValidationError(SpecError::coding_out_of_range,
                                      "k_" + std::to_string(i) + " = " + std::to_string(raw.coding[i]));
        if (i > 0 && raw.coding[i - 1] >= raw.coding[i])
            throw SpecValidationError(SpecError::non_increasing_coding,
                                      "k_" + std::to_string(i - 1) + " >= k_" + std::to_string(i));
    }

    // Exact specs must share one quadratic field.
    if (raw.theta0.is_exact()) {
        QuadraticNumber probe = raw.theta0.exact();
        for (const auto& n : raw.nodes)
            if (n.is_exact()) common_field(probe, n.exact());
    }

    return raw;
}

namespace {

QuadraticNumber quad_from_json(const nlohmann::json& j) {
    Rat a = parse_rational(j.at("a").get<std::string>());
    Rat b = parse_rational(j.at("b").get<std::string>());
    const auto& dj = j.at("D");
    Int D = dj.is_string() ? Int(dj.get<std::string>()) : Int(dj.get<long long>());
    if (D < 0) throw SpecValidationError(SpecError::bad_field, "negative discriminant");
    if (b != 0 && D > 0 && !is_square_free(D))
        throw SpecValidationError(SpecError::bad_field, "D = " + D.str() + " is not square-free");
    return {a, b, D};
}

}  // namespace

CirclePoint point_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return CirclePoint{Rat(j.get<long long>())};
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (looks_decimal(s)) {
            Rat v = parse_rational(s);
            Rat r(1, pow_int(10, decimal_places(s)));
            return CirclePoint{RatInterval{v - r, v + r}};
        }
        return CirclePoint{Rat(parse_rational(s))};
    }
    if (j.is_object()) {
        if (j.contains("a")) return CirclePoint{quad_from_json(j)};
        if (j.contains("lo"))
            return CirclePoint{RatInterval{parse_rational(j.at("lo").get<std::string>()),
                                           parse_rational(j.at("hi").get<std::string>())}};
    }
    throw std::invalid_argument("unrecognized circle-point syntax: " + j.dump());
}

nlohmann::json point_to_json(const CirclePoint& p) {
    if (p.is_exact()) {
        const QuadraticNumber& q = p.exact();
        nlohmann::json out = {{"a", format_rational(q.a)}, {"b", format_rational(q.b)}};
        if (q.D <= std::numeric_limits<long long>::max())
            out["D"] = q.D.convert_to<long long>();
        else
            out["D"] = q.D.str();
        return out;
    }
    return {{"lo", format_rational(p.box().lo)}, {"hi", format_rational(p.box().hi)}};
}

PartitionSpec spec_from_json(const nlohmann::json& j) {
    PartitionSpec spec;
    for (auto& [key, _] : j.items()) {
        if (key != "d" && key != "theta0" && key != "nodes" && key != "m" && key != "coding")
            throw std::invalid_argument("unknown field in partition spec: " + key);
    }
    spec.d = j.at("d").get<int>();
    const auto& th = j.at("theta0");
    spec.theta0 = point_from_json(th);
    if (!spec.theta0.is_exact())
        spec.theta0_irrational_asserted =
            (th.is_object() && th.value("irrational", false)) || (th.is_string() && looks_decimal(th.get<std::string>()));
    for (const auto& n : j.at("nodes")) spec.nodes.push_back(point_from_json(n));
    spec.m = j.at("m").get<int>();
    for (const auto& k : j.at("coding")) spec.coding.push_back(k.get<int>());
    return spec;
}

nlohmann::json spec_to_json(const PartitionSpec& spec) {
    nlohmann::json th = point_to_json(spec.theta0);
    if (!spec.theta0.is_exact()) th["irrational"] = spec.theta0_irrational_asserted;
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : spec.nodes) nodes.push_back(point_to_json(n));
    return {{"d", spec.d}, {"theta0", th}, {"nodes", nodes}, {"m", spec.m}, {"coding", spec.coding}};
}

}  // namespace rotaset
