#include "doctest.h"

#include "rotaset/partition.hpp"

#include <json.hpp>

using namespace rotaset;
using nlohmann::json;

namespace {

// d = 2, theta0 = (sqrt(5)-1)/2, nodes 0 < (3-sqrt(5))/2 < 1, coding (0,1)
json golden_json() {
    return json::parse(R"({
        "d": 2,
        "theta0": {"a": "-1/2", "b": "1/2", "D": 5},
        "nodes": [0, {"a": "3/2", "b": "-1/2", "D": 5}, 1],
        "m": 1,
        "coding": [0, 1]
    })");
}

SpecError code_of(const json& j) {
    try {
        validate_spec(spec_from_json(j));
    } catch (const SpecValidationError& e) {
        return e.code;
    }
    throw std::logic_error("expected the spec to be rejected");
}

}  // namespace

TEST_CASE("well-formed spec validates and round-trips through json") {
    PartitionSpec spec = validate_spec(spec_from_json(golden_json()));
    CHECK(spec.d == 2);
    CHECK(spec.ell() == 2);
    CHECK(spec.m == 1);
    CHECK(spec.coding == std::vector<int>{0, 1});
    REQUIRE(spec.theta0.is_exact());
    CHECK(spec.theta0.exact() == QuadraticNumber{Rat(-1, 2), Rat(1, 2), Int(5)});
    CHECK(spec.all_exact());

    PartitionSpec back = validate_spec(spec_from_json(spec_to_json(spec)));
    CHECK(back.d == spec.d);
    CHECK(back.m == spec.m);
    CHECK(back.coding == spec.coding);
    CHECK(back.theta0.exact() == spec.theta0.exact());
    REQUIRE(back.nodes.size() == spec.nodes.size());
    for (std::size_t i = 0; i < back.nodes.size(); ++i)
        CHECK(back.nodes[i].exact() == spec.nodes[i].exact());
}

TEST_CASE("three-piece spec over sqrt(2) validates") {
    json j = json::parse(R"({
        "d": 3,
        "theta0": {"a": "-1", "b": "1", "D": 2},
        "nodes": [0, "1/4", {"a": "2", "b": "-1", "D": 2}, 1],
        "m": 2,
        "coding": [0, 1, 2]
    })");
    PartitionSpec spec = validate_spec(spec_from_json(j));
    CHECK(spec.ell() == 3);
    CHECK(spec.nodes[1].exact() == QuadraticNumber(Rat(1, 4)));
}

TEST_CASE("each structural defect raises its own error code") {
    json base = golden_json();

    json j = base;
    j["d"] = 1;
    CHECK(code_of(j) == SpecError::bad_degree);

    j = base;
    j["nodes"] = json::array({0, 1});
    CHECK(code_of(j) == SpecError::bad_endpoints);

    j = base;
    j["nodes"] = json::array({json("1/4"), {{"a", "3/2"}, {"b", "-1/2"}, {"D", 5}}, 1});
    CHECK(code_of(j) == SpecError::bad_endpoints);

    j = base;
    j["nodes"] = json::array({0, "1/4", {{"a", "3/2"}, {"b", "-1/2"}, {"D", 5}}, 1});
    CHECK(code_of(j) == SpecError::too_many_pieces);

    j = base;
    j["theta0"] = "1/3";
    CHECK(code_of(j) == SpecError::rational_theta0);

    j = base;
    j["theta0"] = {{"lo", "3/5"}, {"hi", "5/8"}};  // no irrationality assertion
    CHECK(code_of(j) == SpecError::rational_theta0);

    j = base;
    j["theta0"] = {{"a", "1/2"}, {"b", "1/2"}, {"D", 5}};  // golden + 1 > 1
    CHECK(code_of(j) == SpecError::theta0_out_of_range);

    j = base;
    j["theta0"] = {{"a", "-1/2"}, {"b", "1/2"}, {"D", 12}};
    CHECK(code_of(j) == SpecError::bad_field);

    j = base;
    j["d"] = 3;
    j["nodes"] = json::array({0, "1/2", "1/4", 1});
    j["coding"] = json::array({0, 1, 2});
    CHECK(code_of(j) == SpecError::unsorted_nodes);

    j = base;
    j["nodes"] = json::array({0, "1/2", 1});
    CHECK(code_of(j) == SpecError::missing_theta_node);

    j = base;
    j["m"] = 0;
    CHECK(code_of(j) == SpecError::bad_index_m);
    j["m"] = 2;
    CHECK(code_of(j) == SpecError::bad_index_m);

    j = base;
    j["coding"] = json::array({1, 0});
    CHECK(code_of(j) == SpecError::non_increasing_coding);
    j["coding"] = json::array({0, 0});
    CHECK(code_of(j) == SpecError::non_increasing_coding);

    j = base;
    j["coding"] = json::array({0, 2});
    CHECK(code_of(j) == SpecError::coding_out_of_range);
    j["coding"] = json::array({0});
    CHECK(code_of(j) == SpecError::coding_out_of_range);

    j = base;
    j["d"] = 3;
    j["nodes"] = json::array({0, {{"lo", "1/4"}, {"hi", "1/2"}}, {{"lo", "3/8"}, {"hi", "5/8"}}, 1});
    j["coding"] = json::array({0, 1, 2});
    CHECK(code_of(j) == SpecError::uncertain_comparison);
}

TEST_CASE("unknown top-level fields are rejected") {
    json j = golden_json();
    j["extra"] = 7;
    CHECK_THROWS_AS(spec_from_json(j), std::invalid_argument);
}

TEST_CASE("point syntax covers integers, rationals, decimals, surds, boxes") {
    CirclePoint zero = point_from_json(json(0));
    REQUIRE(zero.is_exact());
    CHECK(zero.exact() == QuadraticNumber(Rat(0)));

    CirclePoint frac = point_from_json(json("3/4"));
    REQUIRE(frac.is_exact());
    CHECK(frac.exact() == QuadraticNumber(Rat(3, 4)));

    // decimal literal: box of radius 10^-places around the printed value
    CirclePoint dec = point_from_json(json("0.25"));
    REQUIRE_FALSE(dec.is_exact());
    CHECK(dec.box().lo == Rat(24, 100));
    CHECK(dec.box().hi == Rat(26, 100));

    CirclePoint surd = point_from_json(json::parse(R"({"a":"0","b":"1/3","D":2})"));
    REQUIRE(surd.is_exact());
    CHECK(surd.exact() == QuadraticNumber{Rat(0), Rat(1, 3), Int(2)});

    CirclePoint box = point_from_json(json::parse(R"({"lo":"1/8","hi":"1/4"})"));
    REQUIRE_FALSE(box.is_exact());
    CHECK(box.box().lo == Rat(1, 8));

    CHECK_THROWS_AS(point_from_json(json::parse("[1,2]")), std::invalid_argument);
    CHECK_THROWS_AS(point_from_json(json::parse(R"({"a":"0","b":"1","D":8})")), SpecValidationError);
}

TEST_CASE("boxed theta0 with decimal syntax validates via enclosure intersection") {
    json j = json::parse(R"({
        "d": 2,
        "theta0": "0.618034",
        "nodes": [0, "0.381966", 1],
        "m": 1,
        "coding": [0, 1]
    })");
    PartitionSpec spec = spec_from_json(j);
    CHECK(spec.theta0_irrational_asserted);
    CHECK_FALSE(spec.all_exact());
    CHECK_NOTHROW(validate_spec(spec));
}

TEST_CASE("mixed quadratic fields are rejected") {
    json j = golden_json();
    j["nodes"][1] = {{"a", "1/2"}, {"b", "-1/10"}, {"D", 2}};  // sqrt(2) node under a sqrt(5) theta0
    CHECK_THROWS_AS(validate_spec(spec_from_json(j)), std::logic_error);
}

TEST_CASE("spec json rejects wrong-shaped documents") {
    CHECK_THROWS(spec_from_json(json::parse(R"({"d": 2})")));
    json j = golden_json();
    j.erase("coding");
    CHECK_THROWS(spec_from_json(j));
}
