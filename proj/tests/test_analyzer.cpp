#include "doctest.h"

#include "rotaset/analyzer.hpp"
#include "rotaset/coder.hpp"

#include <json.hpp>

#include <cmath>
#include <memory>
#include <string>
#include <vector>

using namespace rotaset;

namespace {

const QuadraticNumber kGolden(Rat(-1, 2), Rat(1, 2), 5);  // (sqrt(5)-1)/2

PartitionSpec golden_spec() {
    return validate_spec(spec_from_json(nlohmann::json::parse(R"({
        "d": 2,
        "theta0": {"a": "-1/2", "b": "1/2", "D": 5},
        "nodes": [0, {"a": "3/2", "b": "-1/2", "D": 5}, 1],
        "m": 1,
        "coding": [0, 1]
    })")));
}

AnalysisSample golden_coded_sample(std::size_t N, std::size_t depth) {
    auto s = std::make_shared<SampleSet>(sample_set(golden_spec(), N, depth));
    return analysis_from_sample(std::move(s));
}

AnalysisSample golden_orbit(std::size_t L) {
    return analysis_from_rotation_orbit(QuadraticNumber(Rat(1, 2), Rat(0), 5), kGolden, L);
}

bool any_witness_contains(const CheckRecord& rec, const std::string& needle) {
    for (const std::string& w : rec.witnesses)
        if (w.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("map images across point kinds") {
    PointMap dbl = PointMap::TimesD(2);
    APoint r = apply_map(dbl, APoint::rational(Rat(7, 10)));
    CHECK(r.kind == APoint::Kind::rational);
    CHECK(r.r == Rat(2, 5));

    APoint f = apply_map(dbl, APoint::field(kGolden));
    CHECK(f.kind == APoint::Kind::field);
    CHECK(f.q == QuadraticNumber(Rat(-2), Rat(1), 5));  // 2*theta mod 1 = sqrt(5)-2

    APoint b = apply_map(dbl, APoint::boxed(RatInterval{Rat(3, 10), Rat(2, 5)}));
    CHECK(b.kind == APoint::Kind::boxed);
    CHECK(b.fixed_box.lo == Rat(3, 5));
    CHECK(b.fixed_box.hi == Rat(4, 5));

    PointMap rot = PointMap::Rotation(kGolden);
    APoint rr = apply_map(rot, APoint::rational(Rat(1, 2)));
    CHECK(rr.kind == APoint::Kind::field);
    CHECK(rr.q == QuadraticNumber(Rat(-1), Rat(1, 2), 5));  // sqrt(5)/2 - 1

    // Interval through the rotation: reduced when fully past 1, widened to the
    // whole circle when the sum straddles the wrap.
    APoint shifted = apply_map(rot, APoint::boxed(RatInterval{Rat(1, 2), Rat(3, 5)}));
    CHECK(shifted.fixed_box.hi < Rat(1, 4));
    APoint wide = apply_map(rot, APoint::boxed(RatInterval{Rat(3, 10), Rat(2, 5)}));
    CHECK(wide.fixed_box.lo == Rat(0));
    CHECK(wide.fixed_box.hi == Rat(1));

    PointMap refl = PointMap::Reflection();
    CHECK(apply_map(refl, APoint::rational(Rat(0))).r == Rat(0));
    CHECK(apply_map(refl, APoint::rational(Rat(3, 10))).r == Rat(7, 10));
    APoint rb = apply_map(refl, APoint::boxed(RatInterval{Rat(1, 4), Rat(1, 2)}));
    CHECK(rb.fixed_box.lo == Rat(1, 2));
    CHECK(rb.fixed_box.hi == Rat(3, 4));

    APoint coded = APoint::coded_static(DigitString(2, {1, 0, 1}));
    APoint once = apply_map(refl, coded);
    CHECK(once.reflected);
    CHECK_FALSE(apply_map(refl, once).reflected);
}

TEST_CASE("certified comparison across point kinds") {
    CHECK(cmp_points(APoint::rational(Rat(1, 3)), APoint::rational(Rat(1, 2))) == -1);
    CHECK(cmp_points(APoint::rational(Rat(1, 2)), APoint::rational(Rat(1, 2))) == 0);
    CHECK(cmp_points(APoint::rational(Rat(5, 8)), APoint::field(kGolden)) == 1);
    CHECK(cmp_points(APoint::field(kGolden), APoint::field(QuadraticNumber(Rat(0), Rat(1, 2), 5))) == -1);

    // First differing digit certifies strict order between coded streams.
    APoint a = APoint::coded_static(DigitString(2, {1, 0, 1, 0}));
    APoint b = APoint::coded_static(DigitString(2, {1, 0, 1, 1}));
    CHECK(cmp_points(a, b) == -1);

    // Identical non-refinable digit strings from distinct handles abstain: the
    // true values may differ anywhere inside the shared box.
    APoint c = APoint::coded_static(DigitString(2, {1, 0, 1, 0}));
    CHECK_FALSE(cmp_points(a, c).has_value());

    // The coded enclosure is half-open [v, v + 2^-n): its left endpoint is
    // unordered against it, its right endpoint certifiably above.
    APoint two = APoint::coded_static(DigitString(2, {1, 0}));
    CHECK(cmp_points(APoint::rational(Rat(2, 5)), two) == -1);
    CHECK_FALSE(cmp_points(APoint::rational(Rat(1, 2)), two).has_value());
    CHECK(cmp_points(APoint::rational(Rat(3, 4)), two) == 1);

    AnalysisSample s = golden_coded_sample(8, 16);
    CHECK(cmp_points(s.pts[3], s.pts[3]) == 0);   // same backing entry
    CHECK(cmp_points(s.pts[2], s.pts[5]) == -1);  // lazily deepened digit walk
}

TEST_CASE("cyclic order flags a reflection and passes a rotational cycle") {
    AnalyzerOptions opt;

    AnalysisSample cyc = analysis_from_rationals({Rat(1, 7), Rat(2, 7), Rat(4, 7)});
    CheckRecord ok = check_cyclic_order(cyc, PointMap::TimesD(2), opt);
    CHECK(ok.name == "cyclic-order");
    CHECK(ok.verdict == Verdict::pass);
    CHECK(ok.checked == 1);
    CHECK(ok.violations == 0);
    CHECK(ok.details == "exhaustive over 1 triples");

    AnalysisSample s = analysis_from_rationals({Rat(1, 10), Rat(1, 5), Rat(2, 5)});
    CheckRecord bad = check_cyclic_order(s, PointMap::Reflection(), opt);
    CHECK(bad.verdict == Verdict::fail);
    CHECK(bad.checked == 1);
    CHECK(bad.violations == 1);
    REQUIRE(bad.witnesses.size() == 1);
    CHECK(any_witness_contains(bad, "reverse orientation"));
}

TEST_CASE("cyclic order skips equal-image triples and samples large sets") {
    AnalyzerOptions opt;

    // 1/5 and 7/10 collide under doubling: the lone triple is vacuous.
    AnalysisSample s = analysis_from_rationals({Rat(1, 5), Rat(9, 20), Rat(7, 10)});
    CheckRecord rec = check_cyclic_order(s, PointMap::TimesD(2), opt);
    CHECK(rec.verdict == Verdict::pass);
    CHECK(rec.checked == 1);
    CHECK(rec.violations == 0);
    CHECK(rec.details.find("1 triples with equal images skipped") != std::string::npos);

    // The doubling-invariant 5-cycle of 11/31 passes exhaustively and under
    // seeded sampling with identical results per seed.
    AnalysisSample cyc =
        analysis_from_rationals({Rat(11, 31), Rat(13, 31), Rat(21, 31), Rat(22, 31), Rat(26, 31)});
    CheckRecord ex = check_cyclic_order(cyc, PointMap::TimesD(2), opt);
    CHECK(ex.verdict == Verdict::pass);
    CHECK(ex.checked == 10);

    opt.exhaustive_cap = 1;
    opt.trials = 100;
    opt.seed = 7;
    CheckRecord r1 = check_cyclic_order(cyc, PointMap::TimesD(2), opt);
    CheckRecord r2 = check_cyclic_order(cyc, PointMap::TimesD(2), opt);
    CHECK(r1.verdict == Verdict::pass);
    CHECK(r1.checked == 100);
    CHECK(r1.details.find("seeded sample of 100 of 10 triples") != std::string::npos);
    CHECK(r1.details == r2.details);
    CHECK(r1.violations == r2.violations);

    AnalysisSample tiny = analysis_from_rationals({Rat(1, 4), Rat(1, 2)});
    CHECK_THROWS_AS(check_cyclic_order(tiny, PointMap::TimesD(2), opt), std::invalid_argument);
}

TEST_CASE("fiber screen flags three separated preimages and tolerates pairs") {
    AnalyzerOptions opt;

    // All four points land on 2/5 under quadrupling.
    AnalysisSample s = analysis_from_rationals({Rat(1, 10), Rat(7, 20), Rat(3, 5), Rat(17, 20)});
    CheckRecord rec = check_fibers(s, PointMap::TimesD(4), opt.fiber_eps, opt.fiber_delta, opt);
    CHECK(rec.name == "fiber-cardinality");
    CHECK(rec.verdict == Verdict::fail);
    CHECK(rec.checked == 4);
    CHECK(rec.violations == 1);
    REQUIRE(rec.witnesses.size() == 1);
    CHECK(any_witness_contains(rec, "#0"));

    // A two-point collision is expected of a degree-2 map.
    AnalysisSample pair = analysis_from_rationals({Rat(3, 10), Rat(4, 5)});
    CheckRecord ok = check_fibers(pair, PointMap::TimesD(2), opt.fiber_eps, opt.fiber_delta, opt);
    CHECK(ok.verdict == Verdict::pass);
    CHECK(ok.violations == 0);

    CHECK_THROWS_AS(check_fibers(pair, PointMap::TimesD(2), Rat(1, 4), Rat(1, 2), opt),
                    std::invalid_argument);
}

TEST_CASE("fiber screen merges image clusters through the wrap") {
    AnalyzerOptions opt;
    Rat tick(Int(1), pow2(34));
    AnalysisSample s =
        analysis_from_rationals({tick, Rat(1, 4) - tick, Rat(1, 2) + tick});
    // Images under quadrupling: 2^-32, 1 - 2^-32, 2^-32 -- one cluster only
    // after chaining across 1, with three well-separated preimages.
    CheckRecord rec = check_fibers(s, PointMap::TimesD(4), opt.fiber_eps, opt.fiber_delta, opt);
    CHECK(rec.verdict == Verdict::fail);
    CHECK(rec.violations == 1);
    CHECK(any_witness_contains(rec, "separated preimages"));
}

TEST_CASE("gap location on a coded sample brackets the itinerary break") {
    AnalyzerOptions opt;
    AnalysisSample s = golden_coded_sample(60, 32);
    auto [X, rec] = extremes_and_gap(s, PointMap::TimesD(2), opt);

    CHECK(rec.name == "gap-structure");
    CHECK(rec.verdict == Verdict::pass);
    CHECK(rec.violations == 0);
    CHECK(rec.uncertain == 0);
    CHECK(X.valid());
    CHECK(X.i_alpha == 0);
    CHECK(X.i_beta == 59);
    // The located gap brackets the grid step of omega = 1 - theta (between
    // 45/120 and 47/120), where the leading digit flips from 0 to 1.
    CHECK(X.i_alpha_prime == 22);
    CHECK(X.i_beta_prime == 23);
    CHECK(X.alpha_prime.hi <= Rat(1, 2));
    CHECK(X.beta_prime.lo >= Rat(1, 2));

    CheckRecord bnd = check_boundary_images(s, X, PointMap::TimesD(2), opt);
    CHECK(bnd.verdict == Verdict::pass);
    CHECK(bnd.checked == 3);
    CHECK(bnd.violations == 0);

    CheckRecord mono = check_monotone_halves(s, PointMap::TimesD(2), X, opt);
    CHECK(mono.verdict == Verdict::pass);
    CHECK(mono.violations == 0);
    CHECK(mono.checked == 118);  // 23+22 on the rising half, 37+36 on the falling
}

TEST_CASE("a point strictly inside the gap is flagged") {
    AnalyzerOptions opt;
    // Under tripling: 19/60 maps just under the maximum, 41/60 just above the
    // minimum, while the intruder 31/60 maps squarely mid-sample, so the
    // bracketing indices skip over it.
    AnalysisSample s = analysis_from_rationals(
        {Rat(1, 6), Rat(19, 60), Rat(31, 60), Rat(41, 60), Rat(5, 6), Rat(14, 15)});
    auto [X, rec] = extremes_and_gap(s, PointMap::TimesD(3), opt);
    CHECK(X.i_alpha_prime == 1);
    CHECK(X.i_beta_prime == 3);
    CHECK(rec.verdict == Verdict::fail);
    CHECK(rec.violations == 1);
    REQUIRE(rec.witnesses.size() == 1);
    CHECK(any_witness_contains(rec, "strictly inside the gap"));
    CHECK(any_witness_contains(rec, "#2"));
}

TEST_CASE("degenerate gap inputs") {
    AnalyzerOptions opt;

    AnalysisSample one = analysis_from_rationals({Rat(1, 2)});
    auto [X1, r1] = extremes_and_gap(one, PointMap::TimesD(2), opt);
    CHECK(r1.verdict == Verdict::uncertain);
    CHECK_FALSE(X1.valid());
    CHECK(r1.details.find("single point") != std::string::npos);

    AnalysisSample none = analysis_from_rationals({});
    CHECK_THROWS_AS(extremes_and_gap(none, PointMap::TimesD(2), opt), std::invalid_argument);

    // A non-rotational 4-cycle: the boundary candidates come out in the wrong
    // order, so the inequality chain cannot close.
    AnalysisSample cyc = analysis_from_rationals({Rat(1, 5), Rat(2, 5), Rat(3, 5), Rat(4, 5)});
    auto [X2, r2] = extremes_and_gap(cyc, PointMap::TimesD(2), opt);
    CHECK(X2.i_alpha_prime == 3);
    CHECK(X2.i_beta_prime == 0);
    CHECK(r2.verdict == Verdict::fail);
    CHECK(any_witness_contains(r2, "inequality chain broken"));
}

TEST_CASE("boundary image chain on a rotation orbit") {
    AnalyzerOptions opt;
    AnalysisSample s = golden_orbit(8);
    auto [X, gap] = extremes_and_gap(s, PointMap::Rotation(kGolden), opt);
    CHECK(gap.verdict == Verdict::pass);
    CHECK(X.i_alpha_prime == 2);
    CHECK(X.i_beta_prime == 3);

    CheckRecord rec = check_boundary_images(s, X, PointMap::Rotation(kGolden), opt);
    CHECK(rec.name == "boundary-images");
    CHECK(rec.verdict == Verdict::pass);
    CHECK(rec.checked == 3);
    CHECK(rec.violations == 0);

    // Rotation by 2 - golden, two points only: T(beta) overshoots T(alpha) and
    // T(alpha) equals beta, breaking both tail inequalities.
    QuadraticNumber theta2(Rat(3, 2), Rat(-1, 2), 5);
    AnalysisSample two = analysis_from_rotation_orbit(QuadraticNumber(Rat(1, 20), Rat(0), 5), theta2, 2);
    auto [X2, g2] = extremes_and_gap(two, PointMap::Rotation(theta2), opt);
    CheckRecord bad = check_boundary_images(two, X2, PointMap::Rotation(theta2), opt);
    CHECK(bad.verdict == Verdict::fail);
    CHECK(bad.violations == 2);
    CHECK(any_witness_contains(bad, "T(beta) <= T(alpha) violated"));
    CHECK(any_witness_contains(bad, "T(alpha) < beta violated"));
}

TEST_CASE("monotone halves flag a fixed point") {
    AnalyzerOptions opt;
    AnalysisSample s = analysis_from_rationals({Rat(0), Rat(1, 8), Rat(7, 8)});
    ExtremalData X;
    X.i_alpha = 0;
    X.i_beta = 2;
    X.i_alpha_prime = 1;
    X.i_beta_prime = 2;
    CheckRecord rec = check_monotone_halves(s, PointMap::TimesD(2), X, opt);
    CHECK(rec.name == "monotone-halves");
    CHECK(rec.verdict == Verdict::fail);
    CHECK(rec.checked == 4);
    CHECK(rec.violations == 1);
    CHECK(any_witness_contains(rec, "fixed point at #0"));

    ExtremalData invalid;
    CheckRecord und = check_monotone_halves(s, PointMap::TimesD(2), invalid, opt);
    CHECK(und.verdict == Verdict::uncertain);
    CHECK(und.details.find("halves undefined") != std::string::npos);

    AnalysisSample orbit = golden_orbit(8);
    auto [XO, gap] = extremes_and_gap(orbit, PointMap::Rotation(kGolden), opt);
    CheckRecord ok = check_monotone_halves(orbit, PointMap::Rotation(kGolden), XO, opt);
    CHECK(ok.verdict == Verdict::pass);
    CHECK(ok.violations == 0);
    CHECK(ok.checked == 14);
}

TEST_CASE("semiconjugacy defect against the rotation target") {
    AnalyzerOptions opt;
    AnalysisSample s = golden_orbit(8);
    // The largest defect on this orbit is sqrt(5)/2 - 1 (about 0.118), from
    // the maximum point, whose image rank is only nearest-neighbor exact.
    CheckRecord ok = check_semiconjugacy(s, PointMap::Rotation(kGolden), kGolden, Rat(1, 4), opt);
    CHECK(ok.name == "semiconjugacy");
    CHECK(ok.verdict == Verdict::pass);
    CHECK(ok.checked == 8);
    CHECK(ok.violations == 0);

    CheckRecord bad = check_semiconjugacy(s, PointMap::Rotation(kGolden), kGolden, Rat(1, 10), opt);
    CHECK(bad.verdict == Verdict::fail);
    CHECK(bad.violations == 1);
    CHECK(any_witness_contains(bad, "exceeds tolerance"));
}

TEST_CASE("empirical cdf heights") {
    AnalysisSample s = analysis_from_rationals({Rat(1, 5), Rat(2, 5), Rat(3, 5), Rat(4, 5)});
    std::vector<Rat> phi = empirical_phi(s);
    REQUIRE(phi.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(phi[i] == Rat(Int(i + 1), Int(4)));
}

TEST_CASE("visit frequency on plain, inclusive, wrapping and fuzzy arcs") {
    std::vector<Rat> grid;
    for (int k = 0; k < 8; ++k) grid.push_back(Rat(k, 8));
    AnalysisSample s = analysis_from_rationals(grid);

    FrequencyResult f = visit_frequency(s, APoint::rational(Rat(1, 4)), APoint::rational(Rat(1, 2)));
    CHECK(f.value == Rat(1, 4));
    CHECK(f.hits == 2);
    CHECK(f.total == 8);
    CHECK(f.uncertain == 0);

    FrequencyResult inc =
        visit_frequency(s, APoint::rational(Rat(1, 4)), APoint::rational(Rat(1, 2)), true);
    CHECK(inc.value == Rat(3, 8));

    FrequencyResult wrap = visit_frequency(s, APoint::rational(Rat(3, 4)), APoint::rational(Rat(1, 4)));
    CHECK(wrap.value == Rat(1, 2));

    FrequencyResult nil = visit_frequency(s, APoint::rational(Rat(1, 2)), APoint::rational(Rat(1, 2)));
    CHECK(nil.value == Rat(0));
    FrequencyResult self =
        visit_frequency(s, APoint::rational(Rat(1, 2)), APoint::rational(Rat(1, 2)), true);
    CHECK(self.value == Rat(1, 8));

    // An arc endpoint that cannot be ordered against the other abstains on
    // every point rather than guessing.
    FrequencyResult fuzzy = visit_frequency(s, APoint::boxed(RatInterval{Rat(3, 10), Rat(3, 5)}),
                                            APoint::rational(Rat(1, 2)));
    CHECK(fuzzy.uncertain == 8);
    CHECK(fuzzy.value == Rat(0));
}

TEST_CASE("rotation number from the gap arc") {
    AnalyzerOptions opt;
    AnalysisSample s = golden_orbit(8);
    auto [X, gap] = extremes_and_gap(s, PointMap::Rotation(kGolden), opt);
    RotationEstimate est = rotation_number(s, X);
    CHECK_FALSE(est.degenerate);
    CHECK(est.n == 8);
    CHECK(est.value == Rat(5, 8));
    CHECK(est.radius == doctest::Approx(3.0 * std::log(8.0) / 8.0));

    ExtremalData invalid;
    RotationEstimate deg = rotation_number(s, invalid);
    CHECK(deg.degenerate);
    CHECK(deg.value == Rat(0));
}

TEST_CASE("star discrepancy oracles and domain checks") {
    CHECK(star_discrepancy({Rat(0)}) == Rat(1));
    CHECK(star_discrepancy({Rat(1, 8), Rat(3, 8), Rat(5, 8), Rat(7, 8)}) == Rat(1, 8));
    CHECK(star_discrepancy({Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4)}) == Rat(1, 4));
    CHECK(star_discrepancy({Rat(3, 8), Rat(1, 8), Rat(7, 8), Rat(5, 8)}) == Rat(1, 8));  // sorts first

    CHECK_THROWS_AS(star_discrepancy({}), std::invalid_argument);
    CHECK_THROWS_AS(star_discrepancy({Rat(1)}), std::invalid_argument);
    CHECK_THROWS_AS(star_discrepancy({Rat(-1, 10)}), std::invalid_argument);
}

TEST_CASE("density proxy over the orbit tail") {
    AnalysisSample s = analysis_from_rotation_orbit(QuadraticNumber(Rat(1, 2), Rat(0), 5), kGolden, 40);
    CheckRecord ok = minimality_density(s, Rat(1, 10));
    CHECK(ok.name == "minimality-density");
    CHECK(ok.heuristic);
    CHECK(ok.verdict == Verdict::pass);
    CHECK(ok.violations == 0);

    // Early points far from a clumped tail are flagged.
    AnalysisSample clump =
        analysis_from_rationals({Rat(9, 10), Rat(1, 10), Rat(1, 2), Rat(51, 100)}, true);
    CheckRecord bad = minimality_density(clump, Rat(1, 10));
    CHECK(bad.verdict == Verdict::fail);
    CHECK(bad.violations == 2);

    // Without timestamps the tail net is empty and the check abstains.
    AnalysisSample plain = analysis_from_rationals({Rat(1, 4), Rat(1, 2), Rat(3, 4)});
    CheckRecord und = minimality_density(plain, Rat(1, 10));
    CHECK(und.verdict == Verdict::uncertain);
    CHECK(und.details == "empty tail net");

    AnalysisSample one = analysis_from_rationals({Rat(1, 2)}, true);
    CHECK_THROWS_AS(minimality_density(one, Rat(1, 10)), std::invalid_argument);
}

TEST_CASE("full suite on a golden rotation orbit") {
    AnalyzerOptions opt;
    opt.seed = 1234;
    opt.density_eps = Rat(1, 4);  // eight points leave coarse tail coverage
    AnalysisSample s = golden_orbit(8);
    AnalysisReport rep = run_full_suite(s, PointMap::Rotation(kGolden), kGolden, opt);

    const char* expected[] = {"cyclic-order",    "fiber-cardinality", "gap-structure",
                              "boundary-images", "monotone-halves",   "semiconjugacy",
                              "rotation-number", "cdf-push-discrepancy", "minimality-density"};
    REQUIRE(rep.checks.size() == 9);
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(rep.checks[i].name == expected[i]);
        CHECK(rep.checks[i].verdict == Verdict::pass);
    }
    CHECK_FALSE(rep.any_fail());
    CHECK_FALSE(rep.any_uncertain());

    CHECK(rep.metadata["source"] == "rotation-orbit");
    CHECK(rep.metadata["n"] == 8);
    CHECK(rep.metadata["map"] == "rotation");
    CHECK(rep.metadata["seed"] == "0x4d2");
    CHECK(rep.metadata["rank_tolerance"] == "0.25");

    nlohmann::ordered_json j = report_to_json(rep);
    CHECK(j["any_fail"] == false);
    CHECK(j["checks"].size() == 9);
    CHECK(j["checks"][0]["name"] == "cyclic-order");
    CHECK(j["checks"][0]["verdict"] == "pass");
    for (const char* key : {"name", "verdict", "tolerance", "checked", "violations", "uncertain",
                            "witnesses", "details", "heuristic"})
        CHECK(j["checks"][0].contains(key));

    std::string csv = report_to_csv(rep);
    CHECK(csv.rfind("name,verdict,tolerance,checked,violations,uncertain,heuristic,details,witnesses\n",
                    0) == 0);
    CHECK(csv.find("minimality-density,pass") != std::string::npos);
    std::size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == 10);
}

TEST_CASE("full suite without a rotation target skips semiconjugacy") {
    AnalyzerOptions opt;
    opt.density_eps = Rat(1, 4);
    AnalysisSample s = golden_orbit(8);
    AnalysisReport rep = run_full_suite(s, PointMap::Rotation(kGolden), std::nullopt, opt);
    REQUIRE(rep.checks.size() == 8);
    CHECK(rep.checks[5].name == "rotation-number");
    CHECK(rep.checks[5].verdict == Verdict::pass);
    CHECK(rep.checks[5].heuristic);
    CHECK_FALSE(rep.any_fail());
}

TEST_CASE("full suite surfaces a broken boundary chain") {
    AnalyzerOptions opt;
    AnalysisSample s = analysis_from_rationals({Rat(1, 5), Rat(2, 5), Rat(3, 5), Rat(4, 5)});
    AnalysisReport rep = run_full_suite(s, PointMap::TimesD(2), std::nullopt, opt);
    REQUIRE(rep.checks.size() == 5);  // no timestamps, no rotation target
    CHECK(rep.checks[0].verdict == Verdict::fail);  // the 4-cycle reorders triples
    CHECK(rep.checks[2].name == "gap-structure");
    CHECK(rep.checks[2].verdict == Verdict::fail);
    CHECK(rep.checks[3].verdict == Verdict::fail);  // T(beta) lands above T(alpha)
    CHECK(rep.any_fail());
}
