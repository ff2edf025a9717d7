#include "doctest.h"

#include "rotaset/circle.hpp"

#include <stdexcept>

using namespace rotaset;

namespace {
const QuadraticNumber kGolden{Rat(-1, 2), Rat(1, 2), Int(5)};
}

TEST_CASE("RatInterval basics") {
    RatInterval iv{Rat(1, 4), Rat(3, 4)};
    CHECK(iv.width() == Rat(1, 2));
    CHECK(iv.mid() == Rat(1, 2));
    CHECK_FALSE(iv.is_point());
    CHECK(iv.contains(Rat(1, 4)));
    CHECK(iv.contains(Rat(3, 4)));
    CHECK_FALSE(iv.contains(Rat(7, 8)));
    CHECK(iv.intersects({Rat(3, 4), Rat(1)}));
    CHECK_FALSE(iv.intersects({Rat(7, 8), Rat(1)}));
    CHECK(RatInterval(Rat(2, 5)).is_point());
    CHECK_THROWS_AS(RatInterval(Rat(1), Rat(0)), std::invalid_argument);
}

TEST_CASE("interval arithmetic rounds outward and preserves containment") {
    RatInterval x{Rat(1, 3), Rat(1, 2)}, y{Rat(1, 6), Rat(1, 4)};
    RatInterval s = x + y;
    CHECK(s.lo == Rat(1, 2));
    CHECK(s.hi == Rat(3, 4));
    RatInterval d = x - y;
    CHECK(d.lo == Rat(1, 12));
    CHECK(d.hi == Rat(1, 3));
    RatInterval m = scale(Rat(-2), x);
    CHECK(m.lo == Rat(-1));
    CHECK(m.hi == Rat(-2, 3));

    RatInterval r = round_outward({Rat(1, 3), Rat(2, 3)}, 8);
    CHECK(r.lo <= Rat(1, 3));
    CHECK(r.hi >= Rat(2, 3));
    CHECK(den(r.lo) <= Int(256));
    CHECK(den(r.hi) <= Int(256));
    CHECK(r.width() <= Rat(1, 3) + Rat(2, 256));
}

TEST_CASE("interval_cmp certifies order or abstains") {
    CHECK(interval_cmp({Rat(0), Rat(1, 4)}, {Rat(1, 2), Rat(3, 4)}) == -1);
    CHECK(interval_cmp({Rat(1, 2), Rat(3, 4)}, {Rat(0), Rat(1, 4)}) == 1);
    CHECK(interval_cmp(RatInterval(Rat(1, 3)), RatInterval(Rat(1, 3))) == 0);
    CHECK_FALSE(interval_cmp({Rat(0), Rat(1, 2)}, {Rat(1, 4), Rat(3, 4)}).has_value());
    // shared endpoint on non-point intervals is not certified either
    CHECK_FALSE(interval_cmp({Rat(0), Rat(1, 2)}, {Rat(1, 2), Rat(1)}).has_value());
}

TEST_CASE("enclose_quad nests as precision grows") {
    RatInterval coarse = enclose_quad(kGolden, 16);
    RatInterval fine = enclose_quad(kGolden, 128);
    CHECK(fine.lo >= coarse.lo);
    CHECK(fine.hi <= coarse.hi);
    CHECK(fine.width() <= Rat(1, 2) * Rat(1, pow2(128)));
    CHECK(surd_sign(kGolden - QuadraticNumber(fine.lo)) == Sign::positive);
    CHECK(surd_sign(QuadraticNumber(fine.hi) - kGolden) == Sign::positive);
}

TEST_CASE("Arc membership handles wrap-around spans") {
    Arc a{{Rat(9, 10), Rat(11, 10)}};  // wraps through 0
    CHECK(a.inside_half_open(Rat(4, 5), Rat(1, 5) + 1));
    CHECK_FALSE(a.inside_half_open(Rat(0), Rat(1, 2)));
    CHECK_FALSE(a.avoids_point(Rat(0)));
    CHECK_FALSE(a.avoids_point(Rat(95, 100)));
    CHECK(a.avoids_point(Rat(1, 2)));

    Arc b{{Rat(7, 3), Rat(29, 12)}};  // [1/3, 5/12] after reduction
    CHECK(b.inside_half_open(Rat(1, 4), Rat(1, 2)));
    CHECK(b.avoids_point(Rat(1, 2)));
    CHECK_FALSE(b.avoids_point(Rat(2, 5)));
}

TEST_CASE("reduce_mod1 wraps exact values into [0,1)") {
    CirclePoint p = reduce_mod1({Rat(5, 2), Rat(1), Int(2)});  // 2.5 + 1.414 = 3.914...
    REQUIRE(p.is_exact());
    CHECK(p.exact() >= QuadraticNumber(Rat(0)));
    CHECK(p.exact() < QuadraticNumber(Rat(1)));
    CHECK(p.exact() == QuadraticNumber{Rat(-1, 2), Rat(1), Int(2)});
}

TEST_CASE("orientation distinguishes the two cyclic orders") {
    CirclePoint p(Rat(1, 10)), q(Rat(1, 2)), r(Rat(9, 10));
    CHECK(orientation(p, q, r) == Orientation::positive);
    CHECK(orientation(p, r, q) == Orientation::negative);
    CHECK(orientation(q, r, p) == Orientation::positive);  // cyclic shift
    CHECK(orientation(p, p, q) == Orientation::degenerate);

    // exact field points work too
    CirclePoint g(kGolden);
    CHECK(orientation(CirclePoint(Rat(0)), CirclePoint(Rat(1, 2)), g) == Orientation::positive);

    // overlapping boxes abstain
    CirclePoint wide(RatInterval{Rat(2, 5), Rat(3, 5)});
    CHECK(orientation(p, wide, q) == Orientation::uncertain);
}

TEST_CASE("preserves_order_on_triple on rotations and the reflection") {
    auto rot = [](const CirclePoint& x) {
        return reduce_mod1(x.exact() + QuadraticNumber{Rat(0), Rat(1, 3), Int(2)});
    };
    CirclePoint p(Rat(1, 10)), q(Rat(1, 2)), r(Rat(9, 10));
    CHECK(preserves_order_on_triple(rot, p, q, r) == Tri::yes);
    CHECK(preserves_order_on_triple(rot, p, r, q) == Tri::yes);  // both orders preserved by rotation

    auto refl = [](const CirclePoint& x) { return reduce_mod1(QuadraticNumber(Rat(1)) - x.exact()); };
    CHECK(preserves_order_on_triple(refl, p, q, r) == Tri::no);

    auto collapse = [](const CirclePoint&) { return CirclePoint(Rat(1, 3)); };
    CHECK(preserves_order_on_triple(collapse, p, q, r) == Tri::yes);  // vacuous when images collide
}

TEST_CASE("circle_dist takes the shorter way around") {
    CHECK(circle_dist(Rat(1, 10), Rat(2, 10)) == Rat(1, 10));
    CHECK(circle_dist(Rat(1, 20), Rat(19, 20)) == Rat(1, 10));
    CHECK(circle_dist(Rat(0), Rat(1, 2)) == Rat(1, 2));
    CHECK(circle_dist(Rat(3, 7), Rat(3, 7)) == Rat(0));
}
