#include <doctest.h>

#include "fixtures.hpp"
#include "wps/plfunc.hpp"

using namespace wps;
using namespace wps::test;

TEST_CASE("rational parsing round trips") {
    CHECK(parse_rat("1/3") == Rat(1, 3));
    CHECK(parse_rat("-2/4") == Rat(-1, 2));
    CHECK(parse_rat("7") == Rat(7));
    CHECK(parse_rat("0.25") == Rat(1, 4));
    CHECK(parse_rat("-1.5") == Rat(-3, 2));
    CHECK(rat_str(Rat(6, 4)) == "3/2");
    CHECK(rat_str(Rat(-5)) == "-5");
    CHECK_THROWS_AS(parse_rat("1/0"), parse_error);
    CHECK_THROWS_AS(parse_rat("x"), parse_error);
}

TEST_CASE("interval set algebra") {
    auto a = IntervalSet::closed(Rat(0), Rat(1));
    auto b = IntervalSet::closed(Rat(1, 2), Rat(2));
    CHECK(a.unite(b) == IntervalSet::closed(Rat(0), Rat(2)));
    CHECK(a.intersect(b) == IntervalSet::closed(Rat(1, 2), Rat(1)));
    auto d = a.subtract(b);
    CHECK(d.contains(Rat(1, 4)));
    CHECK(!d.contains(Rat(1, 2)));
    CHECK(d.closure().contains(Rat(1, 2)));
    // open/closed bookkeeping through affine images
    auto open = IntervalSet::closed(Rat(0), Rat(1)).subtract(IntervalSet::point(Rat(0)));
    auto img = open.affine_image(Rat(1), Rat(-1));  // x -> 1-x, image (0,1] -> [0,1)
    CHECK(img.contains(Rat(0)));
    CHECK(!img.contains(Rat(1)));
}

TEST_CASE("evaluate is exact") {
    Space s = unit_interval();
    ClopenSubset all = ClopenSubset::all(s);
    PLFunc id = pl_identity(s, all);
    CHECK(id.eval(Rat(1, 3)) == Rat(1, 3));

    PLFunc f = pl_from_points(s, 0, {Rat(0), Rat(1)}, {Rat(0), Rat(2)});
    CHECK(f.eval(Rat(1, 2)) == Rat(1));

    PLFunc s1 = di_sigma1(s);
    CHECK(s1.eval(Rat(2, 3)) == Rat(2, 3));
    CHECK(s1.eval(Rat(1, 4)) == Rat(1));
    CHECK(s1.eval(Rat(1, 2)) == Rat(1));
    CHECK_THROWS_AS(s1.eval(Rat(3, 2)), domain_error);
}

TEST_CASE("compose refines breakpoints exactly") {
    Space s = unit_interval();
    ClopenSubset all = ClopenSubset::all(s);
    PLFunc id = pl_identity(s, all);
    PLFunc g = di_sigma1(s);
    CHECK(pl_compose(id, g) == g);

    PLFunc flip = pl_from_points(s, 0, {Rat(0), Rat(1)}, {Rat(1), Rat(0)});
    CHECK(pl_compose(flip, flip) == id);

    // f = 2(1-x) on a space [1/2,1]; g the same map restricted to where the
    // output lands back in [1/2,1]
    Space half;
    half.kind = Space::Kind::Intervals;
    half.components = {{Rat(1, 2), Rat(1), true, true}};
    Space quarter;
    quarter.kind = Space::Kind::Intervals;
    quarter.components = {{Rat(1, 2), Rat(3, 4), true, true}};
    PLFunc f = pl_from_points(half, 0, {Rat(1, 2), Rat(1)}, {Rat(1), Rat(0)});
    PLFunc grest = pl_from_points(quarter, 0, {Rat(1, 2), Rat(3, 4)}, {Rat(1), Rat(1, 2)});
    PLFunc comp = pl_compose(f, grest);
    CHECK(comp.eval(Rat(11, 16)) == Rat(3, 4));  // 2(2x-1) at 11/16
    CHECK(comp.eval(Rat(1, 2)) == Rat(0));
    CHECK(comp.eval(Rat(3, 4)) == Rat(1));
}

TEST_CASE("homeomorphism recognition") {
    Space s = unit_interval();
    ClopenSubset all = ClopenSubset::all(s);
    CHECK(pl_is_homeomorphism(pl_identity(s, all), s, s));
    PLFunc flip = pl_from_points(s, 0, {Rat(0), Rat(1)}, {Rat(1), Rat(0)});
    CHECK(pl_is_homeomorphism(flip, s, s));
    PLFunc tent =
        pl_from_points(s, 0, {Rat(0), Rat(1, 2), Rat(1)}, {Rat(0), Rat(1), Rat(0)});
    CHECK(!pl_is_homeomorphism(tent, s, s));
    CHECK_THROWS_AS(pl_invert(tent, s, s), argument_error);

    // compose(f, invert(f)) = id whenever f is a homeomorphism
    std::mt19937 rng(7);
    for (int t = 0; t < 25; ++t) {
        PLFunc h = random_homeo01(rng, s);
        REQUIRE(pl_is_homeomorphism(h, s, s));
        PLFunc inv = pl_invert(h, s, s);
        CHECK(pl_equal_on_common(pl_compose(h, inv), pl_identity(s, all)));
        CHECK(pl_equal_on_common(pl_compose(inv, h), pl_identity(s, all)));
    }
}

TEST_CASE("solve_equal classifies every affine piece") {
    Space s = unit_interval();
    ClopenSubset all = ClopenSubset::all(s);
    PLFunc id = pl_identity(s, all);
    PLFunc zero = pl_constant(s, all, Rat(0));
    PLFunc s1 = di_sigma1(s);

    CHECK(pl_solve_equal(id, id) == IntervalSet::closed(Rat(0), Rat(1)));
    CHECK(pl_solve_equal(id, zero) == IntervalSet::point(Rat(0)));
    CHECK(pl_solve_equal(s1, zero) == IntervalSet::point(Rat(1)));
    CHECK(pl_solve_equal(s1, id) == IntervalSet::point(Rat(2, 3)));

    // partition property: solutions and non-solutions cover the domain;
    // midpoint spot checks agree with direct evaluation
    std::mt19937 rng(11);
    for (int t = 0; t < 20; ++t) {
        PLFunc f = random_homeo01(rng, s), g = random_homeo01(rng, s);
        IntervalSet sol = pl_solve_equal(f, g);
        IntervalSet rest = IntervalSet::closed(Rat(0), Rat(1)).subtract(sol);
        for (auto& p : sol.pieces()) {
            Rat m = (p.lo + p.hi) / 2;
            CHECK(f.eval(m) == g.eval(m));
        }
        for (auto& p : rest.pieces()) {
            Rat m = (p.lo + p.hi) / 2;
            CHECK(f.eval(m) != g.eval(m));
        }
    }
}

TEST_CASE("images and sums stay exact") {
    Space s = unit_interval();
    ClopenSubset all = ClopenSubset::all(s);
    PLFunc s1 = di_sigma1(s);
    IntervalSet img = pl_image(s1, IntervalSet::closed(Rat(0), Rat(1)));
    CHECK(img == IntervalSet::closed(Rat(0), Rat(1)));
    IntervalSet img2 = pl_image(s1, IntervalSet::closed(Rat(0), Rat(1, 2)));
    CHECK(img2 == IntervalSet::point(Rat(1)));

    PLFunc sum = pl_add(s1, pl_identity(s, all));
    CHECK(sum.eval(Rat(3, 4)) == Rat(1, 2) + Rat(3, 4));
}
