#include <doctest.h>

#include "fixtures.hpp"
#include "wps/characters.hpp"

using namespace wps;
using namespace wps::test;

namespace {

FourierElement random_fourier(std::mt19937& rng, const FockSpace& fs, int maxdeg) {
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    FourierElement T;
    BaseFunc f;
    for (size_t i = 0; i < fs.system().space.points.size(); ++i)
        f.push_back(RatComplex{Rat(num(rng), den(rng)), Rat(num(rng), den(rng))});
    T.coeffs[0] = f;
    for (int n = 1; n <= maxdeg; ++n) {
        std::vector<RatComplex> c;
        for (int i = 0; i < fs.path_count(n); ++i)
            c.push_back(RatComplex{Rat(num(rng), den(rng)), Rat(num(rng), den(rng))});
        T.coeffs[n] = c;
    }
    return T;
}

}  // namespace

TEST_CASE("disc data on matrices and the E1 system") {
    WPS m = wps_from_matrix({{Rat(2)}});
    auto dd = disc_data(m);
    REQUIRE(dd.points.size() == 1);
    CHECK(dd.points[0].second == Rat(2));
    CHECK(disc_radius_sq(m, Point::of_atom(0)) == Rat(2));

    // matrix encoding: radius^2(i) = A_ii
    WPS m2 = wps_from_matrix({{Rat(3), Rat(1)}, {Rat(0), Rat(5, 7)}});
    CHECK(disc_radius_sq(m2, Point::of_atom(0)) == Rat(3));
    CHECK(disc_radius_sq(m2, Point::of_atom(1)) == Rat(5, 7));

    // E1: the whole interval is fixed; generic radius^2 = 1/3, jump to 1 at 0
    WPS e1 = e1_system(Rat(1, 3), Rat(2, 3));
    auto de = disc_data(e1);
    REQUIRE(de.segments.size() == 1);
    CHECK(de.segments[0].lo == Rat(0));
    CHECK(de.segments[0].hi == Rat(1));
    for (auto& y : de.segments[0].ys) CHECK(y == Rat(1, 3));
    REQUIRE(de.points.size() == 1);
    CHECK(de.points[0].first.coord == Rat(0));
    CHECK(de.points[0].second == Rat(1));
    CHECK(disc_radius_sq(e1, Point::of_coord(Rat(0))) == Rat(1));
    CHECK(disc_radius_sq(e1, Point::of_coord(Rat(1, 2))) == Rat(1, 3));
    CHECK_THROWS_AS(disc_radius_sq(different_invariants(false), Point::of_coord(Rat(1, 2))),
                    domain_error);

    // different-invariants: isolated fixed points 0 and 2/3
    auto ddi = disc_data(different_invariants(false));
    CHECK(ddi.segments.empty());
    REQUIRE(ddi.points.size() == 2);
    CHECK(ddi.points[0].first.coord == Rat(0));
    CHECK(ddi.points[0].second == Rat(2));
    CHECK(ddi.points[1].first.coord == Rat(2, 3));
    CHECK(ddi.points[1].second == Rat(1));
}

TEST_CASE("character evaluation") {
    // single self-loop of weight 2: r^2 = 2
    WPS m = wps_from_matrix({{Rat(2)}});
    FockSpace fs = FockSpace::build(m, 5);
    std::mt19937 rng(163);
    FourierElement T = random_fourier(rng, fs, 4);

    // z = 0 picks out the degree-0 coefficient
    auto v0 = eval_character(fs, T, 0, 0.0);
    CHECK(std::abs(v0 - std::complex<double>(to_double(T.coeffs[0][0].re),
                                             to_double(T.coeffs[0][0].im))) < 1e-15);
    // boundary allowed, beyond rejected
    CHECK_NOTHROW(eval_character(fs, T, 0, std::sqrt(2.0)));
    CHECK_THROWS_AS(eval_character(fs, T, 0, {1.5, 0.0}), domain_error);

    // Lemma values: theta(S_xi) = xi(x,x) theta(W) at the fixed point
    FourierElement W = fe_unit_shift(fs);
    std::uniform_real_distribution<double> uz(-0.7, 0.7);
    for (int t = 0; t < 10; ++t) {
        std::complex<double> z(uz(rng), uz(rng));
        FourierElement S;
        S.coeffs[1] = {RatComplex{Rat(3, 7), Rat(-2, 5)}};
        auto lhs = eval_character(fs, S, 0, z);
        auto rhs = std::complex<double>(3.0 / 7, -2.0 / 5) * eval_character(fs, W, 0, z);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }

    // multiplicativity against the series product, degrees n + m <= N
    for (int t = 0; t < 10; ++t) {
        FourierElement A = random_fourier(rng, fs, 2);
        FourierElement B = random_fourier(rng, fs, 2);
        FourierElement AB = series_product(fs, A, B);
        std::complex<double> z(uz(rng) * 0.5, uz(rng) * 0.5);
        auto lhs = eval_character(fs, AB, 0, z);
        auto rhs = eval_character(fs, A, 0, z) * eval_character(fs, B, 0, z);
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }

    // non-fixed points: only the degree-0 term survives and z must be 0
    WPS two = wps_from_matrix({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
    FockSpace f2 = FockSpace::build(two, 3);
    FourierElement S1 = fe_unit_shift(f2);
    CHECK(std::abs(eval_character(f2, S1, 0, 0.0)) == 0.0);
}

TEST_CASE("character bound by the Fourier norm tail") {
    WPS m = wps_from_matrix({{Rat(2)}});
    FockSpace fs = FockSpace::build(m, 5);
    std::mt19937 rng(167);
    std::uniform_real_distribution<double> uz(-0.9, 0.9);
    for (int t = 0; t < 10; ++t) {
        FourierElement T = random_fourier(rng, fs, 4);
        std::complex<double> z(uz(rng), uz(rng));
        double r = std::sqrt(2.0);
        double bound = 0.0;
        for (auto& [n, vals] : T.coeffs) {
            FourierElement band;
            band.coeffs[n] = vals;
            bound += op_norm(fs, band) * std::pow(std::abs(z) / r, n);
        }
        CHECK(std::abs(eval_character(fs, T, 0, z)) <= bound + 1e-9);
    }
}

TEST_CASE("Moebius maps: identity form, group laws, circle preservation") {
    // theta = pi, w = 0 is the identity
    MobiusMap idm{M_PI, {0.0, 0.0}};
    for (double t : {0.1, 0.5, 2.0}) {
        std::complex<double> z = 0.3 * std::complex<double>(std::cos(t), std::sin(t));
        CHECK(std::abs(idm.apply(z) - z) < 1e-15);
    }

    std::mt19937 rng(173);
    std::uniform_real_distribution<double> uth(0.0, 2 * M_PI), ur(0.0, 0.9);
    auto rand_map = [&]() {
        MobiusMap m;
        m.theta = uth(rng);
        double r = ur(rng), p = uth(rng);
        m.w = std::polar(r, p);
        return m;
    };
    for (int t = 0; t < 100; ++t) {
        MobiusMap a = rand_map(), b = rand_map(), c = rand_map();
        std::complex<double> z = std::polar(ur(rng), uth(rng));
        // compose agrees pointwise
        CHECK(std::abs(mobius_compose(a, b).apply(z) - a.apply(b.apply(z))) < 1e-12);
        // associativity
        auto lhs = mobius_compose(mobius_compose(a, b), c);
        auto rhs = mobius_compose(a, mobius_compose(b, c));
        CHECK(std::abs(lhs.apply(z) - rhs.apply(z)) < 1e-12);
        // inverse composes to the identity
        auto inv = mobius_invert(a);
        CHECK(std::abs(mobius_compose(inv, a).apply(z) - z) < 1e-12);
        // centre maps to zero, circle to circle
        CHECK(std::abs(a.apply(a.w)) < 1e-14);
        std::complex<double> boundary = std::polar(1.0, uth(rng));
        CHECK(std::abs(std::abs(a.apply(boundary)) - 1.0) < 1e-12);
    }
}

TEST_CASE("zeroing pairs satisfy the unimodular relation") {
    // h = 0: gamma = (1/2, sqrt(3)/2)
    auto [l0, g0] = solve_zeroing_pair(0.0);
    CHECK(std::abs(g0 - std::complex<double>(0.5, std::sqrt(3.0) / 2)) < 1e-15);
    CHECK(std::abs(std::abs(l0) - 1.0) < 1e-12);

    // h = 1/2: gamma = (3/4, sqrt(7)/4) and |gamma - 1| = |gamma - 1/2|
    auto [l1, g1] = solve_zeroing_pair(0.5);
    CHECK(std::abs(g1 - std::complex<double>(0.75, std::sqrt(7.0) / 4)) < 1e-15);
    CHECK(std::abs(std::abs(g1 - 1.0) - std::abs(g1 - 0.5)) < 1e-14);
    CHECK(std::abs(std::abs(l1) - 1.0) < 1e-12);

    // grid h = 0, 0.01, ..., 0.99: relation and continuity of the pair
    std::complex<double> prev_l, prev_g;
    for (int k = 0; k <= 99; ++k) {
        double h = k / 100.0;
        auto [lam, gam] = solve_zeroing_pair(h);
        CHECK(std::abs(std::abs(lam) - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(gam) - 1.0) < 1e-12);
        CHECK(std::abs(lam * (gam - h) - (gam - 1.0)) < 1e-12);
        if (k > 0) {
            CHECK(std::abs(lam - prev_l) <= 0.1);
            CHECK(std::abs(gam - prev_g) <= 0.1);
        }
        prev_l = lam;
        prev_g = gam;
    }
    CHECK_THROWS_AS(solve_zeroing_pair(1.0), domain_error);
}

TEST_CASE("five-fold composition sends the origin to the origin") {
    // identity map: residual zero with gamma = 1
    MobiusMap idm{M_PI, {0.0, 0.0}};
    CHECK(verify_zeroing_composition(idm, mobius_invert(idm), {1.0, 0.0}, {1.0, 0.0}) <
          1e-15);

    // the worked case theta = 1.1, w = 0.3
    MobiusMap f{1.1, {0.3, 0.0}};
    auto [lam, gam] = solve_zeroing_pair(0.09);
    CHECK(verify_zeroing_composition(f, mobius_invert(f), lam, gam) < 1e-9);

    std::mt19937 rng(179);
    std::uniform_real_distribution<double> uth(0.0, 2 * M_PI), ur(0.0, 0.95);
    for (int t = 0; t < 100; ++t) {
        MobiusMap m{uth(rng), std::polar(ur(rng), uth(rng))};
        auto [l, g] = solve_zeroing_pair(std::norm(m.w));
        CHECK(verify_zeroing_composition(m, mobius_invert(m), l, g) < 1e-9);
    }
}

TEST_CASE("semi-gradedness probe") {
    // graded data (all centres zero) reports nothing
    std::vector<MobiusMap> graded{{0.4, {0.0, 0.0}}, {2.2, {0.0, 0.0}}};
    CHECK(semi_gradedness_probe(graded).nonzero.empty());

    // gauge twists are rotations and fix the origin
    std::vector<MobiusMap> twists{MobiusMap::rotation({0.0, 1.0}),
                                  MobiusMap::rotation(std::polar(1.0, 1.3))};
    CHECK(semi_gradedness_probe(twists).nonzero.empty());

    // a synthetic family with |w| = 0.5 everywhere gets corrected
    std::vector<MobiusMap> fam;
    for (int k = 0; k < 10; ++k) fam.push_back({0.3 * k, std::polar(0.5, 0.2 * k)});
    auto rep = semi_gradedness_probe(fam);
    CHECK(rep.nonzero.size() == 10);
    CHECK(rep.max_residual < 1e-9);
}
