#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "ktrees/formulas.hpp"
#include "ktrees/series.hpp"

using ktrees::FGKind;
using ktrees::Integer;
using ktrees::LabelComposition;
using ktrees::MultiSeries;
using ktrees::Poly;

namespace {

Poly x(int vars, int index) { return Poly::variable(vars, index); }

Poly one(int vars) { return Poly::constant(vars, 1); }

// Collects [z^n] of a solved series as refined counts keyed by exponent
// vector, for comparison with the closed-form refined counting.
void check_series_against_formula(const MultiSeries& series, int k, int h, bool plane) {
    for (int n = 1; n <= series.order(); ++n) {
        for (const auto& [expo, coeff] : series.at(n).terms()) {
            std::vector<long> counts(expo.begin(), expo.end());
            LabelComposition comp(k, counts);
            REQUIRE(comp.n() == n); // x-exponents record the label histogram
            Integer expected = plane ? ktrees::thm1_root(h, comp) : ktrees::thm2_root(h, comp);
            CAPTURE(n);
            CAPTURE(h);
            CHECK(coeff == expected);
        }
        // Conversely every nonzero refined count must appear in the series.
        ktrees::for_each_composition(k, n, [&](const LabelComposition& comp) {
            Integer expected = plane ? ktrees::thm1_root(h, comp) : ktrees::thm2_root(h, comp);
            std::vector<int> expo(comp.counts.begin(), comp.counts.end());
            CHECK(series.at(n).coeff(expo) == expected);
        });
    }
}

} // namespace

TEST_CASE("polynomial arithmetic basics") {
    Poly p = x(2, 1) + x(2, 2);
    Poly q = x(2, 1) - x(2, 2);
    Poly product = p * q; // x1^2 - x2^2
    CHECK(product.coeff({2, 0}) == 1);
    CHECK(product.coeff({0, 2}) == -1);
    CHECK(product.coeff({1, 1}) == 0);
    CHECK((p - p).is_zero());
    CHECK(p * Poly::constant(2, 0) == Poly(2));
    CHECK(product.eval_ones() == 0);
    CHECK((p * p).eval_ones() == 4);

    Poly xy = x(2, 1) * x(2, 2);
    CHECK(xy.divided_by_variable(2) == x(2, 1));
    CHECK_THROWS_AS(p.divided_by_variable(1), ktrees::NonExactDivision);
}

TEST_CASE("series inverse, powers, derivative") {
    // (1 - z)^-1 = 1 + z + z^2 + ...
    MultiSeries geometric =
        (MultiSeries::constant(1, 6, 1) - MultiSeries::z(1, 6)).inverse();
    for (int n = 0; n <= 6; ++n) CHECK(geometric.at(n) == one(1));

    // (1 + z)^2 and its formal derivative 2(1 + z).
    MultiSeries binomial = MultiSeries::constant(1, 4, 1) + MultiSeries::z(1, 4);
    MultiSeries squared = binomial.pow(2);
    CHECK(squared.at(0) == one(1));
    CHECK(squared.at(1) == Poly::constant(1, 2));
    CHECK(squared.at(2) == one(1));
    CHECK(squared.at(3).is_zero());
    MultiSeries d = squared.derivative();
    CHECK(d.at(0) == Poly::constant(1, 2));
    CHECK(d.at(1) == Poly::constant(1, 2));
    CHECK(d.at(2).is_zero());

    // pow(-2) == inverse of the square.
    CHECK(binomial.pow(-2) == squared.inverse());
    CHECK(squared.pow(-2) * squared.pow(2) ==
          MultiSeries::constant(1, squared.order(), 1).truncated(squared.pow(-2).order()));
}

TEST_CASE("times_z grows the truncation order exactly") {
    MultiSeries s = MultiSeries::constant(2, 3, 1) + MultiSeries::z(2, 3);
    MultiSeries shifted = s.times_z(2);
    CHECK(shifted.order() == 5);
    CHECK(shifted.at(0).is_zero());
    CHECK(shifted.at(2) == one(2));
    CHECK(shifted.at(3) == one(2));
    CHECK(shifted.truncated(3).order() == 3);
}

TEST_CASE("monomial division strips the factor or throws") {
    MultiSeries s = MultiSeries::monomial(x(2, 1) * x(2, 1), 2, 5);
    MultiSeries quotient = s.divided_by_monomial(1, 1);
    CHECK(quotient.at(1) == x(2, 1));
    CHECK_THROWS_AS(MultiSeries::monomial(x(2, 2), 1, 3).divided_by_monomial(1, 1),
                    ktrees::NonExactDivision);
    CHECK_THROWS_AS(MultiSeries::monomial(x(2, 1), 0, 3).divided_by_monomial(1, 1),
                    ktrees::NonExactDivision);
}

TEST_CASE("endpoint polynomials: frozen shapes") {
    // F_{2,1} = 1 + (x1 - x2) t
    CHECK(ktrees::fg_poly(2, 1, FGKind::F).linear == x(2, 1) - x(2, 2));
    // G_{2,1} = 1 - x2 t
    CHECK(ktrees::fg_poly(2, 1, FGKind::G).linear == -x(2, 2));
    // F_{2,2} = 1 (even midpoint), G_{3,2} = 1 (odd midpoint), F_{4,3} = 1
    CHECK(ktrees::fg_poly(2, 2, FGKind::F).linear.is_zero());
    CHECK(ktrees::fg_poly(3, 2, FGKind::G).linear.is_zero());
    CHECK(ktrees::fg_poly(4, 3, FGKind::F).linear.is_zero());
    // F_{3,1} = 1 + (x1 + x2 - x3) t
    CHECK(ktrees::fg_poly(3, 1, FGKind::F).linear == x(3, 1) + x(3, 2) - x(3, 3));
    // Domain edges: F up to k+1, G up to k.
    CHECK_NOTHROW(ktrees::fg_poly(3, 4, FGKind::F));
    CHECK_THROWS_AS(ktrees::fg_poly(3, 5, FGKind::F), ktrees::InvalidParams);
    CHECK_THROWS_AS(ktrees::fg_poly(3, 4, FGKind::G), ktrees::InvalidParams);
    CHECK_THROWS_AS(ktrees::fg_poly(3, 0, FGKind::F), ktrees::InvalidParams);
}

TEST_CASE("endpoint polynomial identities hold for k up to 6") {
    for (int k = 1; k <= 6; ++k) {
        auto report = ktrees::check_fg_identities(k);
        CAPTURE(report.detail);
        CHECK(report.ok);
    }
}

TEST_CASE("plane system: refined counts by root, monomial by monomial") {
    for (int k = 1; k <= 4; ++k) {
        auto system = ktrees::solve_plane_system(k, 6);
        REQUIRE(system.size() == static_cast<std::size_t>(k));
        for (int h = 1; h <= k; ++h)
            check_series_against_formula(system[static_cast<std::size_t>(h) - 1], k, h, true);
    }
}

TEST_CASE("noncrossing system: refined counts by root, monomial by monomial") {
    for (int k = 1; k <= 3; ++k) {
        auto system = ktrees::solve_nc_system(k, 5);
        REQUIRE(system.size() == static_cast<std::size_t>(k));
        for (int h = 1; h <= k; ++h)
            check_series_against_formula(system[static_cast<std::size_t>(h) - 1], k, h, false);
    }
}

TEST_CASE("frozen coefficients of the solved systems") {
    auto plane = ktrees::solve_plane_system(2, 3);
    CHECK(plane[0].at(2).coeff({1, 1}) == 1);
    CHECK(plane[0].at(2).coeff({2, 0}) == 1);
    CHECK(plane[0].at(2).coeff({0, 2}) == 0);
    CHECK(plane[1].at(2).coeff({1, 1}) == 1);

    auto nc = ktrees::solve_nc_system(1, 3);
    CHECK(nc[0].at(3).coeff({3}) == 3);
    CHECK(nc[0].at(2).coeff({2}) == 1);
}

TEST_CASE("root-label marginals via x := 1") {
    auto plane = ktrees::solve_plane_system(3, 6);
    for (int h = 1; h <= 3; ++h)
        for (int n = 1; n <= 6; ++n)
            CHECK(plane[static_cast<std::size_t>(h) - 1].at(n).eval_ones() ==
                  ktrees::root_plane(3, n, h));
    auto nc = ktrees::solve_nc_system(2, 5);
    for (int h = 1; h <= 2; ++h)
        for (int n = 1; n <= 5; ++n)
            CHECK(nc[static_cast<std::size_t>(h) - 1].at(n).eval_ones() ==
                  ktrees::root_nc(2, n, h));
}

TEST_CASE("totals identity: (1 - sum P_r) P_1 = x_1 z") {
    for (int k = 1; k <= 4; ++k) {
        auto report = ktrees::check_plane_totals_identity(k, 7);
        CAPTURE(report.detail);
        CHECK(report.ok);
    }
}

TEST_CASE("substituted closed forms match the solved systems") {
    for (int k = 1; k <= 6; ++k) {
        auto plane = ktrees::check_prop21(k, 5);
        CAPTURE(plane.detail);
        CHECK(plane.ok);
        auto nc = ktrees::check_prop31_squared(k, 4);
        CAPTURE(nc.detail);
        CHECK(nc.ok);
    }
}

TEST_CASE("auxiliary single-equation series") {
    // With every x := 1, the plane auxiliary series counts 1, 2, 5, ... for
    // k = 1 and the noncrossing one counts 1, 3, 12, ...
    auto a = ktrees::solve_A(1, 4);
    CHECK(a.at(1).eval_ones() == 1);
    CHECK(a.at(2).eval_ones() == 2);
    CHECK(a.at(3).eval_ones() == 5);
    CHECK(a.at(4).eval_ones() == 14);
    auto b = ktrees::solve_B(1, 4);
    CHECK(b.at(1).eval_ones() == 1);
    CHECK(b.at(2).eval_ones() == 3);
    CHECK(b.at(3).eval_ones() == 12);
    CHECK(b.at(4).eval_ones() == 55);
}

TEST_CASE("coefficient extraction by Lagrange inversion") {
    // A = z (1 + A)^2 gives the Catalan numbers.
    MultiSeries t = MultiSeries::z(1, 8);
    MultiSeries phi = (MultiSeries::constant(1, 8, 1) + t).pow(2);
    CHECK(ktrees::lagrange_coeff(t, phi, 1) == one(1));
    CHECK(ktrees::lagrange_coeff(t, phi, 2) == Poly::constant(1, 2));
    CHECK(ktrees::lagrange_coeff(t, phi, 3) == Poly::constant(1, 5));
    CHECK(ktrees::lagrange_coeff(t, phi, 4) == Poly::constant(1, 14));

    // The same extraction applied to the defining equation of the plane
    // auxiliary series reproduces the iteratively solved coefficients.
    for (int k = 1; k <= 3; ++k) {
        const int order = 5;
        MultiSeries tk = MultiSeries::z(k, order + 1);
        MultiSeries phik = MultiSeries::constant(k, order + 1, 1);
        for (int i = 1; i <= (k + 1) / 2; ++i)
            phik = phik * ktrees::fg_poly(k, i, FGKind::F).apply(tk).pow(2);
        for (int i = 1; i <= k / 2; ++i)
            phik = phik * ktrees::fg_poly(k, i, FGKind::G).apply(tk).pow(-2);
        auto solved = ktrees::solve_A(k, order);
        for (int n = 1; n <= order; ++n)
            CHECK(ktrees::lagrange_coeff(tk, phik, n) == solved.at(n));
    }
}

TEST_CASE("series dump rows are ordered and faithful") {
    auto rows = ktrees::dump_series("P1", ktrees::solve_plane_system(2, 2)[0]);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].n == 1);
    CHECK(rows[0].exponents == std::vector<int>{1, 0});
    CHECK(rows[0].coeff == 1);
    CHECK(rows[1].n == 2);
    CHECK(rows[1].exponents == std::vector<int>{1, 1});
    CHECK(rows[2].exponents == std::vector<int>{2, 0});
    for (const auto& row : rows) CHECK(row.name == "P1");
}

TEST_CASE("system solving validates arguments") {
    CHECK_THROWS_AS(ktrees::solve_plane_system(0, 3), ktrees::InvalidParams);
    CHECK_THROWS_AS(ktrees::solve_plane_system(2, -1), ktrees::InvalidParams);
    CHECK_THROWS_AS(ktrees::solve_nc_system(0, 3), ktrees::InvalidParams);
}
