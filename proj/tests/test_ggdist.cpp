#include "cr/errors.hpp"
#include "cr/ggdist.hpp"
#include "cr/special.hpp"

#include "doctest.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>

using namespace cr;

namespace {

using boost::math::quadrature::gauss_kronrod;

double tapered(double x) {
    if (x >= 2.0)
        return 0.0;
    return std::exp(-x) * std::pow(1.0 - x * x / 4.0, 8);
}

PointFunction pf(double (*g)(double)) {
    return [g](std::span<const double> x) { return g(x[0]); };
}

double disk_bump(double x1, double x2) {
    const double u = 1.0 - (x1 * x1 + x2 * x2);
    return u > 0.0 ? std::pow(u, 6) * (1.0 + 0.3 * x1 * x2) : 0.0;
}

} // namespace

TEST_CASE("Garding-Gindikin integral, rank one, against 1D quadrature") {
    for (double lam : {0.6, 1.7, 4.0}) {
        boost::math::quadrature::tanh_sinh<double> ts;
        const double ref =
            ts.integrate([&](double x) { return x < 1e-300 ? 0.0 : std::pow(x, lam - 1.0) * tapered(x); }, 0.0, 2.0) /
            std::tgamma(lam);
        const auto got = gg_integral(GGSpec{1.0, 1, lam, pf(tapered), 2.0});
        CHECK(got.value == doctest::Approx(ref).epsilon(1e-8));
    }
}

TEST_CASE("Garding-Gindikin integral, r=2 a=2 lambda=3, against nested adaptive quadrature") {
    const auto f = [](std::span<const double> x) { return disk_bump(x[0], x[1]); };
    const double ref = 0.5 / gindikin_gamma(2.0, 2, 3.0) *
                       gauss_kronrod<double, 31>::integrate(
                           [](double x1) {
                               return gauss_kronrod<double, 31>::integrate(
                                   [x1](double x2) {
                                       return x1 * x2 * (x1 - x2) * (x1 - x2) * disk_bump(x1, x2);
                                   },
                                   0.0, 1.0, 15, 1e-13);
                           },
                           0.0, 1.0, 15, 1e-13);
    const auto got = gg_integral(GGSpec{2.0, 2, 3.0, f, 1.0});
    CHECK(got.value == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("Garding-Gindikin integral, zero and invalid inputs") {
    const PointFunction zero = [](std::span<const double>) { return 0.0; };
    CHECK(gg_integral(GGSpec{1.0, 1, 0.5, zero, 1.0}).value == 0.0);
    CHECK(gg_integral(GGSpec{2.0, 2, 2.0, zero, 1.0}).value == 0.0);
    CHECK_THROWS_AS(gg_integral(GGSpec{2.0, 2, 1.0, zero, 1.0}), ParameterError);
    CHECK_THROWS_AS(gg_integral(GGSpec{3.0, 2, 4.0, zero, 1.0}), ParameterError);
    CHECK_NOTHROW(gg_integral(GGSpec{8.0, 1, 0.5, zero, 1.0}));
}

TEST_CASE("rank-one Dirac limit of G_lambda") {
    const std::vector<double> grid{0.025, 0.05, 0.1, 0.15, 0.2};
    const auto bump = [](double h) {
        return [h](std::span<const double> x) {
            const double s = x[0] / h;
            return s < 1.0 ? std::pow(1.0 - s * s, 6) * (1.0 + 0.5 * s) : 0.0;
        };
    };
    SUBCASE("f(0) = 1") {
        const auto d = gg_dirac_limit_rank1(bump(1.0), 1.0, grid);
        CHECK(d.value == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(d.error < 1e-3);
    }
    SUBCASE("f(0) = 0") {
        const PointFunction g = [](std::span<const double> x) {
            return x[0] < 1.0 ? 3.0 * x[0] * std::pow(1.0 - x[0], 6) : 0.0;
        };
        CHECK(std::abs(gg_dirac_limit_rank1(g, 1.0, grid).value) < 1e-3);
    }
    SUBCASE("scaling f(x/h) leaves the limit unchanged") {
        const double v1 = gg_dirac_limit_rank1(bump(0.3), 0.3, grid).value;
        const double v2 = gg_dirac_limit_rank1(bump(3.0), 3.0, grid).value;
        CHECK(v1 == doctest::Approx(v2).epsilon(1e-3));
    }
    CHECK_THROWS_AS(gg_dirac_limit_rank1(bump(1.0), 1.0, {0.1, 0.3}), ParameterError);
    CHECK_THROWS_AS(gg_dirac_limit_rank1(bump(1.0), 1.0, {0.1}), ParameterError);
    CHECK_THROWS_AS(gg_dirac_limit_rank1(bump(1.0), 1.0, {0.1, 0.1}), ParameterError);
}

TEST_CASE("S_beta bridge, rank one") {
    const auto dp = domain_params(2, 5, 1, 2);
    const JetFunction f = poly_bump(1, 1.0, 10, 1.0, 0.3, 0.0);
    const auto s = s_beta_chain(dp, dp.delta0 + 4.0, f);
    CHECK(s.lhs == doctest::Approx(s.rhs).epsilon(1e-5));
    CHECK(s.rhs_displayed == s.rhs);
    QuadratureSpec q2;
    q2.nodes = 48;
    const auto s2 = s_beta_chain(dp, dp.delta0 + 4.0, f, q2);
    CHECK(s2.lhs == doctest::Approx(s.lhs).epsilon(1e-7));
    CHECK(s2.rhs == doctest::Approx(s.rhs).epsilon(1e-7));
    const auto z = s_beta_chain(dp, dp.delta0 + 4.0, scaled(f, 0.0));
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);
    CHECK_THROWS_AS(s_beta_chain(dp, -8.0, f), ParameterError);
    CHECK(verify_s_beta(dp, -1.3, f, 1e-5).pass);
}

TEST_CASE("Dirac functional, rank one") {
    SUBCASE("H3 planes: constant c1 = -8") {
        const auto rep = verify_dirac(domain_params(1, 4, 1, 3));
        CHECK(rep.pass);
        CHECK(rep.measured_constants.at("measured_c") == doctest::Approx(-8.0).epsilon(1e-6));
        CHECK(rep.params["matched_candidates"] == nlohmann::ordered_json::array({"c1"}));
    }
    SUBCASE("(2,5,1,2) and the octonionic plane") {
        CHECK(verify_dirac(domain_params(2, 5, 1, 2)).pass);
        const auto oct = verify_dirac(domain_params(8, 3, 1, 2));
        CHECK(oct.pass);
        CHECK(oct.measured_constants.at("measured_c") ==
              doctest::Approx(std::ldexp(6.0 * 13440.0, 26)).epsilon(1e-6));
    }
    SUBCASE("linearity") {
        const auto dp = domain_params(2, 5, 1, 2);
        const JetFunction f = poly_bump(1, 0.8, 8, 1.0, 0.2, 0.0);
        const JetFunction g = poly_bump(1, 0.8, 10, 0.5, -0.7, 0.0);
        const double Lf = dirac_functional(dp, f);
        const double Lg = dirac_functional(dp, g);
        CHECK(dirac_functional(dp, scaled(f, 3.0)) == doctest::Approx(3.0 * Lf).epsilon(1e-10));
        CHECK(dirac_functional(dp, sum(f, g)) == doctest::Approx(Lf + Lg).epsilon(1e-10));
    }
    CHECK_THROWS_AS(dirac_functional(domain_params(2, 5, 1, 2), tilted(poly_bump(1, 1.0, 8), 0, 0.5)),
                    ParameterError);
}
