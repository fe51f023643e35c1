#include "cr/errors.hpp"
#include "cr/quadrature.hpp"
#include "cr/special.hpp"

#include "doctest.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numeric>

using namespace cr;

namespace {

double beta_fn(double x, double y) { return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y)); }

} // namespace

TEST_CASE("one-dimensional rules") {
    const auto gl = gauss_legendre(10);
    for (int k = 0; k <= 19; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < gl.x.size(); ++i)
            s += gl.w[i] * std::pow(gl.x[i], k);
        const double exact = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
        CHECK(s == doctest::Approx(exact).epsilon(1e-14).scale(1.0));
    }
    for (double p : {-0.9, -0.3, 0.0, 1.7, 12.5}) {
        for (double q : {-0.5, 0.0, 2.3}) {
            const auto u = jacobi_unit(12, p, q);
            for (int k = 0; k <= 23; k += 3) {
                double s = 0.0;
                for (std::size_t i = 0; i < u.x.size(); ++i)
                    s += u.w[i] * std::pow(u.x[i], k);
                CHECK(s == doctest::Approx(beta_fn(p + k + 1, q + 1)).epsilon(1e-12));
            }
        }
    }
    CHECK_THROWS_AS(gauss_jacobi(5, -1.0, 0.0), ParameterError);
    CHECK_THROWS_AS(gauss_jacobi(0, 0.0, 0.0), ParameterError);
}

TEST_CASE("rank-one integrals against adaptive references") {
    const auto f = bump(1, 1.3);
    QuadratureSpec spec;
    spec.radius = 1.3;
    spec.nodes = 40;
    // iota = 0, 2b = 0, delta = 0: plain Lebesgue integral of the bump
    const RootData flat(1, 0.0, 0.0, 0.0);
    const double ref = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double t) { const double x[] = {t}; return f.value(x); }, -1.3, 1.3, 15, 1e-14);
    const auto res = integrate_mu(flat, f, 0.0, spec);
    CHECK(res.value == doctest::Approx(ref).epsilon(1e-10));

    // singular wall weight |sh t|^delta |2 sh 2t|^iota |2 sh t|^{2b}, gamma close to -1
    const RootData rd(1, 0.0, 0.3, 0.2);
    for (double delta : {-1.45, -0.7, 1.3}) {
        boost::math::quadrature::tanh_sinh<double> ts;
        const double ref2 = 2.0 * ts.integrate(
                                      [&](double t) {
                                          if (t < 1e-200) // below this the mass is negligible
                                              return 0.0;
                                          const double x[] = {t};
                                          return std::pow(std::sinh(t), delta) * measure_density(rd, x) * f.value(x);
                                      },
                                      0.0, 1.3);
        const auto r2 = integrate_mu(rd, f, delta, spec);
        CHECK(r2.value == doctest::Approx(ref2).epsilon(1e-9));
    }
    spec.rel_tol = 0.0;
    CHECK(integrate_mu(rd, constant_function(1, 0.0), 0.5, spec).value == 0.0);
}

TEST_CASE("separable rank-two integrand with a = 0") {
    const RootData rd(2, 0.0, 1.4, 0.6);
    const double delta = -0.8;
    auto g = [](double t) { return std::exp(-t * t) * (1.0 + 0.5 * t * t); };
    const RootData rd1(1, 0.0, 1.4, 0.6);
    QuadratureSpec spec;
    spec.radius = 9.0;
    spec.panel = 2.0;
    spec.nodes = 32;
    const auto one = integrate_mu(
        rd1, [&](std::span<const double> t) { return g(t[0]); }, delta, spec);
    const auto two = integrate_mu(
        rd, [&](std::span<const double> t) { return g(t[0]) * g(t[1]); }, delta, spec);
    CHECK(two.value == doctest::Approx(one.value * one.value).epsilon(1e-8));
}

TEST_CASE("Laguerre-Selberg integrals on the ordered cone") {
    // int_{R_+^r} prod x^{al-1} e^{-x} prod |x_i - x_j|^{2g} = prod_j G(al+(j-1)g) G(1+jg) / G(1+g)
    for (int r = 2; r <= 3; ++r) {
        for (auto [al, g] : {std::pair{0.35, 0.55}, std::pair{1.8, 1.0}, std::pair{0.6, 0.05}}) {
            double exact = 1.0;
            for (int j = 1; j <= r; ++j)
                exact *= std::tgamma(al + (j - 1) * g) * std::tgamma(1.0 + j * g) / std::tgamma(1.0 + g);
            double fact = 1.0;
            for (int j = 2; j <= r; ++j)
                fact *= j;
            PointFunction F = [&](std::span<const double> x) {
                double v = 1.0;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    v *= std::pow(x[i], al - 1.0) * std::exp(-x[i]);
                    for (std::size_t k = i + 1; k < x.size(); ++k)
                        v *= std::pow(std::abs(x[i] - x[k]), 2.0 * g);
                }
                return v;
            };
            QuadratureSpec spec;
            spec.radius = 70.0;
            spec.panel = 6.0;
            spec.nodes = r == 2 ? 32 : 20;
            spec.rel_tol = 0.0;
            const auto res = integrate_cone(r, F, ConeExponents{al - 1.0, 2.0 * g, 0.0}, spec);
            INFO("r=" << r << " alpha=" << al << " gamma=" << g << " err=" << res.error);
            CHECK(res.value * fact == doctest::Approx(exact).epsilon(r == 2 ? 1e-10 : 1e-7));
        }
    }
}

TEST_CASE("symmetrized full-space integral equals the chamber multiple") {
    for (int r = 1; r <= 3; ++r) {
        const RootData rd(r, r == 3 ? 2.0 : 1.3, 1.2, 0.4);
        const auto f = bump_family(r, 1.1, 1.0, 0.4, -0.3);
        QuadratureSpec spec;
        spec.radius = 1.1;
        spec.nodes = r == 3 ? 12 : 24;
        spec.estimate_error = false;
        const auto inv = integrate_mu(rd, f, 0.3, spec);
        const auto full = integrate_mu(
            rd, [&](std::span<const double> t) { return f.value(t); }, 0.3, spec, false);
        CHECK(full.value == doctest::Approx(inv.value).epsilon(1e-10));
    }
}

TEST_CASE("error estimate bounds the change under node doubling") {
    const RootData rd(2, 1.7, 0.8, 1.0);
    const auto f = bump_family(2, 1.4, 1.0, 0.2, 0.1);
    QuadratureSpec spec;
    spec.radius = 1.4;
    spec.nodes = 16;
    spec.rel_tol = 0.0;
    const auto a = integrate_mu(rd, f, -0.6, spec);
    spec.nodes = 32;
    const auto b = integrate_mu(rd, f, -0.6, spec);
    CHECK(a.error > 0.0);
    CHECK(std::abs(b.value - a.value) <= a.error);
    CHECK(b.error <= a.error);
}

TEST_CASE("integrability and convergence errors") {
    const RootData rd(1, 0.0, 0.0, 0.0);
    QuadratureSpec spec;
    spec.radius = 1.0;
    CHECK_THROWS_AS(integrate_mu(rd, bump(1, 1.0), -1.0, spec), ParameterError);
    CHECK_THROWS_AS(mu_wall_exponent(RootData(2, 1.0, 0.5, 0.0), -1.6), ParameterError);
    spec.radius = 0.0;
    CHECK_THROWS_AS(integrate_mu(rd, constant_function(1, 1.0), 0.0, spec), ParameterError);
    // a bump supplies its own radius
    CHECK(integrate_mu(rd, bump(1, 1.0), 0.0, spec).value > 0.0);
    // a kinked integrand with 2 nodes cannot meet 1e-12
    spec.radius = 1.0;
    spec.nodes = 2;
    spec.rel_tol = 1e-12;
    CHECK_THROWS_AS(integrate_mu(
                        rd, [](std::span<const double> t) { return std::abs(std::abs(t[0]) - 0.3); }, 0.0, spec),
                    NumericalError);
}

TEST_CASE("chamber transform") {
    const double t1[] = {std::asinh(1.0)};
    CHECK(chamber_transform(t1).x[0] == doctest::Approx(1.0).epsilon(1e-15));
    const double t2[] = {0.5};
    CHECK(chamber_transform(t2).jacobian == doctest::Approx(std::sinh(1.0)).epsilon(1e-15));
    const std::vector<double> x = {0.3, 2.5, 17.0};
    const auto t = chamber_inverse(x);
    const auto back = chamber_transform(t).x;
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(std::abs(back[i] - x[i]) <= 1e-14 * x[i]);
}
