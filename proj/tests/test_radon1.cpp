#include "cr/errors.hpp"
#include "cr/radon1.hpp"
#include "cr/special.hpp"

#include "doctest.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

using namespace cr;

TEST_CASE("spherical functions: normalization and evenness") {
    const RootData rd = rank_one_root_data(2, 5);
    for (double lam : {0.0, 1.0, 5.0}) {
        const SphericalFunction phi(rd, lam, 4.0);
        CHECK(phi(0.0) == 1.0);
        CHECK(phi.derivative(0.0) == 0.0);
        CHECK(phi(-1.3) == phi(1.3));
        const SphericalFunction neg(rd, -lam, 4.0);
        CHECK(neg(2.1) == doctest::Approx(phi(2.1)).epsilon(1e-14));
    }
    CHECK_THROWS_AS(SphericalFunction(rd, 1.0, 2.0)(2.5), DomainError);
    CHECK_THROWS_AS(SphericalFunction(RootData(2, 1, 1, 1), 1.0, 2.0), ParameterError);
    CHECK_THROWS_AS(rank_one_root_data(3, 4), ParameterError);
}

TEST_CASE("spherical functions: flat case is cos(lambda t)") {
    const RootData flat(1, 0.0, 0.0, 0.0);
    for (double lam : {0.5, 1.0, 2.0, 5.0}) {
        const SphericalFunction phi(flat, lam, 6.0);
        for (double t = 0.0; t <= 5.9; t += 0.37)
            CHECK(phi(t) == doctest::Approx(std::cos(lam * t)).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("spherical functions: H^2 against the integral representation") {
    const RootData h2 = rank_one_root_data(1, 3);
    CHECK(h2.iota == 0.0);
    CHECK(h2.two_b == 1.0);
    for (double lam : {0.0, 0.5, 1.0, 2.0, 5.0}) {
        const SphericalFunction phi(h2, lam, 5.0);
        for (double t : {0.05, 0.4, 1.0, 2.5, 4.5})
            CHECK(phi(t) == doctest::Approx(spherical_h2_integral(lam, t)).epsilon(1e-6));
    }
}

TEST_CASE("spherical functions: eigen-residual on the acceptance parameter sets") {
    for (auto [a, n] : std::vector<std::pair<int, int>>{{1, 3}, {1, 4}, {2, 5}, {4, 4}, {8, 3}}) {
        const RootData rd = rank_one_root_data(a, n);
        for (double lam : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            const SphericalFunction phi(rd, lam, 6.0);
            double worst = 0.0;
            for (double t = 0.01; t <= 5.9; t += 0.0731)
                worst = std::max(worst, phi.eigen_residual(t));
            CHECK(worst < 1e-8);
        }
    }
}

TEST_CASE("kernel transform and inversion symbol") {
    const auto dp = domain_params(2, 5, 1, 2);
    const KernelHat k1 = kernel_hat(dp, 1.0);
    CHECK(k1.value > 0.0);
    CHECK(k1.prefactor == std::exp2(-6.0));
    CHECK(kernel_hat(dp, -1.0).value == doctest::Approx(k1.value).epsilon(1e-10));
    // divergent: delta0 + rho = 0 on H^3
    CHECK_THROWS_WITH_AS(kernel_hat(domain_params(1, 4, 1, 3), 1.0), doctest::Contains("delta0 + rho"),
                         ParameterError);
    const double s1 = inversion_symbol(dp, 0.5).without_prefactor;
    for (double lam : {1.0, 2.0, 5.0})
        CHECK(inversion_symbol(dp, lam).without_prefactor == doctest::Approx(s1).epsilon(1e-8));
    CHECK(s1 == doctest::Approx(dirac_constants(dp).c1_gamma).epsilon(1e-6));
}

TEST_CASE("spectral inversion report, (4,4,1,2): double factor l = 2") {
    const auto dp = domain_params(4, 4, 1, 2);
    CHECK(dp.lambdas.size() == 2);
    const auto rep = verify_inversion_spectral(dp, {0.5, 1.0, 2.0, 5.0});
    CHECK(rep.pass);
    CHECK(rep.measured_constants.at("coefficient_of_variation") < 1e-4);
    CHECK(rep.params["matched_candidates"] == nlohmann::ordered_json::array({"prefactor_c1"}));
}

TEST_CASE("hyperboloid geometry") {
    const Vec4 o{0, 0, 0, 1};
    const Vec4 x = hyperbolic_point(0.7, {0.0, 0.6, 0.8});
    CHECK(minkowski(x, x) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(hyperbolic_distance(o, x) == doctest::Approx(0.7).epsilon(1e-13));
    const Plane y = plane_at(0.9, {1.0, 0.0, 0.0});
    CHECK(minkowski(y.nu, y.nu) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(y.distance_to_origin() == doctest::Approx(0.9).epsilon(1e-14));
    // foot point lies on the plane
    CHECK(minkowski(hyperbolic_point(0.9, {1.0, 0.0, 0.0}), y.nu) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("plane transform") {
    const RadialProfile f = radial_bump(1.2);
    SUBCASE("through the origin: polar coordinates in H^2") {
        const double ref = 2.0 * std::numbers::pi *
                           boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                               [&](double s) { return f.f(s) * std::sinh(s); }, 0.0, 1.2, 15, 1e-14);
        CHECK(radon_plane(f, 0.0) == doctest::Approx(ref).epsilon(1e-12));
        CHECK(radon_plane(f, 0.0, PlaneMeasure::normalized) == doctest::Approx(ref * 2.0 / std::numbers::pi));
    }
    SUBCASE("zero profile") {
        const RadialProfile z{[](double) { return 0.0; }, 1.0};
        CHECK(radon_plane(z, 0.3) == 0.0);
        CHECK(radon_plane_mesh(z, plane_at(0.3, {0, 0, 1})) == 0.0);
    }
    SUBCASE("plane at distance h: polar formula against the Fermi mesh") {
        for (double h : {0.0, 0.35, 0.8, 1.1}) {
            const double polar = radon_plane(f, h);
            CHECK(radon_plane_mesh(f, plane_at(h, {0.0, 0.6, 0.8})) == doctest::Approx(polar).epsilon(1e-5));
        }
    }
    SUBCASE("two parametrizations of the same plane agree to 1e-10") {
        const Plane y = plane_at(0.5, {0.48, 0.6, 0.64});
        Plane flipped = y;
        for (double& c : flipped.nu)
            c = -c;
        const double p = radon_plane(f, y.distance_to_origin());
        CHECK(radon_plane_mesh(f, y, 192) == doctest::Approx(p).epsilon(1e-10));
        CHECK(radon_plane_mesh(f, flipped, 192) == doctest::Approx(p).epsilon(1e-10));
    }
    CHECK(radon_plane(f, 1.3) == 0.0);
}

TEST_CASE("dual transform") {
    const Vec4 x = hyperbolic_point(0.6, {0.0, 0.0, 1.0});
    CHECK(dual_radon_geometric([](const Plane&) { return 1.0; }, x) == doctest::Approx(1.0).epsilon(1e-12));
    const Vec4 o{0, 0, 0, 1};
    CHECK(dual_radon_geometric([](const Plane& y) { return y.distance_to_origin(); }, o) ==
          doctest::Approx(0.0).scale(1.0));
    const RadialProfile f = radial_bump(1.2);
    for (double s : {0.0, 0.3, 0.9, 1.5}) {
        const Vec4 p = hyperbolic_point(s, {0.6, 0.0, 0.8});
        const double full = dual_radon_geometric(
            [&](const Plane& y) { return radon_plane(f, y.distance_to_origin(), PlaneMeasure::normalized); }, p, 64);
        CHECK(full == doctest::Approx(radon_dual_radial(f, s)).epsilon(1e-8));
    }
    CHECK_THROWS_AS(dual_radon_geometric([](const Plane&) { return 1.0; }, Vec4{0, 0, 0, 2}), DomainError);
}

TEST_CASE("R^t R at the origin: geometric route against the kernel formula") {
    for (double R : {0.6, 1.2}) {
        const RadialProfile f = radial_bump(R);
        CHECK(radon_dual_radial(f, 0.0) == doctest::Approx(rtr_kernel_at_origin(f)).epsilon(1e-4));
    }
}

TEST_CASE("geometric inversion on H^3") {
    const RadialProfile f = radial_bump(1.2);
    const auto rep = verify_inversion_geometric(f);
    CHECK(rep.pass);
    CHECK(rep.measured_constants.at("max_rel_deviation") < 1e-2);
    CHECK(rep.params["matched_candidates"] == nlohmann::ordered_json::array({"prefactor_c1"}));
    SUBCASE("linearity") {
        const RadialProfile f2{[&](double s) { return 2.0 * f.f(s); }, f.support};
        const auto p1 = inversion_profile(f, 200);
        const auto p2 = inversion_profile(f2, 200);
        for (std::size_t i = 0; i < p1.Mg.size(); i += 7)
            CHECK(p2.Mg[i] == doctest::Approx(2.0 * p1.Mg[i]).epsilon(1e-10));
    }
}
