#include "cr/bsverify.hpp"
#include "cr/errors.hpp"
#include "cr/special.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace cr;

namespace {

RootData random_rd(int r, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> M(0.1, 5.0);
    return RootData(r, M(rng), M(rng), M(rng));
}

QuadOptions quad(int nodes = 16) {
    QuadOptions o;
    o.spec.nodes = nodes;
    return o;
}

} // namespace

TEST_CASE("sample generators respect the wall gaps") {
    for (int r = 1; r <= 3; ++r) {
        const auto c = chamber_samples(r, 200, 7);
        CHECK(c.size() == 200);
        for (const auto& t : c) {
            CHECK(t.back() > 0.05);
            for (int i = 0; i + 1 < r; ++i)
                CHECK(t[static_cast<std::size_t>(i)] - t[static_cast<std::size_t>(i) + 1] > 0.05);
        }
        for (const auto& t : generic_samples(r, 200, 7))
            for (int i = 0; i < r; ++i) {
                CHECK(std::abs(t[static_cast<std::size_t>(i)]) > 0.05);
                for (int j = 0; j < i; ++j)
                    CHECK(std::abs(std::abs(t[static_cast<std::size_t>(i)]) - std::abs(t[static_cast<std::size_t>(j)])) >
                          0.05);
            }
    }
    CHECK(chamber_samples(2, 5, 3) == chamber_samples(2, 5, 3));
    CHECK_THROWS_AS(chamber_samples(3, 1, 1, 0.5, 1.0), ParameterError);
}

TEST_CASE("bs-sinh") {
    SUBCASE("rank one m_2 = 6") {
        const RootData rd(1, 0.0, 2.0, 0.0);
        CHECK(m_delta(rd, 2.0) == doctest::Approx(6.0));
        const auto rep = verify_bs_sinh(rd, 2.0);
        CHECK(rep.pass);
        CHECK(rep.measured_constants.at("m_delta") == doctest::Approx(6.0));
    }
    SUBCASE("zero constant: the left side vanishes") {
        // m_delta vanishes at delta = 1 - iota - 2b - a(r-1) through the j = 1 factor
        const RootData rd(2, 1.3, 0.6, 0.2);
        const double delta = 1.0 - rd.iota - rd.two_b - rd.a;
        CHECK(m_delta(rd, delta) == doctest::Approx(0.0).scale(1.0));
        const auto rep = verify_bs_sinh(rd, delta);
        CHECK(rep.pass);
        CHECK(rep.max_rel_err < 1e-8);
    }
    SUBCASE("rank two a=2 iota=1 2b=4 delta=-0.7") {
        const auto rep = verify_bs_sinh(RootData(2, 2.0, 4.0, 1.0), -0.7);
        CHECK(rep.samples == 100);
        CHECK(rep.pass);
        CHECK(rep.max_rel_err < 1e-8);
    }
    SUBCASE("random multiplicities, rank three") {
        std::mt19937_64 rng(11);
        for (int k = 0; k < 3; ++k) {
            const auto rep = verify_bs_sinh(random_rd(3, rng), 0.5, {40, 2, 1e-8, 1.0});
            CHECK(rep.pass);
        }
    }
}

TEST_CASE("bs residuals scale linearly with the test function") {
    const RootData rd(2, 1.1, 2.3, 0.7);
    const auto one = verify_bs_sinh(rd, -0.7, {30, 4, 1e-8, 1.0});
    const auto big = verify_bs_sinh(rd, -0.7, {30, 4, 1e-8, 1e3});
    CHECK(big.pass);
    // relative residuals stay at rounding level; absolute ones grow by the factor
    CHECK(big.max_rel_err < 1e-8);
    CHECK(big.max_abs_err <= 1e3 * one.max_abs_err * 10.0 + 1e-300);
    const auto cbig = verify_bs_cosh(rd, 0.5, {30, 4, 1e-8, 1e3});
    CHECK(cbig.pass);
    const auto fbig = verify_bs_flat(-0.5, {30, 4, 1e-12, 1e3});
    CHECK(fbig.pass);
}

TEST_CASE("bs-cosh") {
    SUBCASE("rank one flat-like constant -2") {
        const RootData rd(1, 0.0, 0.0, 0.0);
        CHECK(m_delta_cosh(rd, 2.0) == doctest::Approx(-2.0));
        CHECK(verify_bs_cosh(rd, 2.0).pass);
    }
    SUBCASE("delta 0 gives zero") {
        const RootData rd(2, 1.5, 0.8, 0.4);
        CHECK(m_delta_cosh(rd, 0.0) == doctest::Approx(0.0).scale(1.0));
        CHECK(verify_bs_cosh(rd, 0.0).pass);
    }
    SUBCASE("random multiplicities rank two") {
        std::mt19937_64 rng(5);
        const auto rep = verify_bs_cosh(random_rd(2, rng), -2.3);
        CHECK(rep.pass);
        CHECK(rep.max_rel_err < 1e-8);
    }
}

TEST_CASE("bs-flat") {
    for (double d : {2.0, 1.0, -0.5, 0.5, -2.3}) {
        const auto rep = verify_bs_flat(d);
        CHECK(rep.pass);
        CHECK(rep.max_rel_err < 1e-12);
    }
}

TEST_CASE("ladder lemma") {
    SUBCASE("rank three, a = 1.5, j = 2") {
        const auto rep = verify_ladder(RootData(3, 1.5, 1.0, 0.5), 0.7, 2, {50, 1, 1e-8, 1.0});
        CHECK(rep.pass);
        CHECK(rep.max_rel_err < 1e-8);
    }
    SUBCASE("every j, zero factor at delta = 1 - iota - 2b") {
        const RootData rd(2, 0.9, 1.2, 0.3);
        const auto rep = verify_ladder(rd, 1.0 - rd.iota - rd.two_b, 0, {30, 3, 1e-8, 1.0});
        CHECK(rep.pass);
    }
    CHECK_THROWS_AS(verify_ladder(RootData(2, 1, 1, 1), 0.5, 3), ParameterError);
}

TEST_CASE("commutativity of the Cherednik operators") {
    for (int r = 2; r <= 3; ++r) {
        const auto rep = verify_commute(RootData(r, 1.7, 0.9, 1.1), {10, 1, 1e-9, 1.0});
        CHECK(rep.pass);
        CHECK(rep.max_rel_err < 1e-9);
    }
}

TEST_CASE("self-adjointness of M_delta, asymmetry of D_1") {
    const auto rep = verify_adjoint(RootData(1, 1.3, 1.7, 0.9), -0.7, quad());
    CHECK(rep.pass);
    CHECK(rep.max_rel_err < 1e-6);
    CHECK(rep.measured_constants.at("d1_rel_asymmetry") > 1e-3);
}

TEST_CASE("zeta continuation") {
    const RootData rd(1, 1.3, 1.7, 0.9);
    const JetFunction f = poly_bump(1, 1.2, 12, 1.0, 0.3, 0.2);
    SUBCASE("overlap and recursion in the convergent range") {
        const auto rep = verify_zeta(rd, 0.4, 2, f, quad());
        CHECK(rep.pass);
        CHECK(rep.measured_constants.at("overlap_rel_diff") < 1e-6);
        CHECK(rep.measured_constants.at("recursion_rel_diff") < 1e-6);
        CHECK(rep.measured_constants.at("order_rel_diff") < 1e-6);
    }
    SUBCASE("one step equals the direct value") {
        const auto o = quad();
        CHECK(zeta_continued(rd, 0.4, f, 1, o.spec) == doctest::Approx(zeta(rd, 0.4, f, o.spec)).epsilon(1e-6));
    }
    SUBCASE("beyond the convergent range only the order check applies") {
        const auto rep = verify_zeta(rd, -4.5, 2, f, quad());
        CHECK(rep.pass);
        CHECK_FALSE(rep.params["direct_available"].get<bool>());
        CHECK(rep.measured_constants.count("zeta_direct") == 0);
    }
    SUBCASE("zero test function") {
        const JetFunction z = scaled(f, 0.0);
        const auto o = quad();
        CHECK(zeta(rd, 0.4, z, o.spec) == 0.0);
        for (double d : {0.4, -2.1, -4.5})
            CHECK(zeta_continued(rd, d, z, 3, o.spec) == 0.0);
    }
    SUBCASE("node doubling leaves zeta unchanged") {
        const auto o = quad();
        auto o2 = o;
        o2.spec.nodes *= 2;
        CHECK(zeta(rd, 0.4, f, o2.spec) == doctest::Approx(zeta(rd, 0.4, f, o.spec)).epsilon(1e-8));
    }
    SUBCASE("errors") {
        const auto o = quad();
        CHECK_THROWS_AS(zeta_continued(rd, 0.4, f, 0, o.spec), ParameterError);
        CHECK_THROWS_AS(zeta_continued(rd, 0.4, f, 2, o.spec, {1, 1}), ParameterError);
        CHECK_THROWS_AS(zeta(rd, -4.5, f, o.spec), ParameterError);
        CHECK_THROWS_AS(verify_zeta(rd, 0.4, 1, tilted(f, 0, 0.5), o), ParameterError);
    }
}

TEST_CASE("zeta continuation in rank two") {
    const RootData rd(2, 1.3, 1.7, 0.9);
    const auto rep = verify_zeta(rd, 0.4, 2, poly_bump(2, 1.2, 12, 1.0, 0.3, 0.2), quad());
    CHECK(rep.pass);
    CHECK(rep.max_rel_err < 1e-6);
}
