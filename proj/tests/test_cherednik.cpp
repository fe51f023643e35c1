#include "cr/cherednik.hpp"
#include "cr/errors.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace cr;

namespace {

RootData random_rd(int r, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> M(0.1, 5.0);
    return RootData(r, M(rng), M(rng), M(rng));
}

// point in the open positive chamber with coordinates and gaps at least `gap`
std::vector<double> chamber_point(int r, std::mt19937_64& rng, double gap, double hi) {
    std::uniform_real_distribution<double> U(gap, hi);
    for (;;) {
        std::vector<double> t(static_cast<std::size_t>(r));
        for (auto& x : t)
            x = U(rng);
        std::sort(t.rbegin(), t.rend());
        bool ok = true;
        for (int i = 0; i + 1 < r; ++i)
            ok = ok && t[static_cast<std::size_t>(i)] - t[static_cast<std::size_t>(i) + 1] > gap;
        if (ok)
            return t;
    }
}

// random signs and order, at least 0.05 away from every wall
std::vector<double> generic_point(int r, std::mt19937_64& rng, double hi) {
    std::uniform_real_distribution<double> U(-hi, hi);
    std::vector<double> t(static_cast<std::size_t>(r));
    for (;;) {
        for (auto& x : t)
            x = U(rng);
        double gap = 1e9;
        for (int i = 0; i < r; ++i) {
            const double ti = t[static_cast<std::size_t>(i)];
            gap = std::min(gap, std::abs(ti));
            for (int k = i + 1; k < r; ++k) {
                const double tk = t[static_cast<std::size_t>(k)];
                gap = std::min({gap, std::abs(ti - tk), std::abs(ti + tk)});
            }
        }
        if (gap > 0.05)
            return t;
    }
}

} // namespace

TEST_CASE("constants") {
    std::mt19937_64 rng(1);
    for (int r = 1; r <= 3; ++r) {
        const RootData rd = random_rd(r, rng);
        const auto one = constant_function(r, 1.0);
        const auto t = generic_point(r, rng, 1.0);
        for (int j = 0; j < r; ++j) {
            CHECK(cherednik_apply(j, rd, one, t) == doctest::Approx(-rd.rho_at(j)).epsilon(1e-13));
            CHECK(OperatorNF::cherednik(rd, j).apply_nf(one, t) == doctest::Approx(-rd.rho_at(j)).epsilon(1e-13));
        }
        const auto DD = compose({OperatorNF::cherednik(rd, 0), OperatorNF::cherednik(rd, 0)});
        CHECK(DD.apply(one, t) == doctest::Approx(rd.rho_at(0) * rd.rho_at(0)).epsilon(1e-12));
        CHECK(DD.apply_nf(one, t) == doctest::Approx(rd.rho_at(0) * rd.rho_at(0)).epsilon(1e-12));
        const auto id = compose({OperatorNF::identity(rd), OperatorNF::identity(rd)});
        const auto b = tilted(bump(r, 2.0), 0, 0.3);
        CHECK(id.apply(b, t) == b.value(t));
        CHECK(id.apply_nf(b, t) == b.value(t));
        CHECK(id.term_count() == 1);
    }
}

TEST_CASE("D_j on |SH|^delta") {
    std::mt19937_64 rng(2);
    for (int r = 1; r <= 3; ++r) {
        const RootData rd = random_rd(r, rng);
        const double delta = -1.7;
        const auto f = sh_power(r, delta);
        for (int rep = 0; rep < 10; ++rep) {
            const auto t = chamber_point(r, rng, 0.05, 2.0);
            const double v = f.value(t);
            for (int j = 0; j < r; ++j) {
                const double expect = (delta / std::tanh(t[static_cast<std::size_t>(j)]) - rd.rho_at(j)) * v;
                CHECK(cherednik_apply(j, rd, f, t) == doctest::Approx(expect).epsilon(1e-11));
            }
            // first ladder step
            Program p;
            p.terms.push_back({1.0, {Factor{0, delta + rd.rho_at(0)}}});
            const auto L = OperatorNF::from_program(rd, p);
            CHECK(L.apply(f, t) == doctest::Approx(delta * (1.0 + 1.0 / std::tanh(t[0])) * v).epsilon(1e-11));
        }
    }
}

TEST_CASE("commutativity of Cherednik operators") {
    std::mt19937_64 rng(3);
    for (int r = 2; r <= 3; ++r) {
        for (int rep = 0; rep < 50; ++rep) {
            const RootData rd = random_rd(r, rng);
            const auto f = tilted(bump_family(r, 2.5, 1.0, 0.5, 0.8), rep % r, 0.7);
            const auto t = generic_point(r, rng, 1.2);
            const int i = rep % r;
            const int j = (rep + 1) % r;
            const auto Di = OperatorNF::cherednik(rd, i);
            const auto Dj = OperatorNF::cherednik(rd, j);
            const double a = (Di * Dj).apply(f, t);
            const double b = (Dj * Di).apply(f, t);
            const double scale = std::max({std::abs(a), std::abs(b), 1.0});
            CHECK(std::abs(a - b) < 1e-9 * scale);
        }
    }
}

TEST_CASE("normal form agrees with sequential application") {
    std::mt19937_64 rng(4);
    for (int r = 1; r <= 3; ++r) {
        const RootData rd = random_rd(r, rng);
        std::vector<OperatorNF> ops;
        const int depth = r == 3 ? 3 : 4;
        for (int k = 0; k < depth; ++k)
            ops.push_back(OperatorNF::cherednik(rd, k % r) + OperatorNF::scalar(rd, 0.3 * k));
        const auto L = compose(ops);
        const auto f = tilted(bump_family(r, 2.5, 1.0, 0.4, -0.6), 0, 0.5);
        const int npts = r == 3 ? 20 : 100;
        for (int rep = 0; rep < npts; ++rep) {
            const auto t = generic_point(r, rng, 1.0);
            const double seq = L.apply(f, t);
            const double nf = L.apply_nf(f, t);
            CHECK(std::abs(seq - nf) <= 1e-9 * std::max(1.0, std::abs(seq)));
        }
    }
}

TEST_CASE("M_delta examples") {
    std::mt19937_64 rng(5);
    const RootData r1(1, 0.0, 2.0, 0.0);
    const double t1[] = {0.7};
    CHECK(m_delta_op(r1, 2.0).apply(sh_power(1, 2.0), t1) == doctest::Approx(6.0).epsilon(1e-11));
    CHECK(m_delta_op(r1, 2.0).apply_nf(sh_power(1, 2.0), t1) == doctest::Approx(6.0).epsilon(1e-11));
    for (double delta : {-2.3, 0.5, 2.0}) {
        const RootData rd = random_rd(1, rng);
        const double rho = rd.rho_at(0);
        CHECK(m_delta_op(rd, delta).apply(constant_function(1, 1.0), t1) ==
              doctest::Approx(-delta * (delta + 2 * rho)).epsilon(1e-11));
    }
    // W-invariance of M_delta f for W-invariant f
    for (int r = 2; r <= 3; ++r) {
        const RootData rd = random_rd(r, rng);
        const auto M = m_delta_op(rd, -0.7);
        const auto f = bump_family(r, 2.0, 1.0, 0.3, 0.5);
        const WeylGroup& W = WeylGroup::get(r);
        for (int rep = 0; rep < 3; ++rep) {
            const auto t = generic_point(r, rng, 0.9);
            const double v = M.apply(f, t);
            for (std::size_t w = 0; w < W.size(); w += (r == 3 ? 5 : 1))
                CHECK(M.apply(f, W[w].act(t)) == doctest::Approx(v).epsilon(1e-9));
        }
    }
}

TEST_CASE("Dirac chains") {
    const auto dp = domain_params(2, 5, 1, 2);
    CHECK(dirac_chain_op(dp).degree() == 2);
    const RootData rd(1, 0.0, 3.0, 1.0);
    DomainParams fake = dp;
    fake.l = 2;
    fake.delta0 = -1.5;
    fake.two_b = 3.0;
    fake.iota = 1.0;
    fake.a = 1;
    const auto op = dirac_chain_op(fake);
    CHECK(op.degree() == 4);
    const double rho = fake.root_data().rho_at(0);
    const double expect = (rho * rho - std::pow(-1.5 + rho, 2)) * (rho * rho - std::pow(-3.5 + rho, 2));
    const double t[] = {0.4};
    CHECK(op.apply(constant_function(1, 1.0), t) == doctest::Approx(expect).epsilon(1e-11));
    CHECK(dirac_chain_op(domain_params(8, 3, 1, 2)).degree() == 8);
}

TEST_CASE("radial Laplacian") {
    const RootData rd(1, 0.0, 2.0, 0.0);
    const auto L = radial_laplacian(rd);
    const double t[] = {0.6};
    CHECK(std::abs(L.apply(constant_function(1, 1.0), t)) < 1e-13);
    const double s2 = std::sinh(0.6) * std::sinh(0.6);
    CHECK(L.apply(sh_power(1, 2.0), t) == doctest::Approx(8 * s2 + 6).epsilon(1e-12));
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> U(0.05, 1.4);
    std::uniform_real_distribution<double> M(0.1, 5.0);
    for (int rep = 0; rep < 20; ++rep) {
        const RootData r1(1, 0.0, M(rng), M(rng));
        const auto f = bump_family(1, 1.5, 1.0, M(rng) - 2.5, 0.0);
        const double x[] = {U(rng)};
        const double direct = radial_laplacian_direct(r1, f, x[0]);
        const double viaD = radial_laplacian(r1).apply(f, x);
        CHECK(viaD == doctest::Approx(direct).epsilon(1e-9));
    }
    CHECK_THROWS_AS(radial_laplacian_direct(rd, constant_function(1, 1.0), 0.0), DomainError);
}

TEST_CASE("wall handling") {
    std::mt19937_64 rng(7);
    const RootData rd(3, 1.3, 2.1, 0.7);
    const auto f = tilted(bump_family(3, 2.0, 1.0, 0.2, 0.3), 1, 0.4);
    const double eps = 1e-6;
    for (int rep = 0; rep < 10; ++rep) {
        auto t = generic_point(3, rng, 0.9);
        t[1] = t[0] + 10 * eps;
        // single quotient: projected limit vs direct division
        for (int j = 0; j < 3; ++j) {
            const double exact = cherednik_apply(j, rd, f, t, WallPolicy{eps, 2, true});
            const double limit = cherednik_apply(j, rd, f, t, WallPolicy{1e-4, 3, true});
            CHECK(limit == doctest::Approx(exact).epsilon(1e-6));
        }
        CHECK_THROWS_AS(cherednik_apply(0, rd, f, t, WallPolicy{1e-4, 2, false}), DomainError);
    }

    // deep operator: on-wall values are the limit of nearby values
    const auto M = m_delta_op(rd, -0.7) * OperatorNF::cherednik(rd, 1);
    for (int rep = 0; rep < 5; ++rep) {
        auto w = generic_point(3, rng, 0.9);
        w[1] = w[0];
        w[2] = 0.0;
        const double on = M.apply(f, w, WallPolicy::quadrature());
        const double on_default = M.apply(f, w);
        CHECK(on_default == doctest::Approx(on).epsilon(1e-10));
        for (double d : {1e-2, 1e-3}) {
            const std::vector<double> near{w[0], w[1] + d, d};
            const double v = M.apply(f, near, WallPolicy::quadrature());
            CHECK(std::abs(v - on) < 50 * d * std::max(1.0, std::abs(on)));
        }
        // approach from outside the projection radius: direct division is accurate there
        const std::vector<double> out{w[0], w[1] + 0.06, 0.06};
        const double direct = M.apply(f, out);
        const double projected = M.apply(f, out, WallPolicy{0.1, 12, true});
        CHECK(projected == doctest::Approx(direct).epsilon(1e-7));
    }
}

TEST_CASE("term bound") {
    const RootData rd(3, 1.0, 1.0, 1.0);
    const auto op = compose({m_delta_op(rd, 0.5), m_delta_op(rd, -1.5)}, 50);
    CHECK_THROWS_AS(op.term_count(), NumericalError);
}

TEST_CASE("invariant orbit shortcut matches direct evaluation") {
    std::mt19937_64 rng(17);
    for (int r = 1; r <= 3; ++r) {
        const RootData rd = random_rd(r, rng);
        const auto M = m_delta_op(rd, 0.4);
        auto f = bump_family(r, 2.0, 1.0, -0.4, 0.7);
        auto g = f;
        g.mark_w_invariant(false);
        REQUIRE(f.w_invariant());
        for (int rep = 0; rep < 3; ++rep) {
            const auto t = generic_point(r, rng, 0.9);
            CHECK(M.apply(f, t) == doctest::Approx(M.apply(g, t)).epsilon(1e-12));
        }
    }
}
