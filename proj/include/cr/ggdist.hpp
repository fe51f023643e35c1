#pragma once

#include "cr/bsverify.hpp"
#include "cr/quadrature.hpp"
#include "cr/report.hpp"
#include "cr/rootsys.hpp"

#include <utility>
#include <vector>

namespace cr {

/// Garding-Gindikin integrand data: a symmetric function on R_+^r vanishing outside the
/// Euclidean ball of radius `support`.
struct GGSpec {
    double a = 1.0;
    int rank = 1;
    double lambda = 1.0;
    PointFunction f;
    double support = 0.0;
};

/// (1/r!)(1/Gamma_a(lambda)) int_{R_+^r} (x_1...x_r)^{lambda-(a/2)(r-1)-1} f prod_{i<j}|x_i-x_j|^a dx.
/// Requires lambda > (a/2)(r-1); for r >= 2, a must be 1, 2 or 4.
QuadResult gg_integral(const GGSpec& s, const QuadratureSpec& q = {});

struct DiracLimit {
    double value = 0.0;      // extrapolated G_0(f)
    double error = 0.0;      // change when the smallest lambda is dropped
    std::vector<double> lambdas;
    std::vector<double> values;
};

/// Rank one: polynomial (Neville) extrapolation of G_lambda(f) to lambda = 0 over `grid`,
/// which must lie in (0, 0.2] with distinct entries.
DiracLimit gg_dirac_limit_rank1(const PointFunction& f, double support, const std::vector<double>& grid,
                                const QuadratureSpec& q = {});

/// lhs = int |SH|^beta (prod_{k<l} M_{beta-2k} f) dmu on the sinh side, and
/// rhs = 2^{r(2b+2iota)} 2^{a r(r-1)} r! (prod_k m_{beta-2k}) Gamma_a(lambda) G_lambda(F) on the
/// x = sh^2 t side, lambda = (beta - 2l + iota + 2b - 1)/2 + (a/2)(r-1) + 1,
/// F(x) = prod (1 + x_j)^{(iota-1)/2} f(t(x)).
struct SBetaResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double lambda = 0.0;
    /// rhs without the pair Jacobian 2^{a r(r-1)}, as displayed in the source formula.
    double rhs_displayed = 0.0;
};
SBetaResult s_beta_chain(const DomainParams& dp, double beta, const JetFunction& f, const QuadratureSpec& q = {});

/// L(f) = int |SH|^{delta0} (prod_{k<l} M_{delta0-2k} f) dmu.
double dirac_functional(const DomainParams& dp, const JetFunction& f, const QuadratureSpec& q = {});

/// Test bumps for the Dirac check: polynomial bumps of exponent K = 2rl + 4 with radii
/// {0.5, 1.0, 1.5} and distinct shape coefficients, plus one bump vanishing at the origin.
std::vector<JetFunction> dirac_test_functions(const DomainParams& dp);

struct DiracOptions {
    QuadratureSpec spec = dirac_spec();
    /// Consistency tolerance; 0 picks 1e-3 (rank one) or 1e-2 (rank two).
    double tol = 0.0;

    static QuadratureSpec dirac_spec() {
        QuadratureSpec s;
        s.nodes = 16;
        s.rel_tol = 1e-7;
        return s;
    }
};

/// Measures L(f)/f(0) across `fs` (empty = dirac_test_functions), checks it is constant and that
/// L vanishes on bumps with f(0) = 0, and compares the mean against the constant candidates:
/// c1 as displayed (Gamma and Gamma_a readings), each with the 2^{r delta0} prefactor, and the
/// change-of-variables constant that includes 2^{a r(r-1)}. Passes only when exactly one of the
/// displayed candidates matches.
VerificationReport verify_dirac(const DomainParams& dp, const std::vector<JetFunction>& fs = {},
                                const DiracOptions& o = {});

/// S_beta bridge check: lhs = rhs within tol, and both sides stable under node doubling.
VerificationReport verify_s_beta(const DomainParams& dp, double beta, const JetFunction& f, double tol,
                                 const QuadratureSpec& q = {});

} // namespace cr
