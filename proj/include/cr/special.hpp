#pragma once

#include "cr/rootsys.hpp"

#include <span>
#include <vector>

namespace cr {

/// Gamma(x); throws PoleError at nonpositive integers.
double gamma_checked(double x);

/// Gamma_a(lambda) = prod_{j=1}^r Gamma(lambda - (a/2)(j-1)).
double gindikin_gamma(double a, int r, double lambda);

/// m_delta = prod_j (delta + a(j-1)) (delta - 1 + iota + 2b + a(r-j)).
double m_delta(const RootData& rd, double delta);
/// prod_j (delta + a(j-1)) (delta - 1 + iota + a(r-j)) * (-1)^r, the CH^delta companion.
double m_delta_cosh(const RootData& rd, double delta);

/// z_delta = Gamma_a(delta/2 + (a/2)(r-1) + 1) Gamma_a((delta - 1 + iota + 2b)/2 + (a/2)(r-1) + 1),
/// normalized so that m_delta z_{delta-2} = 2^{2r} z_delta.
double z_delta(const RootData& rd, double delta);

/// prod_{i<j} Gamma((a/2)(j-i+1)) / Gamma((a/2)(j-i)).
double c0(double a, int r);
/// (1/r!) prod_{j=1}^r Gamma(1 + j a/2) / Gamma(1 + a/2): the same constant via the
/// Laguerre-Selberg integral, used as an independent check.
double c0_selberg(double a, int r);

/// Candidate forms of the Dirac-limit constant.
struct DiracConstants {
    double c0;
    /// 2^{r(2b+2iota)+lr} r! Gamma(g) prod_k prod_j (delta0 - 2k + a(j-1)) c0, g = l.
    double c1_gamma;
    /// Same with Gamma_a(g).
    double c1_gindikin;
    /// 2^{r delta0}: kernel prefactor of R^t R.
    double prefactor;
    /// 2^{a r(r-1)}: Jacobian of the pairwise factors |2 sh(t_i - t_j) 2 sh(t_i + t_j)|^a
    /// under x = sh^2 t, which the candidate formulas do not carry.
    double pair_jacobian;
    /// pair_jacobian * c1_gindikin: the weak-form constant predicted by direct change of variables.
    double derived;
};

DiracConstants dirac_constants(const DomainParams& dp);

/// lambda_j = (a(n-1) - a(r'-1) + 2(j-1)) (a(r'-1) + a - 2j), j = 1..l, l = a(r'-1)/2.
std::vector<double> lambda_j(const DomainParams& dp);

/// prod_{alpha > 0} |2 sh alpha(t)|^{k_alpha}.
double measure_density(const RootData& rd, std::span<const double> t);
/// Radial density of the sub-domain y0: multiplicity a(n-2r) replaced by a(r'-2r).
double measure_density_y0(const DomainParams& dp, std::span<const double> t);

} // namespace cr
