#pragma once

#include "cr/quadrature.hpp"
#include "cr/report.hpp"
#include "cr/rootsys.hpp"

#include <array>
#include <functional>
#include <vector>

namespace cr {

/// phi_lambda for a rank-one root system: the even solution of
/// phi'' + (2b coth t + 2 iota coth 2t) phi' + (lambda^2 + rho^2) phi = 0, phi(0) = 1,
/// rho = iota + b. Taylor expansion on [0, t0], classical RK4 with a fixed step on [t0, tmax].
class SphericalFunction {
public:
    SphericalFunction(const RootData& rd, double lambda, double tmax, double step = 1e-4, double t0 = 1e-3);

    double lambda() const { return lambda_; }
    double rho() const { return rho_; }
    double tmax() const { return tmax_; }

    /// Even in t; throws DomainError beyond tmax.
    double operator()(double t) const;
    double derivative(double t) const;
    /// From the differential equation (t != 0), or its limit at 0.
    double second_derivative(double t) const;
    /// |phi'' + P phi' + mu phi| / (|phi''| + |P phi'| + mu |phi|) with phi'' and phi' from
    /// 8th-order central differences of the stored solution (spacing 1e-3), t in [0.01, tmax - 0.01].
    double eigen_residual(double t) const;

private:
    struct Local {
        double v, d;
    };
    Local eval(double t) const;
    double coefficient(double t) const;

    double lambda_, rho_, two_b_, iota_, mu_;
    double tmax_, h_, t0_;
    double A_, B_; // phi ~ 1 + A t^2 + B t^4 near 0
    std::vector<double> phi_, dphi_;
};

/// Rank-one multiplicities of U(n-1, 1; K): iota = a - 1, 2b = a(n - 2). Only a in {1,2,4,8}
/// and n >= 2 are checked (no Dirac-window conditions).
RootData rank_one_root_data(int a, int n);

/// Spherical function of the rank-one domain (uses its iota and 2b).
SphericalFunction spherical(const DomainParams& dp, double lambda, double tmax = 20.0);

/// H^2 oracle: (1/pi) int_0^pi (ch t - sh t cos theta)^{i lambda - 1/2} dtheta (real part), by
/// adaptive Gauss-Kronrod.
double spherical_h2_integral(double lambda, double t);

/// Spherical transform of the Lemma 2.2 kernel, rank one.
struct KernelHat {
    double integral = 0.0;   // int_R |sh t|^{delta0} phi_lambda(t) dmu(t)
    double prefactor = 1.0;  // 2^{r delta0}
    double value = 0.0;      // prefactor * integral
};

/// Throws ParameterError naming delta0 + rho when delta0 + rho >= 0 (divergent).
KernelHat kernel_hat(const DomainParams& dp, double lambda);

/// kernel_hat(lambda) prod_j (lambda_j - (lambda^2 + rho^2)), with and without the prefactor.
struct InversionSymbol {
    double with_prefactor = 0.0;
    double without_prefactor = 0.0;
};
InversionSymbol inversion_symbol(const DomainParams& dp, double lambda);

/// Constancy of the inversion symbol over `lambdas` (coefficient of variation < cv_tol) and
/// agreement (rel match_tol) of its mean with exactly one of {L, 2^{delta0} L}, where L is the
/// Dirac-measured constant of the same domain.
VerificationReport verify_inversion_spectral(const DomainParams& dp, const std::vector<double>& lambdas,
                                             double cv_tol = 1e-4, double match_tol = 1e-3);

// ---- real hyperbolic 3-space (a = 1, n = 4, r' = 3) in the hyperboloid model ----

using Vec4 = std::array<double, 4>;

/// Lorentz form x1y1 + x2y2 + x3y3 - x4y4.
double minkowski(const Vec4& x, const Vec4& y);
/// Geodesic distance on {<x,x> = -1, x4 > 0}.
double hyperbolic_distance(const Vec4& x, const Vec4& y);
/// Point at distance s from the origin in the unit direction u.
Vec4 hyperbolic_point(double s, const std::array<double, 3>& u);

/// Totally geodesic plane {x : <x, nu> = 0} with spacelike unit normal nu.
struct Plane {
    Vec4 nu;
    /// Distance from the origin: sh h = |nu_4|.
    double distance_to_origin() const;
};
/// Plane whose closest point to the origin lies at distance h in direction u.
Plane plane_at(double h, const std::array<double, 3>& u);

/// Normalization of the plane measure: Riemannian area, or the measure of the integration
/// formula (|2 sh t| dt over R with a probability measure on K_0), which is 2/pi times the area.
enum class PlaneMeasure { riemannian, normalized };

/// Radial profile with compact support [0, support].
struct RadialProfile {
    std::function<double(double)> f;
    double support = 1.0;
};

/// int_y f(d(o, x)) dA(x) for the plane at distance h, by geodesic polar coordinates about the
/// plane's foot point (ch d = ch h ch s). Adaptive Gauss-Kronrod.
double radon_plane(const RadialProfile& f, double h, PlaneMeasure m = PlaneMeasure::riemannian);
/// The same integral on a tensor Gauss-Legendre mesh in Fermi coordinates (u along a geodesic
/// through the foot point, v perpendicular, dA = ch v du dv) with explicit hyperboloid
/// coordinates and distances.
double radon_plane_mesh(const RadialProfile& f, const Plane& y, int nodes = 96,
                        PlaneMeasure m = PlaneMeasure::riemannian);

/// Average of F over the planes through x (probability measure on Y_x), using a product rule
/// on the sphere of unit normals at x (Gauss-Legendre in cos theta, trapezoid in phi).
double dual_radon_geometric(const std::function<double(const Plane&)>& F, const Vec4& x, int nodes = 48);

/// (R^t R f)(x) at distance s from the origin for radial f, by composing radon_plane and the
/// plane average. Radiality reduces the average to int_0^1 Rf(arcsinh(u sh s)) du.
double radon_dual_radial(const RadialProfile& f, double s, PlaneMeasure m = PlaneMeasure::normalized);
/// Lemma 2.2 kernel formula at the origin: 2^{delta0} int_R |sh t|^{delta0} f dmu, H^3 values.
double rtr_kernel_at_origin(const RadialProfile& f);

struct InversionProfile {
    std::vector<double> s;      // core grid points
    std::vector<double> f;      // f(s)
    std::vector<double> Mg;     // (L + 1) R^t R f
    std::vector<double> ratio;  // Mg / f
    std::vector<double> richardson; // |Mg(h) - Mg(2h)| per point
};

/// g = R^t R f on a uniform radial grid (points spacing support/points), M = L + 1 applied with
/// 8th-order central differences (evenness supplies ghost points at 0, L g(0) = 3 g''(0)).
InversionProfile inversion_profile(const RadialProfile& f, int points = 600, double core = 0.5);

/// Full H^3 pipeline: constancy of (M R^t R f)/f on the core (max rel deviation < tol) and the
/// measured constant against the H^3 Dirac constants c1 and 2^{delta0} c1.
VerificationReport verify_inversion_geometric(const RadialProfile& f, int points = 600, double tol = 1e-2);

/// Default radial test bump (1 - s^2/R^2)^8 (1 + 0.3 s^2/R^2) on [0, R].
RadialProfile radial_bump(double R = 1.2);

} // namespace cr
