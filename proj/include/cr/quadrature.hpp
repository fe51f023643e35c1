#pragma once

#include "cr/jet_functions.hpp"
#include "cr/rootsys.hpp"

#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace cr {

/// Nodes and weights of a one-dimensional rule.
struct QuadratureRule {
    std::vector<double> x;
    std::vector<double> w;
};

/// Gauss-Legendre on [-1, 1].
QuadratureRule gauss_legendre(int n);
/// Gauss-Jacobi on [-1, 1] for the weight (1 - x)^alpha (1 + x)^beta (Golub-Welsch).
QuadratureRule gauss_jacobi(int n, double alpha, double beta);
/// Rule on [0, 1] for the weight u^p (1 - u)^q; integrates g with weight extracted.
QuadratureRule jacobi_unit(int n, double p, double q);

/// Power-law behaviour of an integrand on the ordered cone x_1 > ... > x_r > 0.
/// Near x_r = 0 it behaves like x_r^wall, near x_i = x_j like |x_i - x_j|^diff,
/// and near x_i = -x_j like |x_i + x_j|^sum (the latter only matters at the origin).
struct ConeExponents {
    double wall = 0.0;
    double diff = 0.0;
    double sum = 0.0;
};

struct QuadratureSpec {
    int nodes = 24;          // per one-dimensional rule
    double radius = 0.0;     // Euclidean radius outside which the integrand vanishes
    double panel = 1.0;      // maximal radial panel length beyond the unit Jacobi panel
    int edge_grading = 2;    // geometric splits of the last radial panel towards the support edge
    bool estimate_error = true;
    double rel_tol = 1e-6;   // keep doubling while error > rel_tol |value| + abs_tol (rel_tol 0 disables)
    double abs_tol = 1e-14;
    int max_nodes = 128;     // throw when the target is still missed at this node count
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;      // |I(n) - I(n/2)| for the final n when estimated
    long evaluations = 0;
    int nodes = 0;           // node count of the reported value
};

using PointFunction = std::function<double(std::span<const double>)>;

/// Integral over the ordered cone with the coordinates t_1 = rho, t_k = t_{k-1} s_k; every
/// wall becomes a coordinate endpoint carrying a Gauss-Jacobi weight. r <= 3.
QuadResult integrate_cone(int r, const PointFunction& F, const ConeExponents& e, const QuadratureSpec& spec);

/// Wall exponent of |SH|^delta dmu at t_r = 0: delta + 2b + iota. Throws ParameterError when <= -1.
double mu_wall_exponent(const RootData& rd, double delta);

/// int_{R^r} |SH|^delta f dmu. For W-invariant f this is 2^r r! times the chamber integral,
/// otherwise the integrand is summed over the Weyl orbit on the chamber.
QuadResult integrate_mu(const RootData& rd, const PointFunction& f, double delta, const QuadratureSpec& spec,
                        bool w_invariant = true);
/// The radius is min(spec.radius, f.support_radius()), so panels end at the support edge.
QuadResult integrate_mu(const RootData& rd, const JetFunction& f, double delta, const QuadratureSpec& spec);

/// spec with radius min(spec.radius, R_1, R_2, ...) (non-positive spec.radius counts as infinite).
QuadratureSpec fit_radius(QuadratureSpec spec, std::initializer_list<double> supports);

/// x_j = sh^2 t_j with Jacobian prod sh(2 t_j).
struct ChamberMap {
    std::vector<double> x;
    double jacobian = 1.0;
};
ChamberMap chamber_transform(std::span<const double> t);
/// t_j = asinh(sqrt(x_j)).
std::vector<double> chamber_inverse(std::span<const double> x);

} // namespace cr
