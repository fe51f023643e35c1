#pragma once

#include "cr/jets.hpp"

#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace cr {

/// Smooth function on R^r that can be expanded to any order at a point.
/// Expansion goes through `Jet`, so derivatives are exact up to rounding.
class JetFunction {
public:
    /// Receives the coordinate jets t_j + h_j and returns f(t + h).
    using Expr = std::function<Jet(std::span<const Jet> x)>;
    using Domain = std::function<bool(std::span<const double> t)>;

    JetFunction() = default;
    JetFunction(int rank, std::string name, Expr expr, Domain domain = {},
                std::string domain_description = "R^r");

    int rank() const { return rank_; }
    const std::string& name() const { return name_; }
    const std::string& domain_description() const { return domain_desc_; }
    bool in_domain(std::span<const double> t) const;
    /// Declared invariance under the signed permutations (lets operator
    /// evaluation reuse one jet for the whole Weyl orbit).
    bool w_invariant() const { return w_invariant_; }
    JetFunction& mark_w_invariant(bool v = true) {
        w_invariant_ = v;
        return *this;
    }
    /// Euclidean radius outside which f vanishes (infinity if not compactly supported).
    double support_radius() const { return support_; }
    JetFunction& set_support_radius(double R) {
        support_ = R;
        return *this;
    }

    /// Taylor jet of f at t. Throws DomainError outside the smoothness domain.
    Jet jet(std::span<const double> t, int order) const;
    double value(std::span<const double> t) const;

private:
    int rank_ = 0;
    std::string name_;
    std::shared_ptr<const Expr> expr_;
    Domain domain_;
    std::string domain_desc_;
    bool w_invariant_ = false;
    double support_ = std::numeric_limits<double>::infinity();
};

/// d^alpha f(t); |alpha| must not exceed max_order.
double eval_jet(const JetFunction& f, std::span<const double> t, std::span<const int> alpha,
                int max_order = kDefaultMaxOrder);

JetFunction constant_function(int rank, double c);
/// |SH(t)|^delta, SH(t) = prod_j sh t_j; smooth where every t_j != 0.
JetFunction sh_power(int rank, double delta);
/// CH(t)^delta, CH(t) = prod_j ch t_j.
JetFunction ch_power(int rank, double delta);
/// prod_j sh t_j.
JetFunction sh_product(int rank);

/// W-invariant bump g(|t|^2) with g(s) = e * exp(-1/(1 - s/R^2)) on s < R^2, so the
/// value at the origin is 1.
JetFunction bump(int rank, double radius);
/// Bump times c0 + c1 e1(t^2)/R^2 + c2 e2(t^2)/R^4, e_k elementary symmetric in t_j^2.
/// Still W-invariant, but not radial once c2 != 0; value at 0 is c0.
JetFunction bump_family(int rank, double radius, double c0, double c1, double c2);
/// (1 - |t|^2/R^2)^K inside the ball, 0 outside, times c0 + c1 e1/R^2 + c2 e2/R^4.
/// C^{K-1} across the edge but analytic inside, so high-order operators stay well scaled.
JetFunction poly_bump(int rank, double radius, int K, double c0 = 1.0, double c1 = 0.0, double c2 = 0.0);
/// f(t) * (1 + c * t_j): breaks W-invariance on purpose.
JetFunction tilted(const JetFunction& f, int j, double c);

JetFunction scaled(const JetFunction& f, double c);
JetFunction sum(const JetFunction& f, const JetFunction& g);
JetFunction product(const JetFunction& f, const JetFunction& g);

} // namespace cr
