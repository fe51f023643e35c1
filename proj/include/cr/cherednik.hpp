#pragma once

#include "cr/jet_functions.hpp"
#include "cr/rootsys.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace cr {

/// How difference quotients [f - s f] / (1 - e^{-2 alpha}) are handled near
/// the wall alpha = 0. Points within `threshold` of a wall are projected onto
/// the wall, the operator is expanded there with `extra_order` additional
/// Taylor orders (the quotient is then an exact jet division), and the
/// result is re-expanded back to the original point.
struct WallPolicy {
    double threshold = 1e-6;
    int extra_order = 2;
    /// If false, proximity below threshold is an error instead.
    bool limit = true;

    static WallPolicy pointwise() { return {}; }
    static WallPolicy exact() { return {0.0, 0, true}; }
    /// Tuned for integrand evaluation on quadrature grids that approach walls.
    static WallPolicy quadrature() { return {0.05, 8, true}; }
};

/// One factor of a chain: D_j + shift for j >= 0, multiplication by shift for j < 0.
struct Factor {
    int j;
    double shift;
};

/// Sum of coef * (F_1 F_2 ... F_m); the last factor acts first.
struct Program {
    struct Term {
        double coef;
        std::vector<Factor> chain;
    };
    std::vector<Term> terms;

    int depth() const;
};

class NodePool;

/// Differential-reflection operator  (L f)(t) = sum coeff(t) (d^alpha f)(w t).
///
/// The operator is carried as a program of Cherednik factors; the symbolic
/// normal form is materialized on first use and cached. Both evaluation
/// routes are exposed so they can be checked against each other.
class OperatorNF {
public:
    struct Term {
        std::size_t w;            // index into WeylGroup::get(rank)
        std::vector<int> alpha;   // derivative multi-index
        int coeff;                // node id in the coefficient pool
    };

    static OperatorNF identity(const RootData& rd);
    static OperatorNF scalar(const RootData& rd, double c);
    /// Cherednik operator D_j (j is 0-based).
    static OperatorNF cherednik(const RootData& rd, int j);
    static OperatorNF from_program(const RootData& rd, Program p) { return OperatorNF(rd, std::move(p)); }

    const RootData& root_data() const { return rd_; }
    const Program& program() const { return program_; }
    int degree() const { return program_.depth(); }

    /// Normal-form terms; materializes on first call.
    const std::vector<Term>& terms() const;
    std::size_t term_count() const { return terms().size(); }
    std::size_t max_terms() const { return max_terms_; }

    /// Evaluate through the normal form. Coefficients are singular on walls.
    double apply_nf(const JetFunction& f, std::span<const double> t) const;
    /// Evaluate by applying the Cherednik factors one by one over the Weyl orbit.
    double apply(const JetFunction& f, std::span<const double> t, const WallPolicy& policy = {}) const;
    /// Jet of (L f) at t of the given order (sequential route).
    Jet apply_jet(const JetFunction& f, std::span<const double> t, int order, const WallPolicy& policy = {}) const;

    OperatorNF operator+(const OperatorNF& o) const;
    OperatorNF operator-(const OperatorNF& o) const;
    OperatorNF operator*(double c) const;
    /// Composition: (*this) after o, i.e. (*this)(o f).
    OperatorNF operator*(const OperatorNF& o) const;

    void set_max_terms(std::size_t n) { max_terms_ = n; }

private:
    OperatorNF(RootData rd, Program p);
    void materialize() const;

    RootData rd_;
    Program program_;
    std::size_t max_terms_ = 100000;
    mutable std::shared_ptr<NodePool> pool_;
    mutable std::shared_ptr<const std::vector<Term>> terms_;
};

/// Normal form of ops[0] * ops[1] * ... ; throws NumericalError once the
/// materialized normal form exceeds max_terms.
OperatorNF compose(const std::vector<OperatorNF>& ops, std::size_t max_terms = 100000);

/// D_j f(t), j 0-based.
double cherednik_apply(int j, const RootData& rd, const JetFunction& f, std::span<const double> t,
                       const WallPolicy& policy = {});

/// prod_j (D_j^2 - (delta + rho_1)^2).
OperatorNF m_delta_op(const RootData& rd, double delta);
/// prod_{k<l} M_{delta0 - 2k}.
OperatorNF dirac_chain_op(const DomainParams& dp);
/// D^2 - rho^2 (rank one).
OperatorNF radial_laplacian(const DomainParams& dp);
OperatorNF radial_laplacian(const RootData& rd);

/// f'' + (2b coth t + 2 iota coth 2t) f' for rank one, computed directly.
double radial_laplacian_direct(const RootData& rd, const JetFunction& f, double t);

} // namespace cr
