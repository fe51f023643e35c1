#pragma once

#include "cr/cherednik.hpp"
#include "cr/quadrature.hpp"
#include "cr/report.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace cr {

/// Points with t_1 > ... > t_r, all t_j > gap and consecutive gaps > gap, coordinates
/// uniform in (gap, hi) before sorting. Generator: std::mt19937_64(seed).
std::vector<std::vector<double>> chamber_samples(int r, int n, std::uint64_t seed, double gap = 0.05,
                                                 double hi = 2.0);
/// Points in [-hi, hi]^r with |t_j| > gap and ||t_i| - |t_j|| > gap (off every wall).
std::vector<std::vector<double>> generic_samples(int r, int n, std::uint64_t seed, double gap = 0.05,
                                                 double hi = 1.5);

struct PointwiseOptions {
    int samples = 100;
    std::uint64_t seed = 1;
    double tol = 1e-8;
    /// Test function multiplier; residuals must scale linearly with it.
    double scale = 1.0;
};

/// M_delta |SH|^delta = m_delta |SH|^{delta-2}, residual relative to |m_delta||SH|^{delta-2} + |SH|^delta.
VerificationReport verify_bs_sinh(const RootData& rd, double delta, const PointwiseOptions& o = {});
/// M_delta CH^delta = m^cosh_delta CH^{delta-2}.
VerificationReport verify_bs_cosh(const RootData& rd, double delta, const PointwiseOptions& o = {});
/// (d^2/dt^2 - delta^2)|sh t|^delta = delta(delta-1)|sh t|^{delta-2} and the cosh companion
/// (d^2/dt^2 - delta^2) ch^delta = -delta(delta-1) ch^{delta-2}.
VerificationReport verify_bs_flat(double delta, const PointwiseOptions& o = {100, 1, 1e-12, 1.0});
/// Both partial-product formulas of the ladder lemma for the given j (1-based; 0 = every j).
VerificationReport verify_ladder(const RootData& rd, double delta, int j, const PointwiseOptions& o = {});
/// [D_i, D_j] f = 0 for all i < j on a W-invariant bump and a tilted (non-invariant) bump,
/// relative to the largest |D_i D_j f| seen.
VerificationReport verify_commute(const RootData& rd, const PointwiseOptions& o = {100, 1, 1e-9, 1.0});

/// (<op f, g>_mu, <f, op g>_mu). With w_invariant the integrands are integrated on the
/// chamber only (valid when op f, f, op g, g are all W-invariant); otherwise over the orbit.
std::pair<double, double> adjoint_pairing(const RootData& rd, const OperatorNF& op, const JetFunction& f,
                                          const JetFunction& g, const QuadratureSpec& spec, bool w_invariant);

struct QuadOptions {
    QuadratureSpec spec = default_spec();
    double tol = 1e-6;
    std::uint64_t seed = 1;

    static QuadratureSpec default_spec() {
        QuadratureSpec s;
        s.radius = 1.2;
        s.nodes = 16;
        return s;
    }
};

/// Symmetry of M_delta under dmu on W-invariant polynomial-bump pairs (must agree), and the
/// asymmetry of D_1 on a non-invariant pair (reported; must exceed 1e-3 relative).
VerificationReport verify_adjoint(const RootData& rd, double delta, const QuadOptions& o = {});

/// zeta_delta(f) = (1 / z_delta) int |SH|^delta f dmu, delta > -1 - iota - 2b.
double zeta(const RootData& rd, double delta, const JetFunction& f, const QuadratureSpec& spec);
/// 2^{-2rk} (1 / z_{delta+2k}) int |SH|^{delta+2k} (M_{delta+2} ... M_{delta+2k} f) dmu.
/// `order` permutes the factors (entries 1..k, first listed acts last); empty = natural order.
double zeta_continued(const RootData& rd, double delta, const JetFunction& f, int k, const QuadratureSpec& spec,
                      const std::vector<int>& order = {});

/// Weak-form recursion zeta_delta(M_delta f) = 2^{2r} zeta_{delta-2}(f) (when delta - 2 is in the
/// convergent range), overlap of continued and direct values at delta - 2, and independence of
/// the factor order for the continuation with `steps` factors.
VerificationReport verify_zeta(const RootData& rd, double delta, int steps, const JetFunction& f,
                               const QuadOptions& o = {});

} // namespace cr
