#include "cr/quadrature.hpp"

#include "cr/errors.hpp"
#include "cr/kernels.hpp"
#include "cr/parallel.hpp"
#include "cr/special.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace cr {

namespace {

QuadratureRule golub_welsch(int n, double alpha, double beta) {
    const double ab = alpha + beta;
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 1));
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + ab;
        diag(k) = (k == 0) ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / (s * (s + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + ab;
        double bk;
        if (k == 1)
            bk = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        else
            bk = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
        sub(k - 1) = std::sqrt(bk);
    }
    QuadratureRule q;
    q.x.resize(static_cast<std::size_t>(n));
    q.w.resize(static_cast<std::size_t>(n));
    const double log_mu0 = (ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                           std::lgamma(ab + 2.0);
    if (n == 1) {
        q.x[0] = diag(0);
        q.w[0] = std::exp(log_mu0);
        return q;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success)
        throw NumericalError("Golub-Welsch eigen-solve failed");
    const double mu0 = std::exp(log_mu0);
    for (int i = 0; i < n; ++i) {
        q.x[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        q.w[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
    }
    return q;
}

const QuadratureRule& cached_jacobi(int n, double alpha, double beta) {
    static std::mutex mu;
    static std::map<std::tuple<int, double, double>, QuadratureRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(n, alpha, beta);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, golub_welsch(n, alpha, beta)).first;
    return it->second;
}

void check_weight(double alpha, double beta) {
    if (!(alpha > -1.0) || !(beta > -1.0)) {
        std::ostringstream os;
        os << "Jacobi weight not integrable: exponents " << alpha << ", " << beta << " must exceed -1";
        throw ParameterError(os.str());
    }
}

const QuadratureRule& jacobi_unit_cached(int n, double p, double q) {
    static std::mutex mu;
    static std::map<std::tuple<int, double, double>, QuadratureRule> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(std::make_tuple(n, p, q));
        if (it != cache.end())
            return it->second;
    }
    check_weight(q, p);
    QuadratureRule u = cached_jacobi(n, q, p);
    const double scale = std::exp(-(p + q + 1.0) * std::log(2.0));
    for (std::size_t i = 0; i < u.x.size(); ++i) {
        u.x[i] = 0.5 * (u.x[i] + 1.0);
        u.w[i] *= scale;
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::make_tuple(n, p, q), std::move(u)).first->second;
}

// exponent of the radial / nested coordinate when the last m coordinates shrink together
double cluster_exponent(int m, const ConeExponents& e) {
    return m * e.wall + (e.diff + e.sum) * m * (m - 1) / 2.0 + (m - 1);
}

struct Samples {
    std::vector<double> t; // flattened points
    std::vector<double> w;
};

Samples cone_samples(int r, const ConeExponents& e, const QuadratureSpec& spec, int n) {
    const double p_rho = cluster_exponent(r, e);
    std::vector<const QuadratureRule*> srule;
    std::vector<double> p_s;
    for (int k = 1; k < r; ++k) {
        const int m = r - k;
        p_s.push_back(cluster_exponent(m, e));
        check_weight(e.diff, p_s.back());
        srule.push_back(&jacobi_unit_cached(n, p_s.back(), e.diff));
    }
    check_weight(0.0, p_rho);
    const QuadratureRule& rj = jacobi_unit_cached(n, p_rho, 0.0);
    const QuadratureRule& gl = cached_jacobi(n, 0.0, 0.0);

    Samples out;
    const auto ru = static_cast<std::size_t>(r);
    std::vector<std::size_t> idx(ru > 0 ? ru - 1 : 0, 0);
    std::vector<double> v(ru);
    auto push = [&](double rho, double weight) {
        for (std::size_t j = 0; j < ru; ++j)
            out.t.push_back(rho * v[j]);
        out.w.push_back(weight);
    };
    for (;;) {
        // direction v = (1, s_2, s_2 s_3, ...) and the s-weight with the Jacobi factors divided out
        v[0] = 1.0;
        double ws = 1.0;
        double jac_s = 1.0;
        for (std::size_t k = 0; k + 1 < ru; ++k) {
            const double s = srule[k]->x[idx[k]];
            v[k + 1] = v[k] * s;
            ws *= srule[k]->w[idx[k]] / (std::pow(s, p_s[k]) * std::pow(1.0 - s, e.diff));
            jac_s *= std::pow(s, static_cast<double>(r - 2 - static_cast<int>(k)));
        }
        double norm = 0.0;
        for (double c : v)
            norm += c * c;
        const double rho_max = spec.radius / std::sqrt(norm);
        // breakpoints: [0, b_1] carries the Jacobi weight, the rest are Legendre panels; the
        // last panel is split geometrically towards the support edge rho_max
        std::vector<double> bp{0.0};
        if (rho_max > 1.0) {
            bp.push_back(1.0);
            const int panels = static_cast<int>(std::ceil((rho_max - 1.0) / spec.panel - 1e-12));
            const double h = (rho_max - 1.0) / panels;
            for (int pnl = 1; pnl < panels; ++pnl)
                bp.push_back(1.0 + pnl * h);
        }
        const double last0 = bp.back();
        for (int g = 1; g <= spec.edge_grading; ++g)
            bp.push_back(last0 + (rho_max - last0) * (1.0 - std::ldexp(1.0, -g)));
        bp.push_back(rho_max);
        const double L = bp[1];
        for (std::size_t i = 0; i < rj.x.size(); ++i) {
            const double u = rj.x[i];
            const double rho = L * u;
            // rho^{r-1} / rho^{p_rho} * L^{p_rho + 1} = L^r u^{r-1-p_rho}
            const double wr = rj.w[i] * std::pow(L, r) * std::pow(u, (r - 1) - p_rho);
            push(rho, ws * jac_s * wr);
        }
        for (std::size_t pnl = 1; pnl + 1 < bp.size(); ++pnl) {
            const double a0 = bp[pnl];
            const double h = bp[pnl + 1] - a0;
            for (std::size_t i = 0; i < gl.x.size(); ++i) {
                const double rho = a0 + 0.5 * h * (gl.x[i] + 1.0);
                push(rho, ws * jac_s * 0.5 * h * gl.w[i] * std::pow(rho, r - 1));
            }
        }
        // odometer over the s-indices
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == srule[k]->x.size())
            idx[k++] = 0;
        if (k == idx.size())
            break;
    }
    return out;
}

double cone_sum(int r, const PointFunction& F, const ConeExponents& e, const QuadratureSpec& spec, int n,
                long& evals) {
    const Samples s = cone_samples(r, e, spec, n);
    const std::size_t m = s.w.size();
    std::vector<double> vals(m);
    const auto ru = static_cast<std::size_t>(r);
    parallel_for(m, [&](std::size_t i) {
        vals[i] = F(std::span<const double>(s.t.data() + i * ru, ru));
    });
    evals += static_cast<long>(m);
    return kernels::dot(vals, s.w);
}

} // namespace

QuadratureRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1)
        throw ParameterError("quadrature needs at least one node");
    check_weight(alpha, beta);
    return cached_jacobi(n, alpha, beta);
}

QuadratureRule jacobi_unit(int n, double p, double q) { return jacobi_unit_cached(n, p, q); }

QuadResult integrate_cone(int r, const PointFunction& F, const ConeExponents& e, const QuadratureSpec& spec) {
    if (r < 1 || r > 3)
        throw ParameterError("cone quadrature supports rank 1..3");
    if (!(spec.radius > 0.0))
        throw ParameterError("quadrature radius must be positive");
    if (!(e.wall > -1.0)) {
        std::ostringstream os;
        os << "wall exponent " << e.wall << " must exceed -1 for integrability";
        throw ParameterError(os.str());
    }
    QuadResult res;
    int n = spec.nodes;
    double coarse = cone_sum(r, F, e, spec, n, res.evaluations);
    if (!spec.estimate_error) {
        res.value = coarse;
        res.nodes = n;
        return res;
    }
    for (;;) {
        res.value = cone_sum(r, F, e, spec, 2 * n, res.evaluations);
        res.nodes = 2 * n;
        res.error = std::abs(res.value - coarse);
        const bool ok = spec.rel_tol <= 0.0 || res.error <= spec.rel_tol * std::abs(res.value) + spec.abs_tol;
        if (ok)
            return res;
        if (4 * n > spec.max_nodes) {
            std::ostringstream os;
            os << "quadrature did not converge: value " << res.value << ", change under node doubling "
               << res.error << " (nodes " << n << " -> " << 2 * n << ", radius " << spec.radius << ")";
            throw NumericalError(os.str());
        }
        coarse = res.value;
        n *= 2;
    }
}

double mu_wall_exponent(const RootData& rd, double delta) {
    const double g = delta + rd.two_b + rd.iota;
    if (!(g > -1.0)) {
        std::ostringstream os;
        os << "integrability requires delta + 2b + iota > -1 (got " << g << ")";
        throw ParameterError(os.str());
    }
    return g;
}

QuadResult integrate_mu(const RootData& rd, const PointFunction& f, double delta, const QuadratureSpec& spec,
                        bool w_invariant) {
    const ConeExponents e{mu_wall_exponent(rd, delta), rd.a, rd.a};
    const WeylGroup& W = WeylGroup::get(rd.rank);
    const auto ru = static_cast<std::size_t>(rd.rank);
    PointFunction F = [&](std::span<const double> t) {
        double sh = 1.0;
        for (double x : t)
            sh *= std::abs(std::sinh(x));
        const double weight = std::pow(sh, delta) * measure_density(rd, t);
        if (w_invariant)
            return weight * f(t);
        std::vector<double> wt(ru);
        double acc = 0.0;
        for (std::size_t w = 0; w < W.size(); ++w) {
            W[w].act(t, wt);
            acc += f(wt);
        }
        return weight * acc;
    };
    QuadResult res = integrate_cone(rd.rank, F, e, spec);
    if (w_invariant) {
        const double order = static_cast<double>(W.size());
        res.value *= order;
        res.error *= order;
    }
    return res;
}

QuadratureSpec fit_radius(QuadratureSpec spec, std::initializer_list<double> supports) {
    double R = spec.radius > 0.0 ? spec.radius : std::numeric_limits<double>::infinity();
    for (double s : supports)
        R = std::min(R, s);
    if (!std::isfinite(R))
        throw ParameterError("integrand is not compactly supported and no truncation radius was given");
    spec.radius = R;
    return spec;
}

QuadResult integrate_mu(const RootData& rd, const JetFunction& f, double delta, const QuadratureSpec& spec) {
    return integrate_mu(
        rd, [&f](std::span<const double> t) { return f.value(t); }, delta, fit_radius(spec, {f.support_radius()}),
        f.w_invariant());
}

ChamberMap chamber_transform(std::span<const double> t) {
    ChamberMap m;
    m.x.reserve(t.size());
    for (double s : t) {
        const double sh = std::sinh(s);
        m.x.push_back(sh * sh);
        m.jacobian *= std::sinh(2.0 * s);
    }
    return m;
}

std::vector<double> chamber_inverse(std::span<const double> x) {
    std::vector<double> t;
    t.reserve(x.size());
    for (double v : x) {
        if (v < 0.0)
            throw DomainError("chamber_inverse: x_j must be nonnegative");
        t.push_back(std::asinh(std::sqrt(v)));
    }
    return t;
}

} // namespace cr
