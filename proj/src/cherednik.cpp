#include "cr/cherednik.hpp"

#include "cherednik_internal.hpp"
#include "cr/errors.hpp"

#include <algorithm>
#include <map>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cr {

int Program::depth() const {
    int d = 0;
    for (const auto& term : terms)
        d = std::max(d, static_cast<int>(term.chain.size()));
    return d;
}

namespace detail {

CherednikTerms cherednik_terms(const RootData& rd, int j) {
    const int r = rd.rank;
    if (j < 0 || j >= r)
        throw ParameterError("Cherednik index out of range");
    const WeylGroup& W = WeylGroup::get(r);
    CherednikTerms out;
    out.rho = rd.rho_at(j);
    auto form = [r](int i, double ci, int k, double ck) {
        std::vector<double> a(static_cast<std::size_t>(r), 0.0);
        a[static_cast<std::size_t>(i)] += ci;
        if (k >= 0)
            a[static_cast<std::size_t>(k)] += ck;
        return a;
    };
    auto add = [&](double kappa, std::vector<double> alpha, const GroupElement& s) {
        if (kappa != 0.0)
            out.refl.push_back({kappa, std::move(alpha), W.index_of(s)});
    };
    for (int i = 0; i < j; ++i)
        add(-rd.a, form(i, 1.0, j, -1.0), GroupElement::transposition(r, i, j));
    for (int k = j + 1; k < r; ++k)
        add(rd.a, form(j, 1.0, k, -1.0), GroupElement::transposition(r, j, k));
    for (int k = 0; k < r; ++k)
        if (k != j)
            add(rd.a, form(j, 1.0, k, 1.0), GroupElement::signed_swap(r, j, k));
    add(2.0 * rd.iota, form(j, 2.0, -1, 0.0), GroupElement::sign_flip(r, j));
    add(rd.two_b, form(j, 1.0, -1, 0.0), GroupElement::sign_flip(r, j));
    return out;
}

} // namespace detail

namespace {

using detail::CherednikTerms;

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

// Coefficients of (1 - e^{-2u})/u = sum_k (-1)^k 2^{k+1} u^k / (k+1)!.
std::vector<double> wall_quotient_series(int K) {
    std::vector<double> g(static_cast<std::size_t>(K) + 1);
    double term = 2.0; // 2^{k+1}/(k+1)! at k = 0
    for (int k = 0; k <= K; ++k) {
        g[static_cast<std::size_t>(k)] = (k % 2 ? -term : term);
        term *= 2.0 / (k + 2);
    }
    return g;
}

// Projects t onto the intersection of the walls it is close to. The result
// has exactly equal |coordinates| (or exact zeros) on the merged walls, so
// every root vanishing there evaluates to an exact 0 on the whole orbit.
std::vector<double> project_to_walls(const RootData& rd, std::span<const double> t, double threshold,
                                     bool& near) {
    const int r = rd.rank;
    std::vector<double> p(t.begin(), t.end());
    near = false;
    const bool use_diff = rd.a != 0.0;
    const bool use_coord = rd.two_b != 0.0 || rd.iota != 0.0;
    auto is_near = [threshold](double v) { return v == 0.0 || std::abs(v) < threshold; };

    for (int iter = 0; iter <= r + 1; ++iter) {
        // union-find with parity: p_i = sign * p_root
        std::vector<int> parent(static_cast<std::size_t>(r));
        std::vector<int> parity(static_cast<std::size_t>(r), 1);
        std::vector<bool> zero(static_cast<std::size_t>(r), false);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int i) {
            int s = 1;
            while (parent[static_cast<std::size_t>(i)] != i) {
                s *= parity[static_cast<std::size_t>(i)];
                i = parent[static_cast<std::size_t>(i)];
            }
            return std::pair{i, s};
        };
        bool any = false;
        auto unite = [&](int i, int k, int rel) { // p_i = rel * p_k
            auto [ri, si] = find(i);
            auto [rk, sk] = find(k);
            if (ri == rk) {
                if (si * sk != rel)
                    zero[static_cast<std::size_t>(ri)] = true;
                return;
            }
            parent[static_cast<std::size_t>(ri)] = rk;
            parity[static_cast<std::size_t>(ri)] = si * sk * rel;
            if (zero[static_cast<std::size_t>(ri)])
                zero[static_cast<std::size_t>(rk)] = true;
        };
        for (int i = 0; i < r; ++i) {
            if (use_coord && is_near(p[static_cast<std::size_t>(i)])) {
                zero[static_cast<std::size_t>(find(i).first)] = true;
                any = true;
            }
            if (!use_diff)
                continue;
            for (int k = i + 1; k < r; ++k) {
                const double pi = p[static_cast<std::size_t>(i)];
                const double pk = p[static_cast<std::size_t>(k)];
                if (is_near(pi - pk)) {
                    unite(i, k, 1);
                    any = true;
                }
                if (is_near(pi + pk)) {
                    unite(i, k, -1);
                    any = true;
                }
            }
        }
        if (!any)
            break;
        near = true;
        std::vector<double> sum(static_cast<std::size_t>(r), 0.0);
        std::vector<int> cnt(static_cast<std::size_t>(r), 0);
        for (int i = 0; i < r; ++i) {
            auto [root, s] = find(i);
            sum[static_cast<std::size_t>(root)] += s * p[static_cast<std::size_t>(i)];
            ++cnt[static_cast<std::size_t>(root)];
        }
        std::vector<double> q(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i) {
            auto [root, s] = find(i);
            const auto ri = static_cast<std::size_t>(root);
            q[static_cast<std::size_t>(i)] = zero[ri] ? 0.0 : s * (sum[ri] / cnt[ri]);
        }
        if (q == p)
            break;
        p = std::move(q);
    }
    return p;
}

class OrbitEvaluator {
public:
    OrbitEvaluator(const RootData& rd, std::span<const double> p0)
        : rd_(rd), W_(WeylGroup::get(rd.rank)) {
        for (int j = 0; j < rd.rank; ++j)
            terms_.push_back(detail::cherednik_terms(rd, j));
        pts_.reserve(W_.size());
        for (std::size_t w = 0; w < W_.size(); ++w)
            pts_.push_back(W_[w].act(p0));
    }

    std::vector<Jet> base_table(const JetFunction& f, int order) const {
        std::vector<Jet> T;
        T.reserve(W_.size());
        if (f.w_invariant()) {
            // f(w p + h) = f(p + w^{-1} h)
            const Jet J0 = f.jet(pts_[0], order);
            for (std::size_t w = 0; w < W_.size(); ++w)
                T.push_back(w == 0 ? J0 : J0.compose_weyl(W_[w].inverse()));
            return T;
        }
        for (std::size_t w = 0; w < W_.size(); ++w)
            T.push_back(f.jet(pts_[w], order));
        return T;
    }

    // Table of (D_j + shift) g over the orbit, given the table of g.
    std::vector<Jet> apply(const std::vector<Jet>& T, int j, double shift) const {
        const int K = T[0].order();
        if (K < 1)
            throw NumericalError("operator chain deeper than the available jet order");
        const CherednikTerms& ct = terms_[static_cast<std::size_t>(j)];
        const int r = rd_.rank;
        std::vector<Jet> out;
        out.reserve(T.size());
        for (std::size_t w = 0; w < T.size(); ++w) {
            Jet acc = T[w].derivative(j);
            acc.add_scaled(T[w], shift - ct.rho);
            for (const auto& rt : ct.refl) {
                const std::size_t sw = W_.product(rt.s, w);
                Jet N = T[w] - T[sw].compose_weyl(W_[rt.s]);
                const double aq = dot(rt.alpha, pts_[w]);
                const std::vector<double>& g = quotient_series(aq, K - 1);
                if (aq == 0.0)
                    N = N.divide_linear(rt.alpha);
                acc.add_scaled(N * linear_series(r, K - 1, rt.alpha, g), rt.kappa);
            }
            out.push_back(std::move(acc));
        }
        return out;
    }

private:
    // Taylor coefficients in u of 1/(1 - e^{-2(a + u)}) for a != 0, and of
    // u/(1 - e^{-2u}) for a == 0 (the jet numerator is divided by u separately).
    const std::vector<double>& quotient_series(double a, int K) const {
        const auto key = std::make_pair(a, K);
        if (auto it = qcache_.find(key); it != qcache_.end())
            return it->second;
        Jet q;
        if (a == 0.0)
            q = reciprocal(compose_series(Jet::variable(1, K, 0, 0.0), wall_quotient_series(K)));
        else
            q = reciprocal(1.0 - exp(Jet::variable(1, K, 0, a) * -2.0));
        std::vector<double> g(q.coeffs().begin(), q.coeffs().end());
        return qcache_.emplace(key, std::move(g)).first->second;
    }

    const RootData& rd_;
    const WeylGroup& W_;
    std::vector<CherednikTerms> terms_;
    std::vector<std::vector<double>> pts_;
    mutable std::map<std::pair<double, int>, std::vector<double>> qcache_;
};

Jet run_program(const RootData& rd, const Program& prog, const JetFunction& f, std::span<const double> t,
                int order, const WallPolicy& policy) {
    const int r = rd.rank;
    if (f.rank() != r || static_cast<int>(t.size()) != r)
        throw ParameterError("operator and function/point ranks differ");
    // Compact support in a ball: the orbit of t stays at distance |t| from the origin, so
    // outside the ball everything vanishes; inside, the Taylor re-expansion from the wall
    // must not reach across the (non-analytic) support edge.
    double threshold = std::max(policy.threshold, 0.0);
    const double R = f.support_radius();
    if (std::isfinite(R)) {
        double n2 = 0.0;
        for (double x : t)
            n2 += x * x;
        const double room = R - std::sqrt(n2);
        if (room <= 0.0)
            return Jet::constant(r, order, 0.0);
        threshold = std::min(threshold, 0.1 * room);
    }
    bool near = false;
    std::vector<double> p0 = project_to_walls(rd, t, threshold, near);
    if (near && !policy.limit) {
        std::ostringstream os;
        os << "point within " << policy.threshold << " of a singular wall and limit mode is off";
        throw DomainError(os.str());
    }
    const int extra = near ? std::max(policy.extra_order, 0) : 0;
    const int out_order = order + extra;
    const int depth = prog.depth();
    OrbitEvaluator ev(rd, p0);
    const std::vector<Jet> base = ev.base_table(f, depth + out_order);

    Jet result = Jet::constant(r, out_order, 0.0);
    for (const auto& term : prog.terms) {
        if (term.coef == 0.0)
            continue;
        std::vector<Jet> T = base;
        for (auto it = term.chain.rbegin(); it != term.chain.rend(); ++it)
            T = ev.apply(T, it->j, it->shift);
        result.add_scaled(T[0].truncated(out_order), term.coef);
    }
    if (!near)
        return result;
    std::vector<double> d(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i)
        d[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(i)] - p0[static_cast<std::size_t>(i)];
    return result.recentered(d, order);
}

Program mul(const Program& a, const Program& b) {
    Program out;
    for (const auto& x : a.terms)
        for (const auto& y : b.terms) {
            Program::Term t{x.coef * y.coef, x.chain};
            t.chain.insert(t.chain.end(), y.chain.begin(), y.chain.end());
            out.terms.push_back(std::move(t));
        }
    return out;
}

} // namespace

OperatorNF::OperatorNF(RootData rd, Program p) : rd_(std::move(rd)), program_(std::move(p)) {
    if (rd_.rank < 1 || rd_.rank > kMaxEnumeratedRank)
        throw ParameterError("operators are supported for rank 1.." + std::to_string(kMaxEnumeratedRank));
}

OperatorNF OperatorNF::identity(const RootData& rd) { return scalar(rd, 1.0); }

OperatorNF OperatorNF::scalar(const RootData& rd, double c) {
    Program p;
    p.terms.push_back({c, {}});
    return OperatorNF(rd, std::move(p));
}

OperatorNF OperatorNF::cherednik(const RootData& rd, int j) {
    if (j < 0 || j >= rd.rank)
        throw ParameterError("Cherednik index out of range");
    Program p;
    p.terms.push_back({1.0, {Factor{j, 0.0}}});
    return OperatorNF(rd, std::move(p));
}

double OperatorNF::apply(const JetFunction& f, std::span<const double> t, const WallPolicy& policy) const {
    return run_program(rd_, program_, f, t, 0, policy).value();
}

Jet OperatorNF::apply_jet(const JetFunction& f, std::span<const double> t, int order,
                          const WallPolicy& policy) const {
    return run_program(rd_, program_, f, t, order, policy);
}

OperatorNF OperatorNF::operator+(const OperatorNF& o) const {
    if (!(rd_ == o.rd_))
        throw ParameterError("cannot add operators over different root data");
    Program p = program_;
    p.terms.insert(p.terms.end(), o.program_.terms.begin(), o.program_.terms.end());
    OperatorNF out(rd_, std::move(p));
    out.max_terms_ = std::min(max_terms_, o.max_terms_);
    return out;
}

OperatorNF OperatorNF::operator-(const OperatorNF& o) const { return *this + o * -1.0; }

OperatorNF OperatorNF::operator*(double c) const {
    Program p = program_;
    for (auto& t : p.terms)
        t.coef *= c;
    OperatorNF out(rd_, std::move(p));
    out.max_terms_ = max_terms_;
    return out;
}

OperatorNF OperatorNF::operator*(const OperatorNF& o) const {
    if (!(rd_ == o.rd_))
        throw ParameterError("cannot compose operators over different root data");
    OperatorNF out(rd_, mul(program_, o.program_));
    out.max_terms_ = std::min(max_terms_, o.max_terms_);
    return out;
}

OperatorNF compose(const std::vector<OperatorNF>& ops, std::size_t max_terms) {
    if (ops.empty())
        throw ParameterError("compose: empty operator list");
    OperatorNF acc = ops.front();
    for (std::size_t i = 1; i < ops.size(); ++i)
        acc = acc * ops[i];
    acc.set_max_terms(max_terms);
    return acc;
}

double cherednik_apply(int j, const RootData& rd, const JetFunction& f, std::span<const double> t,
                       const WallPolicy& policy) {
    return OperatorNF::cherednik(rd, j).apply(f, t, policy);
}

OperatorNF m_delta_op(const RootData& rd, double delta) {
    const double c = delta + rd.rho_at(0);
    Program::Term term{1.0, {}};
    for (int j = 0; j < rd.rank; ++j) {
        term.chain.push_back({j, -c});
        term.chain.push_back({j, c});
    }
    Program p;
    p.terms.push_back(std::move(term));
    return OperatorNF::from_program(rd, std::move(p));
}

OperatorNF dirac_chain_op(const DomainParams& dp) {
    if (dp.l < 1)
        throw ParameterError("Dirac chain needs a positive integer l");
    const RootData rd = dp.root_data();
    std::vector<OperatorNF> ops;
    for (int k = 0; k < dp.l; ++k)
        ops.push_back(m_delta_op(rd, dp.delta0 - 2.0 * k));
    return compose(ops);
}

OperatorNF radial_laplacian(const RootData& rd) {
    if (rd.rank != 1)
        throw ParameterError("radial Laplacian is defined here for rank one");
    const double rho = rd.rho_at(0);
    Program p;
    p.terms.push_back({1.0, {Factor{0, -rho}, Factor{0, rho}}});
    return OperatorNF::from_program(rd, std::move(p));
}

OperatorNF radial_laplacian(const DomainParams& dp) { return radial_laplacian(dp.root_data()); }

double radial_laplacian_direct(const RootData& rd, const JetFunction& f, double t) {
    if (rd.rank != 1 || f.rank() != 1)
        throw ParameterError("radial Laplacian is defined here for rank one");
    if (t == 0.0)
        throw DomainError("radial Laplacian: coth singularity at t = 0");
    const double x[1] = {t};
    const Jet J = f.jet(x, 2);
    const double d1 = J[1];
    const double d2 = 2.0 * J[2];
    return d2 + (rd.two_b / std::tanh(t) + 2.0 * rd.iota / std::tanh(2.0 * t)) * d1;
}

} // namespace cr
