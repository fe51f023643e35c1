#include "cr/jets.hpp"

#include "cr/errors.hpp"
#include "cr/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cr {

namespace {

void enumerate_degree(int nvars, int d, int var, Exponent& cur, std::vector<Exponent>& out) {
    if (var == nvars - 1) {
        cur[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(d);
        out.push_back(cur);
        return;
    }
    for (int e = d; e >= 0; --e) {
        cur[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(e);
        enumerate_degree(nvars, d - e, var + 1, cur, out);
    }
    cur[static_cast<std::size_t>(var)] = 0;
}

} // namespace

MonomialLayout::MonomialLayout(int nvars) : nvars_(nvars) {
    offsets_.push_back(0);
    for (int d = 0; d <= kJetOrderCap; ++d) {
        Exponent cur{};
        enumerate_degree(nvars, d, 0, cur, exps_);
        offsets_.push_back(exps_.size());
    }
    for (const auto& e : exps_) {
        int deg = 0;
        for (int v = 0; v < nvars; ++v)
            deg += e[static_cast<std::size_t>(v)];
        degrees_.push_back(deg);
    }
    std::size_t dense = 1;
    for (int v = 0; v < nvars; ++v)
        dense *= kJetOrderCap + 1;
    dense_index_.assign(dense, -1);
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        std::size_t key = 0;
        for (int v = 0; v < nvars; ++v)
            key = key * (kJetOrderCap + 1) + exps_[i][static_cast<std::size_t>(v)];
        dense_index_[key] = static_cast<std::int32_t>(i);
    }
}

const MonomialLayout& MonomialLayout::get(int nvars) {
    if (nvars < 1 || nvars > kJetMaxVars)
        throw ParameterError("jet: number of variables must be in 1..4");
    static std::once_flag once[kJetMaxVars + 1];
    static std::unique_ptr<MonomialLayout> layouts[kJetMaxVars + 1];
    std::call_once(once[nvars], [nvars] { layouts[nvars].reset(new MonomialLayout(nvars)); });
    return *layouts[nvars];
}

long MonomialLayout::index(const Exponent& e) const {
    std::size_t key = 0;
    int deg = 0;
    for (int v = 0; v < nvars_; ++v) {
        deg += e[static_cast<std::size_t>(v)];
        key = key * (kJetOrderCap + 1) + e[static_cast<std::size_t>(v)];
    }
    if (deg > kJetOrderCap)
        return -1;
    return dense_index_[key];
}

const MonomialLayout::MulTable& MonomialLayout::mul_table(int order) const {
    const auto o = static_cast<std::size_t>(order);
    std::call_once(mul_once_[o], [this, order, o] {
        auto table = std::make_unique<MulTable>();
        const std::size_t n = count(order);
        table->row_begin.reserve(n + 1);
        for (std::size_t i = 0; i < n; ++i) {
            table->row_begin.push_back(static_cast<std::uint32_t>(table->entries.size()));
            const std::size_t jmax = count(order - degrees_[i]);
            for (std::size_t j = 0; j < jmax; ++j) {
                Exponent e{};
                for (int v = 0; v < nvars_; ++v)
                    e[static_cast<std::size_t>(v)] =
                        static_cast<std::uint8_t>(exps_[i][static_cast<std::size_t>(v)] + exps_[j][static_cast<std::size_t>(v)]);
                table->entries.push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(index(e))});
            }
        }
        table->row_begin.push_back(static_cast<std::uint32_t>(table->entries.size()));
        mul_cache_[o] = std::move(table);
    });
    return *mul_cache_[o];
}

// ---------------------------------------------------------------------------

Jet::Jet(int nvars, int order) : nvars_(nvars), order_(order) {
    if (order < 0 || order > kJetOrderCap)
        throw ParameterError("jet: order " + std::to_string(order) + " outside 0.." + std::to_string(kJetOrderCap));
    c_.assign(MonomialLayout::get(nvars).count(order), 0.0);
}

Jet Jet::constant(int nvars, int order, double v) {
    Jet j(nvars, order);
    j.c_[0] = v;
    return j;
}

Jet Jet::variable(int nvars, int order, int i, double v) {
    Jet j(nvars, order);
    j.c_[0] = v;
    if (order >= 1)
        j.c_[1 + static_cast<std::size_t>(i)] = 1.0;
    return j;
}

Jet Jet::affine(int nvars, int order, std::span<const double> l, double v) {
    Jet j(nvars, order);
    j.c_[0] = v;
    if (order >= 1)
        for (int i = 0; i < nvars; ++i)
            j.c_[1 + static_cast<std::size_t>(i)] = l[static_cast<std::size_t>(i)];
    return j;
}

double Jet::partial(std::span<const int> alpha) const {
    const auto& L = MonomialLayout::get(nvars_);
    Exponent e{};
    int deg = 0;
    double fact = 1.0;
    for (int v = 0; v < nvars_; ++v) {
        const int k = alpha[static_cast<std::size_t>(v)];
        e[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(k);
        deg += k;
        for (int m = 2; m <= k; ++m)
            fact *= m;
    }
    if (deg > order_)
        throw ParameterError("jet: requested derivative order " + std::to_string(deg) + " exceeds jet order " +
                             std::to_string(order_));
    return c_[static_cast<std::size_t>(L.index(e))] * fact;
}

Jet Jet::truncated(int order) const {
    if (order >= order_)
        return *this;
    Jet j(nvars_, order);
    std::copy_n(c_.begin(), j.c_.size(), j.c_.begin());
    return j;
}

Jet Jet::derivative(int var) const {
    if (order_ == 0)
        throw ParameterError("jet: cannot differentiate an order-0 jet");
    const auto& L = MonomialLayout::get(nvars_);
    Jet out(nvars_, order_ - 1);
    for (std::size_t i = 0; i < out.c_.size(); ++i) {
        Exponent e = L.exponent(i);
        const int k = e[static_cast<std::size_t>(var)] + 1;
        e[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(k);
        out.c_[i] = k * c_[static_cast<std::size_t>(L.index(e))];
    }
    return out;
}

Jet Jet::compose_weyl(const GroupElement& w) const {
    const auto& L = MonomialLayout::get(nvars_);
    Jet out(nvars_, order_);
    const auto& perm = w.perm();
    const auto& signs = w.signs();
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const Exponent& beta = L.exponent(i);
        Exponent gamma{};
        int sign = 1;
        for (int j = 0; j < nvars_; ++j) {
            const int b = beta[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])];
            gamma[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(b);
            if (signs[static_cast<std::size_t>(j)] < 0 && (b & 1))
                sign = -sign;
        }
        out.c_[static_cast<std::size_t>(L.index(gamma))] = sign * c_[i];
    }
    return out;
}

Jet Jet::divide_linear(std::span<const double> l) const {
    if (order_ == 0)
        throw ParameterError("jet: cannot divide an order-0 jet by a linear form");
    const auto& L = MonomialLayout::get(nvars_);
    int pivot = 0;
    for (int v = 1; v < nvars_; ++v)
        if (std::abs(l[static_cast<std::size_t>(v)]) > std::abs(l[static_cast<std::size_t>(pivot)]))
            pivot = v;
    const double lp = l[static_cast<std::size_t>(pivot)];
    if (lp == 0.0)
        throw ParameterError("jet: division by the zero linear form");
    const auto pv = static_cast<std::size_t>(pivot);

    std::vector<double> rem(c_.begin(), c_.end());
    Jet q(nvars_, order_ - 1);
    std::vector<std::size_t> idx;
    for (int d = 1; d <= order_; ++d) {
        idx.clear();
        for (std::size_t i = L.degree_begin(d); i < L.degree_begin(d + 1); ++i)
            if (L.exponent(i)[pv] > 0)
                idx.push_back(i);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t x, std::size_t y) { return L.exponent(x)[pv] > L.exponent(y)[pv]; });
        for (std::size_t i : idx) {
            const double coef = rem[i];
            if (coef == 0.0)
                continue;
            const double qc = coef / lp;
            Exponent base = L.exponent(i);
            base[pv] = static_cast<std::uint8_t>(base[pv] - 1);
            q.c_[static_cast<std::size_t>(L.index(base))] += qc;
            for (int v = 0; v < nvars_; ++v) {
                const double lv = l[static_cast<std::size_t>(v)];
                if (lv == 0.0)
                    continue;
                Exponent e = base;
                e[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(e[static_cast<std::size_t>(v)] + 1);
                rem[static_cast<std::size_t>(L.index(e))] -= lv * qc;
            }
        }
    }
    return q;
}

double Jet::eval_poly(std::span<const double> d) const {
    const auto& L = MonomialLayout::get(nvars_);
    std::vector<std::vector<double>> pw(static_cast<std::size_t>(nvars_),
                                        std::vector<double>(static_cast<std::size_t>(order_) + 1, 1.0));
    for (int v = 0; v < nvars_; ++v)
        for (int k = 1; k <= order_; ++k)
            pw[v][static_cast<std::size_t>(k)] = pw[v][static_cast<std::size_t>(k) - 1] * d[static_cast<std::size_t>(v)];
    // highest degree first to accumulate small terms before large ones
    double s = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;) {
        double m = c_[i];
        const Exponent& e = L.exponent(i);
        for (int v = 0; v < nvars_; ++v)
            m *= pw[v][e[static_cast<std::size_t>(v)]];
        s += m;
    }
    return s;
}

Jet Jet::recentered(std::span<const double> d, int order) const {
    if (order > order_)
        order = order_;
    const auto& L = MonomialLayout::get(nvars_);
    Jet out(nvars_, order);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0.0)
            continue;
        const Exponent& beta = L.exponent(i);
        // enumerate gamma <= beta with |gamma| <= order
        Exponent gamma{};
        for (;;) {
            int deg = 0;
            for (int v = 0; v < nvars_; ++v)
                deg += gamma[static_cast<std::size_t>(v)];
            if (deg <= order) {
                double m = c_[i];
                for (int v = 0; v < nvars_; ++v) {
                    const int b = beta[static_cast<std::size_t>(v)];
                    const int g = gamma[static_cast<std::size_t>(v)];
                    double binom = 1.0;
                    for (int q = 1; q <= g; ++q)
                        binom = binom * (b - g + q) / q;
                    m *= binom * std::pow(d[static_cast<std::size_t>(v)], b - g);
                }
                out.c_[static_cast<std::size_t>(L.index(gamma))] += m;
            }
            int v = 0;
            while (v < nvars_) {
                auto& g = gamma[static_cast<std::size_t>(v)];
                if (g < beta[static_cast<std::size_t>(v)]) {
                    ++g;
                    break;
                }
                g = 0;
                ++v;
            }
            if (v == nvars_)
                break;
        }
    }
    return out;
}

double Jet::max_abs() const {
    double m = 0.0;
    for (double x : c_)
        m = std::max(m, std::abs(x));
    return m;
}

Jet& Jet::operator+=(const Jet& o) { return add_scaled(o, 1.0); }
Jet& Jet::operator-=(const Jet& o) { return add_scaled(o, -1.0); }

Jet& Jet::add_scaled(const Jet& o, double s) {
    if (o.order_ < order_)
        *this = truncated(o.order_);
    kernels::axpy(s, std::span<const double>(o.c_.data(), c_.size()), c_);
    return *this;
}

Jet& Jet::operator*=(double s) {
    for (double& x : c_)
        x *= s;
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    const int order = std::min(a.order_, b.order_);
    Jet out(a.nvars_, order);
    const auto& table = MonomialLayout::get(a.nvars_).mul_table(order);
    const std::size_t n = out.c_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double ai = a.c_[i];
        if (ai == 0.0)
            continue;
        for (std::uint32_t e = table.row_begin[i]; e < table.row_begin[i + 1]; ++e) {
            const auto& ent = table.entries[e];
            out.c_[ent.k] += ai * b.c_[ent.j];
        }
    }
    return out;
}

Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
Jet operator/(double s, const Jet& b) { return reciprocal(b) * s; }

// ---------------------------------------------------------------------------

Jet linear_series(int nvars, int order, std::span<const double> l, std::span<const double> g) {
    const auto& L = MonomialLayout::get(nvars);
    Jet out(nvars, order);
    std::vector<double> fact(static_cast<std::size_t>(order) + 1, 1.0);
    for (int k = 1; k <= order; ++k)
        fact[static_cast<std::size_t>(k)] = fact[static_cast<std::size_t>(k) - 1] * k;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Exponent& e = L.exponent(i);
        const int d = L.degree(i);
        if (static_cast<std::size_t>(d) >= g.size())
            continue;
        double m = g[static_cast<std::size_t>(d)] * fact[static_cast<std::size_t>(d)];
        for (int v = 0; v < nvars && m != 0.0; ++v) {
            const int k = e[static_cast<std::size_t>(v)];
            if (k == 0)
                continue;
            m *= std::pow(l[static_cast<std::size_t>(v)], k) / fact[static_cast<std::size_t>(k)];
        }
        out[i] = m;
    }
    return out;
}

Jet compose_series(const Jet& u, std::span<const double> g) {
    const int K = u.order();
    Jet v = u;
    v[0] = 0.0;
    Jet acc = Jet::constant(u.nvars(), K, g[static_cast<std::size_t>(K)]);
    for (int k = K - 1; k >= 0; --k) {
        acc = acc * v;
        acc[0] += g[static_cast<std::size_t>(k)];
    }
    return acc;
}

namespace {
std::vector<double> inv_factorials(int K) {
    std::vector<double> f(static_cast<std::size_t>(K) + 1, 1.0);
    for (int k = 1; k <= K; ++k)
        f[static_cast<std::size_t>(k)] = f[static_cast<std::size_t>(k) - 1] / k;
    return f;
}
} // namespace

Jet exp(const Jet& u) {
    const int K = u.order();
    auto g = inv_factorials(K);
    const double e = std::exp(u.value());
    for (double& x : g)
        x *= e;
    return compose_series(u, g);
}

Jet log(const Jet& u) {
    const double u0 = u.value();
    if (!(u0 > 0.0))
        throw DomainError("jet log: non-positive argument");
    const int K = u.order();
    std::vector<double> g(static_cast<std::size_t>(K) + 1);
    g[0] = std::log(u0);
    double p = 1.0;
    for (int k = 1; k <= K; ++k) {
        p /= u0;
        g[static_cast<std::size_t>(k)] = ((k & 1) ? 1.0 : -1.0) * p / k;
    }
    return compose_series(u, g);
}

Jet pow(const Jet& u, double p) {
    const double u0 = u.value();
    if (!(u0 > 0.0))
        throw DomainError("jet pow: base must be positive");
    const int K = u.order();
    std::vector<double> g(static_cast<std::size_t>(K) + 1);
    g[0] = std::pow(u0, p);
    for (int k = 1; k <= K; ++k)
        g[static_cast<std::size_t>(k)] = g[static_cast<std::size_t>(k) - 1] * (p - (k - 1)) / (k * u0);
    return compose_series(u, g);
}

Jet abs_pow(const Jet& u, double p) {
    if (u.value() == 0.0)
        throw DomainError("jet |u|^p: u = 0");
    return u.value() > 0.0 ? pow(u, p) : pow(-u, p);
}

Jet reciprocal(const Jet& u) {
    const double u0 = u.value();
    if (u0 == 0.0)
        throw DomainError("jet reciprocal: division by zero");
    const int K = u.order();
    std::vector<double> g(static_cast<std::size_t>(K) + 1);
    g[0] = 1.0 / u0;
    for (int k = 1; k <= K; ++k)
        g[static_cast<std::size_t>(k)] = -g[static_cast<std::size_t>(k) - 1] / u0;
    return compose_series(u, g);
}

Jet sinh(const Jet& u) {
    const int K = u.order();
    auto g = inv_factorials(K);
    const double s = std::sinh(u.value()), c = std::cosh(u.value());
    for (int k = 0; k <= K; ++k)
        g[static_cast<std::size_t>(k)] *= (k & 1) ? c : s;
    return compose_series(u, g);
}

Jet cosh(const Jet& u) {
    const int K = u.order();
    auto g = inv_factorials(K);
    const double s = std::sinh(u.value()), c = std::cosh(u.value());
    for (int k = 0; k <= K; ++k)
        g[static_cast<std::size_t>(k)] *= (k & 1) ? s : c;
    return compose_series(u, g);
}

Jet coth(const Jet& u) {
    if (u.value() == 0.0)
        throw DomainError("jet coth: pole at 0");
    return cosh(u) / sinh(u);
}

Jet tanh(const Jet& u) { return sinh(u) / cosh(u); }

Jet sqrt(const Jet& u) { return pow(u, 0.5); }

} // namespace cr
