#include "cr/jet_functions.hpp"

#include "cr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace cr {

JetFunction::JetFunction(int rank, std::string name, Expr expr, Domain domain, std::string domain_description)
    : rank_(rank), name_(std::move(name)), expr_(std::make_shared<const Expr>(std::move(expr))),
      domain_(std::move(domain)), domain_desc_(std::move(domain_description)) {
    if (rank < 1 || rank > kJetMaxVars)
        throw ParameterError("JetFunction rank must be in [1, " + std::to_string(kJetMaxVars) + "]");
}

bool JetFunction::in_domain(std::span<const double> t) const { return !domain_ || domain_(t); }

Jet JetFunction::jet(std::span<const double> t, int order) const {
    if (static_cast<int>(t.size()) != rank_)
        throw ParameterError(name_ + ": point has wrong dimension");
    if (order < 0 || order > kJetOrderCap)
        throw ParameterError(name_ + ": jet order " + std::to_string(order) + " exceeds the table cap");
    if (!in_domain(t)) {
        std::ostringstream os;
        os << name_ << ": point (";
        for (std::size_t i = 0; i < t.size(); ++i)
            os << (i ? ", " : "") << t[i];
        os << ") outside smoothness domain " << domain_desc_;
        throw DomainError(os.str());
    }
    Jet xs[kJetMaxVars];
    for (int i = 0; i < rank_; ++i)
        xs[i] = Jet::variable(rank_, order, i, t[static_cast<std::size_t>(i)]);
    return (*expr_)(std::span<const Jet>(xs, static_cast<std::size_t>(rank_)));
}

double JetFunction::value(std::span<const double> t) const { return jet(t, 0).value(); }

double eval_jet(const JetFunction& f, std::span<const double> t, std::span<const int> alpha, int max_order) {
    if (static_cast<int>(alpha.size()) != f.rank())
        throw ParameterError("multi-index has wrong length");
    const int order = std::accumulate(alpha.begin(), alpha.end(), 0);
    if (order > max_order || max_order > kJetOrderCap)
        throw ParameterError("derivative order " + std::to_string(order) + " exceeds configured maximum " +
                             std::to_string(max_order));
    return f.jet(t, order).partial(alpha);
}

namespace {

bool off_walls(std::span<const double> t) {
    for (double x : t)
        if (x == 0.0)
            return false;
    return true;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// Elementary symmetric polynomials e1, e2 of the squared coordinates.
std::pair<Jet, Jet> e1_e2_squares(std::span<const Jet> x) {
    const Jet& x0 = x[0];
    Jet e1 = Jet::constant(x0.nvars(), x0.order(), 0.0);
    Jet e2 = e1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        Jet sq = x[i] * x[i];
        e2 += e1 * sq;
        e1 += sq;
    }
    return {e1, e2};
}

Jet bump_profile(const Jet& s, double radius) {
    const double R2 = radius * radius;
    if (s.value() >= R2)
        return Jet::constant(s.nvars(), s.order(), 0.0);
    const Jet u = s * (1.0 / R2);
    return exp(-reciprocal(1.0 - u)) * std::numbers::e;
}

} // namespace

JetFunction constant_function(int rank, double c) {
    return JetFunction(rank, "const(" + fmt(c) + ")",
                       [c](std::span<const Jet> x) { return Jet::constant(x[0].nvars(), x[0].order(), c); })
        .mark_w_invariant();
}

JetFunction sh_power(int rank, double delta) {
    return JetFunction(
        rank, "|SH|^" + fmt(delta),
        [delta](std::span<const Jet> x) {
            Jet acc = abs_pow(sinh(x[0]), delta);
            for (std::size_t i = 1; i < x.size(); ++i)
                acc = acc * abs_pow(sinh(x[i]), delta);
            return acc;
        },
        off_walls, "{t : t_j != 0 for all j}")
        .mark_w_invariant();
}

JetFunction ch_power(int rank, double delta) {
    return JetFunction(rank, "CH^" + fmt(delta), [delta](std::span<const Jet> x) {
        Jet acc = pow(cosh(x[0]), delta);
        for (std::size_t i = 1; i < x.size(); ++i)
            acc = acc * pow(cosh(x[i]), delta);
        return acc;
    }).mark_w_invariant();
}

JetFunction sh_product(int rank) {
    return JetFunction(rank, "SH", [](std::span<const Jet> x) {
        Jet acc = sinh(x[0]);
        for (std::size_t i = 1; i < x.size(); ++i)
            acc = acc * sinh(x[i]);
        return acc;
    });
}

JetFunction bump(int rank, double radius) { return bump_family(rank, radius, 1.0, 0.0, 0.0); }

JetFunction bump_family(int rank, double radius, double c0, double c1, double c2) {
    if (!(radius > 0.0))
        throw ParameterError("bump radius must be positive");
    std::string name = "bump(R=" + fmt(radius);
    if (c0 != 1.0 || c1 != 0.0 || c2 != 0.0)
        name += ", c=" + fmt(c0) + "," + fmt(c1) + "," + fmt(c2);
    name += ")";
    return JetFunction(rank, name, [radius, c0, c1, c2](std::span<const Jet> x) {
        auto [e1, e2] = e1_e2_squares(x);
        Jet g = bump_profile(e1, radius);
        if (c0 == 1.0 && c1 == 0.0 && c2 == 0.0)
            return g;
        const double R2 = radius * radius;
        Jet p = e1 * (c1 / R2) + e2 * (c2 / (R2 * R2)) + c0;
        return g * p;
    })
        .mark_w_invariant()
        .set_support_radius(radius);
}

JetFunction poly_bump(int rank, double radius, int K, double c0, double c1, double c2) {
    if (!(radius > 0.0))
        throw ParameterError("bump radius must be positive");
    if (K < 1)
        throw ParameterError("poly_bump exponent must be positive");
    std::string name = "poly_bump(R=" + fmt(radius) + ", K=" + std::to_string(K);
    if (c0 != 1.0 || c1 != 0.0 || c2 != 0.0)
        name += ", c=" + fmt(c0) + "," + fmt(c1) + "," + fmt(c2);
    name += ")";
    return JetFunction(rank, name, [radius, K, c0, c1, c2](std::span<const Jet> x) {
        auto [e1, e2] = e1_e2_squares(x);
        const double R2 = radius * radius;
        if (e1.value() >= R2)
            return Jet::constant(e1.nvars(), e1.order(), 0.0);
        const Jet u = 1.0 - e1 * (1.0 / R2);
        Jet g = u;
        for (int k = 1; k < K; ++k)
            g = g * u;
        if (c0 == 1.0 && c1 == 0.0 && c2 == 0.0)
            return g;
        return g * (e1 * (c1 / R2) + e2 * (c2 / (R2 * R2)) + c0);
    })
        .mark_w_invariant()
        .set_support_radius(radius);
}

JetFunction tilted(const JetFunction& f, int j, double c) {
    if (j < 0 || j >= f.rank())
        throw ParameterError("tilted: coordinate index out of range");
    const int r = f.rank();
    return JetFunction(
        r, f.name() + "*(1+" + fmt(c) + " t" + std::to_string(j + 1) + ")",
        [f, j, c, r](std::span<const Jet> x) {
            std::vector<double> t(static_cast<std::size_t>(r));
            for (int i = 0; i < r; ++i)
                t[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)].value();
            return f.jet(t, x[0].order()) * (x[static_cast<std::size_t>(j)] * c + 1.0);
        },
        [f](std::span<const double> t) { return f.in_domain(t); }, f.domain_description())
        .set_support_radius(f.support_radius());
}

namespace {
std::vector<double> values_of(std::span<const Jet> x) {
    std::vector<double> t(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        t[i] = x[i].value();
    return t;
}
} // namespace

JetFunction scaled(const JetFunction& f, double c) {
    return JetFunction(
        f.rank(), fmt(c) + "*" + f.name(),
        [f, c](std::span<const Jet> x) { return f.jet(values_of(x), x[0].order()) * c; },
        [f](std::span<const double> t) { return f.in_domain(t); }, f.domain_description())
        .mark_w_invariant(f.w_invariant())
        .set_support_radius(f.support_radius());
}

JetFunction sum(const JetFunction& f, const JetFunction& g) {
    if (f.rank() != g.rank())
        throw ParameterError("sum: rank mismatch");
    return JetFunction(
        f.rank(), f.name() + "+" + g.name(),
        [f, g](std::span<const Jet> x) {
            auto t = values_of(x);
            return f.jet(t, x[0].order()) + g.jet(t, x[0].order());
        },
        [f, g](std::span<const double> t) { return f.in_domain(t) && g.in_domain(t); },
        f.domain_description())
        .mark_w_invariant(f.w_invariant() && g.w_invariant())
        .set_support_radius(std::max(f.support_radius(), g.support_radius()));
}

JetFunction product(const JetFunction& f, const JetFunction& g) {
    if (f.rank() != g.rank())
        throw ParameterError("product: rank mismatch");
    return JetFunction(
        f.rank(), f.name() + "*" + g.name(),
        [f, g](std::span<const Jet> x) {
            auto t = values_of(x);
            return f.jet(t, x[0].order()) * g.jet(t, x[0].order());
        },
        [f, g](std::span<const double> t) { return f.in_domain(t) && g.in_domain(t); },
        f.domain_description())
        .mark_w_invariant(f.w_invariant() && g.w_invariant())
        .set_support_radius(std::min(f.support_radius(), g.support_radius()));
}

} // namespace cr
