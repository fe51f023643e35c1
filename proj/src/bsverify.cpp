#include "cr/bsverify.hpp"

#include "cr/errors.hpp"
#include "cr/parallel.hpp"
#include "cr/special.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace cr {

namespace {

using json = nlohmann::ordered_json;

VerificationReport start_report(const std::string& check, const RootData& rd) {
    VerificationReport r;
    r.check = check;
    r.params["rank"] = rd.rank;
    r.params["a"] = rd.a;
    r.params["two_b"] = rd.two_b;
    r.params["iota"] = rd.iota;
    return r;
}

double rel_diff(double x, double y) {
    const double s = std::max(std::abs(x), std::abs(y));
    return s == 0.0 ? 0.0 : std::abs(x - y) / s;
}

struct Residuals {
    std::vector<double> abs;
    std::vector<double> rel;

    explicit Residuals(std::size_t n) : abs(n, 0.0), rel(n, 0.0) {}

    void finish(VerificationReport& r, double tol) const {
        r.samples = static_cast<long>(abs.size());
        r.max_abs_err = 0.0;
        r.max_rel_err = 0.0;
        for (std::size_t i = 0; i < abs.size(); ++i) {
            // NaN propagates into the report and fails the check
            if (!(abs[i] <= r.max_abs_err))
                r.max_abs_err = abs[i];
            if (!(rel[i] <= r.max_rel_err))
                r.max_rel_err = rel[i];
        }
        r.pass = r.max_rel_err < tol;
        r.params["tolerance"] = tol;
    }
};

double prod_pow(std::span<const double> t, double (*fn)(double), double p) {
    double acc = 1.0;
    for (double x : t)
        acc *= std::pow(std::abs(fn(x)), p);
    return acc;
}

double sh(double x) { return std::sinh(x); }
double ch(double x) { return std::cosh(x); }

// |SH|^delta prod (1 + coth t_i)
JetFunction ladder_input(int r, double delta) {
    return JetFunction(r, "|SH|^d P", [delta](std::span<const Jet> x) {
        Jet acc = abs_pow(sinh(x[0]), delta) * (coth(x[0]) + 1.0);
        for (std::size_t i = 1; i < x.size(); ++i)
            acc = acc * abs_pow(sinh(x[i]), delta) * (coth(x[i]) + 1.0);
        return acc;
    });
}

Program chain_program(std::vector<Factor> chain) {
    Program p;
    p.terms.push_back({1.0, std::move(chain)});
    return p;
}

} // namespace

std::vector<std::vector<double>> chamber_samples(int r, int n, std::uint64_t seed, double gap, double hi) {
    if (!(hi > gap * (r + 1)))
        throw ParameterError("chamber_samples: interval too short for the requested gaps");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(gap, hi);
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(n));
    std::vector<double> t(static_cast<std::size_t>(r));
    while (static_cast<int>(out.size()) < n) {
        for (auto& x : t)
            x = U(rng);
        std::sort(t.rbegin(), t.rend());
        bool ok = true;
        for (std::size_t i = 0; i + 1 < t.size(); ++i)
            ok = ok && t[i] - t[i + 1] > gap;
        if (ok)
            out.push_back(t);
    }
    return out;
}

std::vector<std::vector<double>> generic_samples(int r, int n, std::uint64_t seed, double gap, double hi) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-hi, hi);
    std::vector<std::vector<double>> out;
    std::vector<double> t(static_cast<std::size_t>(r));
    while (static_cast<int>(out.size()) < n) {
        for (auto& x : t)
            x = U(rng);
        bool ok = true;
        for (std::size_t i = 0; i < t.size(); ++i) {
            ok = ok && std::abs(t[i]) > gap;
            for (std::size_t k = i + 1; k < t.size(); ++k)
                ok = ok && std::abs(std::abs(t[i]) - std::abs(t[k])) > gap;
        }
        if (ok)
            out.push_back(t);
    }
    return out;
}

VerificationReport verify_bs_sinh(const RootData& rd, double delta, const PointwiseOptions& o) {
    Stopwatch sw;
    VerificationReport rep = start_report("bs-sinh", rd);
    rep.params["delta"] = delta;
    rep.params["scale"] = o.scale;
    rep.seed = o.seed;
    const auto pts = chamber_samples(rd.rank, o.samples, o.seed);
    const OperatorNF M = m_delta_op(rd, delta);
    const JetFunction f = scaled(sh_power(rd.rank, delta), o.scale).mark_w_invariant();
    const double m = m_delta(rd, delta);
    Residuals res(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        const auto& t = pts[i];
        const double lhs = M.apply(f, t);
        const double low = prod_pow(t, sh, delta - 2.0);
        const double rhs = o.scale * m * low;
        res.abs[i] = std::abs(lhs - rhs);
        res.rel[i] = res.abs[i] / (std::abs(o.scale) * (std::abs(m) * low + prod_pow(t, sh, delta)));
    });
    res.finish(rep, o.tol);
    rep.measured_constants["m_delta"] = m;
    rep.runtime_ms = sw.ms();
    return rep;
}

VerificationReport verify_bs_cosh(const RootData& rd, double delta, const PointwiseOptions& o) {
    Stopwatch sw;
    VerificationReport rep = start_report("bs-cosh", rd);
    rep.params["delta"] = delta;
    rep.params["scale"] = o.scale;
    rep.seed = o.seed;
    const auto pts = chamber_samples(rd.rank, o.samples, o.seed);
    const OperatorNF M = m_delta_op(rd, delta);
    const JetFunction f = scaled(ch_power(rd.rank, delta), o.scale).mark_w_invariant();
    const double m = m_delta_cosh(rd, delta);
    Residuals res(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        const auto& t = pts[i];
        const double lhs = M.apply(f, t);
        const double low = prod_pow(t, ch, delta - 2.0);
        const double rhs = o.scale * m * low;
        res.abs[i] = std::abs(lhs - rhs);
        res.rel[i] = res.abs[i] / (std::abs(o.scale) * (std::abs(m) * low + prod_pow(t, ch, delta)));
    });
    res.finish(rep, o.tol);
    rep.measured_constants["m_delta_cosh"] = m;
    rep.runtime_ms = sw.ms();
    return rep;
}

VerificationReport verify_bs_flat(double delta, const PointwiseOptions& o) {
    Stopwatch sw;
    VerificationReport rep;
    rep.check = "bs-flat";
    rep.params["delta"] = delta;
    rep.params["scale"] = o.scale;
    rep.seed = o.seed;
    const auto pts = chamber_samples(1, o.samples, o.seed, 0.05, 3.0);
    Residuals res(2 * pts.size());
    const int second[] = {2};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double t = pts[i][0];
        const Jet x = Jet::variable(1, 2, 0, t);
        const Jet fs = abs_pow(sinh(x), delta) * o.scale;
        const Jet fc = pow(cosh(x), delta) * o.scale;
        const double ls = fs.partial(second) - delta * delta * fs.value();
        const double lc = fc.partial(second) - delta * delta * fc.value();
        const double s = std::abs(std::sinh(t));
        const double c = std::cosh(t);
        const double rs = o.scale * delta * (delta - 1.0) * std::pow(s, delta - 2.0);
        const double rc = -o.scale * delta * (delta - 1.0) * std::pow(c, delta - 2.0);
        res.abs[2 * i] = std::abs(ls - rs);
        res.rel[2 * i] = res.abs[2 * i] / (std::abs(rs) + std::abs(o.scale) * std::pow(s, delta));
        res.abs[2 * i + 1] = std::abs(lc - rc);
        res.rel[2 * i + 1] = res.abs[2 * i + 1] / (std::abs(rc) + std::abs(o.scale) * std::pow(c, delta));
    }
    res.finish(rep, o.tol);
    rep.measured_constants["delta_times_delta_minus_1"] = delta * (delta - 1.0);
    rep.runtime_ms = sw.ms();
    return rep;
}

VerificationReport verify_ladder(const RootData& rd, double delta, int j, const PointwiseOptions& o) {
    const int r = rd.rank;
    if (j < 0 || j > r)
        throw ParameterError("ladder index j must satisfy 1 <= j <= r (or 0 for all)");
    Stopwatch sw;
    VerificationReport rep = start_report("ladder", rd);
    rep.params["delta"] = delta;
    rep.params["j"] = j;
    rep.params["scale"] = o.scale;
    rep.seed = o.seed;
    const double c = delta + rd.rho_at(0);
    const auto pts = chamber_samples(r, o.samples, o.seed);
    const JetFunction f1 = scaled(sh_power(r, delta), o.scale).mark_w_invariant();
    const JetFunction f2 = scaled(ladder_input(r, delta), o.scale);
    std::vector<int> js;
    for (int k = 1; k <= r; ++k)
        if (j == 0 || j == k)
            js.push_back(k);

    struct Step {
        OperatorNF first, second;
        double c1, c2;
        int j;
    };
    std::vector<Step> steps;
    for (int jj : js) {
        std::vector<Factor> up, down;
        double c1 = 1.0, c2 = 1.0;
        for (int k = 1; k <= jj; ++k) {
            up.push_back({k - 1, c});
            c1 *= delta + rd.a * (k - 1);
        }
        for (int k = jj; k <= r; ++k) {
            down.push_back({k - 1, -c});
            c2 *= delta - 1.0 + (r - k) * rd.a + rd.iota + rd.two_b;
        }
        steps.push_back({OperatorNF::from_program(rd, chain_program(up)),
                         OperatorNF::from_program(rd, chain_program(down)), c1, c2, jj});
        rep.measured_constants["first_factor_j" + std::to_string(jj)] = c1;
        rep.measured_constants["second_factor_j" + std::to_string(jj)] = c2;
    }
    const std::size_t per = 2 * steps.size();
    Residuals res(pts.size() * per);
    parallel_for(pts.size(), [&](std::size_t i) {
        const auto& t = pts[i];
        const double shd = prod_pow(t, sh, delta);
        double P = 1.0;
        for (double x : t)
            P *= 1.0 + 1.0 / std::tanh(x);
        for (std::size_t s = 0; s < steps.size(); ++s) {
            const Step& st = steps[s];
            double pre1 = shd, pre2 = shd * P;
            for (int k = 1; k <= st.j; ++k)
                pre1 *= 1.0 + 1.0 / std::tanh(t[static_cast<std::size_t>(k - 1)]);
            for (int k = st.j; k <= r; ++k)
                pre2 *= 1.0 / std::tanh(t[static_cast<std::size_t>(k - 1)]) - 1.0;
            const double l1 = st.first.apply(f1, t);
            const double r1 = o.scale * st.c1 * pre1;
            const double l2 = st.second.apply(f2, t);
            const double r2 = o.scale * st.c2 * pre2;
            const std::size_t k0 = i * per + 2 * s;
            res.abs[k0] = std::abs(l1 - r1);
            res.rel[k0] = res.abs[k0] / (std::abs(r1) + std::abs(o.scale) * pre1);
            res.abs[k0 + 1] = std::abs(l2 - r2);
            res.rel[k0 + 1] = res.abs[k0 + 1] / (std::abs(r2) + std::abs(o.scale) * pre2);
        }
    });
    res.finish(rep, o.tol);
    rep.runtime_ms = sw.ms();
    return rep;
}

VerificationReport verify_commute(const RootData& rd, const PointwiseOptions& o) {
    Stopwatch sw;
    VerificationReport rep = start_report("commute", rd);
    rep.params["scale"] = o.scale;
    rep.seed = o.seed;
    const int r = rd.rank;
    const auto pts = generic_samples(r, o.samples, o.seed);
    const JetFunction inv = scaled(bump_family(r, 2.0, 1.0, 0.3, -0.4), o.scale).mark_w_invariant();
    const JetFunction tilt = tilted(inv, 0, 0.8);
    std::vector<std::pair<OperatorNF, OperatorNF>> pairs;
    for (int i = 0; i < r; ++i)
        for (int k = i + 1; k < r; ++k)
            pairs.emplace_back(OperatorNF::from_program(rd, chain_program({{i, 0.0}, {k, 0.0}})),
                               OperatorNF::from_program(rd, chain_program({{k, 0.0}, {i, 0.0}})));
    const std::size_t per = 2 * pairs.size();
    std::vector<double> absr(pts.size() * per, 0.0), mag(pts.size() * per, 0.0);
    parallel_for(pts.size(), [&](std::size_t i) {
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            for (int which = 0; which < 2; ++which) {
                const JetFunction& f = which == 0 ? inv : tilt;
                const double x = pairs[p].first.apply(f, pts[i]);
                const double y = pairs[p].second.apply(f, pts[i]);
                absr[i * per + 2 * p + static_cast<std::size_t>(which)] = std::abs(x - y);
                mag[i * per + 2 * p + static_cast<std::size_t>(which)] = std::max(std::abs(x), std::abs(y));
            }
        }
    });
    double scale = 0.0;
    for (double m : mag)
        scale = std::max(scale, m);
    Residuals res(absr.size());
    for (std::size_t i = 0; i < absr.size(); ++i) {
        res.abs[i] = absr[i];
        res.rel[i] = scale > 0.0 ? absr[i] / scale : absr[i];
    }
    res.finish(rep, o.tol);
    rep.measured_constants["operator_scale"] = scale;
    rep.params["pairs"] = static_cast<int>(pairs.size());
    rep.runtime_ms = sw.ms();
    return rep;
}

std::pair<double, double> adjoint_pairing(const RootData& rd, const OperatorNF& op, const JetFunction& f,
                                          const JetFunction& g, const QuadratureSpec& spec, bool w_invariant) {
    const WallPolicy pol = WallPolicy::quadrature();
    // op preserves supports in W-invariant balls, so both integrands live in the smaller ball
    const QuadratureSpec s = fit_radius(spec, {f.support_radius(), g.support_radius()});
    const auto lhs = integrate_mu(
        rd, [&](std::span<const double> t) { return op.apply(f, t, pol) * g.value(t); }, 0.0, s, w_invariant);
    const auto rhs = integrate_mu(
        rd, [&](std::span<const double> t) { return f.value(t) * op.apply(g, t, pol); }, 0.0, s, w_invariant);
    return {lhs.value, rhs.value};
}

VerificationReport verify_adjoint(const RootData& rd, double delta, const QuadOptions& o) {
    Stopwatch sw;
    VerificationReport rep = start_report("adjoint", rd);
    rep.params["delta"] = delta;
    rep.params["nodes"] = o.spec.nodes;
    rep.params["radius"] = o.spec.radius;
    rep.seed = o.seed;
    const int r = rd.rank;
    const double R = o.spec.radius;
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> C(-0.8, 0.8);
    const OperatorNF M = m_delta_op(rd, delta);
    // polynomial bumps: exp(-1/x) bumps make high derivatives near the edge far too large
    const int K = 2 * r + 6;
    rep.params["bump_exponent"] = K;
    Residuals res(3);
    for (int p = 0; p < 3; ++p) {
        const JetFunction f = poly_bump(r, R, K, 1.0, C(rng), C(rng));
        const JetFunction g = poly_bump(r, R * (0.6 + 0.1 * p), K, C(rng), 1.0, C(rng));
        const auto [x, y] = adjoint_pairing(rd, M, f, g, o.spec, true);
        res.abs[static_cast<std::size_t>(p)] = std::abs(x - y);
        res.rel[static_cast<std::size_t>(p)] = rel_diff(x, y);
        rep.measured_constants["pair" + std::to_string(p) + "_lhs"] = x;
        rep.measured_constants["pair" + std::to_string(p) + "_rhs"] = y;
    }
    res.finish(rep, o.tol);
    // D_1 alone on a non-invariant pair
    const JetFunction f = tilted(poly_bump(r, R, K, 1.0, 0.4, 0.0), 0, 0.9);
    const JetFunction g = tilted(poly_bump(r, 0.8 * R, K), 0, -0.5);
    const auto [x, y] = adjoint_pairing(rd, OperatorNF::cherednik(rd, 0), f, g, o.spec, false);
    const double asym = rel_diff(x, y);
    rep.measured_constants["d1_lhs"] = x;
    rep.measured_constants["d1_rhs"] = y;
    rep.measured_constants["d1_rel_asymmetry"] = asym;
    rep.params["d1_min_asymmetry"] = 1e-3;
    rep.pass = rep.pass && asym > 1e-3;
    rep.samples = 4;
    rep.runtime_ms = sw.ms();
    return rep;
}

double zeta(const RootData& rd, double delta, const JetFunction& f, const QuadratureSpec& spec) {
    const double z = z_delta(rd, delta);
    return integrate_mu(rd, f, delta, spec).value / z;
}

double zeta_continued(const RootData& rd, double delta, const JetFunction& f, int k, const QuadratureSpec& spec,
                      const std::vector<int>& order) {
    if (k < 1)
        throw ParameterError("zeta_continued needs at least one step");
    std::vector<int> ord = order;
    if (ord.empty()) {
        ord.resize(static_cast<std::size_t>(k));
        std::iota(ord.begin(), ord.end(), 1);
    }
    {
        std::vector<int> sorted = ord;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < k; ++i)
            if (static_cast<int>(sorted.size()) != k || sorted[static_cast<std::size_t>(i)] != i + 1)
                throw ParameterError("zeta_continued: order must be a permutation of 1..k");
    }
    OperatorNF op = m_delta_op(rd, delta + 2.0 * ord[0]);
    for (std::size_t i = 1; i < ord.size(); ++i)
        op = op * m_delta_op(rd, delta + 2.0 * ord[i]);
    const double top = delta + 2.0 * k;
    const WallPolicy pol = WallPolicy::quadrature();
    const auto I = integrate_mu(
        rd, [&](std::span<const double> t) { return op.apply(f, t, pol); }, top,
        fit_radius(spec, {f.support_radius()}), true);
    return std::ldexp(I.value / z_delta(rd, top), -2 * rd.rank * k);
}

VerificationReport verify_zeta(const RootData& rd, double delta, int steps, const JetFunction& f,
                               const QuadOptions& o) {
    if (!f.w_invariant())
        throw ParameterError("zeta requires a W-invariant test function");
    Stopwatch sw;
    VerificationReport rep = start_report("zeta", rd);
    rep.params["delta"] = delta;
    rep.params["steps"] = steps;
    rep.params["test_function"] = f.name();
    rep.params["nodes"] = o.spec.nodes;
    rep.params["radius"] = o.spec.radius;
    rep.params["tolerance"] = o.tol;
    rep.seed = o.seed;
    const double bound = -1.0 - rd.iota - rd.two_b;
    rep.params["convergence_bound"] = bound;
    const bool direct = delta > bound;
    std::vector<double> rels;

    const double cont = zeta_continued(rd, delta, f, steps, o.spec);
    rep.measured_constants["zeta_continued"] = cont;
    if (direct) {
        const double zd = zeta(rd, delta, f, o.spec);
        rep.measured_constants["zeta_direct"] = zd;
        rels.push_back(rel_diff(cont, zd));
        rep.measured_constants["overlap_rel_diff"] = rels.back();
        // M_{delta+2} zeta_{delta+2} = 2^{2r} zeta_delta, weak form
        const double lhs = zeta_continued(rd, delta, f, 1, o.spec) * std::ldexp(1.0, 2 * rd.rank);
        const double rhs = std::ldexp(zd, 2 * rd.rank);
        rep.measured_constants["recursion_lhs"] = lhs;
        rep.measured_constants["recursion_rhs"] = rhs;
        rels.push_back(rel_diff(lhs, rhs));
        rep.measured_constants["recursion_rel_diff"] = rels.back();
    }
    if (steps >= 2) {
        std::vector<int> rev(static_cast<std::size_t>(steps));
        std::iota(rev.rbegin(), rev.rend(), 1);
        const double c2 = zeta_continued(rd, delta, f, steps, o.spec, rev);
        rep.measured_constants["zeta_continued_reversed"] = c2;
        rels.push_back(rel_diff(cont, c2));
        rep.measured_constants["order_rel_diff"] = rels.back();
    }
    rep.params["direct_available"] = direct;
    rep.samples = static_cast<long>(rels.size());
    double mx = 0.0;
    for (double v : rels)
        if (!(v <= mx))
            mx = v;
    rep.max_rel_err = mx;
    rep.max_abs_err = mx * std::abs(cont);
    rep.pass = !rels.empty() && mx < o.tol;
    rep.runtime_ms = sw.ms();
    return rep;
}

} // namespace cr
