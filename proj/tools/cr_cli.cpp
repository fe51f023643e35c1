#include "cr/bsverify.hpp"
#include "cr/errors.hpp"
#include "cr/ggdist.hpp"
#include "cr/radon1.hpp"
#include "cr/report.hpp"
#include "cr/rootsys.hpp"
#include "cr/special.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace cr;
using json = nlohmann::ordered_json;

namespace {

struct Output {
    std::string path;
    std::string format = "csv"; // profiles only; reports are always JSON
};

// LF line endings, UTF-8 (all payloads are ASCII)
void emit(const Output& out, const std::string& text) {
    if (out.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out.path, std::ios::binary);
    if (!os)
        throw ParameterError("cannot open output file " + out.path);
    os << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// z_delta on delta0, delta0 + 1/2, ..., 2; poles print as null
json z_table(const DomainParams& dp) {
    const RootData rd = dp.root_data();
    json t = json::array();
    for (int k = 0; dp.delta0 + 0.5 * k <= 2.0; ++k) {
        const double d = dp.delta0 + 0.5 * k;
        double z = std::nan("");
        try {
            z = z_delta(rd, d);
        } catch (const PoleError&) {
        }
        t.push_back(json{{"delta", d}, {"z_delta", nullable(z)}});
    }
    return t;
}

json constants_json(const DomainParams& dp) {
    const DiracConstants c = dirac_constants(dp);
    json j;
    j["a"] = dp.a;
    j["n"] = dp.n;
    j["r"] = dp.r;
    j["rprime"] = dp.r_prime;
    j["iota"] = dp.iota;
    j["two_b"] = dp.two_b;
    j["rho"] = dp.rho;
    j["delta0"] = dp.delta0;
    j["l"] = dp.l;
    j["lambda"] = dp.r == 1 ? json(lambda_j(dp)) : json::array();
    j["c0"] = c.c0;
    j["c1_candidates"] = json{{"c1", nullable(c.c1_gamma)},
                              {"c1_gindikin", nullable(c.c1_gindikin)},
                              {"prefactor_c1", nullable(c.prefactor * c.c1_gamma)},
                              {"prefactor_c1_gindikin", nullable(c.prefactor * c.c1_gindikin)},
                              {"derived", nullable(c.derived)}};
    j["prefactor"] = c.prefactor;
    j["pair_jacobian"] = c.pair_jacobian;
    j["z_delta"] = z_table(dp);
    return j;
}

std::string csv_rows(const std::vector<std::pair<double, double>>& rows, const std::string& header) {
    std::ostringstream os;
    os << header << "\n";
    for (const auto& [x, y] : rows)
        os << format_double(x) << "," << format_double(y) << "\n";
    return os.str();
}

std::string profile_json(const std::vector<std::pair<double, double>>& rows, const std::string& xs,
                         const std::string& ys) {
    json a = json::array();
    for (const auto& [x, y] : rows)
        a.push_back(json{{xs, x}, {ys, y}});
    return dump(a);
}

// degree-8 radial bump on the unit ball, symmetric in every coordinate
double ball_bump(std::span<const double> x) {
    double s = 0.0;
    for (double v : x)
        s += v * v;
    return s < 1.0 ? std::pow(1.0 - s, 8) : 0.0;
}

struct Multiplicities {
    int rank = 1;
    double a = 1.0;
    double b2 = 1.0;
    double iota = 0.0;
    RootData root_data() const { return RootData(rank, a, b2, iota); }
};

void add_multiplicities(CLI::App* c, Multiplicities& m) {
    c->add_option("--rank", m.rank, "rank r")->capture_default_str();
    c->add_option("--a", m.a, "multiplicity of +-t_i+-t_j")->capture_default_str();
    c->add_option("--b2", m.b2, "multiplicity 2b of t_k")->capture_default_str();
    c->add_option("--iota", m.iota, "multiplicity of 2t_k")->capture_default_str();
}

struct DomainFlags {
    int a = 2, n = 5, r = 1, rprime = 2;
    DomainParams params() const { return domain_params(a, n, r, rprime); }
};

void add_domain(CLI::App* c, DomainFlags& d, bool with_rank = true) {
    c->add_option("--a", d.a, "a in {1,2,4,8}")->capture_default_str();
    c->add_option("--n", d.n, "n")->capture_default_str();
    if (with_rank)
        c->add_option("--r", d.r, "rank r")->capture_default_str();
    c->add_option("--rprime", d.rprime, "r'")->capture_default_str();
}

void add_output(CLI::App* c, Output& o, bool profile) {
    c->add_option("--out", o.path, "output file (default stdout)");
    if (profile)
        c->add_option("--format", o.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cherednik operators, Bernstein-Sato identities and Radon inversion on bounded symmetric domains"};
    app.require_subcommand(1);

    Output out;
    std::optional<VerificationReport> report;
    std::string text;

    // constants
    DomainFlags cdom;
    auto* constants = app.add_subcommand("constants", "domain parameters, Dirac constants, z_delta table");
    add_domain(constants, cdom);
    add_output(constants, out, false);
    constants->callback([&] { text = dump(constants_json(cdom.params())); });

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification, emit a JSON report");
    verify->require_subcommand(1);

    Multiplicities mult;
    double delta = 2.0;
    int samples = 100, ladder_j = 0, steps = 2;
    std::uint64_t seed = 1;
    std::optional<double> tol;

    const auto pointwise = [&](double default_tol) {
        PointwiseOptions o;
        o.samples = samples;
        o.seed = seed;
        o.tol = tol.value_or(default_tol);
        return o;
    };
    const auto quad = [&] {
        QuadOptions o;
        o.seed = seed;
        if (tol)
            o.tol = *tol;
        return o;
    };
    const auto add_pointwise = [&](CLI::App* c, bool with_mult) {
        if (with_mult)
            add_multiplicities(c, mult);
        c->add_option("--delta", delta, "delta")->capture_default_str();
        c->add_option("--samples", samples, "sample points")->capture_default_str()->check(CLI::PositiveNumber);
        c->add_option("--seed", seed, "mt19937_64 seed")->capture_default_str();
        c->add_option("--tol", tol, "tolerance override");
        add_output(c, out, false);
    };

    auto* bs_sinh = verify->add_subcommand("bs-sinh", "M_delta |SH|^delta = m_delta |SH|^{delta-2}");
    add_pointwise(bs_sinh, true);
    bs_sinh->callback([&] { report = verify_bs_sinh(mult.root_data(), delta, pointwise(1e-8)); });

    auto* bs_cosh = verify->add_subcommand("bs-cosh", "M_delta CH^delta = m^cosh_delta CH^{delta-2}");
    add_pointwise(bs_cosh, true);
    bs_cosh->callback([&] { report = verify_bs_cosh(mult.root_data(), delta, pointwise(1e-8)); });

    auto* bs_flat = verify->add_subcommand("bs-flat", "rank-one flat identities");
    add_pointwise(bs_flat, false);
    bs_flat->callback([&] { report = verify_bs_flat(delta, pointwise(1e-12)); });

    auto* ladder = verify->add_subcommand("ladder", "partial-product formulas of the ladder lemma");
    add_pointwise(ladder, true);
    ladder->add_option("--j", ladder_j, "factor index (0 = all)")->capture_default_str();
    ladder->callback([&] { report = verify_ladder(mult.root_data(), delta, ladder_j, pointwise(1e-8)); });

    auto* commute = verify->add_subcommand("commute", "[D_i, D_j] = 0");
    add_pointwise(commute, true);
    commute->callback([&] { report = verify_commute(mult.root_data(), pointwise(1e-9)); });

    auto* adjoint = verify->add_subcommand("adjoint", "symmetry of M_delta under dmu");
    add_pointwise(adjoint, true);
    adjoint->callback([&] { report = verify_adjoint(mult.root_data(), delta, quad()); });

    auto* zeta_cmd = verify->add_subcommand("zeta", "zeta_delta recursion and continuation");
    add_pointwise(zeta_cmd, true);
    zeta_cmd->add_option("--steps", steps, "factors in the continuation")->capture_default_str();
    zeta_cmd->callback([&] {
        const RootData rd = mult.root_data();
        report = verify_zeta(rd, delta, steps, poly_bump(rd.rank, 1.2, 12, 1.0, 0.3, 0.2), quad());
    });

    DomainFlags vdom;
    auto* dirac = verify->add_subcommand("dirac", "Dirac limit constant at the origin");
    add_domain(dirac, vdom);
    add_output(dirac, out, false);
    dirac->add_option("--tol", tol, "consistency tolerance override");
    dirac->callback([&] {
        DiracOptions o;
        o.tol = tol.value_or(0.0);
        report = verify_dirac(vdom.params(), {}, o);
    });

    std::vector<double> lambdas{0.5, 1.0, 2.0, 5.0};
    DomainFlags sdom;
    auto* spectral = verify->add_subcommand("inversion-spectral", "rank-one inversion symbol");
    add_domain(spectral, sdom, false);
    spectral->add_option("--lambdas", lambdas, "spectral points")->delimiter(',')->capture_default_str();
    add_output(spectral, out, false);
    spectral->callback([&] { report = verify_inversion_spectral(sdom.params(), lambdas); });

    int points = 600;
    double radius = 1.2;
    auto* geometric = verify->add_subcommand("inversion-geometric", "H^3 planes: M R^t R f = c f");
    geometric->add_option("--points", points, "radial grid points")->capture_default_str()->check(
        CLI::Range(50, 100000));
    geometric->add_option("--radius", radius, "bump support radius")->capture_default_str()->check(
        CLI::PositiveNumber);
    geometric->add_option("--tol", tol, "max relative deviation");
    add_output(geometric, out, false);
    geometric->callback(
        [&] { report = verify_inversion_geometric(radial_bump(radius), points, tol.value_or(1e-2)); });

    // gg
    Multiplicities gmult;
    double lambda = 1.0;
    bool dirac_limit = false;
    auto* gg = app.add_subcommand("gg", "Garding-Gindikin integral of the unit-ball bump (1-|x|^2)^8");
    gg->add_option("--a", gmult.a, "a")->capture_default_str();
    gg->add_option("--rank", gmult.rank, "rank")->capture_default_str();
    gg->add_option("--lambda", lambda, "lambda")->capture_default_str();
    gg->add_flag("--dirac", dirac_limit, "rank one: extrapolate lambda -> 0 and compare with f(0)");
    gg->add_option("--tol", tol, "Dirac-limit tolerance");
    add_output(gg, out, false);
    gg->callback([&] {
        const Stopwatch sw;
        VerificationReport r;
        r.check = dirac_limit ? "gg_dirac_limit" : "gg_integral";
        r.params = json{{"a", gmult.a}, {"rank", gmult.rank}, {"test_function", "(1-|x|^2)^8"}};
        if (dirac_limit) {
            if (gmult.rank != 1)
                throw ParameterError("gg --dirac: rank == 1 required");
            const auto d = gg_dirac_limit_rank1(ball_bump, 1.0, {0.025, 0.05, 0.1, 0.15, 0.2});
            r.params["lambdas"] = d.lambdas;
            r.samples = static_cast<long>(d.lambdas.size());
            r.max_abs_err = std::abs(d.value - 1.0);
            r.max_rel_err = r.max_abs_err;
            r.measured_constants = {{"limit", d.value}, {"extrapolation_error", d.error}, {"f0", 1.0}};
            r.pass = r.max_rel_err < tol.value_or(1e-3);
        } else {
            r.params["lambda"] = lambda;
            const auto q = gg_integral(GGSpec{gmult.a, gmult.rank, lambda, ball_bump, 1.0});
            r.samples = q.evaluations;
            r.max_abs_err = q.error;
            r.max_rel_err = q.value != 0.0 ? q.error / std::abs(q.value) : 0.0;
            r.measured_constants = {{"value", q.value}, {"nodes", q.nodes}};
            r.pass = true;
        }
        r.runtime_ms = sw.ms();
        report = r;
    });

    // spherical
    int sa = 2, sn = 5, rows = 201;
    double slambda = 1.0, tmax = 5.0;
    auto* sph = app.add_subcommand("spherical", "rank-one spherical function profile (t, phi)");
    sph->add_option("--a", sa, "a")->capture_default_str();
    sph->add_option("--n", sn, "n")->capture_default_str();
    sph->add_option("--lambda", slambda, "spectral parameter")->capture_default_str();
    sph->add_option("--tmax", tmax, "last t")->capture_default_str()->check(CLI::PositiveNumber);
    sph->add_option("--rows", rows, "rows")->capture_default_str()->check(CLI::Range(2, 10000000));
    add_output(sph, out, true);
    sph->callback([&] {
        const SphericalFunction phi(rank_one_root_data(sa, sn), slambda, tmax);
        std::vector<std::pair<double, double>> p;
        for (int i = 0; i < rows; ++i) {
            const double t = i == rows - 1 ? tmax : tmax * i / (rows - 1);
            p.emplace_back(t, phi(t));
        }
        text = out.format == "csv" ? csv_rows(p, "t,phi") : profile_json(p, "t", "phi");
    });

    // radon-sample
    std::vector<double> hs;
    double rradius = 1.2;
    bool normalized = false;
    auto* radon = app.add_subcommand("radon-sample", "H^3 plane transform of the radial bump, profile (h, Rf)");
    radon->set_help_flag("--help", "Print this help message and exit");
    radon->add_option("--h", hs, "plane distances (default: 0 to support, step 0.02)")->delimiter(',');
    radon->add_option("--radius", rradius, "bump support radius")->capture_default_str()->check(
        CLI::PositiveNumber);
    radon->add_flag("--normalized", normalized, "integration-formula plane measure (2/pi area)");
    add_output(radon, out, true);
    radon->callback([&] {
        const RadialProfile f = radial_bump(rradius);
        if (hs.empty())
            for (int i = 0; i * 0.02 <= rradius + 1e-12; ++i)
                hs.push_back(i * 0.02);
        std::vector<std::pair<double, double>> p;
        for (double h : hs)
            p.emplace_back(h, radon_plane(f, h, normalized ? PlaneMeasure::normalized : PlaneMeasure::riemannian));
        text = out.format == "csv" ? csv_rows(p, "h,Rf") : profile_json(p, "h", "Rf");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ParameterError& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const PoleError& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    }

    try {
        if (report) {
            const json j = to_json(*report);
            validate_report(j);
            emit(out, dump(j));
            return report->pass ? 0 : 1;
        }
        emit(out, text);
    } catch (const ParameterError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 0;
}
