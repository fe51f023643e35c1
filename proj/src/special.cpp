#include "cr/special.hpp"

#include "cr/errors.hpp"

#include <cmath>
#include <sstream>

namespace cr {

double gamma_checked(double x) {
    if (x <= 0.0 && std::abs(x - std::round(x)) < 1e-12) {
        std::ostringstream os;
        os << "Gamma pole at " << x;
        throw PoleError(os.str());
    }
    return std::tgamma(x);
}

double gindikin_gamma(double a, int r, double lambda) {
    double p = 1.0;
    for (int j = 1; j <= r; ++j) {
        const double x = lambda - 0.5 * a * (j - 1);
        try {
            p *= gamma_checked(x);
        } catch (const PoleError&) {
            std::ostringstream os;
            os << "Gindikin Gamma pole at factor j = " << j << " (argument " << x << ")";
            throw PoleError(os.str());
        }
    }
    return p;
}

double m_delta(const RootData& rd, double delta) {
    const int r = rd.rank;
    double p = 1.0;
    for (int j = 1; j <= r; ++j)
        p *= (delta + rd.a * (j - 1)) * (delta - 1.0 + rd.iota + rd.two_b + rd.a * (r - j));
    return p;
}

double m_delta_cosh(const RootData& rd, double delta) {
    const int r = rd.rank;
    double p = (r % 2) ? -1.0 : 1.0;
    for (int j = 1; j <= r; ++j)
        p *= (delta + rd.a * (j - 1)) * (delta - 1.0 + rd.iota + rd.a * (r - j));
    return p;
}

double z_delta(const RootData& rd, double delta) {
    const double shift = 0.5 * rd.a * (rd.rank - 1) + 1.0;
    return gindikin_gamma(rd.a, rd.rank, 0.5 * delta + shift) *
           gindikin_gamma(rd.a, rd.rank, 0.5 * (delta - 1.0 + rd.iota + rd.two_b) + shift);
}

double c0(double a, int r) {
    double p = 1.0;
    for (int i = 1; i <= r; ++i)
        for (int j = i + 1; j <= r; ++j)
            p *= gamma_checked(0.5 * a * (j - i + 1)) / gamma_checked(0.5 * a * (j - i));
    return p;
}

double c0_selberg(double a, int r) {
    double p = 1.0;
    for (int j = 1; j <= r; ++j)
        p *= std::tgamma(1.0 + 0.5 * j * a) / std::tgamma(1.0 + 0.5 * a) / j;
    return p;
}

DiracConstants dirac_constants(const DomainParams& dp) {
    const int r = dp.r;
    const double a = dp.a;
    const int l = dp.l;
    const double g = 0.5 * (dp.delta0 + dp.iota + dp.two_b - 1.0) + 0.5 * a * (r - 1) + 1.0;
    double prod = 1.0;
    for (int k = 0; k < l; ++k)
        for (int j = 1; j <= r; ++j)
            prod *= dp.delta0 - 2.0 * k + a * (j - 1);
    double rfact = 1.0;
    for (int j = 2; j <= r; ++j)
        rfact *= j;
    const double p2 = std::ldexp(1.0, static_cast<int>(std::lround(r * (dp.two_b + 2.0 * dp.iota))) + l * r);
    DiracConstants dc{};
    dc.c0 = c0(a, r);
    dc.c1_gamma = p2 * rfact * gamma_checked(g) * prod * dc.c0;
    dc.c1_gindikin = p2 * rfact * gindikin_gamma(a, r, g) * prod * dc.c0;
    dc.prefactor = std::exp2(r * dp.delta0);
    dc.pair_jacobian = std::exp2(a * r * (r - 1));
    dc.derived = dc.pair_jacobian * dc.c1_gindikin;
    return dc;
}

std::vector<double> lambda_j(const DomainParams& dp) {
    if (dp.r != 1)
        throw ParameterError("lambda_j is defined for rank one");
    const double lr = 0.5 * dp.a * (dp.r_prime - 1);
    if (lr < 1.0 || lr != std::round(lr))
        throw ParameterError("l = a(r'-1)/2 is not a positive integer");
    const int l = static_cast<int>(lr);
    std::vector<double> out;
    for (int j = 1; j <= l; ++j)
        out.push_back((dp.a * (dp.n - 1.0) - dp.a * (dp.r_prime - 1.0) + 2.0 * (j - 1)) *
                      (dp.a * (dp.r_prime - 1.0) + dp.a - 2.0 * j));
    return out;
}

namespace {
double density(int r, double a, double two_b, double iota, std::span<const double> t) {
    double p = 1.0;
    for (int j = 0; j < r; ++j) {
        const double tj = t[static_cast<std::size_t>(j)];
        if (iota != 0.0)
            p *= std::pow(std::abs(2.0 * std::sinh(2.0 * tj)), iota);
        if (two_b != 0.0)
            p *= std::pow(std::abs(2.0 * std::sinh(tj)), two_b);
        if (a == 0.0)
            continue;
        for (int k = j + 1; k < r; ++k) {
            const double tk = t[static_cast<std::size_t>(k)];
            p *= std::pow(std::abs(4.0 * std::sinh(tj - tk) * std::sinh(tj + tk)), a);
        }
    }
    return p;
}
} // namespace

double measure_density(const RootData& rd, std::span<const double> t) {
    return density(rd.rank, rd.a, rd.two_b, rd.iota, t);
}

double measure_density_y0(const DomainParams& dp, std::span<const double> t) {
    return density(dp.r, dp.a, dp.a * (dp.r_prime - 2.0 * dp.r), dp.iota, t);
}

} // namespace cr
