#include "cr/rootsys.hpp"

#include "cr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace cr {

RootData::RootData(int rank_, double a_, double two_b_, double iota_)
    : rank(rank_), a(a_), two_b(two_b_), iota(iota_) {
    if (rank < 1)
        throw ParameterError("root data: rank must be >= 1");
    if (a < 0 || two_b < 0 || iota < 0)
        throw ParameterError("root data: multiplicities a, 2b, iota must be >= 0");
}

double RootData::rho_at(int j) const {
    return iota + two_b / 2.0 + a * static_cast<double>(rank - 1 - j);
}

std::vector<double> RootData::rho() const {
    std::vector<double> out(static_cast<std::size_t>(rank));
    for (int j = 0; j < rank; ++j)
        out[static_cast<std::size_t>(j)] = rho_at(j);
    return out;
}

std::vector<double> rho(const RootData& rd) { return rd.rho(); }

double PositiveRoot::operator()(std::span<const double> t) const {
    double s = 0.0;
    for (std::size_t m = 0; m < coeffs.size(); ++m)
        s += coeffs[m] * t[m];
    return s;
}

std::vector<PositiveRoot> positive_roots(const RootData& rd) {
    const int r = rd.rank;
    std::vector<PositiveRoot> out;
    auto make = [&](PositiveRoot::Kind kind, int i, int k, double mult) {
        PositiveRoot p{kind, i, k, std::vector<double>(static_cast<std::size_t>(r), 0.0), mult};
        switch (kind) {
        case PositiveRoot::Kind::Difference:
            p.coeffs[i] = 1.0;
            p.coeffs[k] = -1.0;
            break;
        case PositiveRoot::Kind::Sum:
            p.coeffs[i] = 1.0;
            p.coeffs[k] = 1.0;
            break;
        case PositiveRoot::Kind::Short:
            p.coeffs[i] = 1.0;
            break;
        case PositiveRoot::Kind::Long:
            p.coeffs[i] = 2.0;
            break;
        }
        out.push_back(std::move(p));
    };
    for (int i = 0; i < r; ++i)
        for (int k = i + 1; k < r; ++k) {
            make(PositiveRoot::Kind::Difference, i, k, rd.a);
            make(PositiveRoot::Kind::Sum, i, k, rd.a);
        }
    for (int i = 0; i < r; ++i) {
        make(PositiveRoot::Kind::Short, i, -1, rd.two_b);
        make(PositiveRoot::Kind::Long, i, -1, rd.iota);
    }
    return out;
}

// ---------------------------------------------------------------------------

GroupElement::GroupElement(int rank) : perm_(static_cast<std::size_t>(rank)), signs_(static_cast<std::size_t>(rank), 1) {
    std::iota(perm_.begin(), perm_.end(), 0);
}

GroupElement::GroupElement(std::vector<int> perm, std::vector<int> signs)
    : perm_(std::move(perm)), signs_(std::move(signs)) {
    if (perm_.size() != signs_.size())
        throw ParameterError("group element: perm/sign length mismatch");
    std::vector<int> seen(perm_.size(), 0);
    for (int p : perm_) {
        if (p < 0 || p >= static_cast<int>(perm_.size()) || seen[p]++)
            throw ParameterError("group element: not a permutation");
    }
    for (int s : signs_)
        if (s != 1 && s != -1)
            throw ParameterError("group element: signs must be +-1");
}

GroupElement GroupElement::transposition(int rank, int i, int k) {
    GroupElement g(rank);
    std::swap(g.perm_[i], g.perm_[k]);
    return g;
}

GroupElement GroupElement::signed_swap(int rank, int i, int k) {
    GroupElement g = transposition(rank, i, k);
    g.signs_[i] = -1;
    g.signs_[k] = -1;
    return g;
}

GroupElement GroupElement::sign_flip(int rank, int i) {
    GroupElement g(rank);
    g.signs_[i] = -1;
    return g;
}

void GroupElement::act(std::span<const double> t, std::span<double> out) const {
    for (std::size_t j = 0; j < perm_.size(); ++j)
        out[static_cast<std::size_t>(perm_[j])] = signs_[j] * t[j];
}

std::vector<double> GroupElement::act(std::span<const double> t) const {
    std::vector<double> out(perm_.size());
    act(t, out);
    return out;
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
    // (this o)(t): first o sends t_j to slot o.perm[j] with sign o.signs[j],
    // then this sends slot m to perm[m] with sign signs[m].
    const std::size_t r = perm_.size();
    std::vector<int> p(r), s(r);
    for (std::size_t j = 0; j < r; ++j) {
        const auto m = static_cast<std::size_t>(o.perm_[j]);
        p[j] = perm_[m];
        s[j] = signs_[m] * o.signs_[j];
    }
    return GroupElement(std::move(p), std::move(s));
}

GroupElement GroupElement::inverse() const {
    const std::size_t r = perm_.size();
    std::vector<int> p(r), s(r);
    for (std::size_t j = 0; j < r; ++j) {
        const auto m = static_cast<std::size_t>(perm_[j]);
        p[m] = static_cast<int>(j);
        s[m] = signs_[j];
    }
    return GroupElement(std::move(p), std::move(s));
}

bool GroupElement::is_identity() const {
    for (std::size_t j = 0; j < perm_.size(); ++j)
        if (perm_[j] != static_cast<int>(j) || signs_[j] != 1)
            return false;
    return true;
}

std::string GroupElement::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t j = 0; j < perm_.size(); ++j)
        os << (j ? " " : "") << (signs_[j] < 0 ? "-" : "+") << perm_[j] + 1;
    os << ']';
    return os.str();
}

std::vector<GroupElement> weyl_elements(int r) {
    if (r < 1)
        throw ParameterError("weyl_elements: rank must be >= 1");
    if (r > kMaxEnumeratedRank)
        throw ParameterError("weyl_elements: rank " + std::to_string(r) +
                             " exceeds the enumeration bound r <= 4 (2^4 4! = 384 elements)");
    std::vector<int> perm(static_cast<std::size_t>(r));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<GroupElement> out;
    do {
        for (int mask = 0; mask < (1 << r); ++mask) {
            std::vector<int> signs(static_cast<std::size_t>(r));
            for (int j = 0; j < r; ++j)
                signs[j] = (mask >> j) & 1 ? -1 : 1;
            out.emplace_back(perm, std::move(signs));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

WeylGroup::WeylGroup(int rank) : rank_(rank), elements_(weyl_elements(rank)) {
    const std::size_t n = elements_.size();
    table_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            table_[i * n + k] = index_of(elements_[i] * elements_[k]);
}

std::size_t WeylGroup::index_of(const GroupElement& w) const {
    // perm-major / sign-minor enumeration order; recover the index directly.
    std::size_t perm_rank = 0;
    {
        std::vector<int> p = w.perm();
        std::vector<int> ref(p.size());
        std::iota(ref.begin(), ref.end(), 0);
        std::size_t count = 0;
        do {
            if (ref == p) {
                perm_rank = count;
                break;
            }
            ++count;
        } while (std::next_permutation(ref.begin(), ref.end()));
    }
    std::size_t mask = 0;
    for (std::size_t j = 0; j < w.signs().size(); ++j)
        if (w.signs()[j] < 0)
            mask |= std::size_t{1} << j;
    return perm_rank * (std::size_t{1} << w.rank()) + mask;
}

const WeylGroup& WeylGroup::get(int rank) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<WeylGroup>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[rank];
    if (!slot)
        slot = std::make_unique<WeylGroup>(rank);
    return *slot;
}

// ---------------------------------------------------------------------------

DomainParams domain_params(int a, int n, int r, int r_prime) {
    if (a != 1 && a != 2 && a != 4 && a != 8)
        throw ParameterError("a must be one of 1, 2, 4, 8 (got " + std::to_string(a) + ")");
    if (n < 1 || r < 1 || r_prime < 1)
        throw ParameterError("n, r, r' must be positive integers");
    if (a == 8 && (r != 1 || r_prime != 2 || n != 3))
        throw ParameterError("a = 8 (exceptional rank-one domain) requires r = 1, r' = 2 and n = 3 "
                             "(convention a(n-2) = 8)");
    if (!(2 * r <= std::min(r_prime, 2 * (n - r_prime))))
        throw ParameterError("rank condition 2r <= min{r', 2(n-r')} violated: 2r = " + std::to_string(2 * r) +
                             ", r' = " + std::to_string(r_prime) + ", 2(n-r') = " + std::to_string(2 * (n - r_prime)));

    DomainParams dp;
    dp.a = a;
    dp.n = n;
    dp.r = r;
    dp.r_prime = r_prime;
    dp.iota = a - 1;
    dp.two_b = static_cast<double>(a * (n - 2 * r));
    dp.delta0 = static_cast<double>(a * (r_prime - n));

    // l from the Dirac-chain condition (equals a(r'-r)/2).
    const double l_real = (dp.delta0 + dp.iota + dp.two_b - 1.0 + a * (r - 1)) / 2.0 + 1.0;
    if (l_real < 1.0 || std::abs(l_real - std::round(l_real)) > 1e-12) {
        std::ostringstream os;
        os << "l = (delta0 + iota + 2b - 1 + a(r-1))/2 + 1 = " << l_real
           << " is not a positive integer" << (a == 1 ? " (real case needs r' - r even)" : "");
        throw ParameterError(os.str());
    }
    dp.l = static_cast<int>(std::lround(l_real));

    if (!(1.0 + dp.iota + dp.two_b > r * (a - 1.0)))
        throw ParameterError("multiplicity condition 1 + iota + 2b > r(a-1) violated");
    const double lo = -1.0 - dp.iota - dp.two_b;
    const double hi = -r * (a - 1.0);
    if (!(lo < dp.delta0 && dp.delta0 < hi)) {
        std::ostringstream os;
        os << "delta0 window -1 - iota - 2b < delta0 < -r(a-1) violated: " << lo << " < " << dp.delta0 << " < " << hi;
        throw ParameterError(os.str());
    }

    dp.rho = dp.root_data().rho();
    if (r == 1) {
        for (int j = 1; j <= dp.l; ++j) {
            const double lam = (a * (n - 1.0) - a * (r_prime - 1.0) + 2.0 * (j - 1)) *
                               (a * (r_prime - 1.0) + a - 2.0 * j);
            dp.lambdas.push_back(lam);
        }
    }
    return dp;
}

} // namespace cr
