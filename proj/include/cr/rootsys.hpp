#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cr {

/// Root system of type B / BC / D on R^r with multiplicities (a, 2b, iota)
/// attached to the root families {±t_i±t_j}, {±t_k}, {±2t_k}.
struct RootData {
    int rank = 1;
    double a = 0.0;
    double two_b = 0.0;
    double iota = 0.0;

    RootData() = default;
    RootData(int rank, double a, double two_b, double iota);

    double b() const { return two_b / 2.0; }

    /// rho_j = iota + b + a(r - j), j = 1..r (returned 0-based): half the sum of the
    /// positive roots +-t_i+-t_j (mult. a), t_j (mult. 2b), 2t_j (mult. iota).
    std::vector<double> rho() const;
    double rho_at(int j) const; // j is 0-based

    bool operator==(const RootData&) const = default;
};

std::vector<double> rho(const RootData& rd);

/// Positive root as a linear functional on R^r, plus the reflection it induces.
struct PositiveRoot {
    enum class Kind { Difference, Sum, Short, Long };
    Kind kind;
    int i;          // first index (0-based)
    int k;          // second index, or -1
    std::vector<double> coeffs; // alpha(t) = sum coeffs[m] * t[m]
    double multiplicity;

    double operator()(std::span<const double> t) const;
};

std::vector<PositiveRoot> positive_roots(const RootData& rd);

/// Signed permutation: (w.t)[perm[j]] = signs[j] * t[j].
class GroupElement {
public:
    GroupElement() = default;
    explicit GroupElement(int rank);
    GroupElement(std::vector<int> perm, std::vector<int> signs);

    static GroupElement identity(int rank) { return GroupElement(rank); }
    static GroupElement transposition(int rank, int i, int k);     // s_ik
    static GroupElement signed_swap(int rank, int i, int k);       // sigma_ik
    static GroupElement sign_flip(int rank, int i);                // sigma_i

    int rank() const { return static_cast<int>(perm_.size()); }
    const std::vector<int>& perm() const { return perm_; }
    const std::vector<int>& signs() const { return signs_; }

    void act(std::span<const double> t, std::span<double> out) const;
    std::vector<double> act(std::span<const double> t) const;

    /// (this * other)(t) = this(other(t)).
    GroupElement operator*(const GroupElement& other) const;
    GroupElement inverse() const;
    bool is_identity() const;

    bool operator==(const GroupElement&) const = default;
    auto operator<=>(const GroupElement&) const = default;

    std::string to_string() const;

private:
    std::vector<int> perm_;
    std::vector<int> signs_;
};

inline constexpr int kMaxEnumeratedRank = 4;

/// Hyperoctahedral group of order 2^r r!, identity first. Refuses r > 4.
std::vector<GroupElement> weyl_elements(int r);

/// Enumerated Weyl group with a precomputed multiplication table.
class WeylGroup {
public:
    explicit WeylGroup(int rank);

    int rank() const { return rank_; }
    std::size_t size() const { return elements_.size(); }
    const GroupElement& operator[](std::size_t i) const { return elements_[i]; }
    const std::vector<GroupElement>& elements() const { return elements_; }

    std::size_t index_of(const GroupElement& w) const;
    /// index of elements[a] * elements[b]
    std::size_t product(std::size_t a, std::size_t b) const { return table_[a * size() + b]; }

    static const WeylGroup& get(int rank);

private:
    int rank_;
    std::vector<GroupElement> elements_;
    std::vector<std::size_t> table_;
};

/// Symmetric-domain parameters for X = U(n-r, r; K)/U(n-r) x U(r), with y_0
/// the sub-ball of (r'-r) x r matrices.
struct DomainParams {
    int a = 1;
    int n = 1;
    int r = 1;
    int r_prime = 1;

    // derived
    double delta0 = 0.0;
    double iota = 0.0;
    double two_b = 0.0;
    int l = 0;
    std::vector<double> rho;
    std::vector<double> lambdas; // rank one only

    RootData root_data() const { return RootData(r, a, two_b, iota); }
};

/// Validates and derives; throws ParameterError naming the violated condition.
DomainParams domain_params(int a, int n, int r, int r_prime);

} // namespace cr
