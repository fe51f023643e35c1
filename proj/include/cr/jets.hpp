#pragma once

#include "cr/rootsys.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace cr {

/// Default cap on derivative order for user-facing evaluation. Operator
/// chains in this library need at most 2 r l plus the wall-expansion order.
inline constexpr int kDefaultMaxOrder = 12;
/// Hard cap of the internal monomial tables.
inline constexpr int kJetOrderCap = 28;
inline constexpr int kJetMaxVars = 4;

using Exponent = std::array<std::uint8_t, kJetMaxVars>;

/// Graded monomial layout for a fixed number of variables. Monomials are
/// enumerated degree by degree, so the layout of order K is a prefix of the
/// layout of order K+1.
class MonomialLayout {
public:
    static const MonomialLayout& get(int nvars);

    int nvars() const { return nvars_; }
    std::size_t count(int order) const { return offsets_[static_cast<std::size_t>(order) + 1]; }
    std::size_t degree_begin(int d) const { return offsets_[static_cast<std::size_t>(d)]; }
    const Exponent& exponent(std::size_t idx) const { return exps_[idx]; }
    int degree(std::size_t idx) const { return degrees_[idx]; }
    /// Index of the monomial with the given exponent; -1 if its degree exceeds the cap.
    long index(const Exponent& e) const;

    struct MulEntry {
        std::uint32_t j;
        std::uint32_t k;
    };
    /// For each i < count(order): products m_i * m_j = m_k with deg <= order.
    /// Returned as CSR: row_begin[i]..row_begin[i+1] into entries.
    struct MulTable {
        std::vector<std::uint32_t> row_begin;
        std::vector<MulEntry> entries;
    };
    const MulTable& mul_table(int order) const;

private:
    explicit MonomialLayout(int nvars);

    int nvars_;
    std::vector<Exponent> exps_;
    std::vector<int> degrees_;
    std::vector<std::size_t> offsets_;
    std::vector<std::int32_t> dense_index_;
    mutable std::array<std::once_flag, kJetOrderCap + 1> mul_once_;
    mutable std::array<std::unique_ptr<MulTable>, kJetOrderCap + 1> mul_cache_;
};

/// Truncated Taylor expansion of a scalar in `nvars` perturbation variables:
/// coefficient of h^alpha is d^alpha f / alpha!.
class Jet {
public:
    Jet() = default;
    Jet(int nvars, int order);

    static Jet constant(int nvars, int order, double v);
    /// t_i + h_i expanded at value v.
    static Jet variable(int nvars, int order, int i, double v);
    /// l(h) + v for a linear form l.
    static Jet affine(int nvars, int order, std::span<const double> l, double v);

    int nvars() const { return nvars_; }
    int order() const { return order_; }
    double value() const { return c_[0]; }
    std::size_t size() const { return c_.size(); }
    std::span<const double> coeffs() const { return c_; }
    std::span<double> coeffs() { return c_; }
    double operator[](std::size_t i) const { return c_[i]; }
    double& operator[](std::size_t i) { return c_[i]; }

    /// Mixed partial derivative d^alpha f at the expansion point.
    double partial(std::span<const int> alpha) const;

    Jet truncated(int order) const;
    Jet derivative(int var) const;
    /// h -> F(w h).
    Jet compose_weyl(const GroupElement& w) const;
    /// Exact quotient N / l(h) of a jet vanishing on {l = 0}; order drops by one.
    Jet divide_linear(std::span<const double> l) const;
    /// Sum_alpha c_alpha d^alpha.
    double eval_poly(std::span<const double> d) const;
    /// Taylor polynomial re-expanded about d: coefficients of P(d + h), up to `order`.
    Jet recentered(std::span<const double> d, int order) const;
    double max_abs() const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(double s);
    Jet& operator+=(double s) {
        c_[0] += s;
        return *this;
    }
    /// this += s * o  (o truncated to this order)
    Jet& add_scaled(const Jet& o, double s);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator+(Jet a, double s) { return a += s; }
    friend Jet operator+(double s, Jet a) { return a += s; }
    friend Jet operator-(Jet a, double s) { return a += -s; }
    friend Jet operator-(double s, const Jet& a) { return (a * -1.0) + s; }
    friend Jet operator-(const Jet& a) { return a * -1.0; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
    friend Jet operator/(double s, const Jet& b);

private:
    int nvars_ = 0;
    int order_ = 0;
    std::vector<double> c_;
};

/// Jet of h -> sum_k g[k] (l . h)^k, built directly from the multinomial expansion.
Jet linear_series(int nvars, int order, std::span<const double> l, std::span<const double> g);

/// g(u) given the normalized Taylor coefficients g_k = g^(k)(u0)/k! at u0 = u.value().
Jet compose_series(const Jet& u, std::span<const double> g);

Jet exp(const Jet& u);
Jet log(const Jet& u);           // u > 0
Jet pow(const Jet& u, double p); // u > 0
Jet reciprocal(const Jet& u);
Jet sinh(const Jet& u);
Jet cosh(const Jet& u);
Jet coth(const Jet& u);
Jet tanh(const Jet& u);
Jet sqrt(const Jet& u);
Jet abs_pow(const Jet& u, double p); // |u|^p, u != 0

} // namespace cr
