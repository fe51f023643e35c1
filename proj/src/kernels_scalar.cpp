#include "cr/kernels.hpp"

#include <cstddef>

namespace cr::kernels::scalar {

namespace {
// Pairwise summation of a[i]*b[i]; block size 8 at the leaves.
double pairwise_dot(const double* a, const double* b, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += a[i] * b[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_dot(a, b, h) + pairwise_dot(a + h, b + h, n - h);
}
} // namespace

double dot(std::span<const double> a, std::span<const double> b) {
    return pairwise_dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] += alpha * x[i];
}

void stencil(std::span<const double> in, std::span<const double> coeffs, std::span<double> out) {
    const std::size_t m = coeffs.size();
    const std::size_t n = in.size() + 1 - m;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < m; ++k)
            s += coeffs[k] * in[i + k];
        out[i] = s;
    }
}

} // namespace cr::kernels::scalar
