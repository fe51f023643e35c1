#include "cr/kernels.hpp"

#include <immintrin.h>

namespace cr::kernels::avx2 {

double dot(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    __m256d acc3 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i + 4), _mm256_loadu_pd(b.data() + i + 4), acc1);
        acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i + 8), _mm256_loadu_pd(b.data() + i + 8), acc2);
        acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i + 12), _mm256_loadu_pd(b.data() + i + 12), acc3);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc0);
    const __m256d acc = _mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i)
        s += a[i] * b[i];
    return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    const std::size_t n = y.size();
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vy = _mm256_loadu_pd(y.data() + i);
        _mm256_storeu_pd(y.data() + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x.data() + i), vy));
    }
    for (; i < n; ++i)
        y[i] += alpha * x[i];
}

void stencil(std::span<const double> in, std::span<const double> coeffs, std::span<double> out) {
    const std::size_t m = coeffs.size();
    const std::size_t n = in.size() + 1 - m;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d s = _mm256_setzero_pd();
        for (std::size_t k = 0; k < m; ++k)
            s = _mm256_fmadd_pd(_mm256_set1_pd(coeffs[k]), _mm256_loadu_pd(in.data() + i + k), s);
        _mm256_storeu_pd(out.data() + i, s);
    }
    for (; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < m; ++k)
            s += coeffs[k] * in[i + k];
        out[i] = s;
    }
}

} // namespace cr::kernels::avx2
