#include "cr/kernels.hpp"

#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

using namespace cr;

namespace {
std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1, 1);
    std::vector<double> v(n);
    for (auto& x : v)
        x = U(rng);
    return v;
}
} // namespace

TEST_CASE("scalar and vector kernels agree") {
    if (!kernels::isa_available(kernels::Isa::Avx2)) {
        MESSAGE("AVX2 unavailable; only the scalar path is exercised");
        return;
    }
    std::mt19937_64 rng(11);
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 17u, 63u, 100u, 1001u}) {
        auto a = random_vec(n, rng);
        auto b = random_vec(n, rng);
        double abs_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            abs_sum += std::abs(a[i] * b[i]);
        CHECK(std::abs(kernels::scalar::dot(a, b) - kernels::avx2::dot(a, b)) <= 1e-15 * (abs_sum + 1.0));

        auto y1 = random_vec(n, rng);
        auto y2 = y1;
        kernels::scalar::axpy(0.37, a, y1);
        kernels::avx2::axpy(0.37, a, y2);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(y1[i] - y2[i]) <= 1e-15);

        const std::vector<double> c{1.0 / 280, -4.0 / 105, 0.2, -0.8, 0.0, 0.8, -0.2, 4.0 / 105, -1.0 / 280};
        if (n >= c.size()) {
            std::vector<double> o1(n - c.size() + 1), o2(o1.size());
            kernels::scalar::stencil(a, c, o1);
            kernels::avx2::stencil(a, c, o2);
            for (std::size_t i = 0; i < o1.size(); ++i)
                CHECK(std::abs(o1[i] - o2[i]) <= 1e-15);
        }
    }
}

TEST_CASE("dispatch override") {
    const auto before = kernels::active_isa();
    CHECK(kernels::set_isa(kernels::Isa::Scalar));
    CHECK(kernels::active_isa() == kernels::Isa::Scalar);
    std::vector<double> a{1, 2, 3}, b{4, 5, 6};
    CHECK(kernels::dot(a, b) == 32.0);
    kernels::set_isa(before);
    CHECK(kernels::dot(a, b) == 32.0);
    CHECK(kernels::isa_name(kernels::Isa::Scalar) == "scalar");
}

TEST_CASE("stencil differentiates a polynomial exactly") {
    // 8th-order first-derivative stencil on x^3, unit spacing
    const std::vector<double> c{1.0 / 280, -4.0 / 105, 0.2, -0.8, 0.0, 0.8, -0.2, 4.0 / 105, -1.0 / 280};
    std::vector<double> x(20);
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = std::pow(static_cast<double>(i), 3);
    std::vector<double> out(x.size() - 8);
    kernels::stencil(x, c, out);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double xi = static_cast<double>(i + 4);
        CHECK(out[i] == doctest::Approx(3 * xi * xi).epsilon(1e-12));
    }
}
