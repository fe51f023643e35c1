#include "cr/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace cr::kernels {

#ifndef CR_BUILD_AVX2
// Fallbacks so the symbols exist on builds without the AVX2 translation unit.
namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b) { return scalar::dot(a, b); }
void axpy(double alpha, std::span<const double> x, std::span<double> y) { scalar::axpy(alpha, x, y); }
void stencil(std::span<const double> in, std::span<const double> c, std::span<double> out) {
    scalar::stencil(in, c, out);
}
} // namespace avx2
#endif

namespace {

bool cpu_has_avx2() {
#if defined(CR_BUILD_AVX2) && (defined(__x86_64__) || defined(__i386__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa detect() {
    const char* env = std::getenv("CR_SIMD");
    if (env && std::strcmp(env, "scalar") == 0)
        return Isa::Scalar;
    return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

} // namespace

Isa active_isa() { return current().load(std::memory_order_relaxed); }

bool isa_available(Isa isa) { return isa == Isa::Scalar || cpu_has_avx2(); }

bool set_isa(Isa isa) {
    if (!isa_available(isa))
        return false;
    current().store(isa, std::memory_order_relaxed);
    return true;
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

double dot(std::span<const double> a, std::span<const double> b) {
    return active_isa() == Isa::Avx2 ? avx2::dot(a, b) : scalar::dot(a, b);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    if (active_isa() == Isa::Avx2)
        avx2::axpy(alpha, x, y);
    else
        scalar::axpy(alpha, x, y);
}

void stencil(std::span<const double> in, std::span<const double> coeffs, std::span<double> out) {
    if (active_isa() == Isa::Avx2)
        avx2::stencil(in, coeffs, out);
    else
        scalar::stencil(in, coeffs, out);
}

} // namespace cr::kernels
