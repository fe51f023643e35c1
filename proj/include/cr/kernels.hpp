#pragma once

#include <span>
#include <string_view>

// Data-parallel inner loops: quadrature reductions, jet axpy updates and the
// finite-difference stencil used by the radial inversion check. Every kernel
// has a scalar reference; wider variants are picked once at runtime.
namespace cr::kernels {

enum class Isa { Scalar, Avx2 };

/// ISA currently used by the dispatching entry points. CR_SIMD=scalar in the
/// environment forces the reference path.
Isa active_isa();
/// Override dispatch (tests). Returns false if the requested ISA is unavailable.
bool set_isa(Isa isa);
bool isa_available(Isa isa);
std::string_view isa_name(Isa isa);

double dot(std::span<const double> a, std::span<const double> b);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
/// out[i] = sum_k coeffs[k] * in[i + k],  i < in.size() - coeffs.size() + 1
void stencil(std::span<const double> in, std::span<const double> coeffs, std::span<double> out);

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void stencil(std::span<const double> in, std::span<const double> coeffs, std::span<double> out);
} // namespace scalar

namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void stencil(std::span<const double> in, std::span<const double> coeffs, std::span<double> out);
} // namespace avx2

} // namespace cr::kernels
