#pragma once

// Data-parallel inner loops used by the eigensolver, k-means and the sparse
// matrix-vector product. Every kernel has a scalar reference implementation;
// AVX2 (x86-64) and NEON (aarch64) variants are selected at runtime.
//
// The selected ISA can be forced with the environment variable
// HYPERBH_ISA=scalar|avx2|neon or programmatically via set_isa().

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace hyperbh::simd {

enum class Isa { scalar, avx2, neon };

/// Read-only view of a compressed-sparse-row matrix with 32-bit column
/// indices.
struct CsrView {
  std::size_t rows = 0;
  std::span<const std::size_t> row_ptr;  // rows + 1 entries
  std::span<const std::int32_t> cols;
  std::span<const double> vals;
};

struct KernelTable {
  double (*dot)(const double* x, const double* y, std::size_t n);
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  void (*scale)(double a, double* x, std::size_t n);
  double (*sqdist)(const double* x, const double* y, std::size_t n);
  void (*spmv)(const CsrView& a, const double* x, double* y);
};

bool isa_supported(Isa isa);
Isa active_isa();
/// Throws std::invalid_argument if the ISA is not available on this CPU/build.
void set_isa(Isa isa);
std::string_view isa_name(Isa isa);
Isa parse_isa(std::string_view name);

/// Kernel table for a specific ISA (throws if unsupported).
const KernelTable& kernels(Isa isa);
/// Kernel table of the active ISA.
const KernelTable& kernels();

namespace scalar {
const KernelTable& table();
}
#if defined(HYPERBH_BUILD_AVX2)
namespace avx2 {
const KernelTable& table();
}
#endif
#if defined(HYPERBH_BUILD_NEON)
namespace neon {
const KernelTable& table();
}
#endif

// Convenience wrappers over the active table.
inline double dot(std::span<const double> x, std::span<const double> y) {
  return kernels().dot(x.data(), y.data(), x.size());
}
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  kernels().axpy(a, x.data(), y.data(), x.size());
}
inline void scale(double a, std::span<double> x) { kernels().scale(a, x.data(), x.size()); }
inline double sqdist(std::span<const double> x, std::span<const double> y) {
  return kernels().sqdist(x.data(), y.data(), x.size());
}
inline void spmv(const CsrView& a, std::span<const double> x, std::span<double> y) {
  kernels().spmv(a, x.data(), y.data());
}
double norm2(std::span<const double> x);

}  // namespace hyperbh::simd
