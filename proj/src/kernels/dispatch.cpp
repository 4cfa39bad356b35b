#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "hyperbh/simd.hpp"

namespace hyperbh::simd {
namespace {

bool cpu_has_avx2() {
#if defined(HYPERBH_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool has = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return has;
#else
  return false;
#endif
}

const KernelTable& table_for(Isa isa) {
  switch (isa) {
#if defined(HYPERBH_BUILD_AVX2)
    case Isa::avx2:
      return avx2::table();
#endif
#if defined(HYPERBH_BUILD_NEON)
    case Isa::neon:
      return neon::table();
#endif
    default:
      return scalar::table();
  }
}

Isa detect_default() {
  if (const char* env = std::getenv("HYPERBH_ISA"); env != nullptr && *env != '\0') {
    const Isa forced = parse_isa(env);
    if (!isa_supported(forced)) {
      throw std::invalid_argument("HYPERBH_ISA=" + std::string(env) + " is not supported on this machine");
    }
    return forced;
  }
  if (isa_supported(Isa::avx2)) return Isa::avx2;
  if (isa_supported(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

struct Active {
  std::atomic<Isa> isa;
  std::atomic<const KernelTable*> table;
};

Active& active() {
  static Active a = [] {
    const Isa isa = detect_default();
    return Active{isa, &table_for(isa)};
  }();
  return a;
}

}  // namespace

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return cpu_has_avx2();
    case Isa::neon:
#if defined(HYPERBH_BUILD_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return active().isa.load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("ISA " + std::string(isa_name(isa)) + " is not supported on this machine");
  }
  active().isa.store(isa, std::memory_order_relaxed);
  active().table.store(&table_for(isa), std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  if (name == "neon") return Isa::neon;
  throw std::invalid_argument("unknown ISA '" + std::string(name) + "'");
}

const KernelTable& kernels(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("ISA " + std::string(isa_name(isa)) + " is not supported on this machine");
  }
  return table_for(isa);
}

const KernelTable& kernels() { return *active().table.load(std::memory_order_relaxed); }

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

}  // namespace hyperbh::simd
