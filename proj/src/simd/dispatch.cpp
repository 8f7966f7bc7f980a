#include <atomic>
#include <cstdlib>
#include <string>

#include "riscom/error.hpp"
#include "riscom/simd/kernels.hpp"

namespace riscom::simd {
namespace {

bool cpu_has_avx2() {
#if defined(RISCOM_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool has = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return has;
#else
  return false;
#endif
}

Isa detect() {
  if (const char* env = std::getenv("RISCOM_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Isa::Scalar;
    if (want == "avx2" && cpu_has_avx2()) return Isa::Avx2;
  }
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

const KernelTable& table_for(Isa isa) {
#if defined(RISCOM_BUILD_AVX2)
  if (isa == Isa::Avx2) return avx2_kernels();
#endif
  (void)isa;
  return scalar_kernels();
}

struct ActiveState {
  std::atomic<Isa> isa;
  std::atomic<const KernelTable*> table;
};

ActiveState& active() {
  static ActiveState state{detect(), nullptr};
  static const bool init = [] {
    state.table.store(&table_for(state.isa.load()));
    return true;
  }();
  (void)init;
  return state;
}

}  // namespace

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
      return cpu_has_avx2();
  }
  return false;
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_available(isa)) {
    throw Error("SIMD kernels for " + std::string(isa_name(isa)) + " are not available");
  }
  return table_for(isa);
}

const KernelTable& kernels() { return *active().table.load(std::memory_order_relaxed); }

Isa active_isa() { return active().isa.load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw Error("cannot activate unavailable ISA " + std::string(isa_name(isa)));
  }
  active().isa.store(isa, std::memory_order_relaxed);
  active().table.store(&table_for(isa), std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

}  // namespace riscom::simd
