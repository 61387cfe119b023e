#include <atomic>
#include <cstdlib>
#include <string>
#include <string_view>

#include "bsrd/error.hpp"
#include "bsrd/kernels.hpp"

namespace bsrd::kernels {

#if BSRD_HAVE_AVX2
namespace detail {
const KernelTable& avx2_table_unchecked();
}
#endif

namespace {

std::atomic<const KernelTable*> g_active{nullptr};

const KernelTable* automatic_choice() {
  if (const char* forced = std::getenv("BSRD_ISA")) {
    const std::string_view name(forced);
    if (name == "scalar") return &scalar_table();
    if (name == "avx2" && avx2_table() != nullptr) return avx2_table();
  }
  if (const KernelTable* t = avx2_table()) return t;
  return &scalar_table();
}

}  // namespace

const KernelTable* avx2_table() {
#if BSRD_HAVE_AVX2
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &detail::avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
      return avx2_table() != nullptr;
  }
  return false;
}

const KernelTable& active() {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (t == nullptr) {
    const KernelTable* chosen = automatic_choice();
    g_active.compare_exchange_strong(t, chosen, std::memory_order_acq_rel);
    t = g_active.load(std::memory_order_acquire);
  }
  return *t;
}

void select_isa(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      g_active.store(&scalar_table(), std::memory_order_release);
      return;
    case Isa::Avx2:
      if (const KernelTable* t = avx2_table()) {
        g_active.store(t, std::memory_order_release);
        return;
      }
      throw Error(ErrorKind::Domain, "avx2 kernels are not available on this machine");
  }
}

void reset_isa() { g_active.store(automatic_choice(), std::memory_order_release); }

}  // namespace bsrd::kernels
