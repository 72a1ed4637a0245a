#include <atomic>
#include <cstdlib>
#include <string>

#include "wofreg/kernels.hpp"

namespace wofreg::kernels {

#if defined(WOFREG_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

const KernelTable* avx2() {
#if defined(WOFREG_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable* initial_table() {
  if (const char* env = std::getenv("WOFREG_KERNELS")) {
    const std::string want(env);
    if (want == "scalar") return &scalar();
    if (want == "avx2" && avx2()) return avx2();
  }
  if (const KernelTable* t = avx2()) return t;
  return &scalar();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

bool select(std::string_view name) {
  if (name == "scalar") {
    current().store(&scalar());
    return true;
  }
  if (name == "avx2" && avx2()) {
    current().store(avx2());
    return true;
  }
  return false;
}

}  // namespace wofreg::kernels
