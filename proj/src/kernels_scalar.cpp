#include "wofreg/kernels.hpp"

#include <algorithm>
#include <limits>

namespace wofreg::kernels {
namespace {

void lcm_scalar(const Exponent* a, const Exponent* b, Exponent* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::max(a[i], b[i]);
}

bool add_scalar(const Exponent* a, const Exponent* b, Exponent* out, std::size_t n) {
  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t s = std::uint32_t{a[i]} + b[i];
    ok &= s <= std::numeric_limits<Exponent>::max();
    out[i] = static_cast<Exponent>(s);
  }
  return ok;
}

void quotient_scalar(const Exponent* a, const Exponent* b, Exponent* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] > b[i] ? Exponent(a[i] - b[i]) : Exponent{0};
}

bool divides_scalar(const Exponent* a, const Exponent* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::uint64_t degree_scalar(const Exponent* a, std::size_t n) {
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < n; ++i) d += a[i];
  return d;
}

std::size_t find_divisor_scalar(const Exponent* rows, std::size_t count, std::size_t stride,
                                const Exponent* target, std::size_t n) {
  for (std::size_t r = 0; r < count; ++r)
    if (divides_scalar(rows + r * stride, target, n)) return r;
  return count;
}

}  // namespace

const KernelTable& scalar() {
  static const KernelTable table{"scalar",       lcm_scalar,    add_scalar,
                                 quotient_scalar, divides_scalar, degree_scalar,
                                 find_divisor_scalar};
  return table;
}

}  // namespace wofreg::kernels
