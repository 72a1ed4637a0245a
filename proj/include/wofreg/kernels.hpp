#pragma once

// Exponent-vector kernels. Every monomial operation in the library bottoms
// out here: lcm is a lane-wise max, divisibility a lane-wise <=, colon a
// saturating subtract. A portable scalar table is always present; an AVX2
// table is compiled in on x86-64 and chosen at runtime when the CPU has it.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace wofreg::kernels {

using Exponent = std::uint16_t;

struct KernelTable {
  std::string_view name;
  // out[i] = max(a[i], b[i])
  void (*lcm)(const Exponent* a, const Exponent* b, Exponent* out, std::size_t n);
  // out[i] = a[i] + b[i]; returns false if any lane overflowed
  bool (*add)(const Exponent* a, const Exponent* b, Exponent* out, std::size_t n);
  // out[i] = a[i] - min(a[i], b[i])   (a / gcd(a, b))
  void (*quotient)(const Exponent* a, const Exponent* b, Exponent* out, std::size_t n);
  // a[i] <= b[i] for all i   (x^a divides x^b)
  bool (*divides)(const Exponent* a, const Exponent* b, std::size_t n);
  std::uint64_t (*degree)(const Exponent* a, std::size_t n);
  // Index of the first of `count` rows (row r starts at rows + r*stride) that
  // divides `target`, or `count` if none does.
  std::size_t (*find_divisor)(const Exponent* rows, std::size_t count, std::size_t stride,
                              const Exponent* target, std::size_t n);
};

const KernelTable& scalar();

/// Null when the AVX2 variant was not built or the CPU lacks AVX2.
const KernelTable* avx2();

/// The table used by the library. Defaults to the best available variant;
/// the environment variable WOFREG_KERNELS=scalar|avx2 overrides.
const KernelTable& active();

/// Switch the active table. Returns false (and changes nothing) if the
/// named variant is unavailable.
bool select(std::string_view name);

}  // namespace wofreg::kernels
