#include "wofreg/kernels.hpp"

#include <immintrin.h>

namespace wofreg::kernels {

const KernelTable& avx2_table();

namespace {

constexpr std::size_t kLanes = 16;  // 16 x uint16 per __m256i

inline __m256i load(const Exponent* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(Exponent* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

void lcm_avx2(const Exponent* a, const Exponent* b, Exponent* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) store(out + i, _mm256_max_epu16(load(a + i), load(b + i)));
  for (; i < n; ++i) out[i] = a[i] > b[i] ? a[i] : b[i];
}

bool add_avx2(const Exponent* a, const Exponent* b, Exponent* out, std::size_t n) {
  std::size_t i = 0;
  __m256i bad = _mm256_setzero_si256();
  for (; i + kLanes <= n; i += kLanes) {
    const __m256i va = load(a + i);
    const __m256i sum = _mm256_add_epi16(va, load(b + i));
    // wrapped iff sum < a (unsigned), i.e. max(sum, a) != sum
    bad = _mm256_or_si256(bad, _mm256_xor_si256(_mm256_max_epu16(sum, va), sum));
    store(out + i, sum);
  }
  bool ok = _mm256_testz_si256(bad, bad) != 0;
  for (; i < n; ++i) {
    const std::uint32_t s = std::uint32_t{a[i]} + b[i];
    ok &= s <= 0xFFFFu;
    out[i] = static_cast<Exponent>(s);
  }
  return ok;
}

void quotient_avx2(const Exponent* a, const Exponent* b, Exponent* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) store(out + i, _mm256_subs_epu16(load(a + i), load(b + i)));
  for (; i < n; ++i) out[i] = a[i] > b[i] ? Exponent(a[i] - b[i]) : Exponent{0};
}

inline bool divides_inline(const Exponent* a, const Exponent* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    // a <= b lane-wise  <=>  a - b saturates to zero everywhere
    const __m256i d = _mm256_subs_epu16(load(a + i), load(b + i));
    if (!_mm256_testz_si256(d, d)) return false;
  }
  for (; i < n; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

bool divides_avx2(const Exponent* a, const Exponent* b, std::size_t n) { return divides_inline(a, b, n); }

std::uint64_t degree_avx2(const Exponent* a, std::size_t n) {
  std::size_t i = 0;
  __m256i acc = _mm256_setzero_si256();
  const __m256i zero = _mm256_setzero_si256();
  for (; i + kLanes <= n; i += kLanes) {
    const __m256i v = load(a + i);
    acc = _mm256_add_epi32(acc, _mm256_unpacklo_epi16(v, zero));
    acc = _mm256_add_epi32(acc, _mm256_unpackhi_epi16(v, zero));
  }
  alignas(32) std::uint32_t lanes[8];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t d = 0;
  for (std::uint32_t l : lanes) d += l;
  for (; i < n; ++i) d += a[i];
  return d;
}

std::size_t find_divisor_avx2(const Exponent* rows, std::size_t count, std::size_t stride,
                              const Exponent* target, std::size_t n) {
  if (n <= kLanes) {
    // Common case: the whole target fits one register; keep it resident.
    alignas(32) Exponent t[kLanes] = {};
    for (std::size_t i = 0; i < n; ++i) t[i] = target[i];
    const __m256i vt = _mm256_load_si256(reinterpret_cast<const __m256i*>(t));
    alignas(32) Exponent row[kLanes] = {};
    for (std::size_t r = 0; r < count; ++r) {
      const Exponent* src = rows + r * stride;
      __m256i vr;
      if (stride >= kLanes) {
        vr = load(src);
        if (n < kLanes) {
          // zero the lanes past n so they compare as 0 <= 0
          alignas(32) static constexpr std::uint16_t kMask[2 * kLanes] = {
              0xFFFF, 0xFFFF, 0xFFFF, 0xFFFF, 0xFFFF, 0xFFFF, 0xFFFF, 0xFFFF,
              0xFFFF, 0xFFFF, 0xFFFF, 0xFFFF, 0xFFFF, 0xFFFF, 0xFFFF, 0xFFFF,
              0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
          vr = _mm256_and_si256(vr, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(kMask + kLanes - n)));
        }
      } else {
        for (std::size_t i = 0; i < n; ++i) row[i] = src[i];
        vr = _mm256_load_si256(reinterpret_cast<const __m256i*>(row));
      }
      const __m256i d = _mm256_subs_epu16(vr, vt);
      if (_mm256_testz_si256(d, d)) return r;
    }
    return count;
  }
  for (std::size_t r = 0; r < count; ++r)
    if (divides_inline(rows + r * stride, target, n)) return r;
  return count;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2",        lcm_avx2,    add_avx2,
                                 quotient_avx2, divides_avx2, degree_avx2,
                                 find_divisor_avx2};
  return table;
}

}  // namespace wofreg::kernels
