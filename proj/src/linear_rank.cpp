#include "wofreg/linear_rank.hpp"

#include <gmpxx.h>

#include <stdexcept>
#include <utility>

namespace wofreg {

namespace {

struct Overflow {};

struct Checked {
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
};

template <class T>
std::vector<std::vector<T>> to_rows(const IntMatrix& m) {
  std::vector<std::vector<T>> a(m.rows(), std::vector<T>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = T(static_cast<long>(m(r, c)));
  return a;
}

inline std::int64_t mulv(std::int64_t a, std::int64_t b) { return Checked::mul(a, b); }
inline std::int64_t subv(std::int64_t a, std::int64_t b) { return Checked::sub(a, b); }
inline mpz_class mulv(const mpz_class& a, const mpz_class& b) { return a * b; }
inline mpz_class subv(const mpz_class& a, const mpz_class& b) { return a - b; }
inline bool is_unit(std::int64_t v) { return v == 1 || v == -1; }
inline bool is_unit(const mpz_class& v) { return v == 1 || v == -1; }

// Bareiss: after step s every remaining entry is an (s+1)-minor, so the
// division by the previous pivot is exact.
template <class T>
std::size_t bareiss_rank(std::vector<std::vector<T>> a, std::size_t cols) {
  const std::size_t rows = a.size();
  std::size_t rank = 0;
  T prev = T(1);
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (a[r][c] != 0) {
        if (piv == rows) piv = r;
        if (is_unit(a[r][c])) {
          piv = r;
          break;
        }
      }
    }
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const T p = a[rank][c];
    const bool trivial_scale = (p == prev);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const T f = a[r][c];
      if (f == 0 && trivial_scale) continue;
      for (std::size_t j = c + 1; j < cols; ++j) {
        T v = subv(mulv(p, a[r][j]), mulv(f, a[rank][j]));
        a[r][j] = v / prev;
      }
      a[r][c] = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t rank_rational(const IntMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  try {
    return bareiss_rank(to_rows<std::int64_t>(m), m.cols());
  } catch (const Overflow&) {
    return bareiss_rank(to_rows<mpz_class>(m), m.cols());
  }
}

std::size_t rank_mod_prime(const IntMatrix& m, std::uint32_t p) {
  if (p < 2) throw std::invalid_argument("rank_mod_prime: modulus must be prime");
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      std::int64_t v = m(r, c) % static_cast<std::int64_t>(p);
      if (v < 0) v += p;
      a[r][c] = static_cast<std::uint64_t>(v);
    }
  const auto pow_mod = [p](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const std::uint64_t inv = pow_mod(a[rank][c], p - 2);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      const std::uint64_t f = a[r][c] * inv % p;
      for (std::size_t j = c; j < cols; ++j) a[r][j] = (a[r][j] + (p - f) * a[rank][j]) % p;
    }
    ++rank;
  }
  return rank;
}

}  // namespace wofreg
