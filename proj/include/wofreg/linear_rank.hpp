#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace wofreg {

/// Dense row-major integer matrix, used for simplicial boundary maps.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Rank over Q by fraction-free (Bareiss) elimination. Runs in checked
/// 64-bit arithmetic and restarts with GMP integers on overflow.
std::size_t rank_rational(const IntMatrix& m);

/// Rank over F_p, p prime below 2^32.
std::size_t rank_mod_prime(const IntMatrix& m, std::uint32_t p);

}  // namespace wofreg
