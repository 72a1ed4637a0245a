#pragma once

// Row-major exponent matrix with rows padded to a multiple of 16 lanes, the
// layout the divisor-scan kernel wants.

#include <cstddef>
#include <vector>

#include "wofreg/kernels.hpp"
#include "wofreg/monomial.hpp"

namespace wofreg::detail {

class FlatMonomials {
 public:
  explicit FlatMonomials(std::size_t num_vars)
      : n_(num_vars), stride_(((num_vars + 15) / 16) * 16) {
    if (stride_ == 0) stride_ = 16;
  }

  void push_back(const Monomial& m) {
    const std::size_t off = buf_.size();
    buf_.resize(off + stride_, 0);
    for (std::size_t i = 0; i < n_; ++i) buf_[off + i] = m[i];
    ++rows_;
  }

  std::size_t rows() const { return rows_; }

  /// Some row divides `target`.
  bool any_divides(const Exponent* target) const {
    return rows_ != 0 && kernels::active().find_divisor(buf_.data(), rows_, stride_, target, n_) != rows_;
  }
  bool any_divides(const Monomial& m) const { return any_divides(m.data()); }

 private:
  std::size_t n_;
  std::size_t stride_;
  std::size_t rows_ = 0;
  std::vector<Exponent> buf_;
};

}  // namespace wofreg::detail
