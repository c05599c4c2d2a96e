#pragma once

// Dense component arrays over the full index range 0..N-1, where N = 2n and index A < n
// stands for z^{A+1} while A >= n stands for zb^{A-n+1}.

#include <cstddef>
#include <vector>

#include "paraholo/dual.hpp"
#include "paraholo/paracomplex.hpp"

namespace paraholo {

/// T^C_{AB}
template <class S>
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int dim) : dim_(dim), data_(std::size_t(dim) * dim * dim) {}

  int dim() const noexcept { return dim_; }
  S& operator()(int c, int a, int b) { return data_[(std::size_t(c) * dim_ + a) * dim_ + b]; }
  const S& operator()(int c, int a, int b) const { return data_[(std::size_t(c) * dim_ + a) * dim_ + b]; }
  const std::vector<S>& data() const noexcept { return data_; }
  std::vector<S>& data() noexcept { return data_; }

 private:
  int dim_ = 0;
  std::vector<S> data_;
};

/// T^D_{C,AB}
template <class S>
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int dim) : dim_(dim), data_(std::size_t(dim) * dim * dim * dim) {}

  int dim() const noexcept { return dim_; }
  S& operator()(int d, int c, int a, int b) { return data_[((std::size_t(d) * dim_ + c) * dim_ + a) * dim_ + b]; }
  const S& operator()(int d, int c, int a, int b) const {
    return data_[((std::size_t(d) * dim_ + c) * dim_ + a) * dim_ + b];
  }
  const std::vector<S>& data() const noexcept { return data_; }
  std::vector<S>& data() noexcept { return data_; }

 private:
  int dim_ = 0;
  std::vector<S> data_;
};

template <class S>
double max_abs(const std::vector<S>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, abs_max(value_of(x)));
  return m;
}

inline double max_abs(const PCMatrix& m) { return max_abs(m.data()); }

/// Largest componentwise difference of two equally sized arrays.
inline double max_diff(const std::vector<ParaComplex>& a, const std::vector<ParaComplex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, abs_max(a[i] - b[i]));
  return m;
}

}  // namespace paraholo
