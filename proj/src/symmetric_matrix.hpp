#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "errors.hpp"

namespace ermat {

// Default cap on the order of dense symmetric matrices; eigensolving is
// cubic, so anything past this is almost certainly a configuration mistake.
inline constexpr std::size_t kDefaultOrderCap = 4096;

// Dense real symmetric matrix. Writes go through set(), which mirrors the
// entry, so entry(i, j) == entry(j, i) holds exactly.
class SymmetricMatrix {
public:
  explicit SymmetricMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "matrix order must be >= 1");
  }

  std::size_t order() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const {
    return a_[i * n_ + j];
  }

  void set(std::size_t i, std::size_t j, double v) {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
  }

  std::span<const double> data() const { return a_; }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += a_[i * n_ + i];
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::fabs(v));
    return m;
  }

  bool all_finite() const {
    for (double v : a_) {
      if (!std::isfinite(v)) return false;
    }
    return true;
  }

  static SymmetricMatrix difference(const SymmetricMatrix& a,
                                    const SymmetricMatrix& b) {
    if (a.order() != b.order()) {
      fail(ErrorCode::InvalidArgument, "matrix orders differ");
    }
    SymmetricMatrix d(a.order());
    for (std::size_t k = 0; k < d.a_.size(); ++k) d.a_[k] = a.a_[k] - b.a_[k];
    return d;
  }

private:
  std::size_t n_;
  std::vector<double> a_;
};

}  // namespace ermat
