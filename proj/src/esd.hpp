#pragma once

#include <vector>

#include "symmetric_matrix.hpp"

namespace ermat {

// Empirical spectral distribution: the uniform probability measure on a
// sorted eigenvalue multiset. The CDF is the right-continuous step function
// with jumps 1/n (ties aggregate).
class SpectralDistribution {
public:
  explicit SpectralDistribution(std::vector<double> eigenvalues);

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }

  double cdf(double x) const;       // #{lambda <= x} / n
  double cdf_left(double x) const;  // #{lambda <  x} / n
  double quantile(double q) const;  // q in (0, 1]

  double mean() const;
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

  // Mass of the zero cluster: eigenvalues with |lambda| <= 1e-8 * scale,
  // where scale is a norm of the matrix the spectrum came from.
  double mass_near_zero(double scale) const;

private:
  std::vector<double> values_;  // ascending
};

// ESD of a matrix spectrum. Eigenvalues within 1e-8 * max|lambda| of zero
// are snapped onto the exact zero atom (see mass_near_zero).
SpectralDistribution esd_of(const SymmetricMatrix& m);

}  // namespace ermat
