#include "esd.hpp"

#include <algorithm>
#include <cmath>

#include "eigen_solver.hpp"
#include "errors.hpp"

namespace ermat {

SpectralDistribution::SpectralDistribution(std::vector<double> eigenvalues)
    : values_(std::move(eigenvalues)) {
  if (values_.empty()) {
    fail(ErrorCode::InvalidArgument, "spectral distribution needs eigenvalues");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      fail(ErrorCode::InvalidArgument, "eigenvalues must be finite");
    }
  }
  std::sort(values_.begin(), values_.end());
}

double SpectralDistribution::cdf(double x) const {
  const auto it = std::upper_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) /
         static_cast<double>(values_.size());
}

double SpectralDistribution::cdf_left(double x) const {
  const auto it = std::lower_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) /
         static_cast<double>(values_.size());
}

double SpectralDistribution::quantile(double q) const {
  if (!(q > 0.0) || q > 1.0) {
    fail(ErrorCode::InvalidArgument, "quantile order must lie in (0, 1]");
  }
  const std::size_t n = values_.size();
  const double scaled = q * static_cast<double>(n);
  std::size_t index = static_cast<std::size_t>(std::ceil(scaled));
  if (index == 0) index = 1;
  if (index > n) index = n;
  return values_[index - 1];
}

double SpectralDistribution::mean() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

double SpectralDistribution::mass_near_zero(double scale) const {
  const double tol = 1e-8 * scale;
  std::size_t count = 0;
  for (double v : values_) {
    if (std::fabs(v) <= tol) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(values_.size());
}

SpectralDistribution esd_of(const SymmetricMatrix& m) {
  std::vector<double> eig = eigenvalues_symmetric(m);
  // Zero-atom clustering: eigenvalues within 1e-8 * max|lambda| of zero are
  // the solver's rendering of an exact kernel (rank deficiency, constant
  // kernels); collapse them onto the atom so step-function distances see it.
  double scale = 0.0;
  for (double v : eig) scale = std::max(scale, std::fabs(v));
  const double tol = 1e-8 * scale;
  for (double& v : eig) {
    if (std::fabs(v) <= tol) v = 0.0;
  }
  return SpectralDistribution(std::move(eig));
}

}  // namespace ermat
