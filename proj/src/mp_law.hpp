#pragma once

#include <vector>

#include "kernels.hpp"
#include "rng.hpp"

namespace ermat {

// Marchenko-Pastur law with ratio parameter y = lim p/n (the law commonly
// written with parameter 1/y): atom (1 - y)^+ at 0 plus the density
//   y / (2 pi x) * sqrt((y_+ - x)(x - y_-)) on [y_-, y_+],
// y_{+-} = (1 +- 1/sqrt(y))^2. CDF integrals use adaptive Simpson after the
// substitution x = y_- + (y_+ - y_-) sin^2(theta), which removes the
// square-root endpoint singularities.
class MarchenkoPastur {
public:
  explicit MarchenkoPastur(double y);

  double y() const { return y_; }
  double edge_low() const { return lo_; }
  double edge_high() const { return hi_; }
  double atom_mass() const { return atom_; }

  double density(double x) const;
  double cdf(double x) const;
  double cdf_left(double x) const;  // left limit (drops the atom at 0)
  double quantile(double q) const;  // q in (0, 1]; bisection to 1e-10

  // i.i.d. draws: the atom yields exact zeros, the continuous part is
  // inverted through a cached cumulative table.
  std::vector<double> sample(RandomStream& rng, std::size_t count) const;

  double total_mass() const;  // atom + integral of the density
  double mean() const;
  double variance() const;

private:
  double integrand_theta(double theta) const;
  double continuous_cdf_to(double x) const;

  double y_ = 0.0;
  double lo_ = 0.0;
  double hi_ = 0.0;
  double atom_ = 0.0;
  std::vector<double> cum_table_;  // cumulative mass at theta grid nodes
};

// Law of shift + scale * S with S ~ MarchenkoPastur. scale may be zero
// (point mass at shift) or negative (orientation-reversing pushforward).
class LimitLaw {
public:
  LimitLaw(MarchenkoPastur base, double shift, double scale);
  static LimitLaw from_kernel(const Kernel& kernel, double y);

  const MarchenkoPastur& base() const { return base_; }
  double shift() const { return shift_; }
  double scale() const { return scale_; }
  bool is_point_mass() const { return scale_ == 0.0; }

  double atom_mass() const;
  double atom_location() const { return shift_; }
  double support_low() const;
  double support_high() const;

  double cdf(double x) const;
  double cdf_left(double x) const;
  double density(double x) const;  // continuous part only
  double quantile(double q) const;

  std::vector<double> sample(RandomStream& rng, std::size_t count) const;

private:
  MarchenkoPastur base_;
  double shift_;
  double scale_;
};

// Adaptive Simpson quadrature with absolute tolerance; exposed for reuse.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol);

}  // namespace ermat
