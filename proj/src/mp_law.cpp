#include "mp_law.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace ermat {

namespace {

constexpr double kQuadTol = 1e-10;
constexpr double kBisectTol = 1e-10;
constexpr int kSampleTableNodes = 8193;

double simpson_rule(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                            double fa, double b, double fb, double m, double fm,
                            double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_rule(a, fa, m, fm, flm);
  const double right = simpson_rule(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol,
                              depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = simpson_rule(a, fa, b, fb, fm);
  return adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, abs_tol, 48);
}

MarchenkoPastur::MarchenkoPastur(double y) : y_(y) {
  if (!(y > 0.0) || !std::isfinite(y)) {
    fail(ErrorCode::InvalidArgument, "MP ratio parameter y must be positive");
  }
  const double inv_sqrt_y = 1.0 / std::sqrt(y);
  lo_ = (1.0 - inv_sqrt_y) * (1.0 - inv_sqrt_y);
  hi_ = (1.0 + inv_sqrt_y) * (1.0 + inv_sqrt_y);
  atom_ = std::max(1.0 - y, 0.0);

  // Cumulative continuous mass on a fixed theta grid; only the sampler's
  // inverse transform reads this, cdf() integrates adaptively.
  cum_table_.assign(kSampleTableNodes, 0.0);
  const double h =
      (std::numbers::pi / 2.0) / static_cast<double>(kSampleTableNodes - 1);
  double acc = 0.0;
  for (int k = 1; k < kSampleTableNodes; ++k) {
    const double a = static_cast<double>(k - 1) * h;
    const double b = static_cast<double>(k) * h;
    const double m = 0.5 * (a + b);
    acc += (b - a) / 6.0 *
           (integrand_theta(a) + 4.0 * integrand_theta(m) + integrand_theta(b));
    cum_table_[k] = acc;
  }
}

double MarchenkoPastur::integrand_theta(double theta) const {
  const double s = std::sin(theta);
  const double s2 = s * s;
  const double span = hi_ - lo_;
  const double x = lo_ + span * s2;
  if (x <= 0.0) {
    // Only reachable at theta == 0 with y == 1 (lo_ == 0); limit value.
    return lo_ == 0.0 ? y_ * span / std::numbers::pi : 0.0;
  }
  return y_ * span * span * s2 * (1.0 - s2) / (std::numbers::pi * x);
}

double MarchenkoPastur::density(double x) const {
  if (!(x > lo_) || !(x < hi_) || x <= 0.0) return 0.0;
  return y_ / (2.0 * std::numbers::pi * x) * std::sqrt((hi_ - x) * (x - lo_));
}

double MarchenkoPastur::continuous_cdf_to(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) x = hi_;
  const double ratio = std::clamp((x - lo_) / (hi_ - lo_), 0.0, 1.0);
  const double theta = std::asin(std::sqrt(ratio));
  return adaptive_simpson([this](double t) { return integrand_theta(t); }, 0.0,
                          theta, kQuadTol);
}

double MarchenkoPastur::cdf(double x) const {
  if (x < 0.0) return 0.0;
  if (x >= hi_) return 1.0;
  const double v = atom_ + continuous_cdf_to(x);
  return std::clamp(v, 0.0, 1.0);
}

double MarchenkoPastur::cdf_left(double x) const {
  return cdf(x) - (x == 0.0 ? atom_ : 0.0);
}

double MarchenkoPastur::quantile(double q) const {
  if (!(q > 0.0) || q > 1.0) {
    fail(ErrorCode::InvalidArgument, "quantile order must lie in (0, 1]");
  }
  if (q <= atom_) return 0.0;
  double a = lo_;
  double b = hi_;
  while (b - a > kBisectTol) {
    const double m = 0.5 * (a + b);
    if (cdf(m) >= q) {
      b = m;
    } else {
      a = m;
    }
  }
  return 0.5 * (a + b);
}

std::vector<double> MarchenkoPastur::sample(RandomStream& rng,
                                            std::size_t count) const {
  std::vector<double> out(count);
  const double h =
      (std::numbers::pi / 2.0) / static_cast<double>(kSampleTableNodes - 1);
  const double cont_total = cum_table_.back();
  for (auto& v : out) {
    const double u = rng.next_unit();
    if (u < atom_) {
      v = 0.0;
      continue;
    }
    // Map the remaining mass onto the continuous part and invert the
    // cached cumulative table, linearly within a grid cell.
    const double target =
        std::clamp((u - atom_) / (1.0 - atom_), 0.0, 1.0) * cont_total;
    const auto it =
        std::lower_bound(cum_table_.begin(), cum_table_.end(), target);
    double theta;
    if (it == cum_table_.begin()) {
      theta = 0.0;
    } else {
      const std::size_t k = static_cast<std::size_t>(it - cum_table_.begin());
      const double c0 = cum_table_[k - 1];
      const double c1 = cum_table_[k];
      const double frac = (c1 > c0) ? (target - c0) / (c1 - c0) : 0.0;
      theta = (static_cast<double>(k - 1) + frac) * h;
    }
    const double s = std::sin(theta);
    v = std::clamp(lo_ + (hi_ - lo_) * s * s, lo_, hi_);
  }
  return out;
}

double MarchenkoPastur::total_mass() const {
  return atom_ + continuous_cdf_to(hi_);
}

double MarchenkoPastur::mean() const {
  const double span = hi_ - lo_;
  return adaptive_simpson(
      [this, span](double t) {
        const double s = std::sin(t);
        return (lo_ + span * s * s) * integrand_theta(t);
      },
      0.0, std::numbers::pi / 2.0, kQuadTol);
}

double MarchenkoPastur::variance() const {
  const double span = hi_ - lo_;
  const double m2 = adaptive_simpson(
      [this, span](double t) {
        const double s = std::sin(t);
        const double x = lo_ + span * s * s;
        return x * x * integrand_theta(t);
      },
      0.0, std::numbers::pi / 2.0, kQuadTol);
  const double m1 = mean();
  return m2 - m1 * m1;
}

LimitLaw::LimitLaw(MarchenkoPastur base, double shift, double scale)
    : base_(std::move(base)), shift_(shift), scale_(scale) {
  if (!std::isfinite(shift) || !std::isfinite(scale)) {
    fail(ErrorCode::InvalidArgument, "limit law shift/scale must be finite");
  }
}

LimitLaw LimitLaw::from_kernel(const Kernel& kernel, double y) {
  const AffineCoefficients c = limit_coefficients(kernel);
  return LimitLaw(MarchenkoPastur(y), c.shift, c.scale);
}

double LimitLaw::atom_mass() const {
  if (is_point_mass()) return 1.0;
  return base_.atom_mass();
}

double LimitLaw::support_low() const {
  if (is_point_mass()) return shift_;
  const double a = shift_ + scale_ * base_.edge_low();
  const double b = shift_ + scale_ * base_.edge_high();
  double lo = std::min(a, b);
  if (base_.atom_mass() > 0.0) lo = std::min(lo, shift_);
  return lo;
}

double LimitLaw::support_high() const {
  if (is_point_mass()) return shift_;
  const double a = shift_ + scale_ * base_.edge_low();
  const double b = shift_ + scale_ * base_.edge_high();
  double hi = std::max(a, b);
  if (base_.atom_mass() > 0.0) hi = std::max(hi, shift_);
  return hi;
}

double LimitLaw::cdf(double x) const {
  if (is_point_mass()) return x >= shift_ ? 1.0 : 0.0;
  const double t = (x - shift_) / scale_;
  if (scale_ > 0.0) return base_.cdf(t);
  // P(shift + scale S <= x) = P(S >= t) = 1 - F(t-).
  return 1.0 - base_.cdf_left(t);
}

double LimitLaw::cdf_left(double x) const {
  if (is_point_mass()) return x > shift_ ? 1.0 : 0.0;
  const double t = (x - shift_) / scale_;
  if (scale_ > 0.0) return base_.cdf_left(t);
  return 1.0 - base_.cdf(t);
}

double LimitLaw::density(double x) const {
  if (is_point_mass()) return 0.0;
  return base_.density((x - shift_) / scale_) / std::fabs(scale_);
}

double LimitLaw::quantile(double q) const {
  if (!(q > 0.0) || q > 1.0) {
    fail(ErrorCode::InvalidArgument, "quantile order must lie in (0, 1]");
  }
  if (is_point_mass()) return shift_;
  double a = support_low() - 1.0;
  double b = support_high() + 1.0;
  for (int it = 0; it < 200 && b - a > kBisectTol; ++it) {
    const double m = 0.5 * (a + b);
    if (cdf(m) >= q) {
      b = m;
    } else {
      a = m;
    }
  }
  return 0.5 * (a + b);
}

std::vector<double> LimitLaw::sample(RandomStream& rng,
                                     std::size_t count) const {
  std::vector<double> out;
  if (is_point_mass()) {
    out.assign(count, shift_);
    return out;
  }
  out = base_.sample(rng, count);
  for (auto& v : out) v = shift_ + scale_ * v;
  return out;
}

}  // namespace ermat
