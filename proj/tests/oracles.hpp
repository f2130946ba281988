// Test-side oracles, kept independent of the library's computation paths:
// a different quadrature substitution and rule for the MP law, counting
// loops for KS, breakpoint integration for W1, chi/chi-square facts from
// lgamma for the Gaussian family.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracles {

// Composite midpoint rule on a fixed grid.
inline double midpoint_integral(const std::function<double(double)>& f,
                                double a, double b, int cells) {
  const double h = (b - a) / cells;
  double acc = 0.0;
  for (int k = 0; k < cells; ++k) {
    acc += f(a + (k + 0.5) * h);
  }
  return acc * h;
}

// MP density integrals via the substitution x = mid + half * sin(t),
// which differs from the library's sin^2 substitution and uses the
// midpoint rule rather than adaptive Simpson.
struct MpOracle {
  double y, lo, hi;

  explicit MpOracle(double y_) : y(y_) {
    const double r = 1.0 / std::sqrt(y);
    lo = (1.0 - r) * (1.0 - r);
    hi = (1.0 + r) * (1.0 + r);
  }

  double atom() const { return std::max(1.0 - y, 0.0); }

  // integral of g(x) * density(x) over [lo, min(x_hi, hi)]
  double integral(const std::function<double(double)>& g, double x_hi,
                  int cells = 400000) const {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double t_hi =
        x_hi >= hi ? std::numbers::pi / 2.0
                   : std::asin(std::clamp((x_hi - mid) / half, -1.0, 1.0));
    return midpoint_integral(
        [&](double t) {
          const double c = std::cos(t);
          const double x = mid + half * std::sin(t);
          if (x <= 0.0) return 0.0;
          return g(x) * y / (2.0 * std::numbers::pi * x) * half * c * half * c;
        },
        -std::numbers::pi / 2.0, t_hi, cells);
  }

  double cont_mass() const {
    return integral([](double) { return 1.0; }, hi);
  }
  double mean() const {
    return integral([](double x) { return x; }, hi);
  }
  double second_moment() const {
    return integral([](double x) { return x * x; }, hi);
  }
  double cdf(double x) const {
    if (x < 0.0) return 0.0;
    double v = atom();
    if (x > lo) v += integral([](double) { return 1.0; }, x);
    return std::min(v, 1.0);
  }
};

// Brute-force KS between two samples: counting loops at every candidate
// point, from both sides.
inline double ks_brute(const std::vector<double>& a,
                       const std::vector<double>& b) {
  auto cdf_at = [](const std::vector<double>& v, double x, bool strict) {
    std::size_t c = 0;
    for (double t : v) {
      if (strict ? t < x : t <= x) ++c;
    }
    return static_cast<double>(c) / static_cast<double>(v.size());
  };
  std::vector<double> pts = a;
  pts.insert(pts.end(), b.begin(), b.end());
  double best = 0.0;
  for (double x : pts) {
    best = std::max(best, std::fabs(cdf_at(a, x, false) - cdf_at(b, x, false)));
    best = std::max(best, std::fabs(cdf_at(a, x, true) - cdf_at(b, x, true)));
  }
  return best;
}

// W1 = integral of |F_a - F_b| over the merged breakpoints.
inline double w1_brute(std::vector<double> a, std::vector<double> b) {
  std::vector<double> pts = a;
  pts.insert(pts.end(), b.begin(), b.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto cdf_at = [](const std::vector<double>& v, double x) {
    std::size_t c = 0;
    for (double t : v) {
      if (t <= x) ++c;
    }
    return static_cast<double>(c) / static_cast<double>(v.size());
  };
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    acc += std::fabs(cdf_at(a, pts[k]) - cdf_at(b, pts[k])) *
           (pts[k + 1] - pts[k]);
  }
  return acc;
}

// Riemann-sum W_p via quantile functions on a fine grid.
inline double wp_riemann(const std::vector<double>& a_sorted,
                         const std::vector<double>& b_sorted, int order,
                         int cells = 200001) {
  auto quant = [](const std::vector<double>& v, double u) {
    const auto n = static_cast<double>(v.size());
    auto idx = static_cast<std::size_t>(std::ceil(u * n));
    idx = std::clamp<std::size_t>(idx, 1, v.size());
    return v[idx - 1];
  };
  double acc = 0.0;
  for (int k = 0; k < cells; ++k) {
    const double u = (k + 0.5) / cells;
    const double d = std::fabs(quant(a_sorted, u) - quant(b_sorted, u));
    acc += order == 1 ? d : d * d;
  }
  acc /= cells;
  return order == 1 ? acc : std::sqrt(acc);
}

// E ||Y|| for the Gaussian family in dimension p (chi distribution).
inline double gaussian_mean_norm(std::size_t p) {
  const double pd = static_cast<double>(p);
  return std::sqrt(2.0 / pd) *
         std::exp(std::lgamma((pd + 1.0) / 2.0) - std::lgamma(pd / 2.0));
}

// E (||Y|| - 1)^2 for the Gaussian family; E ||Y||^2 = 1 exactly.
inline double gaussian_norm_dev_sq(std::size_t p) {
  return 2.0 - 2.0 * gaussian_mean_norm(p);
}

// Regularized lower incomplete gamma P(a, x); series and continued
// fraction.
inline double gammp(double a, double x) {
  if (x < 0.0 || a <= 0.0) return 0.0;
  if (x == 0.0) return 0.0;
  const double gln = std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - gln);
  }
  double b = x + 1.0 - a;
  double c = 1e300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return 1.0 - std::exp(-x + a * std::log(x) - gln) * h;
}

// P(chi^2_p <= x)
inline double chi2_cdf(std::size_t p, double x) {
  return gammp(static_cast<double>(p) / 2.0, x / 2.0);
}

// P(| ||Y|| - 1 | >= t) for the Gaussian family: ||Y||^2 ~ chi^2_p / p.
inline double gaussian_shell_tail(std::size_t p, double t) {
  const double pd = static_cast<double>(p);
  const double up = (1.0 + t) * (1.0 + t) * pd;
  const double down = std::max(0.0, (1.0 - t)) * std::max(0.0, (1.0 - t)) * pd;
  return (1.0 - chi2_cdf(p, up)) + (t < 1.0 ? chi2_cdf(p, down) : 0.0);
}

// Central finite differences at x with step h.
inline double fd1(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}
inline double fd2(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}
inline double fd3(const std::function<double(double)>& f, double x, double h) {
  return (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) /
         (2.0 * h * h * h);
}

}  // namespace oracles
