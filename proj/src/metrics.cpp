#include "metrics.hpp"

#include <algorithm>
#include <cmath>

#include "eigen_solver.hpp"
#include "errors.hpp"

namespace ermat {

namespace {

constexpr double kSlack = 1e-8;

}  // namespace

double ks_distance(const SpectralDistribution& a,
                   const SpectralDistribution& b) {
  const auto& va = a.values();
  const auto& vb = b.values();
  const double na = static_cast<double>(va.size());
  const double nb = static_cast<double>(vb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double best = 0.0;
  while (i < va.size() || j < vb.size()) {
    double x;
    if (i == va.size()) {
      x = vb[j];
    } else if (j == vb.size()) {
      x = va[i];
    } else {
      x = std::min(va[i], vb[j]);
    }
    // value on the open interval ending at x
    best = std::max(best, std::fabs(static_cast<double>(i) / na -
                                    static_cast<double>(j) / nb));
    while (i < va.size() && va[i] == x) ++i;
    while (j < vb.size() && vb[j] == x) ++j;
    // value at x
    best = std::max(best, std::fabs(static_cast<double>(i) / na -
                                    static_cast<double>(j) / nb));
  }
  return best;
}

double ks_vs_law(const SpectralDistribution& a, const LimitLaw& law) {
  double best = 0.0;
  auto consider = [&](double x) {
    best = std::max(best, std::fabs(a.cdf_left(x) - law.cdf_left(x)));
    best = std::max(best, std::fabs(a.cdf(x) - law.cdf(x)));
  };
  for (double x : a.values()) consider(x);
  if (law.atom_mass() > 0.0) consider(law.atom_location());
  return best;
}

namespace {

double wasserstein_equal(const std::vector<double>& a,
                         const std::vector<double>& b, int order) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = std::fabs(a[k] - b[k]);
    acc += order == 1 ? d : d * d;
  }
  acc /= static_cast<double>(a.size());
  return order == 1 ? acc : std::sqrt(acc);
}

// Piecewise-constant quantile functions integrated over their common
// refinement; exact for atoms of rational mass.
double wasserstein_refined(const std::vector<double>& a,
                           const std::vector<double>& b, int order) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  std::size_t i = 0;
  std::size_t j = 0;
  double u = 0.0;
  double acc = 0.0;
  while (i < na && j < nb) {
    const double ua = static_cast<double>(i + 1) / static_cast<double>(na);
    const double ub = static_cast<double>(j + 1) / static_cast<double>(nb);
    const double next = std::min(ua, ub);
    const double width = next - u;
    if (width > 0.0) {
      const double d = std::fabs(a[i] - b[j]);
      acc += width * (order == 1 ? d : d * d);
    }
    if (ua <= next) ++i;
    if (ub <= next) ++j;
    u = next;
  }
  return order == 1 ? acc : std::sqrt(acc);
}

}  // namespace

double wasserstein(const SpectralDistribution& a, const SpectralDistribution& b,
                   int order) {
  if (order != 1 && order != 2) {
    fail(ErrorCode::InvalidArgument, "wasserstein order must be 1 or 2");
  }
  if (a.size() == b.size()) {
    return wasserstein_equal(a.values(), b.values(), order);
  }
  return wasserstein_refined(a.values(), b.values(), order);
}

SpectralDistribution discretize_law(const LimitLaw& law, std::size_t n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "discretization needs n >= 1");
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = law.quantile((static_cast<double>(i) + 0.5) /
                        static_cast<double>(n));
  }
  return SpectralDistribution(std::move(q));
}

DistanceReport distance_report(const SpectralDistribution& a,
                               const SpectralDistribution& b) {
  DistanceReport r;
  r.ks = ks_distance(a, b);
  r.w1 = wasserstein(a, b, 1);
  r.w2 = wasserstein(a, b, 2);
  r.d_upper = std::min(r.ks, r.w1);
  return r;
}

DistanceReport distance_report_vs_law(const SpectralDistribution& a,
                                      const LimitLaw& law,
                                      const SpectralDistribution& law_disc) {
  DistanceReport r;
  r.ks = ks_vs_law(a, law);
  r.w1 = wasserstein(a, law_disc, 1);
  r.w2 = wasserstein(a, law_disc, 2);
  r.d_upper = std::min(r.ks, r.w1);
  return r;
}

InequalityCheck verify_rank_inequality(const SpectralDistribution& esd_b,
                                       const SpectralDistribution& esd_c,
                                       const SymmetricMatrix& diff) {
  InequalityCheck check;
  check.lhs = ks_distance(esd_b, esd_c);
  check.rhs = static_cast<double>(numerical_rank(diff)) /
              static_cast<double>(diff.order());
  check.holds = check.lhs <= check.rhs + kSlack;
  return check;
}

InequalityCheck verify_rank_inequality(const SymmetricMatrix& b,
                                       const SymmetricMatrix& c) {
  return verify_rank_inequality(esd_of(b), esd_of(c),
                                SymmetricMatrix::difference(b, c));
}

InequalityCheck verify_hw_inequality(const SpectralDistribution& esd_b,
                                     const SpectralDistribution& esd_c,
                                     const SymmetricMatrix& diff) {
  InequalityCheck check;
  check.lhs = wasserstein(esd_b, esd_c, 2);
  check.rhs =
      diff.frobenius_norm() / std::sqrt(static_cast<double>(diff.order()));
  check.holds = check.lhs <= check.rhs + kSlack;
  return check;
}

InequalityCheck verify_hw_inequality(const SymmetricMatrix& b,
                                     const SymmetricMatrix& c) {
  return verify_hw_inequality(esd_of(b), esd_of(c),
                              SymmetricMatrix::difference(b, c));
}

}  // namespace ermat
