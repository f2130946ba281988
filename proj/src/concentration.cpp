#include "concentration.hpp"

#include <algorithm>
#include <cmath>

#include "builders.hpp"
#include "eigen_solver.hpp"
#include "errors.hpp"
#include "parallel.hpp"

namespace ermat {

namespace {

void require_trials(std::size_t trials, std::size_t minimum) {
  if (trials < minimum) {
    fail(ErrorCode::InvalidArgument,
         "need at least " + std::to_string(minimum) + " trials");
  }
}

void require_thresholds(const std::vector<double>& t) {
  for (double v : t) {
    if (std::isnan(v) || v < 0.0) {
      fail(ErrorCode::InvalidArgument, "thresholds must be >= 0");
    }
  }
}

}  // namespace

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials,
                               double z) {
  const double nt = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  WilsonInterval w;
  w.center = (phat + z2 / (2.0 * nt)) / denom;
  w.halfwidth =
      z * std::sqrt(phat * (1.0 - phat) / nt + z2 / (4.0 * nt * nt)) / denom;
  return w;
}

double azuma_bound(std::size_t n, double t, double bv_norm) {
  if (bv_norm == 0.0) return t > 0.0 ? 0.0 : 1.0;
  return std::exp(-static_cast<double>(n) * t * t / (8.0 * bv_norm * bv_norm));
}

TailEstimate thin_shell_tail(const VectorFamily& family,
                             std::vector<double> thresholds,
                             std::size_t trials, RandomStream rng) {
  require_trials(trials, 100);
  require_thresholds(thresholds);
  std::sort(thresholds.begin(), thresholds.end());

  std::vector<std::size_t> hits(thresholds.size(), 0);
  for (std::size_t k = 0; k < trials; ++k) {
    const std::vector<double> v = sample_vector(family, rng);
    const double dev = std::fabs(std::sqrt(norm_sq(v)) - 1.0);
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
      if (dev >= thresholds[t]) ++hits[t];
    }
  }

  TailEstimate est;
  est.trials = trials;
  est.thresholds = thresholds;
  est.empirical.resize(thresholds.size());
  est.wilson_halfwidth.resize(thresholds.size());
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    est.empirical[t] =
        static_cast<double>(hits[t]) / static_cast<double>(trials);
    est.wilson_halfwidth[t] = wilson_interval(hits[t], trials).halfwidth;
  }

  // Least-squares fit of log p against x = sqrt(p) (t ^ t^3), over
  // thresholds with t > 0 and at least one hit.
  const double sqrt_p = std::sqrt(static_cast<double>(family.dimension));
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    if (thresholds[t] <= 0.0 || hits[t] == 0) continue;
    const double x = sqrt_p * std::min(thresholds[t],
                                       thresholds[t] * thresholds[t] *
                                           thresholds[t]);
    const double y = std::log(est.empirical[t]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m >= 2) {
    const double md = static_cast<double>(m);
    const double det = md * sxx - sx * sx;
    if (det > 0.0) {
      const double slope = (md * sxy - sx * sy) / det;
      const double intercept = (sy - slope * sx) / md;
      est.fitted_exponent = -slope;
      est.fitted_prefactor = std::exp(intercept);
    }
  }
  return est;
}

MomentEstimate inner_product_moment(const VectorFamily& family,
                                    std::size_t trials, RandomStream rng) {
  require_trials(trials, 100);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < trials; ++k) {
    const std::vector<double> a = sample_vector(family, rng);
    const std::vector<double> b = sample_vector(family, rng);
    const double ip = dot(a, b);
    const double v = ip * ip;
    sum += v;
    sum_sq += v * v;
  }
  const double nt = static_cast<double>(trials);
  MomentEstimate est;
  est.trials = trials;
  est.value = sum / nt;
  const double var = std::max(0.0, sum_sq / nt - est.value * est.value);
  est.std_error = std::sqrt(var / nt);
  return est;
}

MomentEstimate norm_moment_condition(const VectorFamily& family,
                                     std::size_t ell, std::size_t trials,
                                     RandomStream rng) {
  if (ell < 1) fail(ErrorCode::InvalidArgument, "moment order ell must be >= 1");
  require_trials(trials, 100);
  const double pd = static_cast<double>(family.dimension);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < trials; ++k) {
    const std::vector<double> v = sample_vector(family, rng);
    const double dev = std::fabs(std::sqrt(norm_sq(v)) - 1.0);
    const double x = pd * std::pow(dev, 2.0 * static_cast<double>(ell));
    sum += x;
    sum_sq += x * x;
  }
  const double nt = static_cast<double>(trials);
  MomentEstimate est;
  est.trials = trials;
  est.value = sum / nt;
  const double var = std::max(0.0, sum_sq / nt - est.value * est.value);
  est.std_error = std::sqrt(var / nt);
  return est;
}

ConcentrationCheck statistic_concentration(
    const ConcentrationConfig& config,
    const std::function<double(double)>& test_function, double bv_norm,
    RandomStream rng, int threads) {
  require_trials(config.trials, 200);
  require_thresholds(config.thresholds);
  if (config.n == 0) fail(ErrorCode::InvalidArgument, "matrix order n must be >= 1");
  if (std::isnan(bv_norm) || bv_norm < 0.0) {
    fail(ErrorCode::InvalidArgument, "BV norm must be >= 0");
  }

  std::vector<double> stats(config.trials);
  parallel_for(config.trials, threads, [&](std::size_t k) {
    RandomStream trial_rng = rng.substream(k);
    const DataMatrix x =
        sample_data_matrix(config.family, config.n, trial_rng);
    const SymmetricMatrix a = build_euclidean(x, config.kernel);
    const std::vector<double> eigs = eigenvalues_symmetric(a);
    double s = 0.0;
    for (double lambda : eigs) s += test_function(lambda);
    stats[k] = s / static_cast<double>(eigs.size());
  });

  double mean = 0.0;
  for (double s : stats) mean += s;
  mean /= static_cast<double>(config.trials);

  ConcentrationCheck check;
  check.trials = config.trials;
  check.statistic_mean = mean;
  check.thresholds = config.thresholds;
  for (double t : config.thresholds) {
    std::size_t exceed = 0;
    for (double s : stats) {
      if (s - mean >= t) ++exceed;
    }
    const double emp =
        static_cast<double>(exceed) / static_cast<double>(config.trials);
    const double bound = azuma_bound(config.n, t, bv_norm);
    const double hw = wilson_interval(exceed, config.trials).halfwidth;
    check.empirical.push_back(emp);
    check.wilson_halfwidth.push_back(hw);
    check.bound.push_back(bound);
    check.flagged.push_back(emp > bound + 3.0 * hw);
  }
  return check;
}

}  // namespace ermat
