#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "kernels.hpp"
#include "rng.hpp"
#include "samplers.hpp"

namespace ermat {

// Empirical tail of | ||Y|| - 1 | at a threshold grid, with Wilson score
// half-widths. The decay exponent is fitted from log-probabilities against
// sqrt(p) (t ^ t^3); the universal constants of the tail bound are never
// asserted, only measured.
struct TailEstimate {
  std::vector<double> thresholds;
  std::vector<double> empirical;
  std::vector<double> wilson_halfwidth;
  std::size_t trials = 0;
  std::optional<double> fitted_exponent;   // c0 estimate
  std::optional<double> fitted_prefactor;  // c1 estimate
};

struct MomentEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
};

struct ConcentrationConfig {
  VectorFamily family;
  std::size_t n = 0;  // matrix order; family.dimension is p
  Kernel kernel;
  std::vector<double> thresholds;
  std::size_t trials = 0;
};

// Per threshold t: empirical frequency of (statistic - mean >= t) against
// the Azuma envelope exp(-n t^2 / (8 ||f||_BV^2)); flagged when the
// empirical value exceeds the envelope by more than 3 Wilson half-widths.
struct ConcentrationCheck {
  std::vector<double> thresholds;
  std::vector<double> empirical;
  std::vector<double> wilson_halfwidth;
  std::vector<double> bound;
  std::vector<bool> flagged;
  std::size_t trials = 0;
  double statistic_mean = 0.0;
};

struct WilsonInterval {
  double center = 0.0;
  double halfwidth = 0.0;
};

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials,
                               double z = 1.96);

double azuma_bound(std::size_t n, double t, double bv_norm);

TailEstimate thin_shell_tail(const VectorFamily& family,
                             std::vector<double> thresholds, std::size_t trials,
                             RandomStream rng);

// Mean of (X_1^T X_2)^2 over independent pairs; equals 1/p exactly for any
// isotropic family.
MomentEstimate inner_product_moment(const VectorFamily& family,
                                    std::size_t trials, RandomStream rng);

// Estimate of p * E | ||Y|| - 1 |^{2 ell}.
MomentEstimate norm_moment_condition(const VectorFamily& family,
                                     std::size_t ell, std::size_t trials,
                                     RandomStream rng);

ConcentrationCheck statistic_concentration(
    const ConcentrationConfig& config,
    const std::function<double(double)>& test_function, double bv_norm,
    RandomStream rng, int threads = 1);

}  // namespace ermat
