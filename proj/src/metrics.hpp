#pragma once

#include "esd.hpp"
#include "mp_law.hpp"
#include "symmetric_matrix.hpp"

namespace ermat {

// Distances between spectral distributions. d itself (the Lipschitz-and-BV
// dual) is not computable in closed form on discrete measures; d_upper =
// min(ks, w1) is the reported upper bound.
struct DistanceReport {
  double ks = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
  double d_upper = 0.0;
};

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

// sup_x |F_a(x) - F_b(x)|, evaluated exactly at the merged jump points.
double ks_distance(const SpectralDistribution& a, const SpectralDistribution& b);

// sup_x |F_a(x) - F_law(x)|; exact for a step function against a
// continuous law with at most one atom (evaluated from both sides at every
// eigenvalue and at the atom).
double ks_vs_law(const SpectralDistribution& a, const LimitLaw& law);

// L^p-Wasserstein via the sorted (quantile) coupling, which is the optimal
// transport in one dimension. Unequal sizes use the common refinement of
// the two quantile step functions. order must be 1 or 2.
double wasserstein(const SpectralDistribution& a, const SpectralDistribution& b,
                   int order);

// n law quantiles at midpoints (i + 1/2)/n, used to approximate Wasserstein
// distances against a continuous law.
SpectralDistribution discretize_law(const LimitLaw& law, std::size_t n);

DistanceReport distance_report(const SpectralDistribution& a,
                               const SpectralDistribution& b);
DistanceReport distance_report_vs_law(const SpectralDistribution& a,
                                      const LimitLaw& law,
                                      const SpectralDistribution& law_disc);

// d_KS(mu_B, mu_C) <= rank(B - C) / n, with slack 1e-8.
InequalityCheck verify_rank_inequality(const SymmetricMatrix& b,
                                       const SymmetricMatrix& c);
InequalityCheck verify_rank_inequality(const SpectralDistribution& esd_b,
                                       const SpectralDistribution& esd_c,
                                       const SymmetricMatrix& diff);

// W_2(mu_B, mu_C) <= sqrt(tr((B - C)^2) / n), with slack 1e-8.
InequalityCheck verify_hw_inequality(const SymmetricMatrix& b,
                                     const SymmetricMatrix& c);
InequalityCheck verify_hw_inequality(const SpectralDistribution& esd_b,
                                     const SpectralDistribution& esd_c,
                                     const SymmetricMatrix& diff);

}  // namespace ermat
