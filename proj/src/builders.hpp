#pragma once

#include <optional>
#include <vector>

#include "kernels.hpp"
#include "samplers.hpp"
#include "symmetric_matrix.hpp"

namespace ermat {

// z_i = ||X_i||^2 - 1.
struct NormDeviations {
  std::vector<double> z;
};

struct EventEResult {
  double epsilon = 0.0;
  bool holds = false;
  double max_pair_dev = 0.0;  // max_{i != j} | ||X_i - X_j||^2 - 2 |
  double max_norm_dev = 0.0;  // max_i | ||X_i||^2 - 1 |
};

// The four matrices of the linearization chain between A and M.
// B is absent when the kernel carries no derivative map (custom kernels).
struct ProofChain {
  std::optional<SymmetricMatrix> b;
  SymmetricMatrix c;
  SymmetricMatrix d;
  SymmetricMatrix e;
};

// Squared pairwise distances, computed coordinate-wise per pair so that
// identical columns give exactly 0.
SymmetricMatrix pairwise_sq_dists(const DataMatrix& x,
                                  std::size_t order_cap = kDefaultOrderCap);

// A_ij = f(||X_i - X_j||^2); diagonal f(0) exactly.
SymmetricMatrix build_euclidean(const DataMatrix& x, const Kernel& kernel,
                                std::size_t order_cap = kDefaultOrderCap);
SymmetricMatrix apply_kernel_to_dists(const SymmetricMatrix& dists,
                                      const Kernel& kernel);

// Gram matrix X^T X.
SymmetricMatrix build_gram(const DataMatrix& x,
                           std::size_t order_cap = kDefaultOrderCap);

// M = (f(0) - f(2) + 2 f'(2)) I + f(2) J - 2 f'(2) X^T X.
SymmetricMatrix build_linearized(const DataMatrix& x, const Kernel& kernel,
                                 std::size_t order_cap = kDefaultOrderCap);
SymmetricMatrix build_linearized_from_gram(const SymmetricMatrix& gram,
                                           const Kernel& kernel);

ProofChain build_proof_chain(const DataMatrix& x, const Kernel& kernel,
                             std::size_t order_cap = kDefaultOrderCap);
ProofChain build_proof_chain_from_gram(const SymmetricMatrix& gram,
                                       const std::vector<double>& norms_sq,
                                       const Kernel& kernel);

NormDeviations norm_deviations(const DataMatrix& x);

EventEResult check_event(const DataMatrix& x, double epsilon);
EventEResult check_event_from_dists(const SymmetricMatrix& dists,
                                    const std::vector<double>& norms_sq,
                                    double epsilon);

std::vector<double> column_norms_sq(const DataMatrix& x);

}  // namespace ermat
