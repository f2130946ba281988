#pragma once

#include <vector>

#include "symmetric_matrix.hpp"

namespace ermat {

// All n eigenvalues with multiplicity, ascending. Rejects non-finite
// entries; a solver that fails to converge raises ErrorCode::Solver.
std::vector<double> eigenvalues_symmetric(const SymmetricMatrix& m);

struct EigenSystem {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // column-major n x n, vectors[i*n + k] = v_i[k]
};

EigenSystem eigen_symmetric(const SymmetricMatrix& m);

// Rank with the shared numerical threshold: singular values (here |lambda|)
// at or below n * eps * max|lambda| count as zero.
std::size_t numerical_rank(const SymmetricMatrix& m);
std::size_t numerical_rank(const std::vector<double>& eigenvalues);

}  // namespace ermat
