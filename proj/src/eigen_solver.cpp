#include "eigen_solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace ermat {

namespace {

Eigen::Map<const Eigen::MatrixXd> as_eigen(const SymmetricMatrix& m) {
  // Row-major storage mapped as column-major; harmless since m is symmetric.
  return Eigen::Map<const Eigen::MatrixXd>(
      m.data().data(), static_cast<Eigen::Index>(m.order()),
      static_cast<Eigen::Index>(m.order()));
}

void require_finite(const SymmetricMatrix& m) {
  if (!m.all_finite()) {
    fail(ErrorCode::InvalidArgument, "matrix has non-finite entries");
  }
}

}  // namespace

std::vector<double> eigenvalues_symmetric(const SymmetricMatrix& m) {
  require_finite(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(as_eigen(m),
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::Solver, "symmetric eigensolver did not converge");
  }
  const auto& ev = solver.eigenvalues();
  std::vector<double> values(ev.data(), ev.data() + ev.size());
  std::sort(values.begin(), values.end());
  return values;
}

EigenSystem eigen_symmetric(const SymmetricMatrix& m) {
  require_finite(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(as_eigen(m));
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::Solver, "symmetric eigensolver did not converge");
  }
  const std::size_t n = m.order();
  EigenSystem out;
  out.values.assign(solver.eigenvalues().data(),
                    solver.eigenvalues().data() + n);
  out.vectors.assign(solver.eigenvectors().data(),
                     solver.eigenvectors().data() + n * n);
  return out;
}

std::size_t numerical_rank(const std::vector<double>& eigenvalues) {
  double max_abs = 0.0;
  for (double v : eigenvalues) max_abs = std::max(max_abs, std::fabs(v));
  if (max_abs == 0.0) return 0;
  const double tol = static_cast<double>(eigenvalues.size()) *
                     std::numeric_limits<double>::epsilon() * max_abs;
  std::size_t rank = 0;
  for (double v : eigenvalues) {
    if (std::fabs(v) > tol) ++rank;
  }
  return rank;
}

std::size_t numerical_rank(const SymmetricMatrix& m) {
  return numerical_rank(eigenvalues_symmetric(m));
}

}  // namespace ermat
