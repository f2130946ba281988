#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "rng.hpp"

namespace ermat {

// Cap on p*n elements of a sampled data matrix (doubles); 2^28 ~ 2 GiB.
inline constexpr std::size_t kDefaultElementCap = std::size_t{1} << 28;

// Isotropic vector family in dimension p: E Y = 0 and E[Y Y^T] = I / p.
// The per-family scalings that enforce the covariance are:
//   Gaussian       coordinates N(0, 1/p)
//   UniformBall    uniform on the ball of radius sqrt((p + 2) / p)
//   UniformSphere  uniform on the unit sphere (||Y|| = 1 exactly)
//   UniformCube    coordinates uniform on [-h, h], h = sqrt(3 / p)
//   Laplace        coordinates Laplace with scale 1 / sqrt(2 p)
// All are log-concave except UniformSphere.
struct VectorFamily {
  enum class Kind { Gaussian, UniformBall, UniformSphere, UniformCube, Laplace };

  Kind kind = Kind::Gaussian;
  std::size_t dimension = 0;  // p
};

VectorFamily::Kind family_kind_from_name(std::string_view name);
std::string_view family_name(VectorFamily::Kind kind);
bool family_is_log_concave(VectorFamily::Kind kind);

// p x n matrix whose columns are the sample vectors X_1..X_n, column-major.
class DataMatrix {
public:
  DataMatrix(std::size_t p, std::size_t n);

  std::size_t p() const { return p_; }
  std::size_t n() const { return n_; }

  std::span<double> col(std::size_t i) {
    return std::span<double>(data_.data() + i * p_, p_);
  }
  std::span<const double> col(std::size_t i) const {
    return std::span<const double>(data_.data() + i * p_, p_);
  }

  const std::vector<double>& storage() const { return data_; }
  std::vector<double>& storage() { return data_; }

private:
  std::size_t p_;
  std::size_t n_;
  std::vector<double> data_;
};

struct IsotropyReport {
  double mean_norm = 0.0;     // mean of ||X_i||
  double max_offdiag = 0.0;   // max_{k != l} |p * C_kl|, C the second-moment matrix
  double max_diag_dev = 0.0;  // max_k |p * C_kk - 1|
  std::size_t samples = 0;
};

// Plain left-to-right summation. Every squared norm the library compares
// against 1 goes through these, which is what makes the sphere family's
// exact-norm invariant meaningful.
double dot(std::span<const double> a, std::span<const double> b);
double norm_sq(std::span<const double> v);

std::vector<double> sample_vector(const VectorFamily& family, RandomStream& rng);

DataMatrix sample_data_matrix(const VectorFamily& family, std::size_t n,
                              RandomStream& rng,
                              std::size_t element_cap = kDefaultElementCap);

IsotropyReport check_isotropy(const DataMatrix& x);

}  // namespace ermat
