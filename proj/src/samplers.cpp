#include "samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace ermat {

namespace {

void require_dimension(const VectorFamily& family) {
  if (family.dimension == 0) {
    fail(ErrorCode::InvalidArgument, "vector family dimension must be >= 1");
  }
}

void fill_gaussian(std::vector<double>& v, RandomStream& rng) {
  for (auto& x : v) x = rng.next_gaussian();
}

// One repair attempt: rescale v to unit norm, then rebuild the
// largest-magnitude coordinate in place as sqrt(1 - rest_sum) so the
// left-to-right norm accumulation lands on 1.0 (rest_sum is the same
// accumulation with that slot zeroed; adding 0.0 is exact). An ulp sweep of
// the same coordinate mops up residual rounding; the fl-sum is monotone in
// its square, which moves by ~2 v^2 ulps per step, fine enough to hit the
// rounding window of 1.0 whenever v^2 <= 3/4. The coordinate keeps its slot
// and sign, so the coordinates stay exchangeable and the family isotropic.
// For tiny p with one dominant coordinate the lattice can straddle the
// window; a few nudges of the second-largest coordinate re-seat it, and
// failing that the caller rejects the draw.
bool try_exact_unit_repair(std::vector<double>& v) {
  const std::size_t p = v.size();
  const double s = std::sqrt(norm_sq(v));
  if (s == 0.0 || !std::isfinite(s)) return false;
  for (auto& x : v) x /= s;

  std::size_t jmax = 0;
  for (std::size_t k = 1; k < p; ++k) {
    if (std::fabs(v[k]) > std::fabs(v[jmax])) jmax = k;
  }
  std::size_t j2 = jmax == 0 ? 1 : 0;
  for (std::size_t k = 0; k < p; ++k) {
    if (k != jmax && std::fabs(v[k]) > std::fabs(v[j2])) j2 = k;
  }

  constexpr double inf = std::numeric_limits<double>::infinity();
  double& knob = v[jmax];
  const double sign = knob < 0.0 ? -1.0 : 1.0;
  for (int outer = 0; outer < 16; ++outer) {
    knob = 0.0;
    const double rest = norm_sq(v);
    if (!(rest < 1.0)) return false;
    knob = sign * std::sqrt(1.0 - rest);
    int prev_side = 0;
    for (int step = 0; step < 4096; ++step) {
      const double total = norm_sq(v);
      if (total == 1.0) return true;
      const int side = total > 1.0 ? 1 : -1;
      if (prev_side != 0 && side != prev_side) break;  // straddles the window
      prev_side = side;
      const double toward = side > 0 ? 0.0 : (sign > 0.0 ? inf : -inf);
      const double next = std::nextafter(knob, toward);
      if (next == knob) break;
      knob = next;
    }
    // Shift the second-largest coordinate one ulp to re-seat the lattice.
    const double total = norm_sq(v);
    const double toward = (total > 1.0) ? 0.0 : (v[j2] >= 0.0 ? inf : -inf);
    v[j2] = std::nextafter(v[j2], toward);
  }
  return false;
}

void normalize_to_exact_unit(std::vector<double>& v, RandomStream& rng) {
  if (v.size() == 1) {
    v[0] = rng.next_unit() < 0.5 ? -1.0 : 1.0;
    return;
  }
  for (int attempt = 0; attempt < 100; ++attempt) {
    if (try_exact_unit_repair(v)) return;
    fill_gaussian(v, rng);
  }
  fail(ErrorCode::Internal, "sphere normalization did not reach exact unit norm");
}

}  // namespace

VectorFamily::Kind family_kind_from_name(std::string_view name) {
  if (name == "gaussian") return VectorFamily::Kind::Gaussian;
  if (name == "uniform-ball") return VectorFamily::Kind::UniformBall;
  if (name == "uniform-sphere") return VectorFamily::Kind::UniformSphere;
  if (name == "uniform-cube") return VectorFamily::Kind::UniformCube;
  if (name == "laplace") return VectorFamily::Kind::Laplace;
  fail(ErrorCode::InvalidArgument,
       "unknown vector family '" + std::string(name) + "'");
}

std::string_view family_name(VectorFamily::Kind kind) {
  switch (kind) {
    case VectorFamily::Kind::Gaussian: return "gaussian";
    case VectorFamily::Kind::UniformBall: return "uniform-ball";
    case VectorFamily::Kind::UniformSphere: return "uniform-sphere";
    case VectorFamily::Kind::UniformCube: return "uniform-cube";
    case VectorFamily::Kind::Laplace: return "laplace";
  }
  fail(ErrorCode::Internal, "unreachable family kind");
}

bool family_is_log_concave(VectorFamily::Kind kind) {
  return kind != VectorFamily::Kind::UniformSphere;
}

DataMatrix::DataMatrix(std::size_t p, std::size_t n)
    : p_(p), n_(n), data_(p * n, 0.0) {}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm_sq(std::span<const double> v) { return dot(v, v); }

std::vector<double> sample_vector(const VectorFamily& family, RandomStream& rng) {
  require_dimension(family);
  const std::size_t p = family.dimension;
  std::vector<double> v(p);
  const double pd = static_cast<double>(p);

  switch (family.kind) {
    case VectorFamily::Kind::Gaussian: {
      const double scale = 1.0 / std::sqrt(pd);
      for (auto& x : v) x = scale * rng.next_gaussian();
      break;
    }
    case VectorFamily::Kind::UniformBall: {
      // Gaussian direction times U^{1/p} radius; no rejection at high p.
      fill_gaussian(v, rng);
      double s = std::sqrt(norm_sq(v));
      while (s == 0.0) {
        fill_gaussian(v, rng);
        s = std::sqrt(norm_sq(v));
      }
      const double radius = std::sqrt((pd + 2.0) / pd) *
                            std::pow(rng.next_unit_open(), 1.0 / pd);
      const double scale = radius / s;
      for (auto& x : v) x *= scale;
      break;
    }
    case VectorFamily::Kind::UniformSphere: {
      fill_gaussian(v, rng);
      normalize_to_exact_unit(v, rng);
      break;
    }
    case VectorFamily::Kind::UniformCube: {
      const double half_width = std::sqrt(3.0 / pd);
      for (auto& x : v) x = half_width * (2.0 * rng.next_unit() - 1.0);
      break;
    }
    case VectorFamily::Kind::Laplace: {
      const double scale = 1.0 / std::sqrt(2.0 * pd);
      for (auto& x : v) x = rng.next_laplace(scale);
      break;
    }
  }
  return v;
}

DataMatrix sample_data_matrix(const VectorFamily& family, std::size_t n,
                              RandomStream& rng, std::size_t element_cap) {
  require_dimension(family);
  if (n == 0) {
    fail(ErrorCode::InvalidArgument, "sample count n must be >= 1");
  }
  const std::size_t p = family.dimension;
  if (p > element_cap / n) {
    fail(ErrorCode::Capacity,
         "data matrix of " + std::to_string(p) + "x" + std::to_string(n) +
             " doubles exceeds the configured element cap");
  }
  DataMatrix x(p, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<double> v = sample_vector(family, rng);
    std::copy(v.begin(), v.end(), x.col(i).begin());
  }
  return x;
}

IsotropyReport check_isotropy(const DataMatrix& x) {
  const std::size_t p = x.p();
  const std::size_t n = x.n();
  if (n < 2) {
    fail(ErrorCode::InvalidArgument, "isotropy check needs at least 2 samples");
  }
  IsotropyReport report;
  report.samples = n;

  double norm_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    norm_sum += std::sqrt(norm_sq(x.col(i)));
  }
  report.mean_norm = norm_sum / static_cast<double>(n);

  // Second-moment matrix, one row at a time to keep memory O(p).
  const double pd = static_cast<double>(p);
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> row(p);
  for (std::size_t k = 0; k < p; ++k) {
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = x.col(i);
      const double xk = c[k];
      for (std::size_t l = k; l < p; ++l) row[l] += xk * c[l];
    }
    const double diag = pd * row[k] * inv_n;
    report.max_diag_dev = std::max(report.max_diag_dev, std::fabs(diag - 1.0));
    for (std::size_t l = k + 1; l < p; ++l) {
      report.max_offdiag =
          std::max(report.max_offdiag, std::fabs(pd * row[l] * inv_n));
    }
  }
  return report;
}

}  // namespace ermat
