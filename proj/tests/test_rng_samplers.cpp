#include <cmath>

#include "doctest.h"
#include "errors.hpp"
#include "samplers.hpp"

using namespace ermat;

namespace {

double mc_mean_norm_sq(const VectorFamily& family, std::size_t draws,
                       RandomStream& rng, double* std_error) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < draws; ++k) {
    const double v = norm_sq(sample_vector(family, rng));
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(draws);
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);
  *std_error = std::sqrt(var / n);
  return mean;
}

}  // namespace

TEST_SUITE("samplers") {

TEST_CASE("streams are deterministic and splittable") {
  RandomStream a(123);
  RandomStream b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  RandomStream parent(9);
  RandomStream c1 = parent.substream(0);
  RandomStream c2 = parent.substream(0);
  RandomStream c3 = parent.substream(1);
  CHECK(c1.next_u64() == c2.next_u64());
  CHECK(c1.next_u64() != c3.next_u64());

  RandomStream u(4);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.next_unit();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    const double y = u.next_unit_open();
    CHECK(y > 0.0);
    CHECK(y < 1.0);
  }
}

TEST_CASE("sphere norms are exactly 1") {
  RandomStream rng(11);
  for (std::size_t p : {1u, 2u, 3u, 7u, 10u, 64u, 100u, 1000u}) {
    const VectorFamily fam{VectorFamily::Kind::UniformSphere, p};
    for (int rep = 0; rep < 50; ++rep) {
      const auto v = sample_vector(fam, rng);
      CHECK(norm_sq(v) == 1.0);
    }
  }
}

TEST_CASE("gaussian mean squared norm at p=1000 over 1e4 draws") {
  RandomStream rng(21);
  const VectorFamily fam{VectorFamily::Kind::Gaussian, 1000};
  double se = 0.0;
  const double mean = mc_mean_norm_sq(fam, 10000, rng, &se);
  CHECK(std::fabs(mean - 1.0) <= 5.0 * se);
}

TEST_CASE("every family has E||Y||^2 = 1 within 5 standard errors") {
  std::uint64_t seed = 31;
  for (auto kind :
       {VectorFamily::Kind::Gaussian, VectorFamily::Kind::UniformBall,
        VectorFamily::Kind::UniformSphere, VectorFamily::Kind::UniformCube,
        VectorFamily::Kind::Laplace}) {
    RandomStream rng(seed++);
    const VectorFamily fam{kind, 100};
    double se = 0.0;
    const double mean = mc_mean_norm_sq(fam, 10000, rng, &se);
    INFO("family ", family_name(kind));
    CHECK(std::fabs(mean - 1.0) <= 5.0 * std::max(se, 1e-300));
  }
}

TEST_CASE("cube coordinates stay within the scaled box") {
  RandomStream rng(5);
  const VectorFamily fam3{VectorFamily::Kind::UniformCube, 3};
  for (int rep = 0; rep < 200; ++rep) {
    for (double c : sample_vector(fam3, rng)) CHECK(std::fabs(c) <= 1.0);
  }
  const VectorFamily fam25{VectorFamily::Kind::UniformCube, 25};
  const double bound = std::sqrt(3.0 / 25.0);
  for (int rep = 0; rep < 200; ++rep) {
    for (double c : sample_vector(fam25, rng)) CHECK(std::fabs(c) <= bound);
  }
}

TEST_CASE("ball draws stay inside the scaled radius") {
  RandomStream rng(6);
  for (std::size_t p : {2u, 10u, 200u}) {
    const VectorFamily fam{VectorFamily::Kind::UniformBall, p};
    const double r2 = (static_cast<double>(p) + 2.0) / static_cast<double>(p);
    for (int rep = 0; rep < 100; ++rep) {
      CHECK(norm_sq(sample_vector(fam, rng)) <= r2 * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("data matrices are seed-deterministic") {
  const VectorFamily fam{VectorFamily::Kind::Gaussian, 2};
  RandomStream r1(77);
  RandomStream r2(77);
  const DataMatrix a = sample_data_matrix(fam, 3, r1);
  const DataMatrix b = sample_data_matrix(fam, 3, r2);
  REQUIRE(a.storage().size() == b.storage().size());
  for (std::size_t k = 0; k < a.storage().size(); ++k) {
    CHECK(a.storage()[k] == b.storage()[k]);
  }
}

TEST_CASE("sphere data matrix has unit columns") {
  RandomStream rng(8);
  const VectorFamily fam{VectorFamily::Kind::UniformSphere, 10};
  const DataMatrix x = sample_data_matrix(fam, 5, rng);
  for (std::size_t i = 0; i < x.n(); ++i) CHECK(norm_sq(x.col(i)) == 1.0);
}

TEST_CASE("laplace covariance diagonal via isotropy report") {
  RandomStream rng(13);
  const VectorFamily fam{VectorFamily::Kind::Laplace, 500};
  const DataMatrix x = sample_data_matrix(fam, 500, rng);
  const IsotropyReport rep = check_isotropy(x);
  // var(p xk^2) = 5 for Laplace at this scaling; 5 SE over n = 500 leaves
  // the max over 500 coordinates below 0.5 w.h.p.
  CHECK(rep.max_diag_dev <= 0.5);
  CHECK(rep.samples == 500);
}

TEST_CASE("isotropy report on gaussian data") {
  RandomStream rng(17);
  const VectorFamily fam{VectorFamily::Kind::Gaussian, 200};
  const DataMatrix x = sample_data_matrix(fam, 10000, rng);
  const IsotropyReport rep = check_isotropy(x);
  CHECK(rep.max_diag_dev <= 0.2);
  CHECK(rep.max_offdiag <= 0.2);
  CHECK(std::isfinite(rep.mean_norm));
}

TEST_CASE("isotropy report of sphere columns has mean norm exactly 1") {
  RandomStream rng(19);
  const VectorFamily fam{VectorFamily::Kind::UniformSphere, 32};
  const DataMatrix x = sample_data_matrix(fam, 64, rng);
  CHECK(check_isotropy(x).mean_norm == 1.0);
}

TEST_CASE("sphere coordinates stay exchangeable after the norm repair") {
  // Each coordinate must carry second moment 1/p; a repair that favored a
  // slot would show up as a diagonal deviation.
  RandomStream rng(23);
  for (std::size_t p : {2u, 3u, 16u}) {
    const VectorFamily fam{VectorFamily::Kind::UniformSphere, p};
    const DataMatrix x = sample_data_matrix(fam, 20000, rng);
    const IsotropyReport rep = check_isotropy(x);
    INFO("p = ", p);
    CHECK(rep.max_diag_dev <= 0.06);
  }
}

TEST_CASE("degenerate repeated column still yields a finite report") {
  DataMatrix x(3, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    x.col(i)[0] = 0.5;
    x.col(i)[1] = -0.25;
    x.col(i)[2] = 1.5;
  }
  const IsotropyReport rep = check_isotropy(x);
  CHECK(std::isfinite(rep.mean_norm));
  CHECK(std::isfinite(rep.max_offdiag));
  CHECK(std::isfinite(rep.max_diag_dev));
}

TEST_CASE("error paths") {
  RandomStream rng(1);
  CHECK_THROWS_AS((void)sample_vector({VectorFamily::Kind::Gaussian, 0}, rng),
                  Error);
  CHECK_THROWS_AS(
      (void)sample_data_matrix({VectorFamily::Kind::Gaussian, 100}, 0, rng),
      Error);
  try {
    (void)sample_data_matrix({VectorFamily::Kind::Gaussian, 100}, 100, rng,
                             /*element_cap=*/64);
    FAIL("expected a capacity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Capacity);
  }
  DataMatrix single(2, 1);
  CHECK_THROWS_AS((void)check_isotropy(single), Error);
}

}  // TEST_SUITE
