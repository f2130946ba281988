#include <cmath>

#include "doctest.h"
#include "errors.hpp"
#include "kernels.hpp"
#include "oracles.hpp"

using namespace ermat;

namespace {

std::vector<Kernel> builtin_kernels() {
  std::vector<Kernel> ks;
  ks.push_back(identity_kernel());
  ks.push_back(constant_kernel(0.75));
  ks.push_back(exp_kernel());
  ks.push_back(sqrt_kernel());
  ks.push_back(poly_kernel({1.0, -0.5, 0.25, -0.125}));
  return ks;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("limit coefficients of the named kernels") {
  const AffineCoefficients id = limit_coefficients(identity_kernel());
  CHECK(id.shift == 0.0);
  CHECK(id.scale == -2.0);

  const AffineCoefficients c = limit_coefficients(constant_kernel(3.5));
  CHECK(c.shift == 0.0);
  CHECK(c.scale == 0.0);

  const AffineCoefficients e = limit_coefficients(exp_kernel());
  CHECK(e.shift == doctest::Approx(1.0 - 3.0 * std::exp(-2.0)).epsilon(1e-15));
  CHECK(e.scale == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-15));
}

TEST_CASE("built-in kernels match their stored values at 0 and 2") {
  for (const Kernel& k : builtin_kernels()) {
    INFO("kernel ", k.name);
    CHECK(std::fabs(k.evaluate(0.0) - k.f0) <= 1e-12);
    CHECK(std::fabs(k.evaluate(2.0) - k.f2) <= 1e-12);
  }
}

TEST_CASE("stored derivatives match central finite differences at 2") {
  const double h = 1e-4;
  for (const Kernel& k : builtin_kernels()) {
    INFO("kernel ", k.name);
    CHECK(std::fabs(oracles::fd1(k.evaluate, 2.0, h) - k.df2) <= 1e-5);
    CHECK(std::fabs(oracles::fd2(k.evaluate, 2.0, h) - k.d2f2) <= 1e-5);
    // the third difference at h = 1e-4 sits on the double roundoff floor
    // (eps / h^3 ~ 2e-4); a wider step keeps the 1e-5 tolerance meaningful
    CHECK(std::fabs(oracles::fd3(k.evaluate, 2.0, 1e-2) - k.d3f2) <= 1e-5);
    if (k.has_derivative()) {
      CHECK(std::fabs(oracles::fd1(k.evaluate, 1.3, 1e-5) - k.derivative(1.3)) <=
            1e-5);
    }
  }
}

TEST_CASE("taylor table of the identity kernel") {
  const TaylorTable t = taylor_coefficients(identity_kernel());
  CHECK(t(1, 0) == 1.0);
  CHECK(t(0, 1) == 1.0);
  for (int k = 0; k <= 3; ++k) {
    for (int l = 0; l <= 3; ++l) {
      if (k + l < 1 || k + l > 3) continue;
      if ((k == 1 && l == 0) || (k == 0 && l == 1)) continue;
      CHECK(t(k, l) == 0.0);
    }
  }
}

TEST_CASE("taylor table of x^2") {
  const TaylorTable t = taylor_coefficients(poly_kernel({0.0, 0.0, 1.0}));
  CHECK(t(1, 0) == 4.0);
  CHECK(t(0, 1) == 4.0);
  CHECK(t(2, 0) == 1.0);
  CHECK(t(0, 2) == 1.0);
  CHECK(t(1, 1) == 2.0);
  CHECK(t(3, 0) == 0.0);
  CHECK(t(2, 1) == 0.0);
}

TEST_CASE("taylor table is symmetric and matches the one-variable expansion") {
  // On the diagonal z_i = z_j = z the two-variable sum collapses to the
  // univariate Taylor terms of f(2 + 2z) through order 3.
  for (const Kernel& k : builtin_kernels()) {
    if (k.smoothness_order < 3) continue;
    const TaylorTable t = taylor_coefficients(k);
    for (int a = 0; a <= 3; ++a) {
      for (int b = 0; b <= 3; ++b) {
        if (a + b < 1 || a + b > 3) continue;
        CHECK(t(a, b) == t(b, a));
      }
    }
    for (double z : {-0.21, -0.05, 0.0, 0.08, 0.3}) {
      double two_var = 0.0;
      for (int a = 0; a <= 3; ++a) {
        for (int b = 0; b <= 3; ++b) {
          if (a + b < 1 || a + b > 3) continue;
          two_var += t(a, b) * std::pow(z, a) * std::pow(z, b);
        }
      }
      const double s = 2.0 * z;
      const double one_var =
          k.df2 * s + k.d2f2 / 2.0 * s * s + k.d3f2 / 6.0 * s * s * s;
      INFO("kernel ", k.name, " z ", z);
      CHECK(two_var == doctest::Approx(one_var).epsilon(1e-12));
    }
  }
}

TEST_CASE("custom kernels interpolate and respect their domain") {
  const Kernel k = custom_kernel(
      1.0, 0.5, -0.25, 0.125, -0.0625,
      {{0.0, 1.0}, {1.0, 0.7}, {2.0, 0.5}, {4.0, 0.4}});
  CHECK(k.smoothness_order == 3);
  CHECK_FALSE(k.has_derivative());
  CHECK(k.evaluate(0.0) == 1.0);
  CHECK(k.evaluate(2.0) == 0.5);
  CHECK(k.evaluate(0.5) == doctest::Approx(0.85));
  CHECK(k.evaluate(3.0) == doctest::Approx(0.45));
  CHECK_THROWS_AS((void)k.evaluate(4.5), Error);
  CHECK_THROWS_AS((void)k.evaluate(-0.5), Error);
}

TEST_CASE("custom kernel smoothness order tracks the provided derivatives") {
  const Kernel k1 = custom_kernel(1.0, 0.5, -0.25, std::nullopt, std::nullopt,
                                  {{0.0, 1.0}, {4.0, 0.4}});
  CHECK(k1.smoothness_order == 1);
  CHECK_THROWS_AS((void)taylor_coefficients(k1), Error);
  try {
    (void)taylor_coefficients(k1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsupported);
  }
}

TEST_CASE("kernel specs parse from JSON") {
  CHECK(kernel_from_json("identity").name == "identity");
  CHECK(kernel_from_json(nlohmann::json{{"name", "exp"}}).name == "exp");
  const Kernel c =
      kernel_from_json(nlohmann::json{{"name", "constant"}, {"value", 2.5}});
  CHECK(c.f0 == 2.5);
  const Kernel p = kernel_from_json(
      nlohmann::json{{"name", "poly"}, {"coeffs", {1.0, 2.0}}});
  CHECK(p.evaluate(3.0) == doctest::Approx(7.0));
  const Kernel u = kernel_from_json(nlohmann::json{
      {"name", "custom"},
      {"f0", 1.0},
      {"f2", 0.5},
      {"df2", -0.25},
      {"samples", {{0.0, 1.0}, {4.0, 0.4}}}});
  CHECK(u.smoothness_order == 1);

  CHECK_THROWS_AS((void)kernel_from_json("no-such-kernel"), Error);
  CHECK_THROWS_AS((void)kernel_from_json(nlohmann::json{{"name", "poly"}}),
                  Error);
  CHECK_THROWS_AS(
      (void)kernel_from_json(nlohmann::json{{"name", "custom"}, {"f0", 1.0}}),
      Error);
  CHECK_THROWS_AS((void)kernel_from_json(nlohmann::json(42)), Error);
}

TEST_CASE("constant kernel collapses the limit law to a point mass") {
  const AffineCoefficients c = limit_coefficients(constant_kernel(-1.25));
  CHECK(c.shift == 0.0);
  CHECK(c.scale == 0.0);
}

}  // TEST_SUITE
