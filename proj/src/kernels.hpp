#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace ermat {

// Kernel f applied to squared distances. The limit theory only consumes
// local data at 0 and 2, so the derivatives at 2 are stored, never computed
// symbolically. `derivative` (f' as a map) is present for built-in kernels
// only; it is needed by the proof-chain matrix that evaluates f' away
// from 2.
struct Kernel {
  std::string name;
  double f0 = 0.0;    // f(0)
  double f2 = 0.0;    // f(2)
  double df2 = 0.0;   // f'(2)
  double d2f2 = 0.0;  // f''(2)
  double d3f2 = 0.0;  // f'''(2)
  int smoothness_order = 3;  // derivatives at 2 available up to this order

  std::function<double(double)> evaluate;
  std::function<double(double)> derivative;

  bool has_derivative() const { return static_cast<bool>(derivative); }
};

// Coefficients of the limiting law shift + scale * S with S ~ MP:
// shift = f(0) - f(2) + 2 f'(2), scale = -2 f'(2).
struct AffineCoefficients {
  double shift = 0.0;
  double scale = 0.0;
};

// Coefficients c_{kl} of the two-variable expansion of f(2 + z_i + z_j),
// valid for 1 <= k + l <= 3.
struct TaylorTable {
  double c[4][4] = {};

  double operator()(int k, int l) const { return c[k][l]; }
};

Kernel identity_kernel();
Kernel constant_kernel(double value);
Kernel exp_kernel();   // f(x) = exp(-x)
Kernel sqrt_kernel();  // f(x) = sqrt(x)
Kernel poly_kernel(std::vector<double> coeffs);  // f(x) = sum a_k x^k
Kernel custom_kernel(double f0, double f2, double df2,
                     std::optional<double> d2f2, std::optional<double> d3f2,
                     std::vector<std::pair<double, double>> samples);

// Accepts either a bare name string or an object
//   {"name": "identity" | "constant" | "exp" | "sqrt" | "poly" | "custom", ...}
// with "value" for constant, "coeffs" for poly, and
// {f0, f2, df2[, d2f2, d3f2], samples: [[x, f(x)], ...]} for custom.
Kernel kernel_from_json(const nlohmann::json& spec);

AffineCoefficients limit_coefficients(const Kernel& kernel);
TaylorTable taylor_coefficients(const Kernel& kernel);

}  // namespace ermat
