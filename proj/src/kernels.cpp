#include "kernels.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace ermat {

namespace {

double poly_eval(const std::vector<double>& coeffs, double x) {
  double r = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) r = r * x + coeffs[k];
  return r;
}

std::vector<double> poly_derivative(const std::vector<double>& coeffs) {
  std::vector<double> d;
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    d.push_back(static_cast<double>(k) * coeffs[k]);
  }
  if (d.empty()) d.push_back(0.0);
  return d;
}

}  // namespace

Kernel identity_kernel() {
  Kernel k;
  k.name = "identity";
  k.f0 = 0.0;
  k.f2 = 2.0;
  k.df2 = 1.0;
  k.d2f2 = 0.0;
  k.d3f2 = 0.0;
  k.evaluate = [](double x) { return x; };
  k.derivative = [](double) { return 1.0; };
  return k;
}

Kernel constant_kernel(double value) {
  Kernel k;
  k.name = "constant";
  k.f0 = value;
  k.f2 = value;
  k.evaluate = [value](double) { return value; };
  k.derivative = [](double) { return 0.0; };
  return k;
}

Kernel exp_kernel() {
  Kernel k;
  k.name = "exp";
  k.f0 = 1.0;
  k.f2 = std::exp(-2.0);
  k.df2 = -std::exp(-2.0);
  k.d2f2 = std::exp(-2.0);
  k.d3f2 = -std::exp(-2.0);
  k.evaluate = [](double x) { return std::exp(-x); };
  k.derivative = [](double x) { return -std::exp(-x); };
  return k;
}

Kernel sqrt_kernel() {
  Kernel k;
  k.name = "sqrt";
  const double s2 = std::sqrt(2.0);
  k.f0 = 0.0;
  k.f2 = s2;
  k.df2 = 1.0 / (2.0 * s2);
  k.d2f2 = -1.0 / (4.0 * 2.0 * s2);
  k.d3f2 = 3.0 / (8.0 * 4.0 * s2);
  k.evaluate = [](double x) { return std::sqrt(x); };
  k.derivative = [](double x) { return 0.5 / std::sqrt(x); };
  return k;
}

Kernel poly_kernel(std::vector<double> coeffs) {
  if (coeffs.empty()) {
    fail(ErrorCode::InvalidArgument, "polynomial kernel needs coefficients");
  }
  for (double c : coeffs) {
    if (!std::isfinite(c)) {
      fail(ErrorCode::InvalidArgument, "polynomial coefficients must be finite");
    }
  }
  const auto d1 = poly_derivative(coeffs);
  const auto d2 = poly_derivative(d1);
  const auto d3 = poly_derivative(d2);

  Kernel k;
  k.name = "poly";
  k.f0 = coeffs[0];
  k.f2 = poly_eval(coeffs, 2.0);
  k.df2 = poly_eval(d1, 2.0);
  k.d2f2 = poly_eval(d2, 2.0);
  k.d3f2 = poly_eval(d3, 2.0);
  k.evaluate = [coeffs](double x) { return poly_eval(coeffs, x); };
  k.derivative = [d1](double x) { return poly_eval(d1, x); };
  return k;
}

Kernel custom_kernel(double f0, double f2, double df2,
                     std::optional<double> d2f2, std::optional<double> d3f2,
                     std::vector<std::pair<double, double>> samples) {
  if (!std::isfinite(f0) || !std::isfinite(f2) || !std::isfinite(df2)) {
    fail(ErrorCode::InvalidArgument, "custom kernel values must be finite");
  }
  if (d3f2.has_value() && !d2f2.has_value()) {
    fail(ErrorCode::InvalidArgument,
         "custom kernel with d3f2 must also provide d2f2");
  }
  if (samples.size() < 2) {
    fail(ErrorCode::InvalidArgument,
         "custom kernel needs at least 2 (x, f(x)) samples");
  }
  std::sort(samples.begin(), samples.end());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i].first) || !std::isfinite(samples[i].second)) {
      fail(ErrorCode::InvalidArgument, "custom kernel samples must be finite");
    }
    if (i > 0 && samples[i].first <= samples[i - 1].first) {
      fail(ErrorCode::InvalidArgument,
           "custom kernel sample abscissae must be strictly increasing");
    }
  }

  Kernel k;
  k.name = "custom";
  k.f0 = f0;
  k.f2 = f2;
  k.df2 = df2;
  k.d2f2 = d2f2.value_or(0.0);
  k.d3f2 = d3f2.value_or(0.0);
  k.smoothness_order = 1 + (d2f2.has_value() ? 1 : 0) + (d3f2.has_value() ? 1 : 0);
  // Piecewise-linear interpolation of the sampled values; evaluation
  // outside the sampled range is a domain error.
  k.evaluate = [samples](double x) -> double {
    if (x < samples.front().first || x > samples.back().first) {
      fail(ErrorCode::Domain,
           "custom kernel evaluated at x = " + std::to_string(x) +
               ", outside the sampled range");
    }
    auto hi = std::lower_bound(
        samples.begin(), samples.end(), x,
        [](const std::pair<double, double>& s, double v) { return s.first < v; });
    if (hi == samples.begin()) return hi->second;
    const auto lo = hi - 1;
    if (hi == samples.end()) return lo->second;
    const double t = (x - lo->first) / (hi->first - lo->first);
    return lo->second + t * (hi->second - lo->second);
  };
  return k;
}

Kernel kernel_from_json(const nlohmann::json& spec) {
  nlohmann::json obj = spec;
  if (spec.is_string()) {
    obj = nlohmann::json{{"name", spec.get<std::string>()}};
  }
  if (!obj.is_object() || !obj.contains("name") || !obj["name"].is_string()) {
    fail(ErrorCode::Parse, "kernel spec must be a name or an object with a name");
  }
  const std::string name = obj["name"].get<std::string>();
  try {
    if (name == "identity") return identity_kernel();
    if (name == "constant") {
      return constant_kernel(obj.value("value", 1.0));
    }
    if (name == "exp") return exp_kernel();
    if (name == "sqrt") return sqrt_kernel();
    if (name == "poly") {
      if (!obj.contains("coeffs") || !obj["coeffs"].is_array()) {
        fail(ErrorCode::Parse, "poly kernel needs a coeffs array");
      }
      return poly_kernel(obj["coeffs"].get<std::vector<double>>());
    }
    if (name == "custom") {
      for (const char* field : {"f0", "f2", "df2", "samples"}) {
        if (!obj.contains(field)) {
          fail(ErrorCode::Parse,
               std::string("custom kernel is missing '") + field + "'");
        }
      }
      std::optional<double> d2, d3;
      if (obj.contains("d2f2")) d2 = obj["d2f2"].get<double>();
      if (obj.contains("d3f2")) d3 = obj["d3f2"].get<double>();
      std::vector<std::pair<double, double>> samples;
      for (const auto& s : obj["samples"]) {
        if (!s.is_array() || s.size() != 2) {
          fail(ErrorCode::Parse, "custom kernel samples must be [x, f(x)] pairs");
        }
        samples.emplace_back(s[0].get<double>(), s[1].get<double>());
      }
      return custom_kernel(obj["f0"].get<double>(), obj["f2"].get<double>(),
                           obj["df2"].get<double>(), d2, d3, std::move(samples));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("malformed kernel spec: ") + e.what());
  }
  fail(ErrorCode::Parse, "unknown kernel name '" + name + "'");
}

AffineCoefficients limit_coefficients(const Kernel& kernel) {
  return AffineCoefficients{kernel.f0 - kernel.f2 + 2.0 * kernel.df2,
                            -2.0 * kernel.df2};
}

TaylorTable taylor_coefficients(const Kernel& kernel) {
  if (kernel.smoothness_order < 3) {
    fail(ErrorCode::Unsupported,
         "taylor coefficients need derivatives up to order 3 at 2");
  }
  TaylorTable t;
  t.c[1][0] = t.c[0][1] = kernel.df2;
  t.c[2][0] = t.c[0][2] = 0.5 * kernel.d2f2;
  t.c[1][1] = kernel.d2f2;
  t.c[3][0] = t.c[0][3] = kernel.d3f2 / 6.0;
  t.c[2][1] = t.c[1][2] = 0.5 * kernel.d3f2;
  return t;
}

}  // namespace ermat
