#include "ermat.h"

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "concentration.hpp"
#include "errors.hpp"
#include "experiment.hpp"
#include "json_io.hpp"
#include "kernels.hpp"
#include "mp_law.hpp"
#include "rng.hpp"

struct ermat_mp {
  ermat::LimitLaw law;
};

struct ermat_kernel {
  ermat::Kernel kernel;
};

namespace {

thread_local std::string g_last_error;

int code_of(ermat::ErrorCode c) {
  using ermat::ErrorCode;
  switch (c) {
    case ErrorCode::InvalidArgument: return ERMAT_E_INVALID;
    case ErrorCode::Domain: return ERMAT_E_DOMAIN;
    case ErrorCode::Capacity: return ERMAT_E_CAPACITY;
    case ErrorCode::Solver: return ERMAT_E_SOLVER;
    case ErrorCode::Io: return ERMAT_E_IO;
    case ErrorCode::Parse: return ERMAT_E_PARSE;
    case ErrorCode::Unsupported: return ERMAT_E_UNSUPPORTED;
    case ErrorCode::Internal: return ERMAT_E_INTERNAL;
  }
  return ERMAT_E_INTERNAL;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return ERMAT_OK;
  } catch (const ermat::Error& e) {
    g_last_error = e.what();
    return code_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return ERMAT_E_PARSE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ERMAT_E_INTERNAL;
  }
}

int invalid(const char* msg) {
  g_last_error = msg;
  return ERMAT_E_INVALID;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

nlohmann::json parse_json(const char* text, const char* what) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    ermat::fail(ermat::ErrorCode::Parse,
                std::string("malformed JSON in ") + what);
  }
  return j;
}

std::string check_tsv(const nlohmann::json& cfg);

}  // namespace

extern "C" {

const char* ermat_version(void) { return ermat::kToolVersion; }

const char* ermat_status_name(int status) {
  switch (status) {
    case ERMAT_OK: return "ok";
    case ERMAT_E_INVALID: return "invalid-argument";
    case ERMAT_E_DOMAIN: return "domain-error";
    case ERMAT_E_CAPACITY: return "capacity-exceeded";
    case ERMAT_E_SOLVER: return "solver-failure";
    case ERMAT_E_IO: return "io-error";
    case ERMAT_E_PARSE: return "parse-error";
    case ERMAT_E_UNSUPPORTED: return "unsupported";
    case ERMAT_E_INTERNAL: return "internal-error";
    default: return "unknown-status";
  }
}

const char* ermat_last_error(void) { return g_last_error.c_str(); }

void ermat_string_free(char* s) { delete[] s; }

int ermat_mp_create(double y, ermat_mp** out) {
  return ermat_mp_create_affine(y, 0.0, 1.0, out);
}

int ermat_mp_create_affine(double y, double shift, double scale,
                           ermat_mp** out) {
  if (out == nullptr) return invalid("output handle is null");
  *out = nullptr;
  return guarded([&] {
    *out = new ermat_mp{
        ermat::LimitLaw(ermat::MarchenkoPastur(y), shift, scale)};
  });
}

void ermat_mp_destroy(ermat_mp* law) { delete law; }

int ermat_mp_density(const ermat_mp* law, double x, double* out) {
  if (law == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] { *out = law->law.density(x); });
}

int ermat_mp_cdf(const ermat_mp* law, double x, double* out) {
  if (law == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] { *out = law->law.cdf(x); });
}

int ermat_mp_quantile(const ermat_mp* law, double q, double* out) {
  if (law == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] { *out = law->law.quantile(q); });
}

int ermat_mp_info(const ermat_mp* law, double* support_lo, double* support_hi,
                  double* atom_mass, double* atom_location) {
  if (law == nullptr) return invalid("null law handle");
  return guarded([&] {
    if (support_lo) *support_lo = law->law.support_low();
    if (support_hi) *support_hi = law->law.support_high();
    if (atom_mass) *atom_mass = law->law.atom_mass();
    if (atom_location) *atom_location = law->law.atom_location();
  });
}

int ermat_mp_sample(const ermat_mp* law, uint64_t seed, size_t count,
                    double* out) {
  if (law == nullptr || out == nullptr) return invalid("null argument");
  if (count == 0) return ERMAT_OK;
  return guarded([&] {
    ermat::RandomStream rng(seed);
    const std::vector<double> draws = law->law.sample(rng, count);
    std::memcpy(out, draws.data(), count * sizeof(double));
  });
}

int ermat_kernel_create(const char* spec_json, ermat_kernel** out) {
  if (spec_json == nullptr || out == nullptr) return invalid("null argument");
  *out = nullptr;
  return guarded([&] {
    nlohmann::json spec = nlohmann::json::parse(spec_json, nullptr, false);
    if (spec.is_discarded()) {
      // Allow a bare kernel name without JSON quoting.
      spec = nlohmann::json(std::string(spec_json));
    }
    *out = new ermat_kernel{ermat::kernel_from_json(spec)};
  });
}

void ermat_kernel_destroy(ermat_kernel* kernel) { delete kernel; }

int ermat_kernel_eval(const ermat_kernel* kernel, double x, double* out) {
  if (kernel == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] { *out = kernel->kernel.evaluate(x); });
}

int ermat_kernel_limit_law(const ermat_kernel* kernel, double* shift,
                           double* scale) {
  if (kernel == nullptr) return invalid("null kernel handle");
  return guarded([&] {
    const ermat::AffineCoefficients c =
        ermat::limit_coefficients(kernel->kernel);
    if (shift) *shift = c.shift;
    if (scale) *scale = c.scale;
  });
}

int ermat_run_experiment(const char* config_json, char** report_json) {
  if (config_json == nullptr || report_json == nullptr) {
    return invalid("null argument");
  }
  *report_json = nullptr;
  return guarded([&] {
    const nlohmann::json cfg_json = parse_json(config_json, "config");
    const ermat::ExperimentConfig cfg =
        ermat::experiment_config_from_json(cfg_json);
    const ermat::ExperimentReport report = ermat::run_experiment(cfg);
    *report_json = copy_string(ermat::dump_json(report.to_json()));
  });
}

int ermat_analyze_dataset(const char* csv_path, const char* kernel_json,
                          int center, const char* out_dir,
                          char** report_json) {
  if (csv_path == nullptr || kernel_json == nullptr || report_json == nullptr) {
    return invalid("null argument");
  }
  *report_json = nullptr;
  return guarded([&] {
    nlohmann::json spec = nlohmann::json::parse(kernel_json, nullptr, false);
    if (spec.is_discarded()) spec = nlohmann::json(std::string(kernel_json));
    const ermat::ExperimentReport report = ermat::analyze_dataset(
        csv_path, spec, center != 0, out_dir ? out_dir : "");
    *report_json = copy_string(ermat::dump_json(report.to_json()));
  });
}

int ermat_check(const char* config_json, char** tsv_out) {
  if (config_json == nullptr || tsv_out == nullptr) {
    return invalid("null argument");
  }
  *tsv_out = nullptr;
  return guarded([&] {
    const nlohmann::json cfg = parse_json(config_json, "check config");
    *tsv_out = copy_string(check_tsv(cfg));
  });
}

}  // extern "C"

namespace {

ermat::VectorFamily family_from(const nlohmann::json& cfg) {
  if (!cfg.contains("family") || !cfg["family"].is_string()) {
    ermat::fail(ermat::ErrorCode::Parse, "check config needs a 'family'");
  }
  if (!cfg.contains("p")) {
    ermat::fail(ermat::ErrorCode::Parse, "check config needs a dimension 'p'");
  }
  return ermat::VectorFamily{
      ermat::family_kind_from_name(cfg["family"].get<std::string>()),
      cfg["p"].get<std::size_t>()};
}

std::string row(std::initializer_list<double> values) {
  std::string out;
  bool first = true;
  for (double v : values) {
    if (!first) out += '\t';
    first = false;
    out += ermat::format_double(v);
  }
  out += '\n';
  return out;
}

std::string check_tsv(const nlohmann::json& cfg) {
  using ermat::RandomStream;
  if (!cfg.is_object() || !cfg.contains("what") || !cfg["what"].is_string()) {
    ermat::fail(ermat::ErrorCode::Parse, "check config needs a 'what' string");
  }
  const std::string what = cfg["what"].get<std::string>();
  const auto seed = cfg.value("seed", std::uint64_t{0});
  const auto trials = cfg.value("trials", std::size_t{1000});

  if (what == "thin-shell") {
    const ermat::VectorFamily family = family_from(cfg);
    std::vector<double> thresholds =
        cfg.value("thresholds", std::vector<double>{0.05, 0.1, 0.2, 0.4});
    const ermat::TailEstimate est = ermat::thin_shell_tail(
        family, std::move(thresholds), trials, RandomStream(seed));
    std::string out = "# thin-shell tail of | ||Y|| - 1 |, family=";
    out += ermat::family_name(family.kind);
    out += " p=" + std::to_string(family.dimension) +
           " trials=" + std::to_string(est.trials);
    if (est.fitted_exponent) {
      out += " fitted_exponent=" + ermat::format_double(*est.fitted_exponent);
      out += " fitted_prefactor=" +
             ermat::format_double(*est.fitted_prefactor);
    }
    out += "\n# threshold\tempirical\twilson_halfwidth\tfitted_envelope\n";
    const double sqrt_p = std::sqrt(static_cast<double>(family.dimension));
    for (std::size_t i = 0; i < est.thresholds.size(); ++i) {
      const double t = est.thresholds[i];
      double envelope = std::numeric_limits<double>::quiet_NaN();
      if (est.fitted_exponent) {
        envelope = *est.fitted_prefactor *
                   std::exp(-*est.fitted_exponent * sqrt_p *
                            std::min(t, t * t * t));
      }
      out += row({t, est.empirical[i], est.wilson_halfwidth[i], envelope});
    }
    return out;
  }

  if (what == "ip-moment") {
    const ermat::VectorFamily family = family_from(cfg);
    const ermat::MomentEstimate est =
        ermat::inner_product_moment(family, trials, RandomStream(seed));
    std::string out = "# E (X1^T X2)^2, family=";
    out += ermat::family_name(family.kind);
    out += " p=" + std::to_string(family.dimension);
    out += "\n# value\tstd_error\texpected_1_over_p\n";
    out += row({est.value, est.std_error,
                1.0 / static_cast<double>(family.dimension)});
    return out;
  }

  if (what == "norm-moment") {
    if (!cfg.contains("family")) {
      ermat::fail(ermat::ErrorCode::Parse, "check config needs a 'family'");
    }
    const auto kind =
        ermat::family_kind_from_name(cfg["family"].get<std::string>());
    const auto ell = cfg.value("ell", std::size_t{1});
    std::vector<std::size_t> p_list;
    if (cfg.contains("p_list")) {
      p_list = cfg["p_list"].get<std::vector<std::size_t>>();
    } else if (cfg.contains("p")) {
      p_list.push_back(cfg["p"].get<std::size_t>());
    } else {
      ermat::fail(ermat::ErrorCode::Parse,
                  "norm-moment check needs 'p' or 'p_list'");
    }
    std::string out = "# p * E | ||Y|| - 1 |^(2 ell), family=";
    out += ermat::family_name(kind);
    out += " ell=" + std::to_string(ell) + " trials=" + std::to_string(trials);
    out += "\n# p\tscaled_moment\tstd_error\n";
    for (std::size_t i = 0; i < p_list.size(); ++i) {
      const ermat::MomentEstimate est = ermat::norm_moment_condition(
          ermat::VectorFamily{kind, p_list[i]}, ell, trials,
          RandomStream(seed).substream(i));
      out += row({static_cast<double>(p_list[i]), est.value, est.std_error});
    }
    return out;
  }

  if (what == "concentration") {
    ermat::ConcentrationConfig cc;
    cc.family = family_from(cfg);
    if (!cfg.contains("n")) {
      ermat::fail(ermat::ErrorCode::Parse,
                  "concentration check needs a matrix order 'n'");
    }
    cc.n = cfg["n"].get<std::size_t>();
    cc.kernel = ermat::kernel_from_json(
        cfg.contains("kernel") ? cfg["kernel"] : nlohmann::json("identity"));
    cc.thresholds =
        cfg.value("thresholds", std::vector<double>{0.1, 0.3, 0.5});
    cc.trials = trials;
    const std::string fname = cfg.value("test_function", std::string("arctan"));
    std::function<double(double)> f;
    double bv = 0.0;
    if (fname == "arctan") {
      f = [](double x) { return std::atan(x); };
      bv = std::numbers::pi;
    } else if (fname == "constant") {
      f = [](double) { return 1.0; };
      bv = 0.0;
    } else {
      ermat::fail(ermat::ErrorCode::InvalidArgument,
                  "unknown test function '" + fname + "'");
    }
    const ermat::ConcentrationCheck check = ermat::statistic_concentration(
        cc, f, bv, RandomStream(seed), cfg.value("threads", 0));
    std::string out = "# concentration of the linear statistic, f=";
    out += fname;
    out += " bv_norm=" + ermat::format_double(bv);
    out += " n=" + std::to_string(cc.n) +
           " p=" + std::to_string(cc.family.dimension) +
           " trials=" + std::to_string(check.trials);
    out += " statistic_mean=" + ermat::format_double(check.statistic_mean);
    out += "\n# threshold\tempirical\twilson_halfwidth\tazuma_bound\tflagged\n";
    for (std::size_t i = 0; i < check.thresholds.size(); ++i) {
      out += row({check.thresholds[i], check.empirical[i],
                  check.wilson_halfwidth[i], check.bound[i],
                  check.flagged[i] ? 1.0 : 0.0});
    }
    return out;
  }

  ermat::fail(ermat::ErrorCode::InvalidArgument,
              "unknown check '" + what + "'");
}

}  // namespace
