// ermat command line: simulate / analyze / mp / check, all through the C
// API in ermat.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ermat.h"
#include "json.hpp"

namespace {

using nlohmann::json;

int exit_code_for(int status) {
  switch (status) {
    case ERMAT_E_INVALID:
    case ERMAT_E_PARSE:
    case ERMAT_E_UNSUPPORTED:
      return 2;
    case ERMAT_E_IO:
      return 3;
    case ERMAT_E_SOLVER:
      return 4;
    default:
      return 1;
  }
}

int report_error(int status) {
  const json record{{"error",
                     {{"code", ermat_status_name(status)},
                      {"message", ermat_last_error()}}}};
  std::cerr << record.dump() << "\n";
  return exit_code_for(status);
}

int report_error(const char* code, const std::string& message, int exit_code) {
  const json record{{"error", {{"code", code}, {"message", message}}}};
  std::cerr << record.dump() << "\n";
  return exit_code;
}

std::vector<double> split_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty()) out.push_back(std::stod(cell));
  }
  return out;
}

std::vector<std::size_t> split_sizes(const std::string& csv) {
  std::vector<std::size_t> out;
  for (double v : split_doubles(csv)) out.push_back(static_cast<std::size_t>(v));
  return out;
}

json kernel_spec_from_flag(const std::string& flag) {
  if (!flag.empty() && flag.front() == '{') {
    json spec = json::parse(flag, nullptr, false);
    if (spec.is_discarded()) {
      throw CLI::ValidationError("--kernel", "malformed kernel JSON");
    }
    return spec;
  }
  return json(flag);
}

struct StringGuard {
  char* s = nullptr;
  ~StringGuard() { ermat_string_free(s); }
};

int cmd_simulate(const std::string& config_path, long long seed_override,
                 const std::string& out_override, int threads_override) {
  std::ifstream in(config_path);
  if (!in) {
    return report_error("io-error", "cannot open config '" + config_path + "'",
                        3);
  }
  json cfg = json::parse(in, nullptr, false);
  if (cfg.is_discarded()) {
    return report_error("parse-error",
                        "config '" + config_path + "' is not valid JSON", 2);
  }
  if (seed_override >= 0) cfg["seed"] = static_cast<std::uint64_t>(seed_override);
  if (!out_override.empty()) cfg["out"] = out_override;
  if (threads_override >= 0) cfg["threads"] = threads_override;

  StringGuard report;
  const int rc = ermat_run_experiment(cfg.dump().c_str(), &report.s);
  if (rc != ERMAT_OK) return report_error(rc);

  const json rep = json::parse(report.s);
  for (const auto& run : rep["runs"]) {
    std::printf("n=%zu p=%zu", run["n"].get<std::size_t>(),
                run["p"].get<std::size_t>());
    const auto& med = run["medians"];
    for (const char* key :
         {"a_vs_law_ks", "a_vs_m_w2", "gram_vs_mp_ks"}) {
      if (med.contains(key)) {
        std::printf(" median_%s=%.6g", key, med[key].get<double>());
      }
    }
    std::printf("\n");
  }
  const auto violations = rep["violations"].get<std::size_t>();
  const auto failed = rep["failed_trials"].get<std::size_t>();
  if (!rep["config"]["out"].get<std::string>().empty()) {
    std::printf("report written to %s\n",
                rep["config"]["out"].get<std::string>().c_str());
  }
  if (violations > 0) {
    return report_error("inequality-violation",
                        std::to_string(violations) +
                            " perturbation-inequality checks failed",
                        5);
  }
  if (failed > 0) {
    return report_error("trial-failure",
                        std::to_string(failed) + " trials recorded errors", 4);
  }
  return 0;
}

int cmd_analyze(const std::string& input, const std::string& kernel_flag,
                bool center, const std::string& out_dir) {
  json spec;
  try {
    spec = kernel_spec_from_flag(kernel_flag);
  } catch (const CLI::ValidationError&) {
    return report_error("parse-error", "malformed --kernel JSON", 2);
  }
  StringGuard report;
  const int rc =
      ermat_analyze_dataset(input.c_str(), spec.dump().c_str(), center ? 1 : 0,
                            out_dir.empty() ? nullptr : out_dir.c_str(),
                            &report.s);
  if (rc != ERMAT_OK) return report_error(rc);
  std::printf("%s\n", report.s);
  return 0;
}

int cmd_mp(double y, double shift, double scale, bool quantiles, double from,
           double to, std::size_t points) {
  if (points < 2) points = 2;
  ermat_mp* law = nullptr;
  int rc = ermat_mp_create_affine(y, shift, scale, &law);
  if (rc != ERMAT_OK) return report_error(rc);

  double lo = 0.0, hi = 0.0, atom = 0.0, atom_at = 0.0;
  ermat_mp_info(law, &lo, &hi, &atom, &atom_at);
  std::printf("# MP law: y=%.17g shift=%.17g scale=%.17g support=[%.17g, %.17g]"
              " atom_mass=%.17g atom_at=%.17g\n",
              y, shift, scale, lo, hi, atom, atom_at);

  if (quantiles) {
    std::printf("# q\tquantile\n");
    for (std::size_t i = 0; i < points; ++i) {
      const double q = (static_cast<double>(i) + 1.0) /
                       (static_cast<double>(points) + 1.0);
      double x = 0.0;
      rc = ermat_mp_quantile(law, q, &x);
      if (rc != ERMAT_OK) break;
      std::printf("%.17g\t%.17g\n", q, x);
    }
  } else {
    double a = from, b = to;
    if (!(b > a)) {
      const double pad = 0.05 * (hi - lo + 1.0);
      a = lo - pad;
      b = hi + pad;
    }
    std::printf("# x\tdensity\tcdf\n");
    for (std::size_t i = 0; i < points; ++i) {
      const double x =
          a + (b - a) * static_cast<double>(i) /
                  static_cast<double>(points - 1);
      double dens = 0.0, cdf = 0.0;
      rc = ermat_mp_density(law, x, &dens);
      if (rc == ERMAT_OK) rc = ermat_mp_cdf(law, x, &cdf);
      if (rc != ERMAT_OK) break;
      std::printf("%.17g\t%.17g\t%.17g\n", x, dens, cdf);
    }
  }
  ermat_mp_destroy(law);
  return rc == ERMAT_OK ? 0 : report_error(rc);
}

int cmd_check(const json& cfg) {
  StringGuard tsv;
  const int rc = ermat_check(cfg.dump().c_str(), &tsv.s);
  if (rc != ERMAT_OK) return report_error(rc);
  std::fputs(tsv.s, stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ermat: spectra of Euclidean random matrices"};
  app.require_subcommand(1);

  // simulate
  std::string config_path;
  long long seed_override = -1;
  std::string out_override;
  int threads_override = -1;
  auto* simulate = app.add_subcommand(
      "simulate", "run a convergence experiment from a JSON config");
  simulate->add_option("--config", config_path, "experiment config JSON file")
      ->required();
  simulate->add_option("--seed", seed_override, "override the master seed");
  simulate->add_option("--out", out_override, "override the output directory");
  simulate->add_option("--threads", threads_override,
                       "worker threads (0 = all cores)");

  // analyze
  std::string input_path;
  std::string kernel_flag = "identity";
  bool center = false;
  std::string analyze_out;
  auto* analyze = app.add_subcommand(
      "analyze", "apply the spectral prediction to a CSV dataset");
  analyze->add_option("--input", input_path, "CSV file, rows = observations")
      ->required();
  analyze->add_option("--kernel", kernel_flag,
                      "kernel name or kernel spec JSON");
  analyze->add_flag("--center", center,
                    "center and rescale coordinates to empirical isotropy");
  analyze->add_option("--out", analyze_out, "directory for report files");

  // mp
  double y = 1.0, shift = 0.0, scale = 1.0;
  double from = 0.0, to = 0.0;
  std::size_t points = 200;
  bool quantiles = false;
  auto* mp = app.add_subcommand(
      "mp", "print density/CDF/quantile tables of an MP law as TSV");
  mp->add_option("--y", y, "ratio parameter y = lim p/n")->required();
  mp->add_option("--shift", shift, "affine shift");
  mp->add_option("--scale", scale, "affine scale (may be <= 0)");
  mp->add_option("--from", from, "table start (default: padded support)");
  mp->add_option("--to", to, "table end");
  mp->add_option("--points", points, "number of table rows");
  mp->add_flag("--quantiles", quantiles, "print a quantile table instead");

  // check
  std::string what, family = "gaussian";
  std::size_t p = 100, n = 0, trials = 1000, ell = 1;
  long long check_seed = 0;
  std::string thresholds, p_list, check_kernel = "identity";
  std::string test_function = "arctan";
  int check_threads = 0;
  auto* check = app.add_subcommand(
      "check", "Monte Carlo verification of tails, moments and concentration");
  check
      ->add_option("--what", what,
                   "thin-shell | ip-moment | norm-moment | concentration")
      ->required();
  check->add_option("--family", family, "vector family");
  check->add_option("--p", p, "dimension");
  check->add_option("--n", n, "matrix order (concentration)");
  check->add_option("--trials", trials, "Monte Carlo trials");
  check->add_option("--seed", check_seed, "master seed");
  check->add_option("--thresholds", thresholds, "comma-separated thresholds");
  check->add_option("--p-list", p_list, "comma-separated dimensions");
  check->add_option("--ell", ell, "moment order (norm-moment)");
  check->add_option("--kernel", check_kernel, "kernel (concentration)");
  check->add_option("--test-function", test_function, "arctan | constant");
  check->add_option("--threads", check_threads, "worker threads");

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) {
    return cmd_simulate(config_path, seed_override, out_override,
                        threads_override);
  }
  if (analyze->parsed()) {
    return cmd_analyze(input_path, kernel_flag, center, analyze_out);
  }
  if (mp->parsed()) {
    return cmd_mp(y, shift, scale, quantiles, from, to, points);
  }
  if (check->parsed()) {
    json cfg{{"what", what},
             {"family", family},
             {"trials", trials},
             {"seed", static_cast<std::uint64_t>(check_seed)}};
    cfg["p"] = p;
    if (n > 0) cfg["n"] = n;
    if (!thresholds.empty()) cfg["thresholds"] = split_doubles(thresholds);
    if (!p_list.empty()) cfg["p_list"] = split_sizes(p_list);
    cfg["ell"] = ell;
    try {
      cfg["kernel"] = kernel_spec_from_flag(check_kernel);
    } catch (const CLI::ValidationError&) {
      return report_error("parse-error", "malformed --kernel JSON", 2);
    }
    cfg["test_function"] = test_function;
    cfg["threads"] = check_threads;
    return cmd_check(cfg);
  }
  return 0;
}
