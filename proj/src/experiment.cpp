#include "experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "eigen_solver.hpp"
#include "errors.hpp"
#include "json_io.hpp"
#include "parallel.hpp"

namespace ermat {

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void push_ineq(std::vector<InequalityRecord>& out, const std::string& pair,
               const InequalityCheck& c) {
  out.push_back(InequalityRecord{pair, c.lhs, c.rhs, c.holds});
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    fail(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  }
  out << content;
  if (!out) fail(ErrorCode::Io, "write to '" + path.string() + "' failed");
}

nlohmann::ordered_json distances_json(const DistanceReport& r) {
  return nlohmann::ordered_json{
      {"ks", r.ks}, {"w1", r.w1}, {"w2", r.w2}, {"d_upper", r.d_upper}};
}

nlohmann::ordered_json checks_json(const std::vector<InequalityRecord>& checks) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    arr.push_back(nlohmann::ordered_json{
        {"pair", c.pair}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}});
  }
  return arr;
}

nlohmann::ordered_json trial_json(const TrialResult& t) {
  if (!t.ok) {
    return nlohmann::ordered_json{
        {"trial", t.trial}, {"status", "error"}, {"message", t.error}};
  }
  nlohmann::ordered_json j{
      {"trial", t.trial},
      {"status", "ok"},
      {"event",
       {{"epsilon", t.event.epsilon},
        {"holds", t.event.holds},
        {"max_pair_dev", t.event.max_pair_dev},
        {"max_norm_dev", t.event.max_norm_dev}}},
      {"a_vs_law", distances_json(t.a_vs_law)},
      {"a_vs_m", distances_json(t.a_vs_m)},
      {"gram_vs_mp", distances_json(t.gram_vs_mp)},
      {"chain_available", t.chain_available},
      {"b_available", t.b_available},
  };
  nlohmann::ordered_json chain = nlohmann::ordered_json::object();
  for (const auto& [name, w2] : t.chain_w2) chain[name] = w2;
  j["chain_w2"] = chain;
  j["rank_checks"] = checks_json(t.rank_checks);
  j["hw_checks"] = checks_json(t.hw_checks);
  j["esd_mean_a"] = t.esd_mean_a;
  j["gram_esd_mean"] = t.gram_esd_mean;
  j["gram_atom_mass"] = t.gram_atom_mass;
  return j;
}

}  // namespace

double default_event_epsilon(std::size_t n) {
  return std::pow(static_cast<double>(n), -0.125);
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorCode::Parse, "config must be a JSON object");
  ExperimentConfig cfg;
  try {
    if (!j.contains("family") || !j["family"].is_string()) {
      fail(ErrorCode::Parse, "config needs a 'family' string");
    }
    cfg.family = family_kind_from_name(j["family"].get<std::string>());
    if (!j.contains("kernel")) fail(ErrorCode::Parse, "config needs a 'kernel'");
    cfg.kernel_spec = j["kernel"];
    kernel_from_json(cfg.kernel_spec);  // validate early
    if (!j.contains("y")) fail(ErrorCode::Parse, "config needs a ratio 'y'");
    cfg.y = j["y"].get<double>();
    if (!j.contains("n_list") || !j["n_list"].is_array()) {
      fail(ErrorCode::Parse, "config needs an 'n_list' array");
    }
    cfg.n_list = j["n_list"].get<std::vector<std::size_t>>();
    cfg.trials = j.value("trials", std::size_t{1});
    cfg.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("epsilon") && !j["epsilon"].is_null()) {
      cfg.epsilon = j["epsilon"].get<double>();
    }
    cfg.out_dir = j.value("out", std::string{});
    cfg.threads = j.value("threads", 0);
    cfg.hist_bins = j.value("bins", std::size_t{64});
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("malformed config: ") + e.what());
  }

  if (!(cfg.y > 0.0) || !std::isfinite(cfg.y)) {
    fail(ErrorCode::InvalidArgument, "ratio y must be positive");
  }
  if (cfg.n_list.empty()) {
    fail(ErrorCode::InvalidArgument, "n_list must be nonempty");
  }
  for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
    if (cfg.n_list[i] == 0) {
      fail(ErrorCode::InvalidArgument, "n_list entries must be >= 1");
    }
    if (cfg.n_list[i] > kDefaultOrderCap) {
      fail(ErrorCode::Capacity,
           "n_list entry " + std::to_string(cfg.n_list[i]) +
               " exceeds the dense-matrix cap of " +
               std::to_string(kDefaultOrderCap));
    }
    if (i > 0 && cfg.n_list[i] <= cfg.n_list[i - 1]) {
      fail(ErrorCode::InvalidArgument, "n_list must be strictly increasing");
    }
  }
  if (cfg.trials == 0) {
    fail(ErrorCode::InvalidArgument, "trials must be >= 1");
  }
  if (cfg.epsilon && (std::isnan(*cfg.epsilon) || *cfg.epsilon < 0.0)) {
    fail(ErrorCode::InvalidArgument, "epsilon must be >= 0");
  }
  if (cfg.hist_bins < 2) {
    fail(ErrorCode::InvalidArgument, "bins must be >= 2");
  }
  if (cfg.threads < 0) {
    fail(ErrorCode::InvalidArgument, "threads must be >= 0");
  }
  return cfg;
}

TrialResult evaluate_trial(const DataMatrix& x, const Kernel& kernel,
                           const LimitLaw& law, const LimitLaw& mp_law,
                           const SpectralDistribution& law_disc,
                           const SpectralDistribution& mp_disc,
                           double epsilon) {
  TrialResult r;
  r.ok = true;

  const std::vector<double> norms = column_norms_sq(x);
  const SymmetricMatrix dists = pairwise_sq_dists(x, x.n());
  r.event = check_event_from_dists(dists, norms, epsilon);

  const SymmetricMatrix a = apply_kernel_to_dists(dists, kernel);
  const SymmetricMatrix gram = build_gram(x, x.n());
  const SymmetricMatrix m = build_linearized_from_gram(gram, kernel);

  const SpectralDistribution esd_a = esd_of(a);
  const SpectralDistribution esd_m = esd_of(m);
  const SpectralDistribution esd_g = esd_of(gram);

  r.eigs_a = esd_a.values();
  r.esd_mean_a = esd_a.mean();
  r.gram_esd_mean = esd_g.mean();
  r.gram_atom_mass = esd_g.mass_near_zero(
      std::max(std::fabs(esd_g.min()), std::fabs(esd_g.max())));

  r.a_vs_law = distance_report_vs_law(esd_a, law, law_disc);
  r.a_vs_m = distance_report(esd_a, esd_m);
  r.gram_vs_mp = distance_report_vs_law(esd_g, mp_law, mp_disc);

  // Chain A -> (B) -> C -> D -> E -> M with pairwise W2 and the two exact
  // perturbation inequalities on every adjacent pair plus (A, M).
  std::vector<std::pair<std::string, const SymmetricMatrix*>> nodes;
  nodes.emplace_back("a", &a);
  ProofChain chain{std::nullopt, SymmetricMatrix(1), SymmetricMatrix(1),
                   SymmetricMatrix(1)};
  if (kernel.smoothness_order >= 3) {
    chain = build_proof_chain_from_gram(gram, norms, kernel);
    r.chain_available = true;
    r.b_available = chain.b.has_value();
    if (chain.b) nodes.emplace_back("b", &*chain.b);
    nodes.emplace_back("c", &chain.c);
    nodes.emplace_back("d", &chain.d);
    nodes.emplace_back("e", &chain.e);
  }
  nodes.emplace_back("m", &m);

  std::vector<SpectralDistribution> node_esds;
  node_esds.reserve(nodes.size());
  for (const auto& [name, mat] : nodes) {
    if (name == "a") {
      node_esds.push_back(esd_a);
    } else if (name == "m") {
      node_esds.push_back(esd_m);
    } else {
      node_esds.push_back(esd_of(*mat));
    }
  }

  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const std::string pair = nodes[k].first + "_" + nodes[k + 1].first;
    const SymmetricMatrix diff =
        SymmetricMatrix::difference(*nodes[k].second, *nodes[k + 1].second);
    if (nodes.size() > 2) {
      r.chain_w2.emplace_back(
          pair, wasserstein(node_esds[k], node_esds[k + 1], 2));
    }
    push_ineq(r.rank_checks, pair,
              verify_rank_inequality(node_esds[k], node_esds[k + 1], diff));
    push_ineq(r.hw_checks, pair,
              verify_hw_inequality(node_esds[k], node_esds[k + 1], diff));
  }
  if (nodes.size() > 2) {
    const SymmetricMatrix diff_am = SymmetricMatrix::difference(a, m);
    push_ineq(r.rank_checks, "a_m",
              verify_rank_inequality(esd_a, esd_m, diff_am));
    push_ineq(r.hw_checks, "a_m", verify_hw_inequality(esd_a, esd_m, diff_am));
  }
  return r;
}

namespace {

void aggregate_run(RunResult& run, const LimitLaw& law,
                   std::vector<double>* pooled_a_out) {
  std::vector<const TrialResult*> ok;
  for (const auto& t : run.trials) {
    if (t.ok) ok.push_back(&t);
  }
  if (ok.empty()) return;

  auto med = [&](const std::string& key, auto getter) {
    std::vector<double> v;
    v.reserve(ok.size());
    for (const TrialResult* t : ok) v.push_back(getter(*t));
    run.medians.emplace_back(key, median_of(std::move(v)));
  };
  med("a_vs_law_ks", [](const TrialResult& t) { return t.a_vs_law.ks; });
  med("a_vs_law_w1", [](const TrialResult& t) { return t.a_vs_law.w1; });
  med("a_vs_law_w2", [](const TrialResult& t) { return t.a_vs_law.w2; });
  med("a_vs_m_ks", [](const TrialResult& t) { return t.a_vs_m.ks; });
  med("a_vs_m_w1", [](const TrialResult& t) { return t.a_vs_m.w1; });
  med("a_vs_m_w2", [](const TrialResult& t) { return t.a_vs_m.w2; });
  med("gram_vs_mp_ks", [](const TrialResult& t) { return t.gram_vs_mp.ks; });
  med("gram_vs_mp_w1", [](const TrialResult& t) { return t.gram_vs_mp.w1; });
  med("gram_vs_mp_w2", [](const TrialResult& t) { return t.gram_vs_mp.w2; });
  med("event_max_pair_dev",
      [](const TrialResult& t) { return t.event.max_pair_dev; });
  med("event_max_norm_dev",
      [](const TrialResult& t) { return t.event.max_norm_dev; });

  // Pooled eigenvalues across trials estimate the mean spectral measure;
  // reported separately from the single-realization distances.
  std::vector<double> pooled;
  for (const TrialResult* t : ok) {
    pooled.insert(pooled.end(), t->eigs_a.begin(), t->eigs_a.end());
  }
  const SpectralDistribution pooled_esd(pooled);
  run.averaged.emplace_back("a_vs_law_ks", ks_vs_law(pooled_esd, law));
  if (pooled_a_out) *pooled_a_out = std::move(pooled);
}

std::string eigenvalue_csv(const RunResult& run) {
  std::string out;
  for (const auto& t : run.trials) {
    if (!t.ok) continue;
    out += std::to_string(t.trial);
    for (double v : t.eigs_a) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string histogram_tsv(const SpectralDistribution& esd, const LimitLaw& law,
                          std::size_t bins) {
  if (bins < 2) fail(ErrorCode::InvalidArgument, "bins must be >= 2");
  double lo = std::min(esd.min(), law.support_low());
  double hi = std::max(esd.max(), law.support_high());
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<std::size_t> counts(bins, 0);
  for (double v : esd.values()) {
    auto idx = static_cast<long long>((v - lo) / width);
    idx = std::clamp<long long>(idx, 0, static_cast<long long>(bins) - 1);
    ++counts[static_cast<std::size_t>(idx)];
  }
  const double total = static_cast<double>(esd.size());

  std::string out = "# bin_center\tempirical_density\tpredicted_density\n";
  for (std::size_t b = 0; b < bins; ++b) {
    const double center = lo + (static_cast<double>(b) + 0.5) * width;
    const double empirical = static_cast<double>(counts[b]) / (total * width);
    double predicted = law.density(center);
    if (law.atom_mass() > 0.0) {
      const double atom = law.atom_location();
      if (atom >= lo + static_cast<double>(b) * width &&
          atom < lo + static_cast<double>(b + 1) * width) {
        predicted += law.atom_mass() / width;
      }
    }
    out += format_double(center);
    out += '\t';
    out += format_double(empirical);
    out += '\t';
    out += format_double(predicted);
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json ExperimentReport::to_json() const {
  nlohmann::ordered_json j{
      {"schema_version", kReportSchemaVersion},
      {"tool_version", kToolVersion},
      {"config", config_echo},
      {"law", {{"y", law_y}, {"shift", law_shift}, {"scale", law_scale}}},
  };
  nlohmann::ordered_json runs_json = nlohmann::ordered_json::array();
  for (const auto& run : runs) {
    nlohmann::ordered_json rj{{"n", run.n},
                              {"p", run.p},
                              {"y_effective", run.y_effective},
                              {"epsilon", run.epsilon}};
    nlohmann::ordered_json trials_json = nlohmann::ordered_json::array();
    for (const auto& t : run.trials) trials_json.push_back(trial_json(t));
    rj["trials"] = trials_json;
    nlohmann::ordered_json med = nlohmann::ordered_json::object();
    for (const auto& [k, v] : run.medians) med[k] = v;
    rj["medians"] = med;
    nlohmann::ordered_json avg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : run.averaged) avg[k] = v;
    rj["averaged"] = avg;
    runs_json.push_back(rj);
  }
  j["runs"] = runs_json;
  j["violations"] = violations;
  j["failed_trials"] = failed_trials;
  return j;
}

namespace {

void tally_failures(ExperimentReport& report) {
  for (const auto& run : report.runs) {
    for (const auto& t : run.trials) {
      if (!t.ok) {
        ++report.failed_trials;
        continue;
      }
      for (const auto& c : t.rank_checks) {
        if (!c.holds) ++report.violations;
      }
      for (const auto& c : t.hw_checks) {
        if (!c.holds) ++report.violations;
      }
    }
  }
}

void write_outputs(const ExperimentReport& report, const ExperimentConfig& cfg,
                   const std::vector<std::vector<double>>& pooled_per_run,
                   const std::vector<LimitLaw>& laws_per_run) {
  if (cfg.out_dir.empty()) return;
  const std::filesystem::path dir(cfg.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    fail(ErrorCode::Io, "cannot create output directory '" + cfg.out_dir + "'");
  }
  write_text_file(dir / "report.json", dump_json(report.to_json()) + "\n");
  for (std::size_t k = 0; k < report.runs.size(); ++k) {
    const auto& run = report.runs[k];
    const std::string suffix = "_n" + std::to_string(run.n);
    write_text_file(dir / ("eigenvalues" + suffix + ".csv"),
                    eigenvalue_csv(run));
    if (!pooled_per_run[k].empty()) {
      const SpectralDistribution pooled(pooled_per_run[k]);
      write_text_file(dir / ("histogram" + suffix + ".tsv"),
                      histogram_tsv(pooled, laws_per_run[k], cfg.hist_bins));
    }
  }
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  const Kernel kernel = kernel_from_json(cfg.kernel_spec);
  const AffineCoefficients coeffs = limit_coefficients(kernel);

  ExperimentReport report;
  report.law_y = cfg.y;
  report.law_shift = coeffs.shift;
  report.law_scale = coeffs.scale;
  report.config_echo = nlohmann::ordered_json{
      {"family", std::string(family_name(cfg.family))},
      {"kernel", cfg.kernel_spec},
      {"y", cfg.y},
      {"n_list", cfg.n_list},
      {"trials", cfg.trials},
      {"seed", cfg.seed},
      {"epsilon", cfg.epsilon ? nlohmann::ordered_json(*cfg.epsilon)
                              : nlohmann::ordered_json(nullptr)},
      {"out", cfg.out_dir},
      {"threads", cfg.threads},
      {"bins", cfg.hist_bins},
  };

  const RandomStream master(cfg.seed);
  std::vector<std::vector<double>> pooled_per_run;
  std::vector<LimitLaw> laws_per_run;

  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    const std::size_t n = cfg.n_list[ni];
    const auto p = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(cfg.y * static_cast<double>(n))));
    const double y_eff =
        static_cast<double>(p) / static_cast<double>(n);

    RunResult run;
    run.n = n;
    run.p = p;
    run.y_effective = y_eff;
    run.epsilon = cfg.epsilon.value_or(default_event_epsilon(n));

    const LimitLaw law(MarchenkoPastur(y_eff), coeffs.shift, coeffs.scale);
    const LimitLaw mp_law(MarchenkoPastur(y_eff), 0.0, 1.0);
    const SpectralDistribution law_disc = discretize_law(law, n);
    const SpectralDistribution mp_disc = discretize_law(mp_law, n);
    laws_per_run.push_back(law);

    const VectorFamily family{cfg.family, p};
    const RandomStream run_stream = master.substream(ni);
    run.trials.resize(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t k) {
      TrialResult result;
      result.trial = k;
      try {
        RandomStream rng = run_stream.substream(k);
        const DataMatrix x = sample_data_matrix(family, n, rng);
        result = evaluate_trial(x, kernel, law, mp_law, law_disc, mp_disc,
                                run.epsilon);
        result.trial = k;
      } catch (const Error& e) {
        result = TrialResult{};
        result.trial = k;
        result.ok = false;
        result.error = e.what();
      }
      run.trials[k] = std::move(result);
    });

    std::vector<double> pooled;
    aggregate_run(run, law, &pooled);
    pooled_per_run.push_back(std::move(pooled));
    report.runs.push_back(std::move(run));
  }

  tally_failures(report);
  write_outputs(report, cfg, pooled_per_run, laws_per_run);
  return report;
}

namespace {

std::vector<std::vector<double>> parse_csv_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  const auto trim = [](std::string s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t'; };
    while (!s.empty() && is_space(s.front())) s.erase(s.begin());
    while (!s.empty() && is_space(s.back())) s.pop_back();
    return s;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string cell = trim(line.substr(
          start, comma == std::string::npos ? std::string::npos
                                            : comma - start));
      double v = 0.0;
      const auto* begin = cell.data();
      const auto* end = cell.data() + cell.size();
      const auto [ptr, errc] = std::from_chars(begin, end, v);
      if (errc != std::errc{} || ptr != end || cell.empty()) {
        fail(ErrorCode::Parse, "line " + std::to_string(lineno) +
                                   ": cell '" + cell + "' is not numeric");
      }
      row.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail(ErrorCode::Parse, "line " + std::to_string(lineno) + ": row has " +
                                 std::to_string(row.size()) +
                                 " cells, expected " +
                                 std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

ExperimentReport analyze_dataset(const std::string& csv_path,
                                 const nlohmann::json& kernel_spec, bool center,
                                 const std::string& out_dir) {
  const Kernel kernel = kernel_from_json(kernel_spec);
  const std::vector<std::vector<double>> rows = parse_csv_rows(csv_path);
  if (rows.size() < 2) {
    fail(ErrorCode::InvalidArgument,
         "dataset needs at least 2 observations (rows)");
  }
  const std::size_t n = rows.size();
  const std::size_t p = rows.front().size();
  if (p == 0) fail(ErrorCode::InvalidArgument, "dataset has no coordinates");

  DataMatrix x(p, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto col = x.col(i);
    for (std::size_t k = 0; k < p; ++k) col[k] = rows[i][k];
  }

  std::vector<std::string> warnings;
  if (center) {
    const double nd = static_cast<double>(n);
    for (std::size_t k = 0; k < p; ++k) {
      double mean = 0.0;
      for (std::size_t i = 0; i < n; ++i) mean += x.col(i)[k];
      mean /= nd;
      double var = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = x.col(i)[k] - mean;
        var += d * d;
      }
      var /= nd;
      for (std::size_t i = 0; i < n; ++i) x.col(i)[k] -= mean;
      if (var > 0.0) {
        const double scale = 1.0 / std::sqrt(static_cast<double>(p) * var);
        for (std::size_t i = 0; i < n; ++i) x.col(i)[k] *= scale;
      } else {
        warnings.push_back("coordinate " + std::to_string(k) +
                           " has zero variance; rescaling skipped");
      }
    }
  }

  const double y_eff = static_cast<double>(p) / static_cast<double>(n);
  const AffineCoefficients coeffs = limit_coefficients(kernel);
  const LimitLaw law(MarchenkoPastur(y_eff), coeffs.shift, coeffs.scale);
  const LimitLaw mp_law(MarchenkoPastur(y_eff), 0.0, 1.0);
  const SpectralDistribution law_disc = discretize_law(law, n);
  const SpectralDistribution mp_disc = discretize_law(mp_law, n);

  RunResult run;
  run.n = n;
  run.p = p;
  run.y_effective = y_eff;
  run.epsilon = default_event_epsilon(n);
  TrialResult trial =
      evaluate_trial(x, kernel, law, mp_law, law_disc, mp_disc, run.epsilon);
  trial.trial = 0;
  run.trials.push_back(std::move(trial));

  ExperimentReport report;
  report.law_y = y_eff;
  report.law_shift = coeffs.shift;
  report.law_scale = coeffs.scale;
  nlohmann::ordered_json warn_json = nlohmann::ordered_json::array();
  for (const auto& w : warnings) warn_json.push_back(w);
  report.config_echo = nlohmann::ordered_json{
      {"source", "dataset"}, {"path", csv_path},
      {"kernel", kernel_spec},  {"center", center},
      {"n", n},                 {"p", p},
      {"warnings", warn_json},
  };

  std::vector<std::vector<double>> pooled_per_run;
  std::vector<double> pooled;
  aggregate_run(run, law, &pooled);
  pooled_per_run.push_back(std::move(pooled));
  report.runs.push_back(std::move(run));
  tally_failures(report);

  if (!out_dir.empty()) {
    ExperimentConfig stub;
    stub.out_dir = out_dir;
    stub.hist_bins = 64;
    write_outputs(report, stub, pooled_per_run, {law});
  }
  return report;
}

}  // namespace ermat
