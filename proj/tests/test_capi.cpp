#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "ermat.h"
#include "json.hpp"

namespace {

struct StringOut {
  char* s = nullptr;
  ~StringOut() { ermat_string_free(s); }
};

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("version and status names") {
  CHECK(ermat_version() != nullptr);
  CHECK(std::strcmp(ermat_status_name(ERMAT_OK), "ok") == 0);
  CHECK(std::strcmp(ermat_status_name(ERMAT_E_PARSE), "parse-error") == 0);
  CHECK(ermat_status_name(999) != nullptr);
}

TEST_CASE("mp law handles") {
  ermat_mp* law = nullptr;
  REQUIRE(ermat_mp_create(1.0, &law) == ERMAT_OK);
  REQUIRE(law != nullptr);

  double v = 0.0;
  CHECK(ermat_mp_density(law, 2.0, &v) == ERMAT_OK);
  CHECK(std::fabs(v - 1.0 / (2.0 * 3.14159265358979324)) <= 1e-12);
  CHECK(ermat_mp_cdf(law, 4.0, &v) == ERMAT_OK);
  CHECK(v == 1.0);
  CHECK(ermat_mp_quantile(law, 1.0, &v) == ERMAT_OK);
  CHECK(v == doctest::Approx(4.0).epsilon(1e-6));

  double lo = 0.0, hi = 0.0, atom = 0.0, at = 0.0;
  CHECK(ermat_mp_info(law, &lo, &hi, &atom, &at) == ERMAT_OK);
  CHECK(lo == doctest::Approx(0.0));
  CHECK(hi == doctest::Approx(4.0));
  CHECK(atom == 0.0);
  ermat_mp_destroy(law);
}

TEST_CASE("affine law and sampling through the C surface") {
  ermat_mp* law = nullptr;
  REQUIRE(ermat_mp_create_affine(0.5, 1.0, -2.0, &law) == ERMAT_OK);
  double samples[512];
  REQUIRE(ermat_mp_sample(law, 42, 512, samples) == ERMAT_OK);
  double lo = 0.0, hi = 0.0, atom = 0.0, at = 0.0;
  REQUIRE(ermat_mp_info(law, &lo, &hi, &atom, &at) == ERMAT_OK);
  CHECK(atom == doctest::Approx(0.5));
  CHECK(at == 1.0);
  std::size_t at_atom = 0;
  for (double s : samples) {
    CHECK(s >= lo - 1e-12);
    CHECK(s <= hi + 1e-12);
    if (s == 1.0) ++at_atom;
  }
  CHECK(at_atom > 150);
  // same seed, same draws
  double again[512];
  REQUIRE(ermat_mp_sample(law, 42, 512, again) == ERMAT_OK);
  CHECK(std::memcmp(samples, again, sizeof(samples)) == 0);
  ermat_mp_destroy(law);
}

TEST_CASE("mp error paths") {
  ermat_mp* law = nullptr;
  CHECK(ermat_mp_create(-1.0, &law) == ERMAT_E_INVALID);
  CHECK(law == nullptr);
  CHECK(std::strlen(ermat_last_error()) > 0);
  CHECK(ermat_mp_create(1.0, nullptr) == ERMAT_E_INVALID);
  double v;
  CHECK(ermat_mp_density(nullptr, 1.0, &v) == ERMAT_E_INVALID);
}

TEST_CASE("kernel handles") {
  ermat_kernel* k = nullptr;
  REQUIRE(ermat_kernel_create("exp", &k) == ERMAT_OK);
  double v = 0.0, shift = 0.0, scale = 0.0;
  CHECK(ermat_kernel_eval(k, 2.0, &v) == ERMAT_OK);
  CHECK(v == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(ermat_kernel_limit_law(k, &shift, &scale) == ERMAT_OK);
  CHECK(shift == doctest::Approx(1.0 - 3.0 * std::exp(-2.0)).epsilon(1e-15));
  CHECK(scale == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-15));
  ermat_kernel_destroy(k);

  REQUIRE(ermat_kernel_create(R"({"name":"poly","coeffs":[0,1]})", &k) ==
          ERMAT_OK);
  CHECK(ermat_kernel_eval(k, 3.5, &v) == ERMAT_OK);
  CHECK(v == 3.5);
  ermat_kernel_destroy(k);

  CHECK(ermat_kernel_create("no-such-kernel", &k) == ERMAT_E_PARSE);
  CHECK(k == nullptr);
}

TEST_CASE("experiment round trip through JSON") {
  const nlohmann::json cfg{
      {"family", "gaussian"}, {"kernel", "identity"}, {"y", 1.0},
      {"n_list", {12, 16}},   {"trials", 2},          {"seed", 7},
      {"threads", 2},
  };
  StringOut rep1, rep2;
  REQUIRE(ermat_run_experiment(cfg.dump().c_str(), &rep1.s) == ERMAT_OK);
  REQUIRE(rep1.s != nullptr);
  const nlohmann::json parsed = nlohmann::json::parse(rep1.s);
  CHECK(parsed["runs"].size() == 2);
  CHECK(parsed["violations"].get<int>() == 0);

  REQUIRE(ermat_run_experiment(cfg.dump().c_str(), &rep2.s) == ERMAT_OK);
  CHECK(std::strcmp(rep1.s, rep2.s) == 0);

  StringOut bad;
  CHECK(ermat_run_experiment("{not json", &bad.s) == ERMAT_E_PARSE);
  CHECK(ermat_run_experiment(R"({"family":"gaussian"})", &bad.s) ==
        ERMAT_E_PARSE);
}

TEST_CASE("dataset analysis through the C surface") {
  namespace fs = std::filesystem;
  const auto path = fs::temp_directory_path() / "ermat_capi.csv";
  std::ofstream(path) << "0.9,0.1\n-0.2,1.1\n0.4,-0.8\n1.0,0.2\n";
  StringOut rep;
  REQUIRE(ermat_analyze_dataset(path.string().c_str(), "identity", 1, nullptr,
                                &rep.s) == ERMAT_OK);
  const nlohmann::json parsed = nlohmann::json::parse(rep.s);
  CHECK(parsed["runs"][0]["n"].get<int>() == 4);
  CHECK(parsed["runs"][0]["p"].get<int>() == 2);
  fs::remove(path);

  StringOut missing;
  CHECK(ermat_analyze_dataset("/no/such/file.csv", "identity", 0, nullptr,
                              &missing.s) == ERMAT_E_IO);
}

TEST_CASE("checks return TSV") {
  const nlohmann::json cfg{{"what", "thin-shell"},
                           {"family", "uniform-sphere"},
                           {"p", 25},
                           {"trials", 500},
                           {"seed", 3},
                           {"thresholds", {0.1, 0.2}}};
  StringOut tsv;
  REQUIRE(ermat_check(cfg.dump().c_str(), &tsv.s) == ERMAT_OK);
  const std::string text(tsv.s);
  CHECK(text.find("\t0\t") != std::string::npos);  // exact zeros on the sphere

  const nlohmann::json ip{{"what", "ip-moment"},
                          {"family", "gaussian"},
                          {"p", 50},
                          {"trials", 2000},
                          {"seed", 4}};
  StringOut tsv2;
  REQUIRE(ermat_check(ip.dump().c_str(), &tsv2.s) == ERMAT_OK);
  CHECK(std::string(tsv2.s).find("expected_1_over_p") != std::string::npos);

  StringOut bad;
  CHECK(ermat_check(R"({"what":"nope"})", &bad.s) == ERMAT_E_INVALID);
  CHECK(ermat_check("[]", &bad.s) == ERMAT_E_PARSE);
  CHECK(ermat_check(nullptr, &bad.s) == ERMAT_E_INVALID);
}

}  // TEST_SUITE
