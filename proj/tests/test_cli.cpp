#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <vector>

#include "cli.hpp"
#include "helpers.hpp"
#include "rdest/estimators.hpp"
#include "rdest/info.hpp"
#include "rdest/sources.hpp"

namespace {

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
  std::vector<const char*> argv{"rdest"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code =
      rdest::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

std::string write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream f(path);
  for (const auto& l : lines) f << l << '\n';
  return path;
}

}  // namespace

TEST_CASE("cli version") {
  std::string out;
  CHECK(run_cli({"version"}, &out) == 0);
  CHECK(out.rfind("rdest ", 0) == 0);
}

TEST_CASE("cli estimate round-trips the library value") {
  const auto path = write_lines("/tmp/rdest_cli_bin.txt",
                                {"0", "1", "0", "0", "1", "0", "0", "0", "1", "0"});
  std::string out;
  const int code = run_cli({"estimate", "--in", path, "--rho", "hamming", "--D", "0"}, &out);
  CHECK(code == 0);
  const auto j = nlohmann::json::parse(out);
  CHECK(j["report"]["units"] == "nats");

  const rdest::Sample s = rdest::load_sample(path);
  const rdest::EstimateReport direct = rdest::plugin_rd(
      s, rdest::DistortionModel::named(rdest::DistortionKind::hamming, {"0", "1"}, {"0", "1"}),
      0.0);
  CHECK(j["report"]["estimate"].get<double>() == direct.estimate.value());
  // D = 0 on matching alphabets: the empirical entropy.
  CHECK(j["report"]["estimate"].get<double>() ==
        doctest::Approx(rdest::entropy(rdest::empirical(s)).value()).epsilon(1e-12));

  // bits display divides by ln 2 at output only.
  std::string out_bits;
  run_cli({"estimate", "--in", path, "--rho", "hamming", "--D", "0", "--bits"}, &out_bits);
  const auto jb = nlohmann::json::parse(out_bits);
  CHECK(jb["report"]["estimate"].get<double>() ==
        doctest::Approx(direct.estimate.value() / std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("cli estimate exit codes") {
  const auto path = write_lines("/tmp/rdest_cli_codes.txt", {"0", "1", "1", "0", "1"});
  // Zero-rate region: exit 0.
  std::string out;
  CHECK(run_cli({"estimate", "--in", path, "--rho", "hamming", "--D", "0.9"}, &out) == 0);
  const auto j = nlohmann::json::parse(out);
  CHECK(j["report"]["estimate"].get<double>() == 0.0);

  // Infinite estimate: exit 2, value serialized as "inf".
  std::string out_inf;
  const int code = run_cli(
      {"estimate", "--in", path, "--rho", "absolute", "--repro", "0", "--D", "0.1"}, &out_inf);
  CHECK(code == 2);
  const auto ji = nlohmann::json::parse(out_inf);
  CHECK(ji["report"]["estimate"] == "inf");

  // Usage / data errors: exit 1.
  std::string err;
  CHECK(run_cli({"estimate", "--in", "/tmp/missing_rdest_file.txt", "--D", "0.1"}, nullptr,
                &err) == 1);
  CHECK(run_cli({"estimate", "--in", path, "--alphabet", "0", "--D", "0.1"}, nullptr, &err) ==
        1);
  CHECK(err.find("alphabet") != std::string::npos);
}

TEST_CASE("cli estimate gaussian family") {
  rdest::Rng rng(2718);
  std::vector<std::string> lines;
  for (int i = 0; i < 20000; ++i) lines.push_back(std::to_string(rng.next_gaussian()));
  const auto path = write_lines("/tmp/rdest_cli_gauss.txt", lines);
  std::string out;
  const int code = run_cli({"estimate", "--in", path, "--family", "gaussian", "--rho",
                            "squared", "--estimator", "parametric", "--D", "0.25"},
                           &out);
  CHECK(code == 0);
  const auto j = nlohmann::json::parse(out);
  const rdest::Moments m =
      rdest::sample_moments(rdest::Sample::from_reals(rdest::load_sample(path).to_reals()));
  CHECK(j["report"]["estimate"].get<double>() ==
        doctest::Approx(0.5 * std::log(m.var / 0.25)).epsilon(1e-9));
}

TEST_CASE("cli curve") {
  rdest::Rng rng(5);
  std::vector<std::string> lines;
  for (int i = 0; i < 4000; ++i) lines.push_back(rng.next_unit() < 0.3 ? "1" : "0");
  const auto path = write_lines("/tmp/rdest_cli_curve.txt", lines);

  std::string out;
  CHECK(run_cli({"curve", "--in", path, "--rho", "hamming"}, &out) == 0);
  std::istringstream is(out);
  std::string header;
  std::getline(is, header);
  CHECK(header == "D,R,slope");
  const rdest::FiniteDist pe = rdest::empirical(rdest::load_sample(path));
  const double phat = pe.prob_of("1");
  std::string line;
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    std::istringstream ls(line);
    std::string dtok, rtok, stok;
    std::getline(ls, dtok, ',');
    std::getline(ls, rtok, ',');
    std::getline(ls, stok, ',');
    const double d = std::stod(dtok);
    const double r = std::stod(rtok);
    CHECK(r == doctest::Approx(rdtest::binary_hamming_rate(phat, d)).epsilon(1e-5));
  }
  CHECK(rows == 25);

  // Single-D curve row equals the estimate command.
  std::string crow, erow;
  CHECK(run_cli({"curve", "--in", path, "--rho", "hamming", "--D", "0.1"}, &crow) == 0);
  CHECK(run_cli({"estimate", "--in", path, "--rho", "hamming", "--D", "0.1"}, &erow) == 0);
  const auto je = nlohmann::json::parse(erow);
  std::istringstream cs(crow);
  std::getline(cs, header);
  std::getline(cs, line);
  std::istringstream row(line);
  std::string dtok2, rtok2;
  std::getline(row, dtok2, ',');
  std::getline(row, rtok2, ',');
  CHECK(std::stod(rtok2) ==
        doctest::Approx(je["report"]["estimate"].get<double>()).epsilon(1e-12));

  // Explicit slope list: rows come back in slope order with D nondecreasing.
  std::string sout;
  CHECK(run_cli({"curve", "--in", path, "--slopes", "-4,-2,-1,-0.5"}, &sout) == 0);
  std::istringstream ss(sout);
  std::getline(ss, header);
  double prev_d = -1.0;
  int srows = 0;
  while (std::getline(ss, line)) {
    ++srows;
    const double d = std::stod(line.substr(0, line.find(',')));
    CHECK(d >= prev_d - 1e-12);
    prev_d = d;
  }
  CHECK(srows == 4);

  // Empty grid: usage error.
  std::string err;
  CHECK(run_cli({"curve", "--in", path, "--slope-grid", "0:0:0"}, nullptr, &err) == 1);
}

TEST_CASE("cli experiment") {
  std::string out, err;
  CHECK(run_cli({"experiment", "nope", "--out", "/tmp/rdest_exp"}, &out, &err) == 1);
  CHECK(err.find("valid names") != std::string::npos);

  CHECK(run_cli({"experiment", "failure-demo", "--p", "0.5", "--seeds", "5", "--n-max", "400",
                 "--out", "/tmp/rdest_exp"},
                &out) == 0);
  const auto j = nlohmann::json::parse(out);
  CHECK(j["experiment"] == "failure-demo");
  CHECK(j["summary"].contains("frac_both_late"));
  std::ifstream csv("/tmp/rdest_exp/failure-demo.csv");
  CHECK(csv.good());
}

TEST_CASE("cli lossy and grid-family estimators") {
  const auto path = write_lines("/tmp/rdest_cli_lossy.txt", {"0", "1", "0", "1"});
  const auto qfile = write_lines(
      "/tmp/rdest_cli_q.json", {R"({"symbols": ["0", "1"], "probs": [0.25, 0.75]})"});
  std::string out;
  CHECK(run_cli({"estimate", "--in", path, "--rho", "hamming", "--D", "0", "--estimator",
                 "lossy", "--Q", qfile},
                &out) == 0);
  auto j = nlohmann::json::parse(out);
  const double expected = -(2.0 * std::log(0.25) + 2.0 * std::log(0.75)) / 4.0;
  CHECK(j["report"]["estimate"].get<double>() == doctest::Approx(expected).epsilon(1e-12));
  CHECK(j["report"]["estimator_kind"] == "lossy-likelihood");

  const auto gfile = write_lines(
      "/tmp/rdest_cli_grid.json",
      {R"([{"label": "uniform", "symbols": ["0", "1"], "probs": [0.5, 0.5]},)",
       R"( {"label": "skew", "symbols": ["0", "1"], "probs": [0.9, 0.1]}])"});
  CHECK(run_cli({"estimate", "--in", path, "--rho", "hamming", "--D", "0.1", "--estimator",
                 "parametric", "--grid-file", gfile},
                &out) == 0);
  j = nlohmann::json::parse(out);
  CHECK(j["report"]["theta"]["label"] == "uniform");
}

TEST_CASE("cli consistency preset") {
  std::string out;
  CHECK(run_cli({"experiment", "consistency", "--preset", "bernoulli-hamming", "--seeds", "2",
                 "--n-schedule", "50,200", "--out", "/tmp/rdest_exp"},
                &out) == 0);
  const auto j = nlohmann::json::parse(out);
  CHECK(j["experiment"] == "consistency");
  CHECK(j["rows"] == 4);
  CHECK(j["summary"].contains("mean_abs_err_D0.1_n200"));

  std::string err;
  CHECK(run_cli({"experiment", "consistency", "--preset", "bogus", "--out", "/tmp/rdest_exp"},
                nullptr, &err) == 1);
  CHECK(err.find("preset") != std::string::npos);
}

TEST_CASE("cli estimate records the resolved config") {
  const auto path = write_lines("/tmp/rdest_cli_cfg2.txt", {"0", "1", "1"});
  std::string out;
  CHECK(run_cli({"estimate", "--in", path, "--rho", "hamming", "--D", "0.2", "--bits"},
                &out) == 0);
  const auto j = nlohmann::json::parse(out);
  CHECK(j["config"]["rho"] == "hamming");
  CHECK(j["config"]["D"] == 0.2);
  CHECK(j["config"]["bits"] == true);
  CHECK(j["report"]["units"] == "bits");
}

TEST_CASE("cli seed precedence: flag > env > config > default") {
  const auto cfg = write_lines("/tmp/rdest_cfg.json", {"{\"seed\": 7, \"D\": 0.5}"});
  const auto path = write_lines("/tmp/rdest_cli_seed.txt", {"0", "1", "0"});

  std::string out;
  CHECK(run_cli({"--config", cfg, "estimate", "--in", path, "--rho", "hamming"}, &out) == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j["config"]["seed"] == 7);
  CHECK(j["config"]["D"] == 0.5);

  setenv("RD_SEED", "11", 1);
  CHECK(run_cli({"--config", cfg, "estimate", "--in", path, "--rho", "hamming"}, &out) == 0);
  j = nlohmann::json::parse(out);
  CHECK(j["config"]["seed"] == 11);

  CHECK(run_cli({"--config", cfg, "estimate", "--in", path, "--rho", "hamming", "--seed", "3"},
                &out) == 0);
  j = nlohmann::json::parse(out);
  CHECK(j["config"]["seed"] == 3);
  unsetenv("RD_SEED");
}
