#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rdest/dual.hpp"
#include "rdest/estimators.hpp"
#include "rdest/experiments.hpp"
#include "rdest/info.hpp"
#include "rdest/sources.hpp"

namespace rdest::cli {

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr double kLn2 = 0.6931471805599453;

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      if (start < s.size()) out.push_back(s.substr(start));
      break;
    }
    if (pos > start) out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& tok : split(s, ',')) out.push_back(std::stod(tok));
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& tok : split(s, ',')) out.push_back(std::stoull(tok));
  return out;
}

/// "lo:hi:count" specifications for grids.
std::vector<double> parse_range_grid(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw CLI::ValidationError("grid", "expected lo:hi:count");
  const double lo = std::stod(parts[0]);
  const double hi = std::stod(parts[1]);
  const std::size_t k = std::stoull(parts[2]);
  if (k < 1 || !(lo <= hi)) throw CLI::ValidationError("grid", "bad lo:hi:count range");
  if (k == 1) return {lo};
  return uniform_grid(lo, hi, k);
}

bool all_numeric(const std::vector<std::string>& tokens) {
  for (const auto& t : tokens) {
    try {
      numeric_symbol_value(t);
    } catch (const std::exception&) {
      return false;
    }
  }
  return true;
}

/// Distinct symbols of the sample, numerically sorted when every token is
/// numeric, lexicographically otherwise.
std::vector<std::string> infer_alphabet(const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  if (all_numeric(out)) {
    std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
      return numeric_symbol_value(a) < numeric_symbol_value(b);
    });
  } else {
    std::sort(out.begin(), out.end());
  }
  return out;
}

/// Flag > env (RD_SEED) > config file > default 0.
std::uint64_t resolve_seed(const CLI::Option* seed_opt, std::uint64_t flag_value,
                           const nlohmann::json& cfg) {
  if (seed_opt != nullptr && seed_opt->count() > 0) return flag_value;
  if (const char* env = std::getenv("RD_SEED")) return std::stoull(env);
  if (cfg.contains("seed")) return cfg["seed"].get<std::uint64_t>();
  return 0;
}

nlohmann::json load_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  nlohmann::json j;
  in >> j;
  if (!j.is_object()) throw std::runtime_error("config must be a JSON object");
  return j;
}

/// Pulls a scalar option from the config file when the flag was not given.
template <typename T>
void merge_option(const CLI::Option* opt, T& value, const nlohmann::json& cfg,
                  const std::string& key) {
  if (opt != nullptr && opt->count() > 0) return;
  if (cfg.contains(key)) value = cfg[key].get<T>();
}

nlohmann::json theta_json(const ThetaHat& theta) {
  nlohmann::json t;
  t["label"] = theta.label;
  if (theta.mu) t["mu"] = *theta.mu;
  if (theta.sigma) t["sigma"] = *theta.sigma;
  if (!theta.mu) t["grid_index"] = theta.grid_index;
  return t;
}

nlohmann::json report_json(const EstimateReport& rep, bool bits) {
  nlohmann::json r;
  r["D"] = rep.distortion;
  const double scale = bits ? 1.0 / kLn2 : 1.0;
  if (rep.estimate.is_finite()) {
    r["estimate"] = rep.estimate.value() * scale;
  } else {
    r["estimate"] = "inf";
  }
  r["units"] = bits ? "bits" : "nats";
  r["estimator_kind"] = to_string(rep.kind);
  if (rep.theta) r["theta"] = theta_json(*rep.theta);
  nlohmann::json d;
  if (rep.diagnostics.slope) d["slope"] = *rep.diagnostics.slope;
  d["ba_all_converged"] = rep.diagnostics.ba_all_converged;
  d["ba_solves"] = rep.diagnostics.ba_solves;
  d["boundary"] = rep.diagnostics.boundary;
  d["flat_region"] = rep.diagnostics.flat_region;
  d["notes"] = rep.diagnostics.notes;
  r["diagnostics"] = d;
  return r;
}

FiniteDist dist_from_json(const nlohmann::json& j) {
  return FiniteDist(j.at("symbols").get<std::vector<std::string>>(),
                    j.at("probs").get<std::vector<double>>());
}

struct EstimateArgs {
  std::string in_path, rho = "hamming", estimator = "plugin", family;
  std::string alphabet, repro, quantize, q_file, penalty_spec, grid_file;
  std::string mu_range, sigma_range;
  double distortion = 0.0;
  bool bits = false;
};

Penalty parse_penalty(const std::string& spec) {
  if (spec.empty() || spec == "none") return Penalty::none();
  const auto parts = split(spec, ':');
  if (parts.size() == 2 && parts[0] == "constant") return Penalty::constant(std::stod(parts[1]));
  if (parts.size() == 2 && parts[0] == "complexity") {
    return Penalty::complexity(std::stod(parts[1]));
  }
  throw std::runtime_error("unknown penalty spec '" + spec + "' (constant:c | complexity:c)");
}

/// Shared model construction for estimate/curve: declared or inferred
/// alphabets under a named rule, or the quantization-induced model.
struct PreparedData {
  Sample sample = Sample::from_symbols({"0"});
  std::optional<DistortionModel> model;
};

PreparedData prepare_symbolic(const EstimateArgs& a) {
  PreparedData out;
  const Sample raw = load_sample(a.in_path);
  if (!a.quantize.empty()) {
    const auto grid = parse_range_grid(a.quantize);
    auto [qs, qm] = quantize(raw, grid, distortion_kind_from_string(a.rho));
    out.sample = std::move(qs);
    out.model = std::move(qm);
    return out;
  }
  std::vector<std::string> source_alpha =
      a.alphabet.empty() ? infer_alphabet(raw.symbols) : split(a.alphabet, ',');
  std::vector<std::string> repro_alpha = a.repro.empty() ? source_alpha : split(a.repro, ',');
  for (const auto& t : raw.symbols) {
    if (std::find(source_alpha.begin(), source_alpha.end(), t) == source_alpha.end()) {
      throw std::runtime_error("data symbol '" + t + "' is not in the declared alphabet");
    }
  }
  out.sample = raw;
  out.model = DistortionModel::named(distortion_kind_from_string(a.rho), source_alpha,
                                     repro_alpha);
  return out;
}

GaussianBounds gaussian_bounds_for(const EstimateArgs& a, const std::vector<double>& xs) {
  double mu_lo, mu_hi, sg_lo = 0.0, sg_hi;
  if (!a.mu_range.empty()) {
    const auto parts = split(a.mu_range, ':');
    mu_lo = std::stod(parts.at(0));
    mu_hi = std::stod(parts.at(1));
  } else {
    mu_lo = *std::min_element(xs.begin(), xs.end());
    mu_hi = *std::max_element(xs.begin(), xs.end());
  }
  if (!a.sigma_range.empty()) {
    const auto parts = split(a.sigma_range, ':');
    sg_lo = std::stod(parts.at(0));
    sg_hi = std::stod(parts.at(1));
  } else {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size());
    sg_hi = 2.0 * std::sqrt(var) + 1e-9;
  }
  return GaussianBounds(mu_lo, mu_hi, sg_lo, sg_hi);
}

int cmd_estimate(const EstimateArgs& a, const nlohmann::json& resolved_config,
                 std::ostream& out) {
  EstimateReport rep;
  if (a.estimator == "parametric" || a.estimator == "penalized") {
    ParamFamily family = ParamFamily::gaussian(GaussianBounds(0, 0, 0, 0));
    Sample sample = Sample::from_symbols({"0"});
    std::optional<DistortionModel> model;
    if (a.family == "gaussian") {
      const Sample raw = load_sample(a.in_path);
      const std::vector<double> xs = raw.to_reals();
      sample = Sample::from_reals(xs);
      family = ParamFamily::gaussian(gaussian_bounds_for(a, xs));
      model = DistortionModel::named(distortion_kind_from_string(a.rho), {"0", "1"},
                                     {"0", "1"});
    } else if (!a.grid_file.empty()) {
      std::ifstream in(a.grid_file);
      if (!in) throw std::runtime_error("cannot open grid file '" + a.grid_file + "'");
      nlohmann::json j;
      in >> j;
      std::vector<std::pair<std::string, FiniteDist>> entries;
      for (const auto& e : j) {
        entries.emplace_back(e.at("label").get<std::string>(), dist_from_json(e));
      }
      family = ParamFamily::finite_grid(std::move(entries));
      PreparedData prep = prepare_symbolic(a);
      sample = std::move(prep.sample);
      model = std::move(prep.model);
    } else {
      throw std::runtime_error("parametric estimation needs --family gaussian or --grid-file");
    }
    rep = a.estimator == "parametric"
              ? plugin_parametric(sample, family, *model, a.distortion)
              : penalized_estimate(sample, family, *model, a.distortion,
                                   parse_penalty(a.penalty_spec));
  } else if (a.estimator == "lossy") {
    if (a.q_file.empty()) throw std::runtime_error("lossy estimation needs --Q <file>");
    PreparedData prep = prepare_symbolic(a);
    std::ifstream in(a.q_file);
    if (!in) throw std::runtime_error("cannot open Q file '" + a.q_file + "'");
    nlohmann::json j;
    in >> j;
    const FiniteDist q = dist_from_json(j);
    rep.distortion = a.distortion;
    rep.kind = EstimatorKind::lossy_likelihood;
    rep.estimate = lossy_likelihood(prep.sample, q, *prep.model, a.distortion);
  } else if (a.estimator == "plugin") {
    PreparedData prep = prepare_symbolic(a);
    rep = plugin_rd(prep.sample, *prep.model, a.distortion);
  } else {
    throw std::runtime_error("unknown estimator '" + a.estimator +
                             "' (plugin | parametric | penalized | lossy)");
  }

  nlohmann::json j;
  j["command"] = "estimate";
  j["config"] = resolved_config;
  j["report"] = report_json(rep, a.bits);
  out << j.dump(2) << '\n';
  return rep.estimate.is_infinite() ? 2 : 0;
}

struct CurveArgs {
  EstimateArgs base;
  std::string slopes, slope_grid, d_grid;
  double single_d = -1.0;
  bool has_single_d = false;
  std::string out_file;
};

int cmd_curve(const CurveArgs& c, std::ostream& out) {
  PreparedData prep = prepare_symbolic(c.base);
  const FiniteDist pe = empirical(prep.sample);

  std::ostringstream csv;
  csv << "D,R,slope\n";
  const auto emit_at = [&](double d) {
    const RdAtResult r = rd_at(pe, *prep.model, d);
    csv << fmt(d) << ',' << r.rate.str() << ',' << fmt(r.slope) << '\n';
  };

  if (!c.slopes.empty() || !c.slope_grid.empty()) {
    std::vector<double> slopes =
        c.slopes.empty() ? parse_range_grid(c.slope_grid) : parse_doubles(c.slopes);
    if (slopes.empty()) throw std::runtime_error("empty slope grid");
    std::sort(slopes.begin(), slopes.end());
    const auto points = rd_curve(pe, *prep.model, slopes);
    for (const auto& b : points) {
      csv << fmt(b.point.distortion) << ',' << b.point.rate.str() << ','
          << fmt(b.point.slope) << '\n';
    }
  } else if (!c.d_grid.empty()) {
    const auto ds = parse_range_grid(c.d_grid);
    if (ds.empty()) throw std::runtime_error("empty D grid");
    for (double d : ds) emit_at(d);
  } else if (c.has_single_d) {
    emit_at(c.single_d);
  } else {
    // Default grid: 25 interior distortion points.
    const auto [df, dm] = d_floor_and_dmax(pe, *prep.model);
    if (!(dm > df)) throw std::runtime_error("degenerate feasible range; give --slopes or --D");
    for (int i = 1; i <= 25; ++i) emit_at(df + (dm - df) * i / 26.0);
  }

  if (!c.out_file.empty()) {
    std::ofstream f(c.out_file);
    if (!f) throw std::runtime_error("cannot write '" + c.out_file + "'");
    f << csv.str();
  } else {
    out << csv.str();
  }
  return 0;
}

struct ExperimentArgs {
  std::string name, out_dir = ".", preset = "bernoulli-hamming";
  double p = 0.5, distortion = -1.0, m_distortion = 0.1;
  std::size_t seeds = 20, n_max = 10000, m = 2;
  std::string n_schedule = "100,1000,10000,100000";
  std::string eps_list = "0.05,0.1,0.2", truncations = "10,50,250";
  std::uint64_t seed = 0;
  bool has_d_flag = false;
};

ExperimentResult run_consistency_preset(const ExperimentArgs& a) {
  ConsistencyConfig cfg;
  cfg.n_schedule = parse_sizes(a.n_schedule);
  cfg.seed_base = a.seed;
  cfg.n_seeds = a.seeds;
  if (a.preset == "bernoulli-hamming") {
    cfg.source = SourceSpec::iid(FiniteDist({"0", "1"}, {1.0 - 0.3, 0.3}), 0);
    cfg.model = DistortionModel::named(DistortionKind::hamming, {"0", "1"}, {"0", "1"});
    cfg.estimator = EstimatorKind::plugin;
    cfg.d_values = {a.has_d_flag ? a.distortion : 0.1};
  } else if (a.preset == "gaussian-family") {
    cfg.source = SourceSpec::gaussian_ar1(0.5, 1.0, 0.0, 0);
    cfg.estimator = EstimatorKind::parametric;
    cfg.family = ParamFamily::gaussian(GaussianBounds(-4.0, 4.0, 0.0, 4.0));
    cfg.d_values = {a.has_d_flag ? a.distortion : 0.25};
  } else if (a.preset == "gaussian-quantized") {
    cfg.source = SourceSpec::gaussian_ar1(0.0, 1.0, 0.0, 0);
    cfg.estimator = EstimatorKind::plugin;
    cfg.quantize_grid = uniform_grid(-4.0, 4.0, 65);
    cfg.d_values = {a.has_d_flag ? a.distortion : 0.25};
    // Fine quantization grids sit in BA's slow-convergence regime; a
    // certified gap of ~1e-4 is far below the statistical error here.
    cfg.rd_opts = RdAtOptions{1e-4, {1e-7, 2500}};
  } else if (a.preset == "markov-lln") {
    cfg.source = SourceSpec::markov({"0", "1"}, {{0.9, 0.1}, {0.1, 0.9}}, {1.0, 0.0}, 0);
    cfg.model = DistortionModel::named(DistortionKind::hamming, {"0", "1"}, {"0", "1"});
    cfg.estimator = EstimatorKind::plugin;
    cfg.d_values = {a.has_d_flag ? a.distortion : 0.1};
  } else {
    throw std::runtime_error("unknown preset '" + a.preset +
                             "' (bernoulli-hamming | gaussian-family | gaussian-quantized | "
                             "markov-lln)");
  }
  return consistency_run(cfg);
}

int cmd_experiment(const ExperimentArgs& a, const nlohmann::json& resolved_config,
                   std::ostream& out) {
  ExperimentResult result;
  if (a.name == "consistency") {
    result = run_consistency_preset(a);
  } else if (a.name == "failure-demo") {
    result = failure_demo(a.p, a.seeds, a.n_max,
                          a.has_d_flag ? std::optional<double>(a.distortion) : std::nullopt,
                          a.seed);
  } else if (a.name == "discontinuity-demo") {
    result = discontinuity_demo(parse_doubles(a.eps_list), parse_sizes(a.truncations),
                                a.has_d_flag ? a.distortion : 0.25);
  } else if (a.name == "arginf") {
    ArginfConfig cfg;
    cfg.source = SourceSpec::gaussian_ar1(0.0, 1.0, 0.0, 0);
    cfg.family = ParamFamily::gaussian(GaussianBounds(-1.0, 1.0, 0.0, 2.0));
    cfg.distortion = a.has_d_flag ? a.distortion : 0.25;
    cfg.n_schedule = parse_sizes(a.n_schedule);
    cfg.seed_base = a.seed;
    cfg.n_seeds = a.seeds;
    result = arginf_run(cfg);
  } else if (a.name == "mth-order") {
    MthOrderConfig cfg;
    cfg.source = SourceSpec::iid(FiniteDist({"0", "1"}, {1.0 - a.p, a.p}), 0);
    cfg.model = DistortionModel::named(DistortionKind::hamming, {"0", "1"}, {"0", "1"});
    cfg.m = a.m;
    cfg.distortion = a.has_d_flag ? a.distortion : a.m_distortion;
    cfg.n_schedule = parse_sizes(a.n_schedule);
    cfg.seed_base = a.seed;
    cfg.n_seeds = a.seeds;
    result = mth_order_run(cfg);
  } else {
    throw std::runtime_error(
        "unknown experiment '" + a.name +
        "'; valid names: consistency, failure-demo, discontinuity-demo, arginf, mth-order");
  }

  for (const auto& [k, v] : resolved_config.items()) {
    result.config.emplace_back(k, v.is_string() ? v.get<std::string>() : v.dump());
  }

  std::filesystem::create_directories(a.out_dir);
  const std::string csv_path = a.out_dir + "/" + a.name + ".csv";
  const std::string sum_path = a.out_dir + "/" + a.name + "_summary.json";
  result.write_csv_file(csv_path);
  result.write_summary_file(sum_path);
  out << result.summary_json() << '\n';
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"rate-distortion estimation from empirical data"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags take precedence)");

  // estimate
  EstimateArgs ea;
  std::uint64_t seed_flag = 0;
  auto* est = app.add_subcommand("estimate", "estimate R(D) from a data file");
  est->add_option("--in", ea.in_path, "newline-delimited input data")->required();
  est->add_option("--rho", ea.rho, "distortion rule: hamming | squared | absolute");
  auto* est_d = est->add_option("--D", ea.distortion, "distortion level");
  est->add_option("--estimator", ea.estimator, "plugin | parametric | penalized | lossy");
  est->add_option("--family", ea.family, "parametric family: gaussian");
  est->add_option("--grid-file", ea.grid_file, "finite-grid family (JSON list)");
  est->add_option("--alphabet", ea.alphabet, "comma-separated source alphabet");
  est->add_option("--repro", ea.repro, "comma-separated reproduction alphabet");
  est->add_option("--quantize", ea.quantize, "lo:hi:count quantization grid for real data");
  est->add_option("--Q", ea.q_file, "codebook distribution for --estimator lossy (JSON)");
  est->add_option("--penalty", ea.penalty_spec, "constant:c | complexity:c");
  est->add_option("--mu-range", ea.mu_range, "gaussian family mu bounds lo:hi");
  est->add_option("--sigma-range", ea.sigma_range, "gaussian family sigma bounds lo:hi");
  est->add_flag("--bits", ea.bits, "display rates in bits instead of nats");
  auto* est_seed = est->add_option("--seed", seed_flag, "seed (unused by estimate itself)");

  // curve
  CurveArgs ca;
  auto* cur = app.add_subcommand("curve", "sweep a rate-distortion curve to CSV");
  cur->add_option("--in", ca.base.in_path, "newline-delimited input data")->required();
  cur->add_option("--rho", ca.base.rho, "distortion rule");
  cur->add_option("--alphabet", ca.base.alphabet, "comma-separated source alphabet");
  cur->add_option("--repro", ca.base.repro, "comma-separated reproduction alphabet");
  cur->add_option("--quantize", ca.base.quantize, "lo:hi:count quantization grid");
  cur->add_option("--slopes", ca.slopes, "comma-separated slopes (<= 0)");
  cur->add_option("--slope-grid", ca.slope_grid, "slope grid lo:hi:count");
  cur->add_option("--D-grid", ca.d_grid, "distortion grid lo:hi:count");
  auto* cur_d = cur->add_option("--D", ca.single_d, "single distortion level");
  cur->add_option("--out", ca.out_file, "write CSV here instead of stdout");

  // experiment
  ExperimentArgs xa;
  auto* exp = app.add_subcommand("experiment", "run a named experiment");
  exp->add_option("name", xa.name, "consistency | failure-demo | discontinuity-demo | arginf | mth-order")
      ->required();
  exp->add_option("--out", xa.out_dir, "output directory for CSV + JSON summary");
  auto* exp_preset = exp->add_option("--preset", xa.preset, "consistency preset");
  auto* exp_p = exp->add_option("--p", xa.p, "Bernoulli parameter");
  auto* exp_d = exp->add_option("--D", xa.distortion, "distortion level");
  auto* exp_seeds = exp->add_option("--seeds", xa.seeds, "number of replicas");
  auto* exp_nmax = exp->add_option("--n-max", xa.n_max, "maximum sample size");
  auto* exp_m = exp->add_option("--m", xa.m, "block length for mth-order");
  auto* exp_sched = exp->add_option("--n-schedule", xa.n_schedule, "comma-separated sample sizes");
  auto* exp_eps = exp->add_option("--eps", xa.eps_list, "comma-separated mixture weights");
  auto* exp_n = exp->add_option("--N", xa.truncations, "comma-separated truncation levels");
  auto* exp_seed = exp->add_option("--seed", xa.seed, "base seed");

  auto* ver = app.add_subcommand("version", "print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    const nlohmann::json file_cfg = load_config(config_path);

    if (ver->parsed()) {
      out << "rdest " << kVersion << '\n';
      return 0;
    }

    if (est->parsed()) {
      merge_option(est_d, ea.distortion, file_cfg, "D");
      if (est_d->count() == 0 && !file_cfg.contains("D")) {
        err << "error: estimate needs --D (or a config file with \"D\")\n";
        return 1;
      }
      ea.distortion = est_d->count() > 0 ? ea.distortion
                                         : file_cfg.value("D", ea.distortion);
      const std::uint64_t seed = resolve_seed(est_seed, seed_flag, file_cfg);
      nlohmann::json resolved{{"in", ea.in_path},        {"rho", ea.rho},
                              {"D", ea.distortion},      {"estimator", ea.estimator},
                              {"family", ea.family},     {"grid_file", ea.grid_file},
                              {"alphabet", ea.alphabet}, {"repro", ea.repro},
                              {"quantize", ea.quantize}, {"penalty", ea.penalty_spec},
                              {"Q", ea.q_file},          {"bits", ea.bits},
                              {"seed", seed}};
      return cmd_estimate(ea, resolved, out);
    }

    if (cur->parsed()) {
      ca.has_single_d = cur_d->count() > 0;
      return cmd_curve(ca, out);
    }

    if (exp->parsed()) {
      merge_option(exp_p, xa.p, file_cfg, "p");
      merge_option(exp_seeds, xa.seeds, file_cfg, "seeds");
      merge_option(exp_nmax, xa.n_max, file_cfg, "n_max");
      merge_option(exp_m, xa.m, file_cfg, "m");
      merge_option(exp_sched, xa.n_schedule, file_cfg, "n_schedule");
      merge_option(exp_eps, xa.eps_list, file_cfg, "eps");
      merge_option(exp_n, xa.truncations, file_cfg, "N");
      merge_option(exp_preset, xa.preset, file_cfg, "preset");
      xa.has_d_flag = exp_d->count() > 0 || file_cfg.contains("D");
      if (exp_d->count() == 0 && file_cfg.contains("D")) {
        xa.distortion = file_cfg["D"].get<double>();
      }
      xa.seed = resolve_seed(exp_seed, xa.seed, file_cfg);
      nlohmann::json resolved{{"name", xa.name},
                              {"out", xa.out_dir},
                              {"preset", xa.preset},
                              {"seed", xa.seed},
                              {"seeds", xa.seeds}};
      return cmd_experiment(xa, resolved, out);
    }

    err << "error: no subcommand\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace rdest::cli
