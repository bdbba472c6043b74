#include "rdest/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "rdest/dual.hpp"
#include "rdest/rng.hpp"

namespace rdest {

namespace {

/// Shortest round-trippable decimal rendering.
std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

void ExperimentResult::write_csv(std::ostream& out) const {
  out << "n,seed,D,estimate,oracle,abs_err,flag\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.seed << ',' << fmt(r.distortion) << ',' << r.estimate.str() << ',';
    if (r.oracle) out << fmt(*r.oracle);
    out << ',';
    if (r.abs_err) out << fmt(*r.abs_err);
    out << ',' << r.flag << '\n';
  }
}

void ExperimentResult::write_csv_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_csv(out);
}

std::string ExperimentResult::summary_json() const {
  nlohmann::json j;
  j["experiment"] = name;
  j["rows"] = rows.size();
  j["elapsed_seconds"] = elapsed_seconds;
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [k, v] : config) cfg[k] = v;
  j["config"] = cfg;
  nlohmann::json s = nlohmann::json::object();
  for (const auto& [k, v] : summary) {
    if (std::isinf(v)) {
      s[k] = "inf";
    } else {
      s[k] = v;
    }
  }
  j["summary"] = s;
  j["notes"] = notes;
  return j.dump(2);
}

void ExperimentResult::write_summary_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << summary_json() << '\n';
}

std::optional<double> ExperimentResult::summary_value(const std::string& key) const {
  for (const auto& [k, v] : summary) {
    if (k == key) return v;
  }
  return std::nullopt;
}

Moments true_moments(const SourceSpec& spec) {
  switch (spec.kind()) {
    case SourceSpec::Kind::gaussian_ar1: {
      const double var =
          spec.noise_sigma() * spec.noise_sigma() / (1.0 - spec.phi() * spec.phi());
      return {0.0, var};
    }
    case SourceSpec::Kind::iid:
      return moments_of(spec.marginal());
    case SourceSpec::Kind::markov:
      return moments_of(spec.stationary());
    case SourceSpec::Kind::file:
      throw std::invalid_argument("true_moments: file sources have no declared truth");
  }
  throw std::logic_error("true_moments: unknown source kind");
}

namespace {

std::string source_desc(const SourceSpec& spec) {
  switch (spec.kind()) {
    case SourceSpec::Kind::iid: return "iid";
    case SourceSpec::Kind::markov: return "markov";
    case SourceSpec::Kind::gaussian_ar1: return "gaussian-ar1";
    case SourceSpec::Kind::file: return "file";
  }
  return "unknown";
}

/// True marginal for BA-based oracles, when one exists.
std::optional<FiniteDist> true_marginal(const SourceSpec& spec) {
  switch (spec.kind()) {
    case SourceSpec::Kind::iid: return spec.marginal();
    case SourceSpec::Kind::markov: return spec.stationary();
    default: return std::nullopt;
  }
}

/// Oracle value for one D, or nullopt when no truth is computable.
std::optional<double> resolve_oracle(const ConsistencyConfig& cfg, double distortion) {
  if (cfg.estimator == EstimatorKind::plugin) {
    if (cfg.quantize_grid && cfg.source.kind() == SourceSpec::Kind::gaussian_ar1) {
      // Quantized plug-in on Gaussian-type data: the Gaussian closed form.
      const Moments m = true_moments(cfg.source);
      if (distortion <= 0.0) return std::nullopt;
      return std::max(0.0, 0.5 * std::log(m.var / distortion));
    }
    const auto marginal = true_marginal(cfg.source);
    if (marginal && cfg.model) {
      const RdAtResult r = rd_at(*marginal, *cfg.model, distortion, cfg.rd_opts);
      return r.rate.is_finite() ? std::optional<double>(r.rate.value()) : std::nullopt;
    }
    return std::nullopt;
  }
  if (cfg.family && cfg.family->kind() == ParamFamily::Kind::gaussian) {
    Moments m{};
    try {
      m = true_moments(cfg.source);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (m.var <= distortion) return 0.0;
    if (distortion == 0.0) return std::nullopt;
    return 0.5 * std::log(m.var / distortion);
  }
  if (cfg.family && cfg.model) {
    const auto marginal = true_marginal(cfg.source);
    if (!marginal) return std::nullopt;
    const FamilyRate fr = family_rate(*marginal, *cfg.family, *cfg.model, distortion);
    return fr.value.is_finite() ? std::optional<double>(fr.value.value()) : std::nullopt;
  }
  return std::nullopt;
}

ExtReal run_estimator(const ConsistencyConfig& cfg, const Sample& sample, double distortion) {
  switch (cfg.estimator) {
    case EstimatorKind::plugin: {
      if (cfg.quantize_grid) {
        auto [qs, qm] = quantize(sample, *cfg.quantize_grid, cfg.quantize_rule);
        return plugin_rd(qs, qm, distortion, cfg.rd_opts).estimate;
      }
      if (!cfg.model) throw std::invalid_argument("consistency_run: plug-in needs a model");
      return plugin_rd(sample, *cfg.model, distortion, cfg.rd_opts).estimate;
    }
    case EstimatorKind::parametric: {
      if (!cfg.family) throw std::invalid_argument("consistency_run: parametric needs a family");
      if (cfg.family->kind() == ParamFamily::Kind::gaussian && !cfg.model) {
        static const DistortionModel se =
            DistortionModel::named(DistortionKind::squared_error, {"0", "1"}, {"0", "1"});
        return plugin_parametric(sample, *cfg.family, se, distortion).estimate;
      }
      if (!cfg.model) throw std::invalid_argument("consistency_run: parametric needs a model");
      return plugin_parametric(sample, *cfg.family, *cfg.model, distortion).estimate;
    }
    case EstimatorKind::penalized: {
      if (!cfg.family || !cfg.model || !cfg.penalty) {
        throw std::invalid_argument("consistency_run: penalized needs family, model, penalty");
      }
      return penalized_estimate(sample, *cfg.family, *cfg.model, distortion, *cfg.penalty)
          .estimate;
    }
    case EstimatorKind::lossy_likelihood:
      throw std::invalid_argument("consistency_run: lossy-likelihood needs an explicit Q");
  }
  throw std::logic_error("consistency_run: unknown estimator");
}

}  // namespace

ExperimentResult consistency_run(const ConsistencyConfig& cfg) {
  if (cfg.d_values.empty() || cfg.n_schedule.empty() || cfg.n_seeds == 0) {
    throw std::invalid_argument("consistency_run: empty schedule");
  }
  Stopwatch watch;
  ExperimentResult out;
  out.name = "consistency";
  out.config = {{"source", source_desc(cfg.source)},
                {"estimator", to_string(cfg.estimator)},
                {"seed_base", std::to_string(cfg.seed_base)},
                {"seeds", std::to_string(cfg.n_seeds)}};

  for (double d : cfg.d_values) {
    const std::optional<double> oracle = resolve_oracle(cfg, d);
    std::vector<double> mean_errs;
    for (std::size_t n : cfg.n_schedule) {
      double err_sum = 0.0, err_max = 0.0;
      std::size_t err_count = 0;
      for (std::size_t s = 0; s < cfg.n_seeds; ++s) {
        const std::uint64_t seed = Rng::derive(cfg.seed_base, s);
        ExperimentRow row;
        row.n = n;
        row.seed = seed;
        row.distortion = d;
        try {
          const Sample sample = generate(cfg.source.with_seed(seed), n);
          row.estimate = run_estimator(cfg, sample, d);
          row.oracle = oracle;
          if (oracle) {
            const double err = row.estimate.is_finite()
                                   ? std::abs(row.estimate.value() - *oracle)
                                   : std::numeric_limits<double>::infinity();
            row.abs_err = err;
            err_sum += err;
            err_max = std::max(err_max, err);
            ++err_count;
          }
          row.flag = "ok";
        } catch (const std::exception& e) {
          row.flag = std::string("error:") + e.what();
        }
        out.rows.push_back(std::move(row));
      }
      if (err_count > 0) {
        const std::string suffix = "_D" + fmt(d) + "_n" + std::to_string(n);
        const double mean = err_sum / static_cast<double>(err_count);
        out.summary.emplace_back("mean_abs_err" + suffix, mean);
        out.summary.emplace_back("max_abs_err" + suffix, err_max);
        mean_errs.push_back(mean);
      }
    }
    // Mean |error| should fall with n; more than one inversion is flagged.
    std::size_t inversions = 0;
    for (std::size_t i = 0; i + 1 < mean_errs.size(); ++i) {
      if (mean_errs[i + 1] > mean_errs[i]) ++inversions;
    }
    if (!mean_errs.empty()) {
      out.summary.emplace_back("error_inversions_D" + fmt(d),
                               static_cast<double>(inversions));
      if (inversions > 1) {
        out.notes.push_back("mean |error| is not monotone across the n schedule at D=" +
                            fmt(d));
      }
    }
  }
  out.elapsed_seconds = watch.seconds();
  return out;
}

ExperimentResult failure_demo(double p, std::size_t n_seeds, std::size_t n_max,
                              std::optional<double> d_override, std::uint64_t seed_base) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("failure_demo: p must be in (0,1)");
  if (n_seeds == 0 || n_max < 2) throw std::invalid_argument("failure_demo: empty schedule");
  const double d = d_override.value_or(p);

  Stopwatch watch;
  ExperimentResult out;
  out.name = "failure-demo";
  out.config = {{"p", fmt(p)},
                {"D", fmt(d)},
                {"n_max", std::to_string(n_max)},
                {"seeds", std::to_string(n_seeds)},
                {"seed_base", std::to_string(seed_base)}};

  const std::vector<std::string> alphabet{"0", "1"};
  const DistortionModel model = DistortionModel::named(DistortionKind::absolute, alphabet, {"0"});
  const FiniteDist marginal(alphabet, {1.0 - p, p});
  const std::size_t half = n_max / 2;

  std::size_t both_late = 0, both_any = 0, inf_only_late = 0, zero_only_late = 0;
  for (std::size_t s = 0; s < n_seeds; ++s) {
    const std::uint64_t seed = Rng::derive(seed_base, s);
    const Sample sample = generate(SourceSpec::iid(marginal, seed), n_max);
    std::size_t ones = 0;
    bool saw_zero_late = false, saw_inf_late = false;
    bool saw_zero_any = false, saw_inf_any = false;
    bool final_infinite = false;
    for (std::size_t n = 1; n <= n_max; ++n) {
      if (sample.symbols[n - 1] == "1") ++ones;
      const double q = static_cast<double>(ones) / static_cast<double>(n);
      const FiniteDist emp(alphabet, {1.0 - q, q});
      const RdAtResult r = rd_at(emp, model, d);
      const bool infinite = r.rate.is_infinite();
      if (n == n_max) final_infinite = infinite;
      (infinite ? saw_inf_any : saw_zero_any) = true;
      if (n > half) (infinite ? saw_inf_late : saw_zero_late) = true;
    }
    ExperimentRow row;
    row.n = n_max;
    row.seed = seed;
    row.distortion = d;
    row.estimate = final_infinite ? ExtReal::infinity() : ExtReal(0.0);
    if (saw_zero_late && saw_inf_late) {
      ++both_late;
      row.flag = "oscillated-late";
    } else if (saw_inf_late) {
      ++inf_only_late;
      row.flag = "inf-only-late";
    } else {
      ++zero_only_late;
      row.flag = "zero-only-late";
    }
    if (saw_zero_any && saw_inf_any) ++both_any;
    out.rows.push_back(std::move(row));
  }

  const double denom = static_cast<double>(n_seeds);
  out.summary = {{"frac_both_late", both_late / denom},
                 {"frac_both_any", both_any / denom},
                 {"frac_inf_only_late", inf_only_late / denom},
                 {"frac_zero_only_late", zero_only_late / denom}};
  out.notes.push_back(
      "oscillation witness: both the value 0 and +inf observed at sample sizes beyond n_max/2");
  out.elapsed_seconds = watch.seconds();
  return out;
}

namespace {

/// Normalizing constant of the infinite tail sum_{x>=2} 1/(x log^a x):
/// partial sum plus the integral tail (the integral is exact for these
/// weights; the cutoff term is far below double noise at 1e6).
double tail_weight_constant(double a, std::size_t cutoff = 1'000'000) {
  double s = 0.0;
  for (std::size_t x = 2; x <= cutoff; ++x) {
    const double xv = static_cast<double>(x);
    s += 1.0 / (xv * std::pow(std::log(xv), a));
  }
  const double l = std::log(static_cast<double>(cutoff) + 0.5);
  s += std::pow(l, 1.0 - a) / (a - 1.0);
  return s;
}

}  // namespace

ExperimentResult discontinuity_demo(const std::vector<double>& eps_list,
                                    const std::vector<std::size_t>& truncations,
                                    double distortion) {
  for (double e : eps_list) {
    if (!(e > 0.0 && e < 1.0)) {
      throw std::invalid_argument("discontinuity_demo: eps must lie in (0,1)");
    }
  }
  constexpr std::size_t kPTruncation = 10;
  for (std::size_t n : truncations) {
    if (n < kPTruncation) throw std::invalid_argument("discontinuity_demo: N must be >= 10");
  }
  if (eps_list.empty() || truncations.empty()) {
    throw std::invalid_argument("discontinuity_demo: empty schedule");
  }

  Stopwatch watch;
  ExperimentResult out;
  out.name = "discontinuity-demo";
  out.config = {{"D", fmt(distortion)}, {"P_truncation", std::to_string(kPTruncation)}};

  // P' is the infinite-entropy distribution with weights 1/(x log^1.5 x),
  // x = 2, 3, ...; its infinite normalizing constant keeps the distortion
  // model independent of the truncation level.
  const double z_prime = tail_weight_constant(1.5);

  // The finite-entropy P, fixed at truncation 10.
  std::vector<double> p_weights(kPTruncation);
  for (std::size_t i = 0; i < kPTruncation; ++i) {
    const double x = static_cast<double>(i + 2);
    p_weights[i] = 1.0 / (x * std::pow(std::log(x), 2.5));
  }

  std::vector<std::vector<double>> rate_pe(eps_list.size());
  std::vector<double> rate_p_by_n;
  double bound_violation = -std::numeric_limits<double>::infinity();

  for (std::size_t n : truncations) {
    std::vector<std::string> symbols(n);
    std::vector<double> xval(n), pp_w(n);
    for (std::size_t i = 0; i < n; ++i) {
      xval[i] = static_cast<double>(i + 2);
      symbols[i] = std::to_string(i + 2);
      pp_w[i] = 1.0 / (xval[i] * std::pow(std::log(xval[i]), 1.5));
    }
    std::vector<double> rho(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        rho[i * n + j] =
            (i == j ? 0.0 : z_prime / pp_w[i]) + std::abs(xval[i] - xval[j]);
      }
    }
    const DistortionModel model = DistortionModel::from_matrix(symbols, symbols, std::move(rho));
    const FiniteDist pprime = normalize(pp_w, symbols);
    std::vector<double> p_full(n, 0.0);
    std::copy(p_weights.begin(), p_weights.end(), p_full.begin());
    const FiniteDist p = normalize(p_full, symbols);

    const RdAtResult rp = rd_at(p, model, distortion);
    rate_p_by_n.push_back(rp.rate.value_or(std::numeric_limits<double>::infinity()));
    {
      ExperimentRow row;
      row.n = n;
      row.seed = 0;
      row.distortion = distortion;
      row.estimate = rp.rate;
      row.flag = "baseline-P";
      out.rows.push_back(std::move(row));
    }

    for (std::size_t ei = 0; ei < eps_list.size(); ++ei) {
      const double eps = eps_list[ei];
      const FiniteDist p_eps = mix(eps, pprime, p);
      const RdAtResult rpe = rd_at(p_eps, model, distortion);
      const RdAtResult rpp = rd_at(pprime, model, distortion / eps);
      const double bound =
          rpp.rate.is_finite() ? eps * rpp.rate.value() : std::numeric_limits<double>::infinity();
      const double lhs =
          rpe.rate.is_finite() ? rpe.rate.value() : std::numeric_limits<double>::infinity();
      rate_pe[ei].push_back(lhs);
      bound_violation = std::max(bound_violation, bound - lhs);

      ExperimentRow row;
      row.n = n;
      row.seed = 0;
      row.distortion = distortion;
      row.estimate = rpe.rate;
      row.oracle = bound;
      row.abs_err = lhs - bound;  // slack in the mixture inequality
      row.flag = "mixture-eps=" + fmt(eps);
      out.rows.push_back(std::move(row));

      ExperimentRow prow;
      prow.n = n;
      prow.seed = 0;
      prow.distortion = distortion / eps;
      prow.estimate = rpp.rate;
      prow.flag = "pprime-eps=" + fmt(eps);
      out.rows.push_back(std::move(prow));
    }
  }

  double p_variation = 0.0;
  for (double v : rate_p_by_n) {
    for (double w : rate_p_by_n) p_variation = std::max(p_variation, std::abs(v - w));
  }
  bool monotone = true;
  for (const auto& seq : rate_pe) {
    for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
      if (!(seq[k + 1] > seq[k])) monotone = false;
    }
  }
  out.summary = {{"max_bound_violation", bound_violation},
                 {"baseline_P_variation", p_variation},
                 {"mixture_strictly_increasing_in_N", monotone ? 1.0 : 0.0}};
  out.notes.push_back(
      "the infinite-alphabet divergence is rendered as growth in the truncation parameter N; "
      "+inf is not reachable at finite N");
  out.elapsed_seconds = watch.seconds();
  return out;
}

ExperimentResult arginf_run(const ArginfConfig& cfg) {
  if (cfg.n_schedule.empty() || cfg.n_seeds == 0) {
    throw std::invalid_argument("arginf_run: empty schedule");
  }
  Stopwatch watch;
  ExperimentResult out;
  out.name = "arginf";
  out.config = {{"source", source_desc(cfg.source)},
                {"D", fmt(cfg.distortion)},
                {"seed_base", std::to_string(cfg.seed_base)},
                {"seeds", std::to_string(cfg.n_seeds)}};

  // Oracle minimizer on the true source, by dense-grid brute force.
  double oracle_mu = 0.0, oracle_sigma = 0.0;
  std::vector<std::size_t> oracle_set;  // grid families: indices of minimizers
  if (cfg.family.kind() == ParamFamily::Kind::gaussian) {
    const Moments m = true_moments(cfg.source);
    const FamilyRate fr = family_rate_gaussian(m, cfg.family.bounds(), cfg.distortion, {}, 1e-12);
    oracle_mu = *fr.theta.mu;
    oracle_sigma = *fr.theta.sigma;
    out.config.emplace_back("oracle_mu", fmt(oracle_mu));
    out.config.emplace_back("oracle_sigma", fmt(oracle_sigma));
  } else {
    if (!cfg.model) throw std::invalid_argument("arginf_run: grid family needs a model");
    const auto marginal = true_marginal(cfg.source);
    if (!marginal) throw std::invalid_argument("arginf_run: no true marginal for this source");
    ExtReal best = ExtReal::infinity();
    const auto& grid = cfg.family.grid();
    std::vector<ExtReal> vals;
    for (const auto& [label, q] : grid) {
      vals.push_back(rate_dual(*marginal, q, *cfg.model, cfg.distortion).value);
      if (vals.back() < best) best = vals.back();
    }
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (vals[i] == best) oracle_set.push_back(i);
    }
  }

  double final_max_dist = 0.0;
  for (std::size_t n : cfg.n_schedule) {
    double mean_dist = 0.0, max_dist = 0.0;
    for (std::size_t s = 0; s < cfg.n_seeds; ++s) {
      const std::uint64_t seed = Rng::derive(cfg.seed_base, s);
      ExperimentRow row;
      row.n = n;
      row.seed = seed;
      row.distortion = cfg.distortion;
      try {
        const Sample sample = generate(cfg.source.with_seed(seed), n);
        double dist = 0.0;
        if (cfg.family.kind() == ParamFamily::Kind::gaussian) {
          const DistortionModel se = DistortionModel::named(
              DistortionKind::squared_error, {"0", "1"}, {"0", "1"});
          const ArginfResult ar =
              arginf_estimate(sample, cfg.family, se, cfg.distortion);
          dist = std::hypot(*ar.theta.mu - oracle_mu, *ar.theta.sigma - oracle_sigma);
          row.flag = ar.flat_region ? "theta-distance,flat-region" : "theta-distance";
        } else {
          const ArginfResult ar =
              arginf_estimate(sample, cfg.family, *cfg.model, cfg.distortion);
          const bool in_set = std::find(oracle_set.begin(), oracle_set.end(),
                                        ar.theta.grid_index) != oracle_set.end();
          dist = in_set ? 0.0 : 1.0;
          row.flag = "theta-distance";
        }
        row.estimate = ExtReal(dist);
        mean_dist += dist;
        max_dist = std::max(max_dist, dist);
      } catch (const std::exception& e) {
        row.flag = std::string("error:") + e.what();
      }
      out.rows.push_back(std::move(row));
    }
    mean_dist /= static_cast<double>(cfg.n_seeds);
    out.summary.emplace_back("mean_dist_n" + std::to_string(n), mean_dist);
    out.summary.emplace_back("max_dist_n" + std::to_string(n), max_dist);
    final_max_dist = max_dist;
  }
  out.summary.emplace_back("final_max_dist", final_max_dist);
  out.elapsed_seconds = watch.seconds();
  return out;
}

ExperimentResult mth_order_run(const MthOrderConfig& cfg) {
  if (cfg.n_schedule.empty() || cfg.n_seeds == 0) {
    throw std::invalid_argument("mth_order_run: empty schedule");
  }
  Stopwatch watch;
  ExperimentResult out;
  out.name = "mth-order";
  out.config = {{"source", source_desc(cfg.source)},
                {"m", std::to_string(cfg.m)},
                {"D", fmt(cfg.distortion)},
                {"seed_base", std::to_string(cfg.seed_base)},
                {"seeds", std::to_string(cfg.n_seeds)}};

  std::optional<double> oracle;
  if (const auto marginal = true_marginal(cfg.source)) {
    const RdAtResult r = rd_at(*marginal, cfg.model, cfg.distortion, cfg.rd_opts);
    if (r.rate.is_finite()) oracle = r.rate.value();
  }

  for (std::size_t n : cfg.n_schedule) {
    double err_sum = 0.0, err_max = 0.0;
    std::size_t cells = 0;
    for (std::size_t s = 0; s < cfg.n_seeds; ++s) {
      const std::uint64_t seed = Rng::derive(cfg.seed_base, s);
      ExperimentRow row;
      row.n = n;
      row.seed = seed;
      row.distortion = cfg.distortion;
      try {
        const Sample sample = generate(cfg.source.with_seed(seed), n);
        row.estimate =
            mth_order_estimate(sample, cfg.m, cfg.model, cfg.distortion, cfg.rd_opts).estimate;
        row.oracle = oracle;
        if (oracle) {
          const double err = row.estimate.is_finite()
                                 ? std::abs(row.estimate.value() - *oracle)
                                 : std::numeric_limits<double>::infinity();
          row.abs_err = err;
          err_sum += err;
          err_max = std::max(err_max, err);
          ++cells;
        }
        row.flag = "ok";
      } catch (const std::exception& e) {
        row.flag = std::string("error:") + e.what();
      }
      out.rows.push_back(std::move(row));
    }
    if (cells > 0) {
      out.summary.emplace_back("mean_abs_err_n" + std::to_string(n),
                               err_sum / static_cast<double>(cells));
      out.summary.emplace_back("max_abs_err_n" + std::to_string(n), err_max);
    }
  }
  out.elapsed_seconds = watch.seconds();
  return out;
}

}  // namespace rdest
