#include "rdest/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace rdest {

std::string to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::plugin: return "plug-in";
    case EstimatorKind::parametric: return "parametric";
    case EstimatorKind::penalized: return "penalized";
    case EstimatorKind::lossy_likelihood: return "lossy-likelihood";
  }
  return "unknown";
}

Penalty Penalty::constant(double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("Penalty: constant must be >= 0");
  return Penalty(Rule::constant, c, {});
}

Penalty Penalty::complexity(double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("Penalty: complexity factor must be >= 0");
  return Penalty(Rule::complexity, c, {});
}

Penalty Penalty::table(std::vector<double> values) {
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("Penalty: table entries must be finite and >= 0");
    }
  }
  return Penalty(Rule::table, 0.0, std::move(values));
}

double Penalty::value_grid(std::size_t grid_index, const FiniteDist& q, std::size_t n) const {
  switch (rule_) {
    case Rule::none: return 0.0;
    case Rule::constant: return c_ / static_cast<double>(n);
    case Rule::complexity:
      return c_ * static_cast<double>(q.support_size()) / static_cast<double>(n);
    case Rule::table:
      if (grid_index >= table_.size()) {
        throw std::invalid_argument("Penalty: table has no entry for grid index " +
                                    std::to_string(grid_index));
      }
      return table_[grid_index];
  }
  return 0.0;
}

double Penalty::value_gaussian(std::size_t n) const {
  switch (rule_) {
    case Rule::none: return 0.0;
    case Rule::constant: return c_ / static_cast<double>(n);
    case Rule::complexity: return c_ * 2.0 / static_cast<double>(n);
    case Rule::table:
      throw std::invalid_argument("Penalty: table rule is not defined for the Gaussian family");
  }
  return 0.0;
}

std::vector<double> Sample::to_reals() const {
  if (kind == Kind::real) return reals;
  std::vector<double> out;
  out.reserve(symbols.size());
  for (const auto& s : symbols) out.push_back(numeric_symbol_value(s));
  return out;
}

FiniteDist empirical(const Sample& sample) {
  if (!sample.is_symbolic()) {
    throw std::invalid_argument(
        "empirical: sample is real-valued; reduce it with quantize() first");
  }
  std::vector<std::string> symbols;
  std::vector<double> counts;
  std::map<std::string, std::size_t, std::less<>> seen;
  for (const auto& s : sample.symbols) {
    auto it = seen.find(s);
    if (it == seen.end()) {
      seen.emplace(s, symbols.size());
      symbols.push_back(s);
      counts.push_back(1.0);
    } else {
      counts[it->second] += 1.0;
    }
  }
  const double n = static_cast<double>(sample.symbols.size());
  for (double& c : counts) c /= n;
  return FiniteDist(std::move(symbols), std::move(counts));
}

Moments sample_moments(const Sample& sample) {
  const std::vector<double> xs = sample.is_real() ? sample.reals : sample.to_reals();
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= n;
  return {mean, var};
}

EstimateReport plugin_rd(const Sample& sample, const DistortionModel& model, double distortion,
                         const RdAtOptions& opts) {
  const FiniteDist p = empirical(sample);
  const RdAtResult r = rd_at(p, model, distortion, opts);
  EstimateReport rep;
  rep.distortion = distortion;
  rep.estimate = r.rate;
  rep.kind = EstimatorKind::plugin;
  rep.diagnostics.slope = r.rate.is_finite() ? std::optional<double>(r.slope) : std::nullopt;
  rep.diagnostics.ba_all_converged = r.all_converged;
  rep.diagnostics.ba_solves = r.ba_solves;
  rep.diagnostics.boundary = r.at_floor;
  if (r.at_floor) rep.diagnostics.notes.push_back("D at the feasibility floor");
  if (!r.all_converged) {
    rep.diagnostics.notes.push_back("an inner BA solve hit the iteration cap");
  }
  return rep;
}

namespace {

EstimateReport report_from_family(const FamilyRate& fr, double distortion, EstimatorKind kind) {
  EstimateReport rep;
  rep.distortion = distortion;
  rep.estimate = fr.value;
  rep.kind = kind;
  rep.theta = fr.theta;
  rep.diagnostics.slope = fr.lambda_star;
  rep.diagnostics.boundary = fr.boundary;
  rep.diagnostics.flat_region = fr.flat_region;
  if (fr.theta_on_boundary) {
    rep.diagnostics.notes.push_back("theta_hat pinned at the family search bounds");
  }
  return rep;
}

Moments moments_for_gaussian(const Sample& sample) {
  return sample_moments(sample);
}

}  // namespace

EstimateReport plugin_parametric(const Sample& sample, const ParamFamily& family,
                                 const DistortionModel& model, double distortion,
                                 const DualOptions& opts) {
  if (family.kind() == ParamFamily::Kind::gaussian) {
    if (model.kind() != DistortionKind::squared_error) {
      throw std::invalid_argument(
          "plugin_parametric: the Gaussian family requires squared-error distortion");
    }
    const FamilyRate fr =
        family_rate_gaussian(moments_for_gaussian(sample), family.bounds(), distortion, opts);
    return report_from_family(fr, distortion, EstimatorKind::parametric);
  }
  const FiniteDist p = empirical(sample);
  const FamilyRate fr = family_rate(p, family, model, distortion, opts);
  return report_from_family(fr, distortion, EstimatorKind::parametric);
}

EstimateReport penalized_estimate(const Sample& sample, const ParamFamily& family,
                                  const DistortionModel& model, double distortion,
                                  const Penalty& penalty, const DualOptions& opts) {
  const std::size_t n = sample.size();
  if (family.kind() == ParamFamily::Kind::gaussian) {
    // The penalty is constant over Gaussian parameters, so the minimizer is
    // the plug-in minimizer and the value shifts by F_n.
    EstimateReport rep = plugin_parametric(sample, family, model, distortion, opts);
    rep.kind = EstimatorKind::penalized;
    rep.estimate = rep.estimate + ExtReal(penalty.value_gaussian(n));
    return rep;
  }
  const FiniteDist p = empirical(sample);
  const auto& grid = family.grid();
  EstimateReport rep;
  rep.distortion = distortion;
  rep.kind = EstimatorKind::penalized;
  ExtReal best = ExtReal::infinity();
  bool first = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const DualRate r = rate_dual(p, grid[i].second, model, distortion, opts);
    const ExtReal v = r.value + ExtReal(penalty.value_grid(i, grid[i].second, n));
    if (first || v < best) {
      best = v;
      rep.theta = ThetaHat{grid[i].first, i, std::nullopt, std::nullopt};
      rep.diagnostics.slope = r.lambda_star;
      rep.diagnostics.boundary = r.boundary;
      first = false;
    }
  }
  rep.estimate = best;
  return rep;
}

namespace {

/// Real gcd with an absolute tolerance, used to detect the common distortion
/// grid.
double real_gcd(double a, double b, double tol) {
  a = std::abs(a);
  b = std::abs(b);
  while (b > tol) {
    const double r = std::fmod(a, b);
    a = b;
    // fmod residue within tol of b means a was an (approximate) multiple.
    b = (r > b - tol) ? 0.0 : r;
  }
  return a;
}

}  // namespace

ExtReal lossy_likelihood(const Sample& sample, const FiniteDist& q,
                         const DistortionModel& model, double distortion) {
  if (!sample.is_symbolic()) {
    throw std::invalid_argument("lossy_likelihood: sample must be finite-alphabet");
  }
  if (distortion < 0.0) throw std::invalid_argument("lossy_likelihood: D must be >= 0");
  const std::size_t n = sample.size();
  const std::size_t nb = model.n_repro();

  // Reproduction masses aligned with the model.
  std::vector<double> qm(nb, 0.0);
  for (std::size_t j = 0; j < q.size(); ++j) {
    auto idx = model.repro_index_of(q.symbol(j));
    if (!idx) {
      throw std::invalid_argument("lossy_likelihood: Q symbol '" + q.symbol(j) +
                                  "' is not in the model");
    }
    qm[*idx] = q.prob(j);
  }

  // Per-position distortion rows.
  std::vector<std::size_t> rows(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto idx = model.source_index_of(sample.symbols[k]);
    if (!idx) {
      throw std::invalid_argument("lossy_likelihood: sample symbol '" + sample.symbols[k] +
                                  "' is not in the model");
    }
    rows[k] = *idx;
  }

  // Detect the common rational grid of the distortion values in play.
  constexpr double kGridTol = 1e-9;
  double g = 0.0;
  double max_val = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < nb; ++j) {
      const double v = model.rho(rows[k], j);
      max_val = std::max(max_val, v);
      if (v > kGridTol) g = g == 0.0 ? v : real_gcd(g, v, kGridTol);
    }
  }
  if (g == 0.0) {
    // Every reachable distortion is (numerically) zero; the ball is everything.
    return ExtReal(0.0);
  }
  if (g < kGridTol * std::max(1.0, max_val)) {
    throw std::invalid_argument(
        "lossy_likelihood: distortion values share no rational grid at 1e-9 resolution; "
        "coarsen the model");
  }
  std::vector<long long> units(n * nb);
  long long max_units_total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    long long row_max = 0;
    for (std::size_t j = 0; j < nb; ++j) {
      const double v = model.rho(rows[k], j);
      const double u = v / g;
      const long long ui = static_cast<long long>(std::llround(u));
      if (std::abs(u - static_cast<double>(ui)) > kGridTol * std::max(1.0, u)) {
        throw std::invalid_argument(
            "lossy_likelihood: distortion values are not grid-representable within 1e-9; "
            "coarsen the model");
      }
      units[k * nb + j] = ui;
      row_max = std::max(row_max, ui);
    }
    max_units_total += row_max;
  }

  const double budget_real = std::floor(static_cast<double>(n) * distortion / g + 1e-9);
  if (budget_real >= static_cast<double>(max_units_total)) {
    return ExtReal(0.0);  // the ball has probability 1
  }
  const long long budget = static_cast<long long>(budget_real);
  if (budget < 0) return ExtReal::infinity();

  const long long states = budget + 1;
  if (static_cast<double>(states) * static_cast<double>(n) * static_cast<double>(nb) > 2e9) {
    throw std::invalid_argument("lossy_likelihood: DP state space too large for this model");
  }

  // Scaled linear-space DP over the accumulated distortion in grid units.
  // States above the budget can never re-enter the ball and are pruned.
  std::vector<double> f(static_cast<std::size_t>(states), 0.0);
  std::vector<double> nf(static_cast<std::size_t>(states), 0.0);
  f[0] = 1.0;
  double log_scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::fill(nf.begin(), nf.end(), 0.0);
    const long long* u = &units[k * nb];
    for (long long t = 0; t < states; ++t) {
      const double mass = f[static_cast<std::size_t>(t)];
      if (mass == 0.0) continue;
      for (std::size_t j = 0; j < nb; ++j) {
        if (qm[j] == 0.0) continue;
        const long long t2 = t + u[j];
        if (t2 <= budget) nf[static_cast<std::size_t>(t2)] += mass * qm[j];
      }
    }
    f.swap(nf);
    double layer_max = 0.0;
    for (double v : f) layer_max = std::max(layer_max, v);
    if (layer_max == 0.0) return ExtReal::infinity();
    if (layer_max < 1e-100) {
      for (double& v : f) v *= 1e100;
      log_scale -= std::log(1e100);
    }
  }
  double total = 0.0;
  for (double v : f) total += v;
  if (total == 0.0) return ExtReal::infinity();
  const double log_prob = std::log(total) + log_scale;
  return ExtReal(std::max(0.0, -log_prob / static_cast<double>(n)));
}

ArginfResult arginf_estimate(const Sample& sample, const ParamFamily& family,
                             const DistortionModel& model, double distortion, double eps_opt,
                             const DualOptions& opts) {
  ArginfResult out;
  if (family.kind() == ParamFamily::Kind::finite_grid) {
    const FiniteDist p = empirical(sample);
    const auto& grid = family.grid();
    ExtReal best = ExtReal::infinity();
    std::size_t best_i = 0;
    std::size_t ties = 0;
    bool first = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const ExtReal v = rate_dual(p, grid[i].second, model, distortion, opts).value;
      if (first || v < best) {
        best = v;
        best_i = i;
        ties = 1;
        first = false;
      } else if (v == best) {
        ++ties;
      }
    }
    out.theta = ThetaHat{grid[best_i].first, best_i, std::nullopt, std::nullopt};
    out.achieved = best;
    out.target = best;
    out.flat_region = ties > 1;
    return out;
  }

  if (model.kind() != DistortionKind::squared_error) {
    throw std::invalid_argument(
        "arginf_estimate: the Gaussian family requires squared-error distortion");
  }
  const Moments m = sample_moments(sample);
  double closed_value = 0.0;  // max{0, 0.5 log(var/D)}, +inf handled below
  bool closed_finite = true;
  if (m.var <= distortion) {
    closed_value = 0.0;
  } else if (distortion == 0.0) {
    closed_finite = false;
  } else {
    closed_value = 0.5 * std::log(m.var / distortion);
  }
  const double slack =
      eps_opt > 0.0 ? eps_opt
                    : 1e-6 * std::max(1.0, closed_finite ? closed_value : 1.0);
  const FamilyRate fr = family_rate_gaussian(m, family.bounds(), distortion, opts, slack);
  out.theta = fr.theta;
  out.target = fr.value;
  out.achieved = rate_dual_gaussian(m, *fr.theta.mu, *fr.theta.sigma, distortion, opts).value;
  out.flat_region = fr.flat_region;
  out.within_slack =
      out.achieved.is_finite() == out.target.is_finite() &&
      (!out.achieved.is_finite() || out.achieved.value() <= out.target.value_or(0.0) + slack);
  return out;
}

FiniteDist optimal_reproduction(const FiniteDist& p, const DistortionModel& model,
                                double distortion, const RdAtOptions& opts) {
  const auto [d_floor, d_max0] = d_floor_and_dmax(p, model);
  if (distortion < d_floor - 1e-12 * std::max(1.0, d_floor)) {
    throw std::invalid_argument("optimal_reproduction: D is below the feasibility floor");
  }
  const RdAtResult r = rd_at(p, model, distortion, opts);
  if (!r.output_dist) {
    throw std::runtime_error("optimal_reproduction: no output distribution available");
  }
  return *r.output_dist;
}

}  // namespace rdest
