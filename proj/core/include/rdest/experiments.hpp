#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rdest/ba.hpp"
#include "rdest/estimators.hpp"
#include "rdest/ext_real.hpp"
#include "rdest/param_family.hpp"
#include "rdest/sources.hpp"

namespace rdest {

/// One experiment cell. `n` doubles as the truncation parameter for the
/// discontinuity demo; `oracle` is present only when an independent truth
/// is computable.
struct ExperimentRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double distortion = 0.0;
  ExtReal estimate;
  std::optional<double> oracle;
  std::optional<double> abs_err;
  std::string flag;
};

/// Tabular experiment output plus an ordered numeric summary. CSV columns
/// are fixed (n,seed,D,estimate,oracle,abs_err,flag); +inf serializes as
/// the token "inf"; reruns with the same config are byte-identical.
struct ExperimentResult {
  std::string name;
  std::vector<ExperimentRow> rows;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::pair<std::string, double>> summary;
  std::vector<std::string> notes;
  double elapsed_seconds = 0.0;

  void write_csv(std::ostream& out) const;
  void write_csv_file(const std::string& path) const;
  std::string summary_json() const;
  void write_summary_file(const std::string& path) const;

  std::optional<double> summary_value(const std::string& key) const;
};

/// Consistency sweep of an estimator across a (D, n, seed) schedule, with
/// the oracle computed in-run from the declared source whenever a closed
/// form or BA-on-the-true-marginal truth exists.
struct ConsistencyConfig {
  SourceSpec source = SourceSpec::iid(FiniteDist::point_mass("0"), 0);
  std::optional<DistortionModel> model;
  std::optional<std::vector<double>> quantize_grid;  // real-valued sources, plug-in path
  DistortionKind quantize_rule = DistortionKind::squared_error;
  EstimatorKind estimator = EstimatorKind::plugin;
  std::optional<ParamFamily> family;
  std::optional<Penalty> penalty;
  std::vector<double> d_values;
  std::vector<std::size_t> n_schedule;
  std::uint64_t seed_base = 0;
  std::size_t n_seeds = 1;
  RdAtOptions rd_opts;
};

ExperimentResult consistency_run(const ConsistencyConfig& cfg);

/// The transition-point failure demo: A = {0,1}, Ahat = {0}, rho = |x-y|,
/// i.i.d. Bernoulli(p). Tracks the plug-in across n = 1..n_max and reports,
/// per seed, whether both the value 0 and +inf occur beyond n_max/2.
/// d_override replaces the default D = p.
ExperimentResult failure_demo(double p, std::size_t n_seeds, std::size_t n_max,
                              std::optional<double> d_override = std::nullopt,
                              std::uint64_t seed_base = 0);

/// The discontinuity-in-P demo: rho(x,y) = 1{x != y}/P'(x) + |x-y| on the
/// truncated alphabet {1..N} (symbol values 2..N+1), P' with tail weights
/// 1/(x log^1.5 x) normalized by the infinite-series constant so the model
/// is N-independent, and the finite-entropy P fixed at truncation 10 and
/// embedded in the growing alphabet. Reports R(P_eps, D) growth in N against
/// the mixture bound eps * R(P', D/eps) while R(P, D) stays put.
ExperimentResult discontinuity_demo(const std::vector<double>& eps_list,
                                    const std::vector<std::size_t>& truncations,
                                    double distortion = 0.25);

/// Convergence of approximate minimizers to the oracle minimizer set
/// (dense-grid brute force on the true source moments / marginal). Row
/// estimates are distances in parameter space.
struct ArginfConfig {
  SourceSpec source = SourceSpec::gaussian_ar1(0.0, 1.0, 0.0, 0);
  ParamFamily family = ParamFamily::gaussian(GaussianBounds(-1.0, 1.0, 0.0, 2.0));
  std::optional<DistortionModel> model;  // grid families
  double distortion = 0.25;
  std::vector<std::size_t> n_schedule;
  std::uint64_t seed_base = 0;
  std::size_t n_seeds = 1;
};

ExperimentResult arginf_run(const ArginfConfig& cfg);

/// m-th order (sliding-block) estimation against the first-order oracle on
/// the true marginal; for i.i.d. sources R_m = R_1.
struct MthOrderConfig {
  SourceSpec source = SourceSpec::iid(FiniteDist::point_mass("0"), 0);
  DistortionModel model = DistortionModel::named(DistortionKind::hamming, {"0"}, {"0"});
  std::size_t m = 1;
  double distortion = 0.1;
  std::vector<std::size_t> n_schedule;
  std::uint64_t seed_base = 0;
  std::size_t n_seeds = 1;
  RdAtOptions rd_opts;
};

ExperimentResult mth_order_run(const MthOrderConfig& cfg);

/// True stationary moments of a source (AR(1): mean 0, var sigma^2/(1-phi^2)).
Moments true_moments(const SourceSpec& spec);

}  // namespace rdest
