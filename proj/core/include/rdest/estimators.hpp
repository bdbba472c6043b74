#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rdest/ba.hpp"
#include "rdest/distortion.hpp"
#include "rdest/dual.hpp"
#include "rdest/ext_real.hpp"
#include "rdest/finite_dist.hpp"
#include "rdest/param_family.hpp"
#include "rdest/sample.hpp"

namespace rdest {

enum class EstimatorKind { plugin, parametric, penalized, lossy_likelihood };

std::string to_string(EstimatorKind kind);

/// Solver-side metadata carried with every estimate.
struct EstimateDiagnostics {
  std::optional<double> slope;
  bool ba_all_converged = true;
  int ba_solves = 0;
  bool boundary = false;     // value computed at a flagged transition point
  bool flat_region = false;  // family minimum attained on a flat set
  std::vector<std::string> notes;
};

struct EstimateReport {
  double distortion = 0.0;
  ExtReal estimate;
  EstimatorKind kind = EstimatorKind::plugin;
  std::optional<ThetaHat> theta;
  EstimateDiagnostics diagnostics;
};

/// Per-parameter penalty F_n(theta) >= 0 added to the plug-in objective.
/// Rules `none`, `constant` (c/n) and `complexity` (c * complexity(theta) / n)
/// vanish as n grows; `table` values are taken as-is per grid index and are
/// the caller's responsibility.
class Penalty {
public:
  static Penalty none() { return Penalty(Rule::none, 0.0, {}); }
  static Penalty constant(double c);
  static Penalty complexity(double c);
  static Penalty table(std::vector<double> values);

  /// F_n for a grid entry (complexity = support size of its distribution).
  double value_grid(std::size_t grid_index, const FiniteDist& q, std::size_t n) const;
  /// F_n for a Gaussian parameter (complexity = 2 free parameters).
  double value_gaussian(std::size_t n) const;

  bool is_none() const { return rule_ == Rule::none; }

private:
  enum class Rule { none, constant, complexity, table };
  Penalty(Rule r, double c, std::vector<double> t) : rule_(r), c_(c), table_(std::move(t)) {}
  Rule rule_;
  double c_;
  std::vector<double> table_;
};

/// The empirical distribution of a finite-alphabet sample: mass 1/n per
/// observation, distinct values merged, first-appearance order.
FiniteDist empirical(const Sample& sample);

/// Moments (mean, biased variance) of a real-valued sample.
Moments sample_moments(const Sample& sample);

/// Nonparametric plug-in: R_1(P_emp, D) via Blahut-Arimoto.
EstimateReport plugin_rd(const Sample& sample, const DistortionModel& model, double distortion,
                         const RdAtOptions& opts = {});

/// Parametric plug-in: inf_theta R_1(P_emp, Q_theta, D). The Gaussian family
/// takes the raw real-valued sample (closed-form value on the empirical
/// variance); grid families take a finite-alphabet sample.
EstimateReport plugin_parametric(const Sample& sample, const ParamFamily& family,
                                 const DistortionModel& model, double distortion,
                                 const DualOptions& opts = {});

/// Penalized plug-in: inf_theta [ R_1(P_emp, Q_theta, D) + F_n(theta) ].
EstimateReport penalized_estimate(const Sample& sample, const ParamFamily& family,
                                  const DistortionModel& model, double distortion,
                                  const Penalty& penalty, const DualOptions& opts = {});

/// -(1/n) log Q^n(B_n(x_1^n, D)), computed exactly by dynamic programming
/// over the accumulated distortion on an auto-detected common grid.
/// +inf when the distortion ball has Q^n-probability zero.
ExtReal lossy_likelihood(const Sample& sample, const FiniteDist& q,
                         const DistortionModel& model, double distortion);

struct ArginfResult {
  ThetaHat theta;
  ExtReal achieved;  // R_1(P_emp, Q_theta_hat, D)
  ExtReal target;    // inf over the family
  bool within_slack = true;
  bool flat_region = false;
};

/// An approximate minimizer: theta with R_1(P_emp, Q_theta, D) within
/// eps_opt of the family infimum; ties broken by lowest grid index
/// (grids) / smallest mu then sigma (Gaussian). eps_opt <= 0 selects the
/// default 1e-6 * max(1, estimate).
ArginfResult arginf_estimate(const Sample& sample, const ParamFamily& family,
                             const DistortionModel& model, double distortion,
                             double eps_opt = 0.0, const DualOptions& opts = {});

/// The output distribution achieving R_1(P, D) (up to solver tolerance):
/// the BA output marginal at the slope matched to D.
FiniteDist optimal_reproduction(const FiniteDist& p, const DistortionModel& model,
                                double distortion, const RdAtOptions& opts = {});

}  // namespace rdest
