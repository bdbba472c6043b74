#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rdest/distortion.hpp"
#include "rdest/ext_real.hpp"
#include "rdest/finite_dist.hpp"
#include "rdest/param_family.hpp"

namespace rdest {

/// Mean and variance of a (possibly empirical) real-valued distribution;
/// sufficient statistics for the Gaussian family under squared error.
struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

/// Options for the 1-D concave maximization over lambda <= 0.
struct DualOptions {
  double lambda_rel_tol = 1e-10;  // bracket width, relative to max(1,|lambda|)
  double objective_tol = 1e-12;
  int max_iterations = 200;
  double lambda_limit = -1e12;    // doubling stops here; beyond is the limit regime
};

/// Value of sup_{lambda<=0} [lambda D - Lambda(lambda)] together with the
/// maximizing slope. `boundary` marks D at the D_min transition (the one
/// point where left-continuity can fail); the reported value there is the
/// supremum computed on the bracket.
struct DualRate {
  ExtReal value;
  double lambda_star = 0.0;
  bool boundary = false;
};

/// The averaged log moment generating function
///   Lambda(lambda) = E_P[ log E_Q e^{lambda rho(X,Y)} ]
/// of a source/codebook pair, evaluated lazily with a per-object cache.
/// Convex and nondecreasing in lambda on (-inf, 0], with Lambda(0) = 0.
/// Not safe for concurrent use of a single instance; construction is cheap,
/// so callers share nothing.
class LogMgfCurve {
public:
  /// Finite-alphabet pair under an explicit distortion model.
  LogMgfCurve(const FiniteDist& p, const FiniteDist& q, const DistortionModel& model);

  /// Gaussian codebook N(mu, sigma^2) under squared error against a source
  /// known through its moments.
  LogMgfCurve(const Moments& source, double mu, double sigma);

  double value(double lambda) const;

  /// Lambda'(lambda): the tilted mean distortion; decreases from d_ave to
  /// d_min as lambda -> -inf.
  double mean_tilted(double lambda) const;

  double d_min() const { return d_min_; }
  double d_ave() const { return d_ave_; }

private:
  struct Row {
    double p;
    double rho_min;
    std::vector<double> rho;  // over Q's support
    std::vector<double> q;
  };

  double value_uncached(double lambda) const;

  bool gaussian_ = false;
  std::vector<Row> rows_;
  double s2mu_ = 0.0, sigma_ = 0.0;
  double d_min_ = 0.0, d_ave_ = 0.0;
  mutable std::vector<std::pair<double, double>> cache_;
};

/// E_P[ log E_Q e^{lambda rho(X,Y)} ] for lambda <= 0 (max-shifted
/// log-sum-exp); always <= 0 and finite on finite alphabets.
double log_mgf(const FiniteDist& p, const FiniteDist& q, const DistortionModel& model,
               double lambda);

/// E_P E_Q rho(X, Y).
double d_ave(const FiniteDist& p, const FiniteDist& q, const DistortionModel& model);

/// E_P[ min_{y : Q(y)>0} rho(X, y) ]; the rate function is +inf strictly
/// below this.
double d_min(const FiniteDist& p, const FiniteDist& q, const DistortionModel& model);

/// R_1(P, Q, D) = sup_{lambda<=0} [lambda D - Lambda(lambda)]:
/// +inf for D < d_min, 0 for D >= d_ave, strictly convex between.
DualRate rate_dual(const FiniteDist& p, const FiniteDist& q, const DistortionModel& model,
                   double distortion, const DualOptions& opts = {});

/// Same quantity for a Gaussian codebook under squared error, with the
/// source entering through its moments.
DualRate rate_dual_gaussian(const Moments& source, double mu, double sigma, double distortion,
                            const DualOptions& opts = {});

/// log E_{Y~N(mu,sigma^2)} e^{lambda (x-Y)^2}
///   = -0.5 log(1 - 2 lambda sigma^2) + lambda (x-mu)^2 / (1 - 2 lambda sigma^2);
/// sigma = 0 degenerates to lambda (x-mu)^2.
double gaussian_log_mgf(double x, double mu, double sigma, double lambda);

/// The selected parameter of a family infimum.
struct ThetaHat {
  std::string label;           // grid label, or "gaussian"
  std::size_t grid_index = 0;  // grid families
  std::optional<double> mu, sigma;
};

struct FamilyRate {
  ExtReal value;
  ThetaHat theta;
  double lambda_star = 0.0;
  bool boundary = false;
  bool flat_region = false;     // minimum attained on a flat set (e.g. rate 0)
  bool theta_on_boundary = false;  // Gaussian minimizer pinned at the search bounds
};

/// inf_theta R_1(P, Q_theta, model, D) over a finite grid (exact minimum,
/// ties broken by lowest grid index) or the Gaussian family (closed-form
/// value on the source moments; minimizer located by grid refinement).
/// The Gaussian branch requires squared-error distortion and numeric
/// source symbols.
FamilyRate family_rate(const FiniteDist& p, const ParamFamily& family,
                       const DistortionModel& model, double distortion,
                       const DualOptions& opts = {});

/// Gaussian-family infimum directly from source moments:
/// max{0, 0.5 log(var / D)}, with the minimizer located within `bounds`.
FamilyRate family_rate_gaussian(const Moments& source, const GaussianBounds& bounds,
                                double distortion, const DualOptions& opts = {},
                                double theta_slack = 1e-9);

/// Moments of a finite distribution with numeric symbols.
Moments moments_of(const FiniteDist& p);

/// Both sides of the mixture inequality
///   R^Theta(eps P' + (1-eps) P, D) >= eps R^Theta(P', D/eps):
/// returns {lhs, rhs}.
std::pair<ExtReal, ExtReal> mixture_lower_bound(const FiniteDist& pprime, const FiniteDist& p,
                                                double eps, const ParamFamily& family,
                                                const DistortionModel& model, double distortion,
                                                const DualOptions& opts = {});

}  // namespace rdest
