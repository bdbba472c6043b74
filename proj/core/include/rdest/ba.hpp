#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rdest/distortion.hpp"
#include "rdest/ext_real.hpp"
#include "rdest/finite_dist.hpp"
#include "rdest/rd_point.hpp"

namespace rdest {

struct BaOptions {
  double tol = 1e-9;     // terminate when the certified bound gap is below this
  int max_iter = 10000;
};

/// Outcome of one fixed-slope Blahut-Arimoto solve. `gap` is the best
/// upper/lower bound gap certified so far (nonincreasing across iterations);
/// `converged` is false when the iteration cap was hit, never silently.
struct BaResult {
  RDPoint point;
  int iterations;
  double gap;
  bool converged;
};

/// Alternating-minimization solve of the Lagrangian at a fixed slope <= 0:
/// channel update W(y|x) proportional to Q(y) e^{slope rho(x,y)}, then output
/// marginal update, until the Csiszar-style bound gap falls below tol.
/// slope = 0 returns the zero-rate endpoint (D_max(P), 0).
BaResult ba_fixed_slope(const FiniteDist& p, const DistortionModel& model, double slope,
                        const BaOptions& opts = {});

/// One point per slope (slopes ascending, all <= 0); D is nonincreasing and
/// R nondecreasing as the slope decreases.
std::vector<BaResult> rd_curve(const FiniteDist& p, const DistortionModel& model,
                               const std::vector<double>& slopes, const BaOptions& opts = {});

struct RdAtOptions {
  double d_tol = 1e-8;  // |D(slope) - D| target for the slope bisection
  BaOptions ba;
};

/// R_1(P, D) evaluated at a target distortion.
struct RdAtResult {
  ExtReal rate;
  double slope = 0.0;
  std::optional<FiniteDist> output_dist;
  bool at_floor = false;      // D at the feasibility floor: the one possible
                              // discontinuity point, reported but flagged
  bool zero_rate = false;     // D >= d_max0
  bool all_converged = true;  // every inner BA solve converged
  int ba_solves = 0;
};

/// R_1(P, D): 0 for D >= d_max0, +inf for D < d_floor, otherwise bisection
/// on the slope with a tangent correction at the matched point.
RdAtResult rd_at(const FiniteDist& p, const DistortionModel& model, double distortion,
                 const RdAtOptions& opts = {});

/// Feasibility endpoints: d_floor = E_P[min_y rho], d_max0 = min_y E_P[rho].
std::pair<double, double> d_floor_and_dmax(const FiniteDist& p, const DistortionModel& model);

}  // namespace rdest
