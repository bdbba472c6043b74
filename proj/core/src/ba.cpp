#include "rdest/ba.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rdest {

namespace {

/// P restricted to its support, aligned with the model's index space.
/// Distinct observed symbols form the working source alphabet.
struct Workspace {
  std::vector<double> p;              // support masses
  std::vector<std::size_t> rows;      // model source indices
  const DistortionModel* model;
  std::size_t nb;

  double rho(std::size_t i, std::size_t j) const { return model->rho(rows[i], j); }
};

Workspace make_workspace(const FiniteDist& p, const DistortionModel& model) {
  Workspace ws;
  ws.model = &model;
  ws.nb = model.n_repro();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.prob(i) == 0.0) continue;
    auto idx = model.source_index_of(p.symbol(i));
    if (!idx) {
      throw std::invalid_argument("ba: source symbol '" + p.symbol(i) +
                                  "' is not in the distortion model");
    }
    ws.p.push_back(p.prob(i));
    ws.rows.push_back(*idx);
  }
  return ws;
}

std::pair<double, double> endpoints(const Workspace& ws) {
  double d_floor = 0.0;
  std::vector<double> col_mean(ws.nb, 0.0);
  for (std::size_t i = 0; i < ws.p.size(); ++i) {
    double rmin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < ws.nb; ++j) {
      const double r = ws.rho(i, j);
      rmin = std::min(rmin, r);
      col_mean[j] += ws.p[i] * r;
    }
    d_floor += ws.p[i] * rmin;
  }
  const double d_max0 = *std::min_element(col_mean.begin(), col_mean.end());
  return {d_floor, d_max0};
}

std::size_t argmin_column(const Workspace& ws) {
  std::size_t best = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < ws.nb; ++j) {
    double v = 0.0;
    for (std::size_t i = 0; i < ws.p.size(); ++i) v += ws.p[i] * ws.rho(i, j);
    if (v < best_v) {
      best_v = v;
      best = j;
    }
  }
  return best;
}

struct SolveOut {
  std::vector<double> q;     // codebook distribution at termination
  std::vector<double> qout;  // output marginal of the final channel
  double distortion = 0.0;
  double rate = 0.0;
  int iterations = 0;
  double gap = 0.0;
  bool converged = false;
};

/// One fixed-slope solve. Exponentials are taken once per solve with a
/// per-row shift by the row minimum, so the iteration itself is two
/// matrix-vector passes.
SolveOut solve(const Workspace& ws, double slope, const std::vector<double>* q_init,
               const BaOptions& opts) {
  const std::size_t na = ws.p.size();
  const std::size_t nb = ws.nb;

  std::vector<double> row_min(na);
  std::vector<double> expm(na * nb);  // e^{slope (rho - row_min)}
  for (std::size_t i = 0; i < na; ++i) {
    double rmin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < nb; ++j) rmin = std::min(rmin, ws.rho(i, j));
    row_min[i] = rmin;
    for (std::size_t j = 0; j < nb; ++j) {
      expm[i * nb + j] = std::exp(slope * (ws.rho(i, j) - rmin));
    }
  }

  SolveOut out;
  out.q = q_init ? *q_init : std::vector<double>(nb, 1.0 / static_cast<double>(nb));
  std::vector<double> w(na), c(nb), qn(nb);
  double best_gap = std::numeric_limits<double>::infinity();

  int it = 0;
  for (; it < opts.max_iter; ++it) {
    for (std::size_t i = 0; i < na; ++i) {
      const double* row = &expm[i * nb];
      double a = 0.0;
      for (std::size_t j = 0; j < nb; ++j) a += out.q[j] * row[j];
      if (a <= 0.0) throw std::runtime_error("ba: degenerate iterate (zero partition mass)");
      w[i] = ws.p[i] / a;
    }
    std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t i = 0; i < na; ++i) {
      const double* row = &expm[i * nb];
      const double wi = w[i];
      for (std::size_t j = 0; j < nb; ++j) c[j] += wi * row[j];
    }
    double s = 0.0;
    for (std::size_t j = 0; j < nb; ++j) {
      qn[j] = out.q[j] * c[j];
      s += qn[j];
    }
    double max_logc = -std::numeric_limits<double>::infinity();
    double mean_logc = 0.0;
    for (std::size_t j = 0; j < nb; ++j) {
      qn[j] /= s;
      if (c[j] > 0.0) {
        const double lc = std::log(c[j]);
        max_logc = std::max(max_logc, lc);
        if (qn[j] > 0.0) mean_logc += qn[j] * lc;
      }
    }
    out.q.swap(qn);
    // The raw per-iteration gap is not monotone; the certified bound is the
    // best gap seen, which is what convergence is judged on and reported.
    best_gap = std::min(best_gap, max_logc - mean_logc);
    if (best_gap <= opts.tol) {
      out.converged = true;
      ++it;
      break;
    }
  }
  out.iterations = it;
  out.gap = std::max(best_gap, 0.0);

  // Exact channel statistics at the final codebook: the returned (D, R) is
  // achieved by the channel W(y|x) ~ q(y) e^{slope rho}, so R is a valid
  // rate at D regardless of convergence. The distortion is accumulated as
  // the excess over the per-row floor, which keeps slope * distortion and
  // the log-partition term from cancelling at extreme slopes.
  out.qout.assign(nb, 0.0);
  double floor_sum = 0.0;   // sum_x p(x) min_y rho(x,y)
  double excess = 0.0;      // sum_x p(x) E_W[rho - row_min]
  double sum_p_log_a = 0.0; // sum_x p(x) log A'_x (shifted partition)
  for (std::size_t i = 0; i < na; ++i) {
    const double* row = &expm[i * nb];
    double a = 0.0;
    for (std::size_t j = 0; j < nb; ++j) a += out.q[j] * row[j];
    sum_p_log_a += ws.p[i] * std::log(a);
    floor_sum += ws.p[i] * row_min[i];
    const double inv_a = 1.0 / a;
    for (std::size_t j = 0; j < nb; ++j) {
      const double wxy = out.q[j] * row[j] * inv_a;
      if (wxy == 0.0) continue;
      const double mass = ws.p[i] * wxy;
      out.qout[j] += mass;
      excess += mass * (ws.rho(i, j) - row_min[i]);
    }
  }
  double kl_out = 0.0;
  for (std::size_t j = 0; j < nb; ++j) {
    if (out.qout[j] > 0.0) kl_out += out.qout[j] * std::log(out.qout[j] / out.q[j]);
  }
  out.distortion = floor_sum + excess;
  out.rate = std::max(0.0, slope * excess - sum_p_log_a - kl_out);
  return out;
}

BaResult to_result(const Workspace& ws, const SolveOut& sol, double slope) {
  FiniteDist qout(ws.model->repro_symbols(), sol.qout);
  return BaResult{RDPoint(sol.distortion, ExtReal(sol.rate), slope, std::move(qout)),
                  sol.iterations, sol.gap, sol.converged};
}

BaResult zero_slope_result(const Workspace& ws) {
  const std::size_t j = argmin_column(ws);
  double d = 0.0;
  for (std::size_t i = 0; i < ws.p.size(); ++i) d += ws.p[i] * ws.rho(i, j);
  std::vector<double> q(ws.nb, 0.0);
  q[j] = 1.0;
  FiniteDist qdist(ws.model->repro_symbols(), q);
  return BaResult{RDPoint(d, ExtReal(0.0), 0.0, std::move(qdist)), 0, 0.0, true};
}

}  // namespace

BaResult ba_fixed_slope(const FiniteDist& p, const DistortionModel& model, double slope,
                        const BaOptions& opts) {
  if (!(slope <= 0.0)) throw std::invalid_argument("ba_fixed_slope: slope must be <= 0");
  Workspace ws = make_workspace(p, model);
  if (slope == 0.0) return zero_slope_result(ws);
  return to_result(ws, solve(ws, slope, nullptr, opts), slope);
}

std::vector<BaResult> rd_curve(const FiniteDist& p, const DistortionModel& model,
                               const std::vector<double>& slopes, const BaOptions& opts) {
  for (std::size_t k = 0; k + 1 < slopes.size(); ++k) {
    if (slopes[k] > slopes[k + 1]) {
      throw std::invalid_argument("rd_curve: slopes must be sorted ascending");
    }
  }
  std::vector<BaResult> out;
  out.reserve(slopes.size());
  for (double s : slopes) out.push_back(ba_fixed_slope(p, model, s, opts));
  return out;
}

std::pair<double, double> d_floor_and_dmax(const FiniteDist& p, const DistortionModel& model) {
  return endpoints(make_workspace(p, model));
}

RdAtResult rd_at(const FiniteDist& p, const DistortionModel& model, double distortion,
                 const RdAtOptions& opts) {
  if (distortion < 0.0) throw std::invalid_argument("rd_at: D must be >= 0");
  Workspace ws = make_workspace(p, model);
  const auto [d_floor, d_max0] = endpoints(ws);
  const double tol_f = 1e-12 * std::max(1.0, d_floor);

  RdAtResult res;
  if (distortion < d_floor - tol_f) {
    res.rate = ExtReal::infinity();
    res.slope = -std::numeric_limits<double>::infinity();
    return res;
  }
  if (distortion >= d_max0) {
    BaResult zr = zero_slope_result(ws);
    res.rate = ExtReal(0.0);
    res.slope = 0.0;
    res.output_dist = std::move(zr.point.output_dist);
    res.zero_rate = true;
    return res;
  }

  if (distortion <= d_floor + tol_f) {
    // D at the feasibility floor: follow the slope to -inf until the rate
    // stabilizes. Reported as computed, flagged as the possible
    // discontinuity point.
    double s = -1.0;
    SolveOut cur = solve(ws, s, nullptr, opts.ba);
    res.ba_solves = 1;
    res.all_converged = cur.converged;
    for (int k = 0; k < 60; ++k) {
      const double s_next = s * 2.0;
      SolveOut nxt = solve(ws, s_next, &cur.q, opts.ba);
      ++res.ba_solves;
      res.all_converged = res.all_converged && nxt.converged;
      const bool rate_settled =
          std::abs(nxt.rate - cur.rate) <= 1e-12 * std::max(1.0, std::abs(nxt.rate));
      const bool at_target = std::abs(nxt.distortion - distortion) <= opts.d_tol;
      s = s_next;
      cur = std::move(nxt);
      if (rate_settled && at_target) break;
    }
    res.rate = ExtReal(cur.rate);
    res.slope = s;
    res.output_dist = FiniteDist(model.repro_symbols(), cur.qout);
    res.at_floor = true;
    return res;
  }

  // Bracket: double the slope magnitude until D(slope) dips below target.
  double s_lo = -1.0;
  double s_hi = 0.0;
  SolveOut cur = solve(ws, s_lo, nullptr, opts.ba);
  res.ba_solves = 1;
  res.all_converged = cur.converged;
  int doublings = 0;
  while (cur.distortion > distortion) {
    s_hi = s_lo;
    s_lo *= 2.0;
    if (++doublings > 60) {
      if (distortion < d_floor + opts.d_tol) {
        res.rate = ExtReal::infinity();
        res.slope = s_lo;
        return res;
      }
      throw std::runtime_error("rd_at: slope bracketing failed; reached D(slope)=" +
                               std::to_string(cur.distortion) + " while targeting D=" +
                               std::to_string(distortion));
    }
    cur = solve(ws, s_lo, &cur.q, opts.ba);
    ++res.ba_solves;
    res.all_converged = res.all_converged && cur.converged;
  }

  // Bisection on the slope; D(slope) is nondecreasing in slope.
  double a = s_lo, b = s_hi;
  double s_cur = s_lo;
  while (std::abs(cur.distortion - distortion) > opts.d_tol) {
    const double mid = 0.5 * (a + b);
    if (std::abs(b - a) <= 1e-13 * std::max(1.0, std::abs(a))) break;
    cur = solve(ws, mid, &cur.q, opts.ba);
    s_cur = mid;
    ++res.ba_solves;
    res.all_converged = res.all_converged && cur.converged;
    if (cur.distortion > distortion) {
      b = mid;
    } else {
      a = mid;
    }
  }

  // Tangent correction: the converged slope is a subgradient at D(slope).
  const double corrected = cur.rate + s_cur * (distortion - cur.distortion);
  res.rate = ExtReal(std::max(0.0, corrected));
  res.slope = s_cur;
  res.output_dist = FiniteDist(model.repro_symbols(), cur.qout);
  return res;
}

}  // namespace rdest
