#include "rdest/dual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rdest {

namespace {

constexpr double kGolden = 0.6180339887498949;  // 1/phi

double boundary_tol(double d) { return 1e-12 * std::max(1.0, std::abs(d)); }

std::size_t require_source_index(const DistortionModel& model, const std::string& sym) {
  auto idx = model.source_index_of(sym);
  if (!idx) {
    throw std::invalid_argument("source symbol '" + sym + "' is not in the distortion model");
  }
  return *idx;
}

std::size_t require_repro_index(const DistortionModel& model, const std::string& sym) {
  auto idx = model.repro_index_of(sym);
  if (!idx) {
    throw std::invalid_argument("reproduction symbol '" + sym +
                                "' is not in the distortion model");
  }
  return *idx;
}

}  // namespace

LogMgfCurve::LogMgfCurve(const FiniteDist& p, const FiniteDist& q,
                         const DistortionModel& model) {
  gaussian_ = false;
  std::vector<std::size_t> q_idx;
  std::vector<double> q_mass;
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (q.prob(j) > 0.0) {
      q_idx.push_back(require_repro_index(model, q.symbol(j)));
      q_mass.push_back(q.prob(j));
    }
  }
  d_min_ = 0.0;
  d_ave_ = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p.prob(i);
    if (pi == 0.0) continue;
    Row row;
    row.p = pi;
    const std::size_t x = require_source_index(model, p.symbol(i));
    row.rho.resize(q_idx.size());
    row.q = q_mass;
    double rmin = std::numeric_limits<double>::infinity();
    double rave = 0.0;
    for (std::size_t k = 0; k < q_idx.size(); ++k) {
      const double r = model.rho(x, q_idx[k]);
      row.rho[k] = r;
      rmin = std::min(rmin, r);
      rave += q_mass[k] * r;
    }
    row.rho_min = rmin;
    d_min_ += pi * rmin;
    d_ave_ += pi * rave;
    rows_.push_back(std::move(row));
  }
}

LogMgfCurve::LogMgfCurve(const Moments& source, double mu, double sigma) {
  if (sigma < 0.0) throw std::invalid_argument("LogMgfCurve: sigma must be >= 0");
  gaussian_ = true;
  sigma_ = sigma;
  s2mu_ = source.var + (source.mean - mu) * (source.mean - mu);
  d_ave_ = s2mu_ + sigma * sigma;
  d_min_ = sigma > 0.0 ? 0.0 : s2mu_;
}

double LogMgfCurve::value_uncached(double lambda) const {
  if (lambda == 0.0) return 0.0;
  if (gaussian_) {
    const double denom = 1.0 - 2.0 * lambda * sigma_ * sigma_;
    return -0.5 * std::log1p(-2.0 * lambda * sigma_ * sigma_) + lambda * s2mu_ / denom;
  }
  double acc = 0.0;
  for (const Row& row : rows_) {
    // Shift by lambda * rho_min so every exponent is <= 0.
    double s = 0.0;
    for (std::size_t k = 0; k < row.rho.size(); ++k) {
      s += row.q[k] * std::exp(lambda * (row.rho[k] - row.rho_min));
    }
    acc += row.p * (lambda * row.rho_min + std::log(s));
  }
  return acc;
}

double LogMgfCurve::value(double lambda) const {
  for (const auto& [l, v] : cache_) {
    if (l == lambda) return v;
  }
  const double v = value_uncached(lambda);
  cache_.emplace_back(lambda, v);
  return v;
}

double LogMgfCurve::mean_tilted(double lambda) const {
  if (gaussian_) {
    const double denom = 1.0 - 2.0 * lambda * sigma_ * sigma_;
    return sigma_ * sigma_ / denom + s2mu_ / (denom * denom);
  }
  double acc = 0.0;
  for (const Row& row : rows_) {
    double den = 0.0, num = 0.0;
    for (std::size_t k = 0; k < row.rho.size(); ++k) {
      const double w = row.q[k] * std::exp(lambda * (row.rho[k] - row.rho_min));
      den += w;
      num += w * row.rho[k];
    }
    acc += row.p * (num / den);
  }
  return acc;
}

namespace {

/// Concave maximization of g(l) = l*D - Lambda(l) over l <= 0.
DualRate maximize_dual(const LogMgfCurve& curve, double distortion, const DualOptions& opts) {
  const double dmin = curve.d_min();
  const double dave = curve.d_ave();
  const double tol = boundary_tol(dmin);

  if (distortion >= dave) return {ExtReal(0.0), 0.0, false};
  if (distortion < dmin - tol) {
    return {ExtReal::infinity(), -std::numeric_limits<double>::infinity(), false};
  }

  const auto g = [&](double l) { return l * distortion - curve.value(l); };

  if (distortion <= dmin + tol) {
    // The supremum is a limit as lambda -> -inf. Follow the doubling
    // sequence until the increments die out or the limit is classified as
    // divergent (this is the single possible left-discontinuity point).
    double lambda = -1.0;
    double prev = g(lambda);
    while (lambda > opts.lambda_limit) {
      lambda *= 2.0;
      const double cur = g(lambda);
      const double inc = cur - prev;
      prev = cur;
      if (std::abs(inc) <= 1e-15 * std::max(1.0, std::abs(cur))) {
        return {ExtReal(std::max(0.0, cur)), lambda, true};
      }
    }
    const double cur = g(lambda);
    const double inc = cur - g(lambda / 2.0);
    if (inc > 1e-9 * std::max(1.0, std::abs(cur))) {
      return {ExtReal::infinity(), lambda, true};
    }
    return {ExtReal(std::max(0.0, cur)), lambda, true};
  }

  // Interior: bracket the maximizer by doubling until the tilted mean
  // drops below D (the objective's slope D - Lambda'(lambda) changes sign).
  double hi = 0.0;    // g'(hi) <= 0
  double lo = -1.0;   // candidate with g'(lo) >= 0
  while (curve.mean_tilted(lo) > distortion) {
    hi = lo;
    lo *= 2.0;
    if (lo < opts.lambda_limit) break;
  }

  // Golden-section on [lo, hi].
  double a = lo, b = hi;
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double gc = g(c), gd = g(d);
  for (int it = 0; it < opts.max_iterations; ++it) {
    if (std::abs(b - a) <= opts.lambda_rel_tol * std::max(1.0, std::abs(a))) break;
    if (std::abs(gc - gd) <= opts.objective_tol * std::max(1.0, std::max(std::abs(gc), std::abs(gd))) &&
        std::abs(b - a) <= 1e-6 * std::max(1.0, std::abs(a))) {
      break;
    }
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kGolden * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kGolden * (b - a);
      gd = g(d);
    }
  }
  const double lstar = gc > gd ? c : d;
  const double val = std::max({gc, gd, 0.0});
  return {ExtReal(val), lstar, false};
}

}  // namespace

double log_mgf(const FiniteDist& p, const FiniteDist& q, const DistortionModel& model,
               double lambda) {
  if (lambda > 0.0) {
    throw std::invalid_argument("log_mgf: lambda must be <= 0");
  }
  if (lambda == 0.0) return 0.0;
  LogMgfCurve curve(p, q, model);
  return curve.value(lambda);
}

double d_ave(const FiniteDist& p, const FiniteDist& q, const DistortionModel& model) {
  return LogMgfCurve(p, q, model).d_ave();
}

double d_min(const FiniteDist& p, const FiniteDist& q, const DistortionModel& model) {
  return LogMgfCurve(p, q, model).d_min();
}

DualRate rate_dual(const FiniteDist& p, const FiniteDist& q, const DistortionModel& model,
                   double distortion, const DualOptions& opts) {
  if (distortion < 0.0) throw std::invalid_argument("rate_dual: D must be >= 0");
  LogMgfCurve curve(p, q, model);
  return maximize_dual(curve, distortion, opts);
}

DualRate rate_dual_gaussian(const Moments& source, double mu, double sigma, double distortion,
                            const DualOptions& opts) {
  if (distortion < 0.0) throw std::invalid_argument("rate_dual_gaussian: D must be >= 0");
  LogMgfCurve curve(source, mu, sigma);
  return maximize_dual(curve, distortion, opts);
}

double gaussian_log_mgf(double x, double mu, double sigma, double lambda) {
  if (lambda > 0.0) throw std::invalid_argument("gaussian_log_mgf: lambda must be <= 0");
  if (sigma < 0.0) throw std::invalid_argument("gaussian_log_mgf: sigma must be >= 0");
  const double d = x - mu;
  if (sigma == 0.0) return lambda * d * d;
  const double denom = 1.0 - 2.0 * lambda * sigma * sigma;
  return -0.5 * std::log1p(-2.0 * lambda * sigma * sigma) + lambda * d * d / denom;
}

Moments moments_of(const FiniteDist& p) {
  double mean = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.prob(i) > 0.0) mean += p.prob(i) * numeric_symbol_value(p.symbol(i));
  }
  double var = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.prob(i) > 0.0) {
      const double d = numeric_symbol_value(p.symbol(i)) - mean;
      var += p.prob(i) * d * d;
    }
  }
  return {mean, var};
}

namespace {

FamilyRate family_rate_grid(const FiniteDist& p,
                            const std::vector<std::pair<std::string, FiniteDist>>& grid,
                            const DistortionModel& model, double distortion,
                            const DualOptions& opts) {
  FamilyRate best;
  best.value = ExtReal::infinity();
  bool first = true;
  std::size_t ties = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const DualRate r = rate_dual(p, grid[i].second, model, distortion, opts);
    if (first || r.value < best.value) {
      best.value = r.value;
      best.theta = ThetaHat{grid[i].first, i, std::nullopt, std::nullopt};
      best.lambda_star = r.lambda_star;
      best.boundary = r.boundary;
      ties = 1;
      first = false;
    } else if (r.value == best.value) {
      ++ties;
    }
  }
  best.flat_region = ties > 1;
  return best;
}

}  // namespace

FamilyRate family_rate_gaussian(const Moments& source, const GaussianBounds& bounds,
                                double distortion, const DualOptions& opts,
                                double theta_slack) {
  if (distortion < 0.0) throw std::invalid_argument("family_rate_gaussian: D must be >= 0");
  FamilyRate out;

  // Closed-form value: max{0, 0.5 log(var / D)}.
  if (source.var <= distortion) {
    out.value = ExtReal(0.0);
    out.flat_region = true;
  } else if (distortion == 0.0) {
    out.value = ExtReal::infinity();
  } else {
    out.value = ExtReal(0.5 * std::log(source.var / distortion));
  }

  // Minimizer by coarse-to-fine (mu, sigma) refinement of the dual rate;
  // 21x21 per level, zooming on the incumbent until the achieved value is
  // within the optimization slack of the closed form.
  const int kGridPts = 21;
  const int kMaxLevels = 8;
  double mu_lo = bounds.mu_lo, mu_hi = bounds.mu_hi;
  double sg_lo = bounds.sigma_lo, sg_hi = bounds.sigma_hi;
  double best_mu = mu_lo, best_sg = sg_lo;
  ExtReal best_val = ExtReal::infinity();
  double best_lambda = 0.0;
  bool best_boundary = false;

  for (int level = 0; level < kMaxLevels; ++level) {
    const double mu_step = kGridPts > 1 ? (mu_hi - mu_lo) / (kGridPts - 1) : 0.0;
    const double sg_step = kGridPts > 1 ? (sg_hi - sg_lo) / (kGridPts - 1) : 0.0;
    for (int i = 0; i < kGridPts; ++i) {
      const double mu = mu_lo + mu_step * i;
      for (int j = 0; j < kGridPts; ++j) {
        const double sg = sg_lo + sg_step * j;
        const DualRate r = rate_dual_gaussian(source, mu, sg, distortion, opts);
        if (r.value < best_val) {
          best_val = r.value;
          best_mu = mu;
          best_sg = sg;
          best_lambda = r.lambda_star;
          best_boundary = r.boundary;
        }
      }
    }
    const bool within = best_val.is_finite() == out.value.is_finite() &&
                        (!best_val.is_finite() ||
                         best_val.value() <= out.value.value_or(0.0) + theta_slack);
    if (within) break;
    // Zoom to +/- 1.5 steps around the incumbent, clamped to the bounds.
    const double mw = 1.5 * mu_step, sw = 1.5 * sg_step;
    mu_lo = std::max(bounds.mu_lo, best_mu - mw);
    mu_hi = std::min(bounds.mu_hi, best_mu + mw);
    sg_lo = std::max(bounds.sigma_lo, best_sg - sw);
    sg_hi = std::min(bounds.sigma_hi, best_sg + sw);
  }

  out.theta = ThetaHat{"gaussian", 0, best_mu, best_sg};
  out.lambda_star = best_lambda;
  out.boundary = best_boundary;
  const double edge_mu = 1e-12 * std::max(1.0, std::abs(bounds.mu_hi - bounds.mu_lo));
  const double edge_sg = 1e-12 * std::max(1.0, std::abs(bounds.sigma_hi - bounds.sigma_lo));
  out.theta_on_boundary =
      (std::abs(best_mu - bounds.mu_lo) <= edge_mu && bounds.mu_lo != bounds.mu_hi) ||
      std::abs(best_mu - bounds.mu_hi) <= edge_mu ||
      std::abs(best_sg - bounds.sigma_hi) <= edge_sg;
  return out;
}

FamilyRate family_rate(const FiniteDist& p, const ParamFamily& family,
                       const DistortionModel& model, double distortion,
                       const DualOptions& opts) {
  if (family.kind() == ParamFamily::Kind::finite_grid) {
    return family_rate_grid(p, family.grid(), model, distortion, opts);
  }
  if (model.kind() != DistortionKind::squared_error) {
    throw std::invalid_argument(
        "family_rate: the Gaussian family requires squared-error distortion");
  }
  return family_rate_gaussian(moments_of(p), family.bounds(), distortion, opts);
}

std::pair<ExtReal, ExtReal> mixture_lower_bound(const FiniteDist& pprime, const FiniteDist& p,
                                                double eps, const ParamFamily& family,
                                                const DistortionModel& model, double distortion,
                                                const DualOptions& opts) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("mixture_lower_bound: eps must lie in (0,1)");
  }
  for (const auto& s : pprime.symbols()) {
    if (!model.source_index_of(s)) {
      throw std::invalid_argument("mixture_lower_bound: P' symbol '" + s +
                                  "' is not in the model");
    }
  }
  const FiniteDist mixture = mix(eps, pprime, p);
  const ExtReal lhs = family_rate(mixture, family, model, distortion, opts).value;
  const ExtReal rhs_inner = family_rate(pprime, family, model, distortion / eps, opts).value;
  return {lhs, eps * rhs_inner};
}

}  // namespace rdest
