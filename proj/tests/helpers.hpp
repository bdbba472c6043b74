#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "rdest/distortion.hpp"
#include "rdest/finite_dist.hpp"
#include "rdest/info.hpp"
#include "rdest/rng.hpp"

namespace rdtest {

/// Closed-form binary-Hamming rate h(p) - h(D) in nats, valid for
/// 0 <= D <= min(p, 1-p).
inline double binary_hamming_rate(double p, double d) {
  return rdest::binary_entropy(p) - rdest::binary_entropy(d);
}

/// Random distribution with full support over k generated symbols.
inline rdest::FiniteDist random_dist(rdest::Rng& rng, const std::vector<std::string>& symbols,
                                     double floor = 0.05) {
  std::vector<double> w(symbols.size());
  for (double& v : w) v = floor + rng.next_unit();
  return rdest::normalize(w, symbols);
}

/// Random distribution allowing zero masses (each symbol dropped with the
/// given probability, at least one kept).
inline rdest::FiniteDist random_dist_sparse(rdest::Rng& rng,
                                            const std::vector<std::string>& symbols,
                                            double drop_prob) {
  std::vector<double> w(symbols.size(), 0.0);
  bool any = false;
  for (double& v : w) {
    if (rng.next_unit() >= drop_prob) {
      v = 0.05 + rng.next_unit();
      any = true;
    }
  }
  if (!any) w[static_cast<std::size_t>(rng.next_unit() * static_cast<double>(w.size()))] = 1.0;
  return rdest::normalize(w, symbols);
}

inline std::vector<std::string> symbol_range(std::size_t n, const std::string& prefix = "s") {
  std::vector<std::string> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = prefix + std::to_string(i);
  return out;
}

/// Random distortion matrix with entries in [0, hi).
inline rdest::DistortionModel random_model(rdest::Rng& rng, std::vector<std::string> src,
                                           std::vector<std::string> rep, double hi = 1.0) {
  std::vector<double> m(src.size() * rep.size());
  for (double& v : m) v = hi * rng.next_unit();
  return rdest::DistortionModel::from_matrix(std::move(src), std::move(rep), std::move(m));
}

/// Adaptive Simpson quadrature (test-only oracle).
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 40) {
  const auto simpson = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(mid) + f(hi));
  };
  std::function<double(double, double, double, int)> rec = [&](double lo, double hi,
                                                               double whole, int d) {
    const double mid = 0.5 * (lo + hi);
    const double left = simpson(lo, mid);
    const double right = simpson(mid, hi);
    if (d <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
      return left + right + (left + right - whole) / 15.0;
    }
    return rec(lo, mid, left, d - 1) + rec(mid, hi, right, d - 1);
  };
  return rec(a, b, simpson(a, b), depth);
}

}  // namespace rdtest
