#pragma once

// Exact-arithmetic oracles for the distortion-ball probability, shared by
// the unit and acceptance suites. Doubles are dyadic rationals, so the ball
// mass under Q^n is an integer over a common power-of-two denominator; both
// brute-force enumeration and the DP recurrence are computed in big-integer
// arithmetic and compared for exact equality.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rdest/distortion.hpp"
#include "rdest/finite_dist.hpp"

namespace rdtest {

struct DyadicQ {
  std::vector<boost::multiprecision::cpp_int> mant;
  int shift = 1;
};

inline DyadicQ dyadic(const rdest::FiniteDist& q) {
  using boost::multiprecision::cpp_int;
  int max_shift = 1;
  for (double v : q.probs()) {
    if (v == 0.0) continue;
    int e;
    std::frexp(v, &e);  // v = fr * 2^e, fr in [0.5, 1)
    max_shift = std::max(max_shift, 53 - e);
  }
  DyadicQ out;
  out.shift = max_shift;
  for (double v : q.probs()) {
    const double scaled = std::ldexp(v, max_shift);
    if (scaled != std::floor(scaled)) {
      throw std::logic_error("dyadic: double did not scale to an integer");
    }
    const double hi = std::floor(std::ldexp(scaled, -32));
    const double lo = scaled - std::ldexp(hi, 32);
    cpp_int m(static_cast<unsigned long long>(hi));
    m <<= 32;
    m += static_cast<unsigned long long>(lo);
    if (m.convert_to<double>() != scaled) {
      throw std::logic_error("dyadic: mantissa assembly failed");
    }
    out.mant.push_back(m);
  }
  return out;
}

/// Brute force over all |Ahat|^n reproduction strings.
inline boost::multiprecision::cpp_int enumerate_ball_numerator(
    const std::vector<std::size_t>& rows, const DyadicQ& q,
    const rdest::DistortionModel& model, double radius_total) {
  using boost::multiprecision::cpp_int;
  const std::size_t n = rows.size();
  const std::size_t nb = model.n_repro();
  cpp_int total = 0;
  std::vector<std::size_t> ys(n, 0);
  while (true) {
    double dist = 0.0;
    cpp_int prod = 1;
    bool zero = false;
    for (std::size_t k = 0; k < n; ++k) {
      dist += model.rho(rows[k], ys[k]);
      if (q.mant[ys[k]] == 0) {
        zero = true;
        break;
      }
      prod *= q.mant[ys[k]];
    }
    if (!zero && dist <= radius_total + 1e-9) total += prod;
    std::size_t k = 0;
    for (; k < n; ++k) {
      if (++ys[k] < nb) break;
      ys[k] = 0;
    }
    if (k == n) break;
  }
  return total;
}

/// The production DP recurrence re-run in exact integer arithmetic.
inline boost::multiprecision::cpp_int dp_ball_numerator(
    const std::vector<std::size_t>& rows, const DyadicQ& q,
    const std::vector<long long>& units, std::size_t nb, long long budget) {
  using boost::multiprecision::cpp_int;
  if (budget < 0) return 0;
  std::vector<cpp_int> f(static_cast<std::size_t>(budget) + 1, 0);
  f[0] = 1;
  std::vector<cpp_int> nf(f.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (auto& v : nf) v = 0;
    for (long long t = 0; t <= budget; ++t) {
      if (f[static_cast<std::size_t>(t)] == 0) continue;
      for (std::size_t j = 0; j < nb; ++j) {
        if (q.mant[j] == 0) continue;
        const long long t2 = t + units[k * nb + j];
        if (t2 <= budget) {
          nf[static_cast<std::size_t>(t2)] += f[static_cast<std::size_t>(t)] * q.mant[j];
        }
      }
    }
    f.swap(nf);
  }
  cpp_int total = 0;
  for (const auto& v : f) total += v;
  return total;
}

/// -(1/n) log of an exact numerator over 2^(shift*n), in double precision.
inline double exact_ball_rate(const boost::multiprecision::cpp_int& numerator, int shift,
                              std::size_t n) {
  const double log_num = static_cast<double>(
      boost::multiprecision::log(boost::multiprecision::cpp_bin_float_100(numerator)));
  const double log_prob =
      log_num - static_cast<double>(n) * static_cast<double>(shift) * std::log(2.0);
  return -log_prob / static_cast<double>(n);
}

}  // namespace rdtest
