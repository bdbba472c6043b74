#include "rdest/info.hpp"

#include <cmath>
#include <stdexcept>

namespace rdest {

ExtReal entropy(const FiniteDist& p) {
  double h = 0.0;
  for (double pi : p.probs()) {
    if (pi > 0.0) h -= pi * std::log(pi);
  }
  return ExtReal(h < 0.0 ? 0.0 : h);
}

ExtReal kl_divergence(const FiniteDist& p, const FiniteDist& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("kl_divergence: distributions are over different symbol sets");
  }
  for (const auto& s : p.symbols()) {
    if (!q.index_of(s)) {
      throw std::invalid_argument("kl_divergence: symbol '" + s + "' missing from Q");
    }
  }
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p.prob(i);
    if (pi == 0.0) continue;
    const double qi = q.prob_of(p.symbol(i));
    if (qi == 0.0) return ExtReal::infinity();
    d += pi * std::log(pi / qi);
  }
  return ExtReal(d < 0.0 ? 0.0 : d);
}

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("binary_entropy: p outside [0,1]");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
  return h;
}

}  // namespace rdest
