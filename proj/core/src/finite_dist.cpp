#include "rdest/finite_dist.hpp"

#include <cmath>
#include <stdexcept>

namespace rdest {

namespace {
constexpr double kSumTol = 1e-12;
constexpr double kSnapTol = 1e-15;
}  // namespace

FiniteDist::FiniteDist(std::vector<std::string> symbols, std::vector<double> probs)
    : symbols_(std::move(symbols)), probs_(std::move(probs)) {
  if (symbols_.empty()) {
    throw std::invalid_argument("FiniteDist: empty symbol list");
  }
  if (symbols_.size() != probs_.size()) {
    throw std::invalid_argument("FiniteDist: symbols and probs differ in length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    const double p = probs_[i];
    if (!std::isfinite(p) || p < 0.0) {
      throw std::invalid_argument("FiniteDist: probability for symbol '" + symbols_[i] +
                                  "' is negative or not finite");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTol) {
    throw std::invalid_argument("FiniteDist: probabilities sum to " + std::to_string(sum) +
                                ", not 1");
  }
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (!index_.emplace(symbols_[i], i).second) {
      throw std::invalid_argument("FiniteDist: duplicate symbol '" + symbols_[i] + "'");
    }
  }
  // Snap sub-1e-15 masses to zero, then renormalize.
  double snapped_sum = 0.0;
  for (double& p : probs_) {
    if (p < kSnapTol) p = 0.0;
    snapped_sum += p;
  }
  for (double& p : probs_) p /= snapped_sum;
}

std::optional<std::size_t> FiniteDist::index_of(std::string_view symbol) const {
  auto it = index_.find(symbol);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double FiniteDist::prob_of(std::string_view symbol) const {
  auto idx = index_of(symbol);
  return idx ? probs_[*idx] : 0.0;
}

std::size_t FiniteDist::support_size() const {
  std::size_t k = 0;
  for (double p : probs_) {
    if (p > 0.0) ++k;
  }
  return k;
}

FiniteDist FiniteDist::point_mass(std::string symbol) {
  return FiniteDist({std::move(symbol)}, {1.0});
}

FiniteDist FiniteDist::uniform(std::vector<std::string> symbols) {
  const std::size_t n = symbols.size();
  if (n == 0) throw std::invalid_argument("FiniteDist::uniform: empty symbol list");
  return FiniteDist(std::move(symbols), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

FiniteDist normalize(const std::vector<double>& weights, std::vector<std::string> symbols) {
  if (weights.size() != symbols.size()) {
    throw std::invalid_argument("normalize: weights and symbols differ in length");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("normalize: weights must be finite and >= 0");
    }
    sum += w;
  }
  if (sum <= 0.0) {
    throw std::invalid_argument("normalize: all weights are zero");
  }
  std::vector<double> probs(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) probs[i] = weights[i] / sum;
  return FiniteDist(std::move(symbols), std::move(probs));
}

FiniteDist mix(double eps, const FiniteDist& pprime, const FiniteDist& p) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("mix: eps must lie in [0,1]");
  }
  std::vector<std::string> symbols = p.symbols();
  std::vector<double> probs(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    probs[i] = (1.0 - eps) * p.prob(i) + eps * pprime.prob_of(p.symbol(i));
  }
  for (std::size_t j = 0; j < pprime.size(); ++j) {
    if (!p.index_of(pprime.symbol(j))) {
      symbols.push_back(pprime.symbol(j));
      probs.push_back(eps * pprime.prob(j));
    }
  }
  return FiniteDist(std::move(symbols), std::move(probs));
}

}  // namespace rdest
