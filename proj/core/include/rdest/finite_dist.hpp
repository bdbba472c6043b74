#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rdest {

/// A probability distribution with finite support: distinct symbol names
/// plus a probability vector of the same length.
///
/// Construction validates the invariants (probabilities >= 0, summing to 1
/// within 1e-12, symbols pairwise distinct), snaps masses below 1e-15 to
/// zero and renormalizes, so support detection downstream is deterministic.
/// Instances are immutable after construction.
class FiniteDist {
public:
  FiniteDist(std::vector<std::string> symbols, std::vector<double> probs);

  std::size_t size() const { return symbols_.size(); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  const std::vector<double>& probs() const { return probs_; }
  const std::string& symbol(std::size_t i) const { return symbols_.at(i); }
  double prob(std::size_t i) const { return probs_.at(i); }

  std::optional<std::size_t> index_of(std::string_view symbol) const;

  /// Probability of a symbol, 0 if absent.
  double prob_of(std::string_view symbol) const;

  /// Number of symbols with strictly positive mass.
  std::size_t support_size() const;

  static FiniteDist point_mass(std::string symbol);

  /// Uniform distribution over the given symbols.
  static FiniteDist uniform(std::vector<std::string> symbols);

private:
  std::vector<std::string> symbols_;
  std::vector<double> probs_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Builds the distribution proportional to nonnegative weights.
/// Throws if any weight is negative/non-finite or all weights are zero.
FiniteDist normalize(const std::vector<double>& weights, std::vector<std::string> symbols);

/// eps * Pprime + (1 - eps) * P, over the union of the two supports
/// (P's symbols first, then Pprime's unseen symbols, in order).
FiniteDist mix(double eps, const FiniteDist& pprime, const FiniteDist& p);

}  // namespace rdest
