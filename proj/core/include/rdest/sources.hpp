#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rdest/ba.hpp"
#include "rdest/distortion.hpp"
#include "rdest/estimators.hpp"
#include "rdest/finite_dist.hpp"
#include "rdest/sample.hpp"

namespace rdest {

/// A data source: i.i.d. draws, a Markov chain (optionally started away
/// from stationarity), a Gaussian AR(1) recursion, or a data file of
/// newline-delimited values. Generation is deterministic given the seed.
class SourceSpec {
public:
  enum class Kind { iid, markov, gaussian_ar1, file };

  static SourceSpec iid(FiniteDist marginal, std::uint64_t seed);

  /// Markov chain over the given states. When declared ergodic (the
  /// default), the positive-transition graph is verified irreducible and
  /// aperiodic at construction.
  static SourceSpec markov(std::vector<std::string> states,
                           std::vector<std::vector<double>> transition,
                           std::vector<double> initial, std::uint64_t seed,
                           bool declared_ergodic = true);

  /// X_{k+1} = phi X_k + eps_k with eps ~ N(0, noise_sigma^2), started at
  /// x0; |phi| < 1 so the chain satisfies the LLN with the stationary
  /// moments.
  static SourceSpec gaussian_ar1(double phi, double noise_sigma, double x0,
                                 std::uint64_t seed);

  static SourceSpec file(std::string path);

  Kind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  SourceSpec with_seed(std::uint64_t seed) const;

  const FiniteDist& marginal() const;                      // iid
  const std::vector<std::string>& states() const;          // markov
  const std::vector<std::vector<double>>& transition() const;
  const std::vector<double>& initial() const;
  double phi() const { return phi_; }
  double noise_sigma() const { return noise_sigma_; }
  double x0() const { return x0_; }
  const std::string& path() const { return path_; }

  /// Stationary distribution of a markov spec (power iteration).
  FiniteDist stationary() const;

private:
  SourceSpec() = default;
  Kind kind_ = Kind::iid;
  std::uint64_t seed_ = 0;
  std::vector<FiniteDist> marginal_;  // singleton when iid
  std::vector<std::string> states_;
  std::vector<std::vector<double>> transition_;
  std::vector<double> initial_;
  double phi_ = 0.0, noise_sigma_ = 1.0, x0_ = 0.0;
  std::string path_;
};

/// Draws n values from the source; deterministic given (spec, n).
Sample generate(const SourceSpec& spec, std::size_t n);

/// Reads a newline-delimited sample (UTF-8, one value per line). Tokens are
/// kept symbolic; callers needing reals convert with Sample::to_reals().
Sample load_sample(const std::string& path);

/// Overlapping m-blocks as composite symbols joined with '|'; the result
/// has n - m + 1 entries over the product alphabet.
Sample sliding_blocks(const Sample& sample, std::size_t m);

/// The block distortion rho_m(x_1^m, y_1^m) = (1/m) sum_k rho(x_k, y_k)
/// over the observed source blocks and the full m-fold reproduction
/// product (lexicographic in the base order).
DistortionModel block_distortion(const DistortionModel& base, std::size_t m,
                                 const std::vector<std::string>& observed_source_blocks);

/// The m-th order plug-in: plugin_rd on the sliding-block sample with
/// rho_m, divided by m. m = 1 reduces to plugin_rd exactly.
EstimateReport mth_order_estimate(const Sample& sample, std::size_t m,
                                  const DistortionModel& base, double distortion,
                                  const RdAtOptions& opts = {});

/// Nearest-grid-point quantization (ties to the lower index). Returns the
/// index-symbol sample and the induced distortion model, built by applying
/// the base rule to the grid values.
std::pair<Sample, DistortionModel> quantize(const Sample& reals,
                                            const std::vector<double>& grid,
                                            DistortionKind base_rule);

/// Uniformly spaced grid of `count` points on [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, std::size_t count);

}  // namespace rdest
