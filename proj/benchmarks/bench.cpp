#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "rdest/ba.hpp"
#include "rdest/dual.hpp"
#include "rdest/estimators.hpp"
#include "rdest/rng.hpp"
#include "rdest/sources.hpp"

namespace {

std::vector<std::string> symbols(std::size_t k) {
  std::vector<std::string> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = std::to_string(i);
  return out;
}

rdest::FiniteDist random_dist(rdest::Rng& rng, const std::vector<std::string>& syms) {
  std::vector<double> w(syms.size());
  for (double& v : w) v = 0.05 + rng.next_unit();
  return rdest::normalize(w, syms);
}

void BaFixedSlope(benchmark::State& state) {
  const std::size_t k = static_cast<std::size_t>(state.range(0));
  rdest::Rng rng(1);
  const auto syms = symbols(k);
  const auto model = rdest::DistortionModel::named(rdest::DistortionKind::hamming, syms, syms);
  const auto p = random_dist(rng, syms);
  for (auto _ : state) {
    auto r = rdest::ba_fixed_slope(p, model, -2.0);
    benchmark::DoNotOptimize(r.point.distortion);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BaFixedSlope)->RangeMultiplier(2)->Range(4, 128)->Complexity();

void RdAtBinary(benchmark::State& state) {
  const rdest::FiniteDist p({"0", "1"}, {0.7, 0.3});
  const auto model =
      rdest::DistortionModel::named(rdest::DistortionKind::hamming, {"0", "1"}, {"0", "1"});
  for (auto _ : state) {
    auto r = rdest::rd_at(p, model, 0.1);
    benchmark::DoNotOptimize(r.slope);
  }
}
BENCHMARK(RdAtBinary);

void RateDualGolden(benchmark::State& state) {
  const std::size_t k = static_cast<std::size_t>(state.range(0));
  rdest::Rng rng(2);
  const auto syms = symbols(k);
  const auto model = rdest::DistortionModel::named(rdest::DistortionKind::hamming, syms, syms);
  const auto p = random_dist(rng, syms);
  const auto q = random_dist(rng, syms);
  for (auto _ : state) {
    auto r = rdest::rate_dual(p, q, model, 0.3);
    benchmark::DoNotOptimize(r.lambda_star);
  }
}
BENCHMARK(RateDualGolden)->Arg(8)->Arg(64);

void LossyLikelihoodDp(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  rdest::Rng rng(3);
  const auto syms = symbols(4);
  const auto model = rdest::DistortionModel::named(rdest::DistortionKind::hamming, syms, syms);
  const auto q = random_dist(rng, syms);
  std::vector<std::string> data(n);
  for (auto& s : data) s = syms[rng.next_u64() % 4];
  const auto sample = rdest::Sample::from_symbols(data);
  for (auto _ : state) {
    auto r = rdest::lossy_likelihood(sample, q, model, 0.25);
    benchmark::DoNotOptimize(r.is_finite());
  }
}
BENCHMARK(LossyLikelihoodDp)->RangeMultiplier(4)->Range(8, 512);

}  // namespace

BENCHMARK_MAIN();
