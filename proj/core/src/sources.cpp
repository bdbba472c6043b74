#include "rdest/sources.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <stdexcept>

#include "rdest/rng.hpp"

namespace rdest {

namespace {

constexpr char kBlockSep = '|';
constexpr std::size_t kMaxBlockStates = 1'000'000;

std::vector<double> cumulative(const std::vector<double>& probs) {
  std::vector<double> cum(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cum[i] = acc;
  }
  cum.back() = 1.0;
  return cum;
}

/// Irreducibility (strong connectivity) and aperiodicity (cycle gcd 1) of
/// the positive-transition graph.
void check_ergodic(const std::vector<std::vector<double>>& t) {
  const std::size_t n = t.size();
  auto reach = [&](bool forward) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        const double w = forward ? t[u][v] : t[v][u];
        if (w > 0.0 && !seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    return seen;
  };
  const auto fwd = reach(true);
  const auto bwd = reach(false);
  for (std::size_t v = 0; v < n; ++v) {
    if (!fwd[v] || !bwd[v]) {
      throw std::invalid_argument("SourceSpec: chain declared ergodic is not irreducible");
    }
  }
  // BFS depths; the period divides depth(u) + 1 - depth(v) for every edge.
  std::vector<long long> depth(n, -1);
  std::vector<std::size_t> queue{0};
  depth[0] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const std::size_t u = queue[qi];
    for (std::size_t v = 0; v < n; ++v) {
      if (t[u][v] > 0.0 && depth[v] < 0) {
        depth[v] = depth[u] + 1;
        queue.push_back(v);
      }
    }
  }
  long long g = 0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (t[u][v] > 0.0) g = std::gcd(g, depth[u] + 1 - depth[v]);
    }
  }
  if (std::llabs(g) != 1) {
    throw std::invalid_argument("SourceSpec: chain declared ergodic is periodic");
  }
}

}  // namespace

SourceSpec SourceSpec::iid(FiniteDist marginal, std::uint64_t seed) {
  SourceSpec s;
  s.kind_ = Kind::iid;
  s.seed_ = seed;
  s.marginal_.push_back(std::move(marginal));
  return s;
}

SourceSpec SourceSpec::markov(std::vector<std::string> states,
                              std::vector<std::vector<double>> transition,
                              std::vector<double> initial, std::uint64_t seed,
                              bool declared_ergodic) {
  const std::size_t n = states.size();
  if (n == 0) throw std::invalid_argument("SourceSpec: markov needs at least one state");
  if (transition.size() != n) {
    throw std::invalid_argument("SourceSpec: transition row count mismatch");
  }
  for (const auto& row : transition) {
    if (row.size() != n) throw std::invalid_argument("SourceSpec: transition row length mismatch");
    double sum = 0.0;
    for (double v : row) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("SourceSpec: transition entries must be finite and >= 0");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw std::invalid_argument("SourceSpec: transition rows must sum to 1");
    }
  }
  if (initial.size() != n) throw std::invalid_argument("SourceSpec: initial length mismatch");
  double isum = 0.0;
  for (double v : initial) {
    if (!(v >= 0.0)) throw std::invalid_argument("SourceSpec: initial entries must be >= 0");
    isum += v;
  }
  if (std::abs(isum - 1.0) > 1e-12) {
    throw std::invalid_argument("SourceSpec: initial distribution must sum to 1");
  }
  if (declared_ergodic) check_ergodic(transition);

  SourceSpec s;
  s.kind_ = Kind::markov;
  s.seed_ = seed;
  s.states_ = std::move(states);
  s.transition_ = std::move(transition);
  s.initial_ = std::move(initial);
  return s;
}

SourceSpec SourceSpec::gaussian_ar1(double phi, double noise_sigma, double x0,
                                    std::uint64_t seed) {
  if (!(std::abs(phi) < 1.0)) {
    throw std::invalid_argument("SourceSpec: ar1 requires |phi| < 1");
  }
  if (!(noise_sigma > 0.0)) {
    throw std::invalid_argument("SourceSpec: ar1 noise sigma must be > 0");
  }
  SourceSpec s;
  s.kind_ = Kind::gaussian_ar1;
  s.seed_ = seed;
  s.phi_ = phi;
  s.noise_sigma_ = noise_sigma;
  s.x0_ = x0;
  return s;
}

SourceSpec SourceSpec::file(std::string path) {
  SourceSpec s;
  s.kind_ = Kind::file;
  s.path_ = std::move(path);
  return s;
}

SourceSpec SourceSpec::with_seed(std::uint64_t seed) const {
  SourceSpec s = *this;
  s.seed_ = seed;
  return s;
}

const FiniteDist& SourceSpec::marginal() const {
  if (kind_ != Kind::iid) throw std::logic_error("SourceSpec: not an iid source");
  return marginal_.front();
}

const std::vector<std::string>& SourceSpec::states() const {
  if (kind_ != Kind::markov) throw std::logic_error("SourceSpec: not a markov source");
  return states_;
}

const std::vector<std::vector<double>>& SourceSpec::transition() const {
  if (kind_ != Kind::markov) throw std::logic_error("SourceSpec: not a markov source");
  return transition_;
}

const std::vector<double>& SourceSpec::initial() const {
  if (kind_ != Kind::markov) throw std::logic_error("SourceSpec: not a markov source");
  return initial_;
}

FiniteDist SourceSpec::stationary() const {
  if (kind_ != Kind::markov) throw std::logic_error("SourceSpec: not a markov source");
  const std::size_t n = states_.size();
  std::vector<double> pi(n, 1.0 / static_cast<double>(n)), next(n);
  for (int it = 0; it < 100000; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) next[j] += pi[i] * transition_[i][j];
    }
    double delta = 0.0, sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += next[j];
    for (std::size_t j = 0; j < n; ++j) {
      next[j] /= sum;
      delta = std::max(delta, std::abs(next[j] - pi[j]));
    }
    pi.swap(next);
    if (delta < 1e-15) break;
  }
  return FiniteDist(states_, pi);
}

Sample generate(const SourceSpec& spec, std::size_t n) {
  if (n == 0) throw std::invalid_argument("generate: n must be >= 1");
  Rng rng(spec.seed());
  switch (spec.kind()) {
    case SourceSpec::Kind::iid: {
      const FiniteDist& p = spec.marginal();
      const auto cum = cumulative(p.probs());
      std::vector<std::string> out;
      out.reserve(n);
      for (std::size_t k = 0; k < n; ++k) out.push_back(p.symbol(rng.next_index(cum)));
      return Sample::from_symbols(std::move(out));
    }
    case SourceSpec::Kind::markov: {
      std::vector<std::vector<double>> cum_rows;
      for (const auto& row : spec.transition()) cum_rows.push_back(cumulative(row));
      const auto cum0 = cumulative(spec.initial());
      std::vector<std::string> out;
      out.reserve(n);
      std::size_t state = rng.next_index(cum0);
      out.push_back(spec.states()[state]);
      for (std::size_t k = 1; k < n; ++k) {
        state = rng.next_index(cum_rows[state]);
        out.push_back(spec.states()[state]);
      }
      return Sample::from_symbols(std::move(out));
    }
    case SourceSpec::Kind::gaussian_ar1: {
      std::vector<double> out;
      out.reserve(n);
      double x = spec.x0();
      for (std::size_t k = 0; k < n; ++k) {
        x = spec.phi() * x + spec.noise_sigma() * rng.next_gaussian();
        out.push_back(x);
      }
      return Sample::from_reals(std::move(out));
    }
    case SourceSpec::Kind::file: {
      Sample s = load_sample(spec.path());
      if (s.symbols.size() < n) {
        throw std::invalid_argument("generate: file '" + spec.path() + "' holds " +
                                    std::to_string(s.symbols.size()) +
                                    " values, fewer than the requested " + std::to_string(n));
      }
      s.symbols.resize(n);
      return s;
    }
  }
  throw std::logic_error("generate: unknown source kind");
}

Sample load_sample(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_sample: cannot open '" + path + "'");
  std::vector<std::string> values;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    // Trim surrounding whitespace.
    const auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t");
    values.push_back(line.substr(b, e - b + 1));
  }
  if (values.empty()) throw std::runtime_error("load_sample: '" + path + "' holds no values");
  return Sample::from_symbols(std::move(values));
}

Sample sliding_blocks(const Sample& sample, std::size_t m) {
  if (!sample.is_symbolic()) {
    throw std::invalid_argument("sliding_blocks: sample must be finite-alphabet");
  }
  if (m < 1) throw std::invalid_argument("sliding_blocks: m must be >= 1");
  const std::size_t n = sample.symbols.size();
  if (m > n) throw std::invalid_argument("sliding_blocks: m exceeds the sample length");
  for (const auto& s : sample.symbols) {
    if (s.find(kBlockSep) != std::string::npos) {
      throw std::invalid_argument("sliding_blocks: symbol '" + s +
                                  "' contains the block separator '|'");
    }
  }
  std::vector<std::string> out;
  out.reserve(n - m + 1);
  for (std::size_t k = 0; k + m <= n; ++k) {
    std::string block = sample.symbols[k];
    for (std::size_t j = 1; j < m; ++j) {
      block += kBlockSep;
      block += sample.symbols[k + j];
    }
    out.push_back(std::move(block));
  }
  return Sample::from_symbols(std::move(out));
}

namespace {

std::vector<std::string> split_block(const std::string& block) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = block.find(kBlockSep, start);
    if (pos == std::string::npos) {
      parts.push_back(block.substr(start));
      break;
    }
    parts.push_back(block.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

}  // namespace

DistortionModel block_distortion(const DistortionModel& base, std::size_t m,
                                 const std::vector<std::string>& observed_source_blocks) {
  if (m < 1) throw std::invalid_argument("block_distortion: m must be >= 1");
  if (observed_source_blocks.empty()) {
    throw std::invalid_argument("block_distortion: no source blocks");
  }
  if (observed_source_blocks.size() > kMaxBlockStates) {
    throw std::invalid_argument("block_distortion: observed block count exceeds the 1e6 cap");
  }
  double repro_count = 1.0;
  for (std::size_t j = 0; j < m; ++j) {
    repro_count *= static_cast<double>(base.n_repro());
    if (repro_count > static_cast<double>(kMaxBlockStates)) {
      throw std::invalid_argument(
          "block_distortion: reproduction block alphabet exceeds the 1e6 cap");
    }
  }
  const std::size_t nbm = static_cast<std::size_t>(repro_count);
  const std::size_t nam = observed_source_blocks.size();
  if (nam * nbm > 25'000'000) {
    throw std::invalid_argument("block_distortion: block matrix too large to materialize");
  }

  // Source blocks -> base index tuples.
  std::vector<std::vector<std::size_t>> src(nam);
  for (std::size_t i = 0; i < nam; ++i) {
    const auto parts = split_block(observed_source_blocks[i]);
    if (parts.size() != m) {
      throw std::invalid_argument("block_distortion: block '" + observed_source_blocks[i] +
                                  "' does not have " + std::to_string(m) + " components");
    }
    for (const auto& part : parts) {
      auto idx = base.source_index_of(part);
      if (!idx) {
        throw std::invalid_argument("block_distortion: symbol '" + part +
                                    "' is not in the base model");
      }
      src[i].push_back(*idx);
    }
  }

  // Reproduction blocks: lexicographic product of the base alphabet.
  std::vector<std::string> repro_syms(nbm);
  std::vector<std::vector<std::size_t>> rep(nbm, std::vector<std::size_t>(m));
  for (std::size_t code = 0; code < nbm; ++code) {
    std::size_t rem = code;
    for (std::size_t j = m; j-- > 0;) {
      rep[code][j] = rem % base.n_repro();
      rem /= base.n_repro();
    }
    std::string name = base.repro_symbols()[rep[code][0]];
    for (std::size_t j = 1; j < m; ++j) {
      name += kBlockSep;
      name += base.repro_symbols()[rep[code][j]];
    }
    repro_syms[code] = std::move(name);
  }

  std::vector<double> matrix(nam * nbm);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < nam; ++i) {
    for (std::size_t code = 0; code < nbm; ++code) {
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) acc += base.rho(src[i][j], rep[code][j]);
      matrix[i * nbm + code] = acc * inv_m;
    }
  }
  return DistortionModel::from_matrix(std::vector<std::string>(observed_source_blocks),
                                      std::move(repro_syms), std::move(matrix));
}

EstimateReport mth_order_estimate(const Sample& sample, std::size_t m,
                                  const DistortionModel& base, double distortion,
                                  const RdAtOptions& opts) {
  const Sample blocks = sliding_blocks(sample, m);
  // Distinct observed blocks in first-appearance order.
  std::vector<std::string> observed;
  {
    std::map<std::string, bool, std::less<>> seen;
    for (const auto& b : blocks.symbols) {
      if (seen.emplace(b, true).second) observed.push_back(b);
      if (observed.size() > kMaxBlockStates) {
        throw std::invalid_argument("mth_order_estimate: observed blocks exceed the 1e6 cap");
      }
    }
  }
  const DistortionModel model_m = block_distortion(base, m, observed);
  EstimateReport rep = plugin_rd(blocks, model_m, distortion, opts);
  rep.estimate = (1.0 / static_cast<double>(m)) * rep.estimate;
  return rep;
}

std::pair<Sample, DistortionModel> quantize(const Sample& reals,
                                            const std::vector<double>& grid,
                                            DistortionKind base_rule) {
  if (grid.size() < 2) throw std::invalid_argument("quantize: grid needs at least 2 points");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i] < grid[i + 1])) {
      throw std::invalid_argument("quantize: grid must be strictly increasing");
    }
  }
  const std::vector<double> xs = reals.is_real() ? reals.reals : reals.to_reals();

  std::vector<std::string> index_syms(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) index_syms[i] = std::to_string(i);

  std::vector<std::string> out;
  out.reserve(xs.size());
  for (double x : xs) {
    const auto it = std::lower_bound(grid.begin(), grid.end(), x);
    std::size_t idx;
    if (it == grid.begin()) {
      idx = 0;
    } else if (it == grid.end()) {
      idx = grid.size() - 1;
    } else {
      const std::size_t hi = static_cast<std::size_t>(it - grid.begin());
      const std::size_t lo = hi - 1;
      // Ties go to the lower index.
      idx = (x - grid[lo] < grid[hi] - x) ? lo : (x - grid[lo] > grid[hi] - x ? hi : lo);
    }
    out.push_back(index_syms[idx]);
  }

  const std::size_t k = grid.size();
  std::vector<double> matrix(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double d = grid[i] - grid[j];
      double v = 0.0;
      switch (base_rule) {
        case DistortionKind::squared_error: v = d * d; break;
        case DistortionKind::absolute: v = std::abs(d); break;
        case DistortionKind::hamming: v = i == j ? 0.0 : 1.0; break;
        case DistortionKind::matrix:
          throw std::invalid_argument("quantize: base rule must be a named rule");
      }
      matrix[i * k + j] = v;
    }
  }
  DistortionModel model =
      DistortionModel::from_matrix(index_syms, index_syms, std::move(matrix));
  return {Sample::from_symbols(std::move(out)), std::move(model)};
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t count) {
  if (count < 2 || !(lo < hi)) throw std::invalid_argument("uniform_grid: bad parameters");
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) {
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return g;
}

}  // namespace rdest
