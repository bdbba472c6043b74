#include "rdest/distortion.hpp"

#include <cmath>
#include <stdexcept>

namespace rdest {

namespace {
// 2.5e7 doubles = 200 MB; anything bigger is infeasible downstream anyway.
constexpr std::size_t kMaxMatrixEntries = 25'000'000;
}  // namespace

std::string to_string(DistortionKind kind) {
  switch (kind) {
    case DistortionKind::matrix: return "matrix";
    case DistortionKind::hamming: return "hamming";
    case DistortionKind::squared_error: return "squared-error";
    case DistortionKind::absolute: return "absolute";
  }
  return "unknown";
}

DistortionKind distortion_kind_from_string(std::string_view name) {
  if (name == "matrix") return DistortionKind::matrix;
  if (name == "hamming") return DistortionKind::hamming;
  if (name == "squared-error" || name == "squared") return DistortionKind::squared_error;
  if (name == "absolute") return DistortionKind::absolute;
  throw std::invalid_argument("unknown distortion kind '" + std::string(name) + "'");
}

double numeric_symbol_value(std::string_view symbol) {
  const std::string s(symbol);
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("symbol '" + s + "' is not numeric");
  }
  if (pos != s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("symbol '" + s + "' is not numeric");
  }
  return v;
}

DistortionModel::DistortionModel(DistortionKind kind, std::vector<std::string> source_symbols,
                                 std::vector<std::string> repro_symbols,
                                 std::vector<double> row_major)
    : kind_(kind),
      n_source_(source_symbols.size()),
      n_repro_(repro_symbols.size()),
      source_symbols_(std::move(source_symbols)),
      repro_symbols_(std::move(repro_symbols)),
      matrix_(std::move(row_major)),
      max_rho_(0.0) {
  if (n_source_ == 0 || n_repro_ == 0) {
    throw std::invalid_argument("DistortionModel: alphabets must be nonempty");
  }
  if (matrix_.size() != n_source_ * n_repro_) {
    throw std::invalid_argument("DistortionModel: matrix dimensions do not match alphabets");
  }
  for (double v : matrix_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("DistortionModel: entries must be finite and >= 0");
    }
    if (v > max_rho_) max_rho_ = v;
  }
  for (std::size_t i = 0; i < n_source_; ++i) {
    if (!source_index_.emplace(source_symbols_[i], i).second) {
      throw std::invalid_argument("DistortionModel: duplicate source symbol '" +
                                  source_symbols_[i] + "'");
    }
  }
  for (std::size_t j = 0; j < n_repro_; ++j) {
    if (!repro_index_.emplace(repro_symbols_[j], j).second) {
      throw std::invalid_argument("DistortionModel: duplicate reproduction symbol '" +
                                  repro_symbols_[j] + "'");
    }
  }
}

DistortionModel DistortionModel::from_matrix(std::vector<std::string> source_symbols,
                                             std::vector<std::string> repro_symbols,
                                             std::vector<double> row_major) {
  return DistortionModel(DistortionKind::matrix, std::move(source_symbols),
                         std::move(repro_symbols), std::move(row_major));
}

DistortionModel DistortionModel::named(DistortionKind kind,
                                       std::vector<std::string> source_symbols,
                                       std::vector<std::string> repro_symbols) {
  if (kind == DistortionKind::matrix) {
    throw std::invalid_argument("DistortionModel::named: use from_matrix for matrix kind");
  }
  const std::size_t na = source_symbols.size();
  const std::size_t nb = repro_symbols.size();
  if (na == 0 || nb == 0) {
    throw std::invalid_argument("DistortionModel: alphabets must be nonempty");
  }
  if (na * nb > kMaxMatrixEntries) {
    throw std::invalid_argument("DistortionModel: alphabet product too large to materialize");
  }
  std::vector<double> m(na * nb);
  if (kind == DistortionKind::hamming) {
    for (std::size_t i = 0; i < na; ++i) {
      for (std::size_t j = 0; j < nb; ++j) {
        m[i * nb + j] = source_symbols[i] == repro_symbols[j] ? 0.0 : 1.0;
      }
    }
  } else {
    std::vector<double> xs(na), ys(nb);
    for (std::size_t i = 0; i < na; ++i) xs[i] = numeric_symbol_value(source_symbols[i]);
    for (std::size_t j = 0; j < nb; ++j) ys[j] = numeric_symbol_value(repro_symbols[j]);
    for (std::size_t i = 0; i < na; ++i) {
      for (std::size_t j = 0; j < nb; ++j) {
        const double d = xs[i] - ys[j];
        m[i * nb + j] = kind == DistortionKind::squared_error ? d * d : std::abs(d);
      }
    }
  }
  return DistortionModel(kind, std::move(source_symbols), std::move(repro_symbols),
                         std::move(m));
}

std::optional<std::size_t> DistortionModel::source_index_of(std::string_view symbol) const {
  auto it = source_index_.find(symbol);
  if (it == source_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> DistortionModel::repro_index_of(std::string_view symbol) const {
  auto it = repro_index_.find(symbol);
  if (it == repro_index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace rdest
