#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rdest {

enum class DistortionKind { matrix, hamming, squared_error, absolute };

std::string to_string(DistortionKind kind);
DistortionKind distortion_kind_from_string(std::string_view name);

/// A per-pair distortion rho(x, y) >= 0 over finite source and reproduction
/// alphabets. Named rules (hamming on any symbols, squared-error / absolute
/// on numeric symbols) are materialized into the same matrix form at
/// construction so lookup is uniform. Immutable after construction.
class DistortionModel {
public:
  static DistortionModel from_matrix(std::vector<std::string> source_symbols,
                                     std::vector<std::string> repro_symbols,
                                     std::vector<double> row_major);

  /// Builds a named rule. Hamming compares symbols for equality;
  /// squared-error and absolute parse the symbols as reals.
  static DistortionModel named(DistortionKind kind, std::vector<std::string> source_symbols,
                               std::vector<std::string> repro_symbols);

  double rho(std::size_t source_idx, std::size_t repro_idx) const {
    return matrix_[source_idx * n_repro_ + repro_idx];
  }

  std::size_t n_source() const { return n_source_; }
  std::size_t n_repro() const { return n_repro_; }
  const std::vector<std::string>& source_symbols() const { return source_symbols_; }
  const std::vector<std::string>& repro_symbols() const { return repro_symbols_; }
  std::optional<std::size_t> source_index_of(std::string_view symbol) const;
  std::optional<std::size_t> repro_index_of(std::string_view symbol) const;
  DistortionKind kind() const { return kind_; }
  double max_rho() const { return max_rho_; }

private:
  DistortionModel(DistortionKind kind, std::vector<std::string> source_symbols,
                  std::vector<std::string> repro_symbols, std::vector<double> row_major);

  DistortionKind kind_;
  std::size_t n_source_, n_repro_;
  std::vector<std::string> source_symbols_, repro_symbols_;
  std::vector<double> matrix_;
  double max_rho_;
  std::map<std::string, std::size_t, std::less<>> source_index_, repro_index_;
};

/// Strict double parse of a symbol name; throws if the symbol is not numeric.
double numeric_symbol_value(std::string_view symbol);

}  // namespace rdest
