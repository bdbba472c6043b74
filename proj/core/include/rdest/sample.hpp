#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rdest {

/// An ordered data string: either symbols from a finite alphabet or raw
/// reals (continuous data enters estimation only via quantization or the
/// Gaussian-family path).
struct Sample {
  enum class Kind { symbolic, real };

  Kind kind = Kind::symbolic;
  std::vector<std::string> symbols;
  std::vector<double> reals;

  static Sample from_symbols(std::vector<std::string> values) {
    if (values.empty()) throw std::invalid_argument("Sample: empty sample");
    Sample s;
    s.kind = Kind::symbolic;
    s.symbols = std::move(values);
    return s;
  }

  static Sample from_reals(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("Sample: empty sample");
    Sample s;
    s.kind = Kind::real;
    s.reals = std::move(values);
    return s;
  }

  std::size_t size() const {
    return kind == Kind::symbolic ? symbols.size() : reals.size();
  }

  bool is_symbolic() const { return kind == Kind::symbolic; }
  bool is_real() const { return kind == Kind::real; }

  /// Parses a symbolic sample into reals; throws if any token is not numeric.
  std::vector<double> to_reals() const;
};

}  // namespace rdest
