#pragma once

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rdest {

/// A nonnegative extended real: either a finite value >= 0 or +infinity.
///
/// Rates, relative entropies and Legendre-transform values live here.
/// Infinity is a distinguished state, not a floating-point sentinel, so
/// that its propagation through sums and minima is explicit.
class ExtReal {
public:
  ExtReal() : value_(0.0), finite_(true) {}

  ExtReal(double v) : value_(v), finite_(true) {
    if (std::isnan(v)) {
      throw std::invalid_argument("ExtReal: NaN is not a valid value");
    }
    if (std::isinf(v)) {
      if (v < 0) throw std::invalid_argument("ExtReal: -inf is not a valid value");
      finite_ = false;
      value_ = 0.0;
      return;
    }
    if (v < 0.0) {
      throw std::invalid_argument("ExtReal: negative value " + std::to_string(v));
    }
  }

  static ExtReal infinity() {
    ExtReal r;
    r.finite_ = false;
    return r;
  }

  bool is_finite() const { return finite_; }
  bool is_infinite() const { return !finite_; }

  /// Finite value; throws if infinite.
  double value() const {
    if (!finite_) throw std::logic_error("ExtReal: value() on +inf");
    return value_;
  }

  double value_or(double if_infinite) const { return finite_ ? value_ : if_infinite; }

  /// As a plain double, mapping +inf to the IEEE infinity (for display and
  /// tolerance checks, never for storage).
  double as_double() const {
    return finite_ ? value_ : std::numeric_limits<double>::infinity();
  }

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
    if (!a.finite_ || !b.finite_) return infinity();
    return ExtReal(a.value_ + b.value_);
  }
  ExtReal& operator+=(const ExtReal& b) {
    *this = *this + b;
    return *this;
  }

  /// Scale by a positive factor; c * inf = inf.
  friend ExtReal operator*(double c, const ExtReal& a) {
    if (std::isnan(c) || c < 0.0) {
      throw std::invalid_argument("ExtReal: scale factor must be >= 0");
    }
    if (!a.finite_) {
      if (c == 0.0) return ExtReal(0.0);
      return infinity();
    }
    return ExtReal(c * a.value_);
  }

  friend ExtReal min(const ExtReal& a, const ExtReal& b) { return a < b ? a : b; }

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }
  friend bool operator!=(const ExtReal& a, const ExtReal& b) { return !(a == b); }
  friend bool operator<(const ExtReal& a, const ExtReal& b) {
    if (!a.finite_) return false;
    if (!b.finite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator>(const ExtReal& a, const ExtReal& b) { return b < a; }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) { return !(b < a); }
  friend bool operator>=(const ExtReal& a, const ExtReal& b) { return !(a < b); }

  /// "inf" or the shortest round-trippable decimal rendering.
  std::string str() const {
    if (!finite_) return "inf";
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value_);
    return std::string(buf, ptr);
  }

private:
  double value_;
  bool finite_;
};

}  // namespace rdest
