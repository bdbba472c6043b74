#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rdest/finite_dist.hpp"

namespace rdest {

/// Search window for the Gaussian family {N(mu, sigma^2)}; sigma = 0 is the
/// point mass at mu.
struct GaussianBounds {
  double mu_lo, mu_hi;
  double sigma_lo, sigma_hi;

  GaussianBounds(double ml, double mh, double sl, double sh)
      : mu_lo(ml), mu_hi(mh), sigma_lo(sl), sigma_hi(sh) {
    if (!(std::isfinite(ml) && std::isfinite(mh) && std::isfinite(sl) && std::isfinite(sh))) {
      throw std::invalid_argument("GaussianBounds: bounds must be finite");
    }
    if (!(ml <= mh) || !(sl <= sh)) {
      throw std::invalid_argument("GaussianBounds: lower bounds must not exceed upper bounds");
    }
    if (sl < 0.0) {
      throw std::invalid_argument("GaussianBounds: sigma range must lie in [0,inf)");
    }
  }
};

/// A parameterized set of reproduction distributions: either the Gaussian
/// family over a (mu, sigma) window, or an explicit finite grid of labeled
/// distributions.
class ParamFamily {
public:
  enum class Kind { gaussian, finite_grid };

  static ParamFamily gaussian(GaussianBounds bounds) {
    ParamFamily f;
    f.kind_ = Kind::gaussian;
    f.bounds_.push_back(bounds);
    return f;
  }

  static ParamFamily finite_grid(std::vector<std::pair<std::string, FiniteDist>> entries) {
    if (entries.empty()) {
      throw std::invalid_argument("ParamFamily: finite grid must be nonempty");
    }
    ParamFamily f;
    f.kind_ = Kind::finite_grid;
    f.grid_ = std::move(entries);
    return f;
  }

  Kind kind() const { return kind_; }

  const GaussianBounds& bounds() const {
    if (kind_ != Kind::gaussian) throw std::logic_error("ParamFamily: not a Gaussian family");
    return bounds_.front();
  }

  const std::vector<std::pair<std::string, FiniteDist>>& grid() const {
    if (kind_ != Kind::finite_grid) throw std::logic_error("ParamFamily: not a grid family");
    return grid_;
  }

private:
  ParamFamily() = default;
  Kind kind_ = Kind::finite_grid;
  std::vector<GaussianBounds> bounds_;  // singleton when gaussian
  std::vector<std::pair<std::string, FiniteDist>> grid_;
};

}  // namespace rdest
