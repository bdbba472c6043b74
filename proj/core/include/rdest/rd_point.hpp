#pragma once

#include <stdexcept>
#include <utility>

#include "rdest/ext_real.hpp"
#include "rdest/finite_dist.hpp"

namespace rdest {

/// One point (D, R) on a rate-distortion curve, in nats, together with the
/// Lagrangian slope that produced it and the achieving output distribution.
struct RDPoint {
  double distortion;
  ExtReal rate;
  double slope;
  FiniteDist output_dist;

  RDPoint(double d, ExtReal r, double s, FiniteDist q)
      : distortion(d), rate(r), slope(s), output_dist(std::move(q)) {
    if (!(distortion >= 0.0)) throw std::invalid_argument("RDPoint: distortion must be >= 0");
    if (!(slope <= 0.0)) throw std::invalid_argument("RDPoint: slope must be <= 0");
  }
};

}  // namespace rdest
