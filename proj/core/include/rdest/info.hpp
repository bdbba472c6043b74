#pragma once

#include "rdest/ext_real.hpp"
#include "rdest/finite_dist.hpp"

namespace rdest {

/// Shannon entropy -sum p log p in nats; 0 log 0 = 0.
ExtReal entropy(const FiniteDist& p);

/// Relative entropy sum p log(p/q) in nats; +inf when absolute continuity
/// fails. P and Q must be over the same symbol set.
ExtReal kl_divergence(const FiniteDist& p, const FiniteDist& q);

/// Binary entropy h(p) = -p log p - (1-p) log(1-p) in nats.
double binary_entropy(double p);

}  // namespace rdest
