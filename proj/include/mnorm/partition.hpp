#pragma once

#include <cstdint>

#include "mnorm/norm_result.hpp"

namespace mnorm {

enum class PartitionMode { exact, greedy, local_search };

PartitionMode parse_partition_mode(const std::string& text);
std::string to_string(PartitionMode mode);

struct PartitionOptions {
  /// Exact enumeration is refused when (contested points) * log2(n) exceeds this.
  double guard_bits = 24.0;
  int random_starts = 8;
  std::uint64_t seed = 1;
};

/// (sum_i s_i^{q/p})^{1/q} where s_i is the p-mass of f_i on block i.
double partition_value(const MultiVector& f, const Partition& X, const Exponent& p, const Exponent& q);

/// Pointwise argmax of |f_i(k)|, lowest index on ties.
Partition argmax_partition(const MultiVector& f);

/// Standard (p,q)-multi-norm: sup over partitions X of (sum_i |chi_{X_i} f_i|_p^q)^{1/q}.
/// Requires 1 <= p <= q < inf. Greedy is exact for q = p; otherwise it and
/// local_search give lower values with the (p,p) value as upper bound.
NormResult standard_pq(const MultiVector& f, const Exponent& p, const Exponent& q,
                       PartitionMode mode = PartitionMode::exact, const PartitionOptions& options = {});

/// sup over partitions of (sum_i |P_{X_i} mu_i|_1^q)^{1/q} for mu in l^1(w).
NormResult partition_sup_q(const MultiVector& mu, const Exponent& q,
                           PartitionMode mode = PartitionMode::exact, const PartitionOptions& options = {});

/// Maximum multi-norm on l^1(w): sum_k w_k max_i |mu_i(k)|.
NormResult max_multinorm(const MultiVector& mu);

}  // namespace mnorm
