#pragma once

#include <cstdint>

#include "mnorm/matrix_norm.hpp"
#include "mnorm/norm_result.hpp"

namespace mnorm {

struct DualOptions {
  int budget = 400;               ///< mirror-descent iterations over piece weights
  std::size_t max_partitions = 729;  ///< all partitions below this count, else a sample
  std::uint64_t seed = 11;
  MatrixNormOptions mu;
};

/// Upper bound on the dual (r,s)-multi-norm of x in L^a(w)^n:
///   inf sum_k |alpha_k|_s mu_{r,n}(y_k)  over  x = sum_k M_{alpha_k}(y_k).
///
/// Candidates are the trivial decomposition, the per-coordinate split and a
/// split of x into pieces whose coordinates have disjoint supports (one piece
/// per partition of the points), with the split weights tuned by mirror
/// descent. The Decomposition witness reproduces upper_bound; value is the
/// lower bound max_i |x_i| that every dual multi-norm satisfies.
/// Requires r < inf and 1 < s <= r'.
NormResult dual_multinorm_upper(const MultiVector& x, const Exponent& r, const Exponent& s, const Exponent& a,
                                const DualOptions& options = {});

/// Certified cost of a decomposition: sum_k |alpha_k|_s mu_{r,n}(y_k) with mu upper bounds.
double decomposition_cost(Decomposition& d, const Exponent& r, const Exponent& s, const Exponent& a,
                          const MatrixNormOptions& options = {});

}  // namespace mnorm
