#pragma once

#include <cstdint>

#include "mnorm/ball_max.hpp"
#include "mnorm/matrix_norm.hpp"
#include "mnorm/norm_result.hpp"
#include "mnorm/partition.hpp"

namespace mnorm {

struct WeakOptions {
  MatrixNormOptions mu;
  BallMaxOptions ball;
  PartitionOptions partition;
  PartitionMode mode = PartitionMode::exact;  ///< route for p = 1 on l^1
  int restarts = 12;
  int iterations = 150;
  int fw_iterations = 20000;
  double fw_tol = 1e-11;
  std::uint64_t seed = 7;
};

/// (sum_i |<x_i, lambda_i>|^q)^{1/q} with the weighted pairing.
double weak_objective(const MultiVector& x, const MatrixXd& lambda, const Exponent& q);

/// sup over |beta|_{q'} <= 1 of sum_k nu_k |(beta_i c_ik)_i|_{p'} where c_k is
/// row k of `coeffs` (K x n). Bounds the weak (p,q)-multi-norm of any tuple
/// x_i = sum_k c_ik z_k with |z_k| <= nu_k, and equals it on l^1 with z_k = delta_k.
BallMaxResult decomposition_bound(const MatrixXd& coeffs, const VectorXd& nu, const Exponent& p,
                                  const Exponent& q, const BallMaxOptions& options = {});

/// Weak (p,q)-multi-norm of x in L^r(w)^n: the sup of weak_objective over
/// dual tuples with mu_{p,n}(lambda) <= 1. Requires 1 <= p <= q < inf.
///
/// On l^1 (r = 1) the dual constraint decouples over points, so p = 1 is a
/// partition problem, p = q a concave problem over the simplex, and other p a
/// certified maximization over beta. For r > 1 the value is the best ascent
/// witness and the upper bound is the smallest of the decomposition bounds.
NormResult weak_pq(const MultiVector& x, const Exponent& p, const Exponent& q, const Exponent& r,
                   const WeakOptions& options = {});

}  // namespace mnorm
