#pragma once

#include <cstdint>

#include "mnorm/ball_max.hpp"

namespace mnorm {

struct MatrixNormOptions {
  BallMaxOptions ball;
  int restarts = 32;
  int iterations = 200;
  std::uint64_t seed = 0x5eed;
};

struct MatrixNormResult {
  double lower = 0.0;  ///< |A x|_b / |x|_a at `argmax`
  double upper = 0.0;
  VectorXd argmax;     ///< a unit vector of l^a
  bool exact = false;
  bool closed_form = false;  ///< exact without enumeration (column, row, singular value)
};

/// sup |A x|_b over |x|_a <= 1.
///
/// Exact for a = 1 (largest column), b = inf (largest row in l^{a'}),
/// a = b = 2 (largest singular value), and by sign-vertex enumeration for
/// a = inf or b = 1. Other pairs use certified bisection seeded by a
/// nonlinear power iteration.
MatrixNormResult matrix_norm(const MatrixXd& A, const Exponent& a, const Exponent& b,
                             const MatrixNormOptions& options = {});

/// Nonlinear power iteration for |A|_{a->b}; returns the best unit vector of
/// l^a found over `options.restarts` deterministic starts.
VectorXd power_iteration(const MatrixXd& A, const Exponent& a, const Exponent& b,
                         const MatrixNormOptions& options = {});

}  // namespace mnorm
