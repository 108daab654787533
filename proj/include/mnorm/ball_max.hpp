#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "mnorm/space.hpp"

namespace mnorm {

/// Tuning for maximize_on_ball.
struct BallMaxOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  std::size_t max_cells = 20000;
  /// Largest dimension handled by vertex enumeration of the l^inf ball.
  int max_cube_dim = 22;
};

struct BallMaxResult {
  double lower = 0.0;  ///< g at `argmax`, a point of the unit sphere
  double upper = 0.0;  ///< certified bound on the supremum
  VectorXd argmax;
  std::size_t cells = 0;
  bool exact = false;  ///< extreme-point enumeration, no bisection
};

using ConvexObjective = std::function<double(const Eigen::Ref<const VectorXd>&)>;

/// Certified maximum of a convex, even, positively homogeneous function over
/// the unit ball of l^s in R^dim.
///
/// s = 1 and s = inf are solved by enumerating extreme points. Otherwise the
/// sphere is covered by boxes on the faces of the cube {|u|_inf = 1}; on a box
/// with vertices v the bound max_v g(v) / <v, z> holds for any z in the dual
/// unit ball with <v, z> > 0, and is refined by bisection (best-first).
/// `seeds` are optional good starting points (any nonzero scale).
BallMaxResult maximize_on_ball(const ConvexObjective& g, Index dim, const Exponent& s,
                               const BallMaxOptions& options = {},
                               const std::vector<VectorXd>& seeds = {});

}  // namespace mnorm
