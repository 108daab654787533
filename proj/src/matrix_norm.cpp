#include "mnorm/matrix_norm.hpp"

#include <random>

#include "mnorm/errors.hpp"

namespace mnorm {
namespace {

double ratio(const MatrixXd& A, const VectorXd& x, const Exponent& a, const Exponent& b) {
  const double nx = lp_norm(x, a);
  return nx > 0.0 ? lp_norm(A * x, b) / nx : 0.0;
}

VectorXd unit(const VectorXd& x, const Exponent& a) {
  const double nx = lp_norm(x, a);
  return nx > 0.0 ? VectorXd(x / nx) : x;
}

// |x_j| |A_j|_b summed, then Holder: valid for every pair (a, b).
double column_bound(const MatrixXd& A, const Exponent& a, const Exponent& b) {
  VectorXd cn(A.cols());
  for (Index j = 0; j < A.cols(); ++j) cn(j) = lp_norm(A.col(j), b);
  return lp_norm(cn, a.conjugate());
}

MatrixNormResult finish(const MatrixXd& A, const Exponent& a, const Exponent& b, VectorXd x,
                        double upper) {
  MatrixNormResult r;
  r.argmax = unit(x, a);
  r.lower = ratio(A, r.argmax, a, b);
  r.upper = std::max(upper, r.lower);
  return r;
}

}  // namespace

VectorXd power_iteration(const MatrixXd& A, const Exponent& a, const Exponent& b,
                         const MatrixNormOptions& options) {
  const Index n = A.cols();
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Exponent ac = a.conjugate();
  VectorXd best = VectorXd::Zero(n);
  if (n > 0) best(0) = 1.0;
  double best_val = ratio(A, best, a, b);
  for (int start = 0; start < options.restarts; ++start) {
    VectorXd x(n);
    if (start < n) {
      x = A.transpose() * duality_map(A.col(start), b);
    } else {
      for (Index j = 0; j < n; ++j) x(j) = normal(rng);
    }
    if (lp_norm(x, a) == 0.0) {
      for (Index j = 0; j < n; ++j) x(j) = normal(rng);
    }
    x = unit(x, a);
    double val = ratio(A, x, a, b);
    for (int it = 0; it < options.iterations; ++it) {
      const VectorXd z = A.transpose() * duality_map(A * x, b);
      if (lp_norm(z, ac) == 0.0) break;
      const VectorXd next = unit(duality_map(z, ac), a);
      const double nv = ratio(A, next, a, b);
      if (nv <= val * (1.0 + 1e-15)) {
        if (nv > val) {
          x = next;
          val = nv;
        }
        break;
      }
      x = next;
      val = nv;
    }
    if (val > best_val) {
      best_val = val;
      best = x;
    }
  }
  return best;
}

MatrixNormResult matrix_norm(const MatrixXd& A, const Exponent& a, const Exponent& b,
                             const MatrixNormOptions& options) {
  const Index m = A.rows();
  const Index n = A.cols();
  if (n == 0 || m == 0 || A.isZero(0.0)) {
    MatrixNormResult r;
    r.argmax = VectorXd::Zero(n);
    if (n > 0) r.argmax(0) = 1.0;
    r.exact = r.closed_form = true;
    return r;
  }

  if (a.is_one()) {
    Index best = 0;
    double val = -1.0;
    for (Index j = 0; j < n; ++j) {
      const double c = lp_norm(A.col(j), b);
      if (c > val) {
        val = c;
        best = j;
      }
    }
    auto r = finish(A, a, b, VectorXd::Unit(n, best), val);
    r.exact = r.closed_form = true;
    return r;
  }

  if (b.is_inf()) {
    const Exponent ac = a.conjugate();
    Index best = 0;
    double val = -1.0;
    for (Index i = 0; i < m; ++i) {
      const double c = lp_norm(A.row(i).transpose(), ac);
      if (c > val) {
        val = c;
        best = i;
      }
    }
    auto r = finish(A, a, b, duality_map(A.row(best).transpose(), ac), val);
    r.exact = r.closed_form = true;
    return r;
  }

  if (a.value() == 2.0 && b.value() == 2.0) {
    Eigen::JacobiSVD<MatrixXd> svd(A, Eigen::ComputeThinV);
    auto r = finish(A, a, b, svd.matrixV().col(0), svd.singularValues()(0));
    r.exact = r.closed_form = true;
    return r;
  }

  // |A|_{a->b} = |A^T|_{b'->a'}; work in whichever orientation is cheaper.
  const Exponent bc = b.conjugate();
  const Exponent ac = a.conjugate();
  const bool dual_vertices = b.is_one() && !(a.is_inf() && n <= m);
  const bool use_dual = dual_vertices || (!a.is_inf() && m < n);
  const MatrixXd At = A.transpose();
  const MatrixXd& K = use_dual ? At : A;
  const Exponent& s = use_dual ? bc : a;
  const Exponent& t = use_dual ? ac : b;

  ConvexObjective g = [&](const Eigen::Ref<const VectorXd>& u) { return lp_norm(K * u, t); };
  if (s.is_inf() && K.cols() > options.ball.max_cube_dim) {
    const VectorXd x = power_iteration(A, a, b, options);
    return finish(A, a, b, x, column_bound(A, a, b));
  }

  std::vector<VectorXd> seeds;
  if (!s.is_inf() && !s.is_one()) {
    seeds.push_back(power_iteration(K, s, t, options));
  }
  const BallMaxResult bm = maximize_on_ball(g, K.cols(), s, options.ball, seeds);

  VectorXd x = use_dual ? duality_map(At * bm.argmax, ac) : bm.argmax;
  auto r = finish(A, a, b, x, bm.upper);
  r.exact = bm.exact;
  return r;
}

}  // namespace mnorm
