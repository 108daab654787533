#include "mnorm/multinorm.hpp"

#include <random>
#include <stdexcept>

#include "mnorm/weaksum.hpp"

namespace mnorm {
namespace {

void validate(const Exponent& p, const Exponent& q) {
  if (p.is_inf() || q.is_inf()) throw std::invalid_argument("weak_pq: p and q must be finite");
  if (p > q) throw std::invalid_argument("weak_pq: requires p <= q");
}

double beta_objective(const MatrixXd& C, const VectorXd& nu, const Exponent& pc,
                      const Eigen::Ref<const VectorXd>& beta) {
  double acc = 0.0;
  for (Index k = 0; k < C.rows(); ++k) {
    if (nu(k) == 0.0) continue;
    acc += nu(k) * lp_norm(C.row(k).transpose().cwiseProduct(beta), pc);
  }
  return acc;
}

// Gradient step beta <- argmax_{|b|_{q'} <= 1} <grad g(beta), b>; monotone for convex g.
VectorXd ascend_beta(const MatrixXd& C, const VectorXd& nu, const Exponent& pc, const Exponent& q,
                     VectorXd beta) {
  double cur = beta_objective(C, nu, pc, beta);
  for (int it = 0; it < 500; ++it) {
    VectorXd grad = VectorXd::Zero(C.cols());
    for (Index k = 0; k < C.rows(); ++k) {
      const VectorXd v = C.row(k).transpose().cwiseProduct(beta);
      grad += nu(k) * C.row(k).transpose().cwiseProduct(duality_map(v, pc));
    }
    if (lp_norm(grad, q) == 0.0) break;
    const VectorXd next = duality_map(grad, q);
    const double val = beta_objective(C, nu, pc, next);
    if (val <= cur * (1.0 + 1e-15)) break;
    beta = next;
    cur = val;
  }
  return beta;
}

// Dual tuple attaining sum_i beta_i <x_i, lambda_i> = sum_k w_k |beta o x_k|_{p'} on l^1(w).
MatrixXd l1_witness(const MatrixXd& X, const VectorXd& beta, const Exponent& pc) {
  MatrixXd lambda(X.rows(), X.cols());
  for (Index k = 0; k < X.rows(); ++k) {
    lambda.row(k) = duality_map(X.row(k).transpose().cwiseProduct(beta), pc).transpose();
  }
  return lambda;
}

struct SimplexResult {
  VectorXd gamma;
  double value = 0.0;
  double upper = 0.0;
};

// max over the simplex of sum_k w_k (A gamma)_k^{1/e}, e >= 1: concave, solved by
// Frank-Wolfe with away steps; the Frank-Wolfe gap certifies the upper bound.
SimplexResult concave_simplex(const MatrixXd& A, const VectorXd& w, double e, int max_iter, double tol) {
  const Index n = A.cols();
  const double expo = 1.0 / e;
  auto value = [&](const VectorXd& g) {
    const VectorXd S = A * g;
    double acc = 0.0;
    for (Index k = 0; k < S.size(); ++k) acc += w(k) * std::pow(std::max(S(k), 0.0), expo);
    return acc;
  };
  auto gradient = [&](const VectorXd& g) {
    const VectorXd S = A * g;
    VectorXd coef(S.size());
    for (Index k = 0; k < S.size(); ++k) {
      coef(k) = S(k) > 0.0 ? w(k) * expo * std::pow(S(k), expo - 1.0) : 0.0;
    }
    return VectorXd(A.transpose() * coef);
  };

  SimplexResult out;
  VectorXd g = VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  double fval = value(g);
  double gap = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const VectorXd grad = gradient(g);
    Index j = 0;
    grad.maxCoeff(&j);
    const double inner = grad.dot(g);
    gap = grad(j) - inner;
    if (gap <= tol * std::max(fval, 1e-300)) break;
    Index a = -1;
    for (Index i = 0; i < n; ++i) {
      if (g(i) > 0.0 && (a < 0 || grad(i) < grad(a))) a = i;
    }
    VectorXd d;
    double tmax = 1.0;
    if (a >= 0 && inner - grad(a) > gap && g(a) < 1.0) {
      d = g - VectorXd::Unit(n, a);
      tmax = g(a) / (1.0 - g(a));
    } else {
      d = VectorXd::Unit(n, j) - g;
    }
    // Concave in t: bisection on the directional derivative.
    auto slope = [&](double t) { return gradient(g + t * d).dot(d); };
    double t = tmax;
    if (slope(tmax) < 0.0) {
      double lo = 0.0, hi = tmax;
      for (int b = 0; b < 60; ++b) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) > 0.0 ? lo : hi) = mid;
      }
      t = lo;
    }
    VectorXd next = (g + t * d).cwiseMax(0.0);
    next /= next.sum();
    const double nv = value(next);
    if (nv < fval) break;
    g = next;
    fval = nv;
  }
  const VectorXd grad = gradient(g);
  out.gamma = g;
  out.value = fval;
  out.upper = fval + std::max(0.0, grad.maxCoeff() - grad.dot(g));
  return out;
}

// mu_{p,n} of the columns of L in l^{r'} (L already carries weight powers), with a
// maximizing alpha for the subgradient; `alpha` is a warm start.
double mu_estimate(const MatrixXd& L, const Exponent& pc, const Exponent& rc, VectorXd& alpha) {
  const Exponent p = pc.conjugate();
  if (lp_norm(alpha, pc) == 0.0) alpha = VectorXd::Ones(L.cols());
  alpha /= lp_norm(alpha, pc);
  double val = lp_norm(L * alpha, rc);
  for (int it = 0; it < 60; ++it) {
    const VectorXd z = L.transpose() * duality_map(L * alpha, rc);
    if (lp_norm(z, p) == 0.0) break;
    VectorXd next = duality_map(z, p);
    const double nv = lp_norm(L * next, rc);
    if (nv <= val * (1.0 + 1e-13)) break;
    alpha = next;
    val = nv;
  }
  return val;
}

}  // namespace

double weak_objective(const MultiVector& x, const MatrixXd& lambda, const Exponent& q) {
  const VectorXd& w = x.space()->weights();
  VectorXd c(x.n());
  for (Index i = 0; i < x.n(); ++i) c(i) = (w.array() * x.columns().col(i).array() * lambda.col(i).array()).sum();
  return lp_norm(c, q);
}

BallMaxResult decomposition_bound(const MatrixXd& coeffs, const VectorXd& nu, const Exponent& p,
                                  const Exponent& q, const BallMaxOptions& options) {
  const Exponent pc = p.conjugate();
  const Exponent qc = q.conjugate();
  const Index n = coeffs.cols();
  ConvexObjective g = [&](const Eigen::Ref<const VectorXd>& beta) { return beta_objective(coeffs, nu, pc, beta); };
  std::vector<VectorXd> seeds;
  if (!qc.is_inf() && !qc.is_one()) {
    seeds.push_back(ascend_beta(coeffs, nu, pc, q, duality_map(VectorXd::Ones(n), q)));
    VectorXd colmass(n);
    for (Index i = 0; i < n; ++i) colmass(i) = nu.dot(coeffs.col(i).cwiseAbs());
    seeds.push_back(ascend_beta(coeffs, nu, pc, q, duality_map(colmass, q)));
    for (Index i = 0; i < n; ++i) seeds.push_back(ascend_beta(coeffs, nu, pc, q, VectorXd::Unit(n, i)));
  }
  return maximize_on_ball(g, n, qc, options, seeds);
}

NormResult weak_pq(const MultiVector& x, const Exponent& p, const Exponent& q, const Exponent& r,
                   const WeakOptions& options) {
  validate(p, q);
  const auto& space = *x.space();
  const VectorXd& w = space.weights();
  const MatrixXd& X = x.columns();
  const Index n = x.n();
  const Exponent pc = p.conjugate();
  NormResult out;

  if (X.isZero(0.0)) {
    out.certificate = DualTuple{MultiVector(x.space(), MatrixXd::Zero(x.m(), n)), 0.0};
    out.method = Method::closed_form;
    return out;
  }

  // Zero coordinates contribute nothing and take lambda_i = 0.
  std::vector<Index> live;
  for (Index i = 0; i < n; ++i)
    if (!X.col(i).isZero(0.0)) live.push_back(i);
  if (static_cast<Index>(live.size()) < n) {
    MatrixXd Y(x.m(), static_cast<Index>(live.size()));
    for (std::size_t j = 0; j < live.size(); ++j) Y.col(static_cast<Index>(j)) = X.col(live[j]);
    out = weak_pq(MultiVector(x.space(), std::move(Y)), p, q, r, options);
    auto& dt = std::get<DualTuple>(out.certificate);
    MatrixXd lambda = MatrixXd::Zero(x.m(), n);
    for (std::size_t j = 0; j < live.size(); ++j) lambda.col(live[j]) = dt.lambda.column(static_cast<Index>(j));
    dt.lambda = MultiVector(x.space(), std::move(lambda));
    return out;
  }

  if (r.is_one()) {
    MatrixXd lambda;
    if (p.is_one()) {
      const NormResult part = partition_sup_q(x, q, options.mode, options.partition);
      const auto& blocks = std::get<Partition>(part.certificate).block;
      lambda = MatrixXd::Zero(x.m(), n);
      for (Index k = 0; k < x.m(); ++k) {
        const int i = blocks[static_cast<std::size_t>(k)];
        lambda(k, i) = X(k, i) < 0.0 ? -1.0 : 1.0;
      }
      out.upper_bound = part.upper_bound;
      out.method = part.method == Method::greedy && q.is_one() ? Method::closed_form : part.method;
    } else if (p == q) {
      const double e = pc.value();
      const MatrixXd A = X.cwiseAbs().array().pow(e).matrix();
      const SimplexResult sr = concave_simplex(A, w, e, options.fw_iterations, options.fw_tol);
      const VectorXd beta = sr.gamma.array().pow(1.0 / e).matrix();
      lambda = l1_witness(X, beta, pc);
      out.upper_bound = sr.upper;
      out.method = Method::optimizer;
    } else {
      const BallMaxResult bm = decomposition_bound(X, w, p, q, options.ball);
      lambda = l1_witness(X, bm.argmax, pc);
      out.upper_bound = bm.upper;
      out.method = bm.exact ? Method::brute_extreme : Method::branch_and_bound;
    }
    out.value = weak_objective(x, lambda, q);
    out.upper_bound = std::max(out.upper_bound, out.value);
    double feas = 0.0;
    for (Index k = 0; k < x.m(); ++k) feas = std::max(feas, lp_norm(lambda.row(k).transpose(), p));
    out.certificate = DualTuple{MultiVector(x.space(), lambda), feas};
    return out;
  }

  if (r.value() == 2.0 && p.value() == 2.0) {
    // mu_2 of the dual tuple is a spectral norm, so the value is the sup of the
    // nuclear norm of diag(w^{1/2}) X diag(beta) over the l^{q'} ball.
    const VectorXd sw = w.cwiseSqrt();
    const MatrixXd B = sw.asDiagonal() * X;
    ConvexObjective g = [&](const Eigen::Ref<const VectorXd>& beta) {
      return Eigen::JacobiSVD<MatrixXd>(B * beta.asDiagonal()).singularValues().sum();
    };
    std::vector<VectorXd> seeds{VectorXd::Ones(n)};
    for (Index i = 0; i < n; ++i) seeds.push_back(VectorXd::Unit(n, i));
    const BallMaxResult bm = maximize_on_ball(g, n, q.conjugate(), options.ball, seeds);
    Eigen::JacobiSVD<MatrixXd> svd(B * bm.argmax.asDiagonal(), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Index rank = svd.rank();
    MatrixXd C = MatrixXd::Zero(x.m(), n);
    if (rank > 0) C = svd.matrixU().leftCols(rank) * svd.matrixV().leftCols(rank).transpose();
    const MatrixXd lambda = sw.cwiseInverse().asDiagonal() * C;
    out.value = weak_objective(x, lambda, q);
    out.upper_bound = std::max(bm.upper, out.value);
    const double feas = rank > 0 ? Eigen::JacobiSVD<MatrixXd>(C).singularValues()(0) : 0.0;
    out.certificate = DualTuple{MultiVector(x.space(), lambda), feas};
    out.method = bm.exact ? Method::brute_extreme : Method::branch_and_bound;
    return out;
  }

  // General r: upper bounds from decompositions x_i = sum_k c_ik z_k.
  const Exponent rc = r.conjugate();
  VectorXd norms(n);
  for (Index i = 0; i < n; ++i) norms(i) = lp_norm(X.col(i), w, r);
  double upper = lp_norm(norms, q);
  upper = std::min(upper, decomposition_bound(X, space.weight_power(r), p, q, options.ball).upper);
  {
    // Basis of the span from the SVD of diag(w^{1/r}) X: z_k = w^{-1/r} u_k.
    const MatrixXd B = space.weight_power(r).asDiagonal() * X;
    Eigen::JacobiSVD<MatrixXd> svd(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Index rank = std::max<Index>(1, svd.rank());
    const MatrixXd C = svd.singularValues().head(rank).asDiagonal() * svd.matrixV().leftCols(rank).transpose();
    VectorXd nu(rank);
    for (Index k = 0; k < rank; ++k) nu(k) = lp_norm(svd.matrixU().col(k), r);
    upper = std::min(upper, decomposition_bound(C, nu, p, q, options.ball).upper);
  }

  // Lower bound: ascent on |(<x_i, lambda_i>)|_q / mu_{p,n}(lambda).
  const VectorXd wr = space.weight_power(r);
  const VectorXd wrc = space.weight_power(rc);
  auto norming = [&](Index i) {
    return VectorXd(duality_map(wr.cwiseProduct(X.col(i)), r).cwiseQuotient(wrc));
  };
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  MatrixXd best_lambda = MatrixXd::Zero(x.m(), n);
  double best_ratio = -1.0;
  const int starts = options.restarts + static_cast<int>(n);
  for (int start = 0; start < starts; ++start) {
    MatrixXd lambda = MatrixXd::Zero(x.m(), n);
    if (start < n) {
      lambda.col(start) = norming(start);
    } else if (start == n) {
      for (Index i = 0; i < n; ++i) lambda.col(i) = norming(i);
    } else if (start == n + 1) {
      Index j = 0;
      norms.maxCoeff(&j);
      const VectorXd f = norming(j);
      for (Index i = 0; i < n; ++i) lambda.col(i) = f;
    } else {
      for (Index k = 0; k < x.m(); ++k)
        for (Index i = 0; i < n; ++i) lambda(k, i) = normal(rng);
    }
    VectorXd alpha = VectorXd::Ones(n);
    auto ratio = [&](const MatrixXd& lam, VectorXd& al) {
      const double m = mu_estimate(wrc.asDiagonal() * lam, pc, rc, al);
      return m > 0.0 ? weak_objective(x, lam, q) / m : 0.0;
    };
    double h = ratio(lambda, alpha);
    double eta = 0.25;
    for (int it = 0; it < options.iterations && eta > 1e-10; ++it) {
      const MatrixXd L = wrc.asDiagonal() * lambda;
      const double m = lp_norm(L * alpha, rc);
      if (m == 0.0) break;
      VectorXd c(n);
      for (Index i = 0; i < n; ++i) c(i) = w.dot(X.col(i).cwiseProduct(lambda.col(i)));
      const double N = lp_norm(c, q);
      const VectorXd d = duality_map(c, q);
      const VectorXd nu = duality_map(L * alpha, rc);
      MatrixXd grad(x.m(), n);
      for (Index i = 0; i < n; ++i) {
        grad.col(i) = d(i) * w.cwiseProduct(X.col(i)) - (N / m) * alpha(i) * nu.cwiseProduct(wrc);
      }
      const double gn = grad.norm();
      if (gn == 0.0) break;
      bool moved = false;
      while (eta > 1e-10) {
        MatrixXd trial = lambda + (eta * lambda.norm() / gn) * grad;
        VectorXd al = alpha;
        const double ht = ratio(trial, al);
        if (ht > h) {
          lambda = trial;
          alpha = al;
          h = ht;
          eta = std::min(1.0, 2.0 * eta);
          moved = true;
          break;
        }
        eta *= 0.5;
      }
      if (!moved) break;
      lambda /= lp_norm(wrc.asDiagonal() * lambda * alpha, rc);
    }
    // The ascent uses a local estimate of mu; rank restarts by certified values.
    const MuResult cert = mu(p, MultiVector(x.space(), lambda), rc, options.mu);
    if (!(cert.upper_bound > 0.0)) continue;
    const double certified = weak_objective(x, lambda, q) / cert.upper_bound;
    if (certified > best_ratio) {
      best_ratio = certified;
      best_lambda = lambda / cert.upper_bound;
    }
  }

  out.value = weak_objective(x, best_lambda, q);
  out.upper_bound = std::max(upper, out.value);
  out.certificate = DualTuple{MultiVector(x.space(), best_lambda), best_ratio > 0.0 ? 1.0 : 0.0};
  out.method = out.upper_bound == out.value ? Method::closed_form : Method::optimizer;
  return out;
}

}  // namespace mnorm
