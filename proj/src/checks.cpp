#include "mnorm/checks.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "mnorm/errors.hpp"
#include "mnorm/weaksum.hpp"

namespace mnorm {

Engine weak_engine(const Exponent& p, const Exponent& q, const Exponent& r, const WeakOptions& options) {
  return [=](const MultiVector& x) { return weak_pq(x, p, q, r, options); };
}

Engine standard_engine(const Exponent& p, const Exponent& q, PartitionMode mode) {
  return [=](const MultiVector& x) { return standard_pq(x, p, q, mode); };
}

Engine max_engine() {
  return [](const MultiVector& x) { return max_multinorm(x); };
}

Engine dual_engine(const Exponent& r, const Exponent& s, const Exponent& a, const DualOptions& options) {
  return [=](const MultiVector& x) { return dual_multinorm_upper(x, r, s, a, options); };
}

// ---------------------------------------------------------------------------

DualityReport duality_check(const std::vector<MultiVector>& lambdas, const Exponent& p, const Exponent& q,
                            const DualityOptions& options) {
  DualityReport report;
  const Exponent qc = q.conjugate();
  for (const auto& lam : lambdas) {
    DualitySample smp;
    const MatrixXd& L = lam.columns();
    const VectorXd& w = lam.space()->weights();
    smp.upper = dual_multinorm_upper(lam, p, qc, Exponent::infinity(), options.dual).upper_bound;

    if (L.isZero(0.0)) {
      smp.lower = 0.0;
    } else if (q.is_one()) {
      // Extreme points of the (1,1) ball concentrate on one point.
      smp.lower = mu_pointwise_sup(lam);
    } else {
      // Sign-aligned x with <x, lambda> = sum b = 1; minimize |x| over the simplex of b.
      const Index m = L.rows();
      const Index n = L.cols();
      const MatrixXd scale = (w.asDiagonal() * L.cwiseAbs()).eval();
      auto primal = [&](const MatrixXd& b) {
        MatrixXd x = MatrixXd::Zero(m, n);
        for (Index k = 0; k < m; ++k)
          for (Index i = 0; i < n; ++i)
            if (scale(k, i) > 0.0) x(k, i) = (L(k, i) < 0.0 ? -1.0 : 1.0) * b(k, i) / scale(k, i);
        return MultiVector(lam.space(), x);
      };
      auto normalized = [&](MatrixXd b) {
        b = (scale.array() > 0.0).select(b, 0.0);
        return MatrixXd(b / b.sum());
      };
      std::vector<MatrixXd> starts{normalized(MatrixXd::Ones(m, n))};
      for (Index k = 0; k < m; ++k) {
        if (scale.row(k).sum() == 0.0) continue;
        MatrixXd b = MatrixXd::Zero(m, n);
        b.row(k) = scale.row(k);
        starts.push_back(normalized(b));
      }
      double best = INFINITY;
      MatrixXd b = starts.front();
      for (const auto& st : starts) {
        const double v = weak_pq(primal(st), p, q, Exponent::one(), options.weak).upper_bound;
        if (v < best) {
          best = v;
          b = st;
        }
      }
      // Entropic mirror descent; the running average is evaluated as well. The start is
      // blended with the uniform point since multiplicative steps never revive a zero.
      b = normalized(0.8 * b + 0.2 * starts.front());
      MatrixXd avg = MatrixXd::Zero(m, n);
      const double eta = 2.0 / std::sqrt(static_cast<double>(options.iterations));
      for (int t = 0; t < options.iterations; ++t) {
        const MultiVector x = primal(b);
        const NormResult nr = weak_pq(x, p, q, Exponent::one(), options.weak);
        best = std::min(best, nr.upper_bound);
        const MatrixXd& dual = std::get<DualTuple>(nr.certificate).lambda.columns();
        VectorXd c(n);
        for (Index i = 0; i < n; ++i) c(i) = w.dot(x.column(i).cwiseProduct(dual.col(i)));
        const VectorXd d = duality_map(c, q);
        MatrixXd g = MatrixXd::Zero(m, n);
        for (Index k = 0; k < m; ++k)
          for (Index i = 0; i < n; ++i)
            if (scale(k, i) > 0.0) g(k, i) = d(i) * w(k) * dual(k, i) * (L(k, i) < 0.0 ? -1.0 : 1.0) / scale(k, i);
        const double gmax = g.cwiseAbs().maxCoeff();
        if (gmax == 0.0) break;
        b = normalized(b.cwiseProduct((-eta * g / gmax).array().exp().matrix()));
        avg += b;
      }
      if (avg.sum() > 0.0) {
        best = std::min(best, weak_pq(primal(normalized(avg)), p, q, Exponent::one(), options.weak).upper_bound);
      }
      smp.lower = 1.0 / best;
    }
    smp.ok = smp.lower <= smp.upper * (1.0 + options.tol) + options.tol;
    smp.rel_gap = smp.upper > 0.0 ? (smp.upper - smp.lower) / smp.upper : 0.0;
    report.max_rel_gap = std::max(report.max_rel_gap, smp.rel_gap);
    report.ok = report.ok && smp.ok;
    report.samples.push_back(smp);
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

double weighted_op_upper(const MatrixXd& U, const DiscreteSpace& from, const Exponent& t, const DiscreteSpace& to,
                         const Exponent& p) {
  const MatrixXd A = to.weight_power(p).asDiagonal() * U * from.weight_power(t).cwiseInverse().asDiagonal();
  return matrix_norm(A, t, p).upper;
}

NormResult standard_any(const MultiVector& y, const Exponent& p, const Exponent& q) {
  try {
    return standard_pq(y, p, q, PartitionMode::exact);
  } catch (const GuardExceeded&) {
    return standard_pq(y, p, q, PartitionMode::local_search);
  }
}

}  // namespace

ExtensionResult extension_norm(const MultiVector& x, const Exponent& t, const SpacePtr& target, const Exponent& p,
                               const Exponent& q, int samples, std::uint64_t seed, double tol) {
  if (target->size() < x.n()) throw std::invalid_argument("extension_norm: target needs at least n atoms");
  const auto& F = *x.space();
  ExtensionResult out;
  const NormResult weak = weak_pq(x, p, q, t);
  out.weak_value = weak.value;
  out.weak_upper = weak.upper_bound;
  out.result.method = Method::sampled;
  out.result.value = -1.0;

  auto consider = [&](const MatrixXd& U, double norm_bound) {
    const double nu = std::min(norm_bound, weighted_op_upper(U, F, t, *target, p));
    if (!(nu > 0.0)) return;
    const NormResult r = standard_any(MultiVector(target, U * x.columns()), p, q);
    const double v = r.value / nu;
    if (v > out.result.value) {
      out.result.value = v;
      out.result.certificate = r.certificate;
      out.U = U;
      out.u_norm_upper = nu;
    }
  };

  // U y = sum_i <y, lambda_i> chi_{X_i} / m(X_i)^{1/p} with X_i the i-th atom; |U| <= mu(lambda).
  const auto& dual = std::get<DualTuple>(weak.certificate);
  MatrixXd U = MatrixXd::Zero(target->size(), F.size());
  const VectorXd cp = target->weight_power(p);
  for (Index i = 0; i < x.n(); ++i) {
    U.row(i) = F.weights().cwiseProduct(dual.lambda.column(i)).transpose() / cp(i);
  }
  consider(U, dual.mu);
  if (*target == F) consider(MatrixXd::Identity(F.size(), F.size()), INFINITY);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int sidx = 0; sidx < samples; ++sidx) {
    MatrixXd R(target->size(), F.size());
    for (Index a = 0; a < R.rows(); ++a)
      for (Index b = 0; b < R.cols(); ++b) R(a, b) = normal(rng);
    consider(R, INFINITY);
  }
  out.result.value = std::max(out.result.value, 0.0);
  out.result.upper_bound = std::max(out.result.value, weak.upper_bound);
  out.consistent = weak.value - tol * (1.0 + weak.value) <= out.result.value &&
                   out.result.value <= weak.upper_bound + tol * (1.0 + weak.upper_bound);
  return out;
}

// ---------------------------------------------------------------------------

int AxiomReport::failures() const {
  return static_cast<int>(std::count_if(cases.begin(), cases.end(), [](const AxiomCase& c) { return !c.ok; }));
}

namespace {

MultiVector random_tuple(std::mt19937_64& rng, const SpacePtr& space, Index n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MatrixXd X(space->size(), n);
  for (Index k = 0; k < X.rows(); ++k)
    for (Index i = 0; i < n; ++i) X(k, i) = u(rng);
  return MultiVector(space, X);
}

MatrixXd double_last(const MatrixXd& X) {
  MatrixXd Y = X;
  Y.col(Y.cols() - 1) *= 2.0;
  return Y;
}

}  // namespace

AxiomReport axioms_check(const Engine& engine, const SpacePtr& space, EngineKind kind, const AxiomOptions& options,
                         const Exponent& ambient, const Exponent& r, const Exponent& s) {
  AxiomReport rep;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double tol = options.tol;
  auto record = [&](const std::string& name, int trial, double lhs, double rhs) {
    const bool ok = lhs <= rhs + tol * (1.0 + std::abs(rhs));
    rep.cases.push_back({name, trial, lhs, rhs, ok});
    rep.ok = rep.ok && ok;
  };
  auto both = [&](const std::string& name, int trial, const NormResult& a, const NormResult& b) {
    record(name, trial, a.value, b.upper_bound);
    record(name, trial, b.value, a.upper_bound);
  };
  auto transfer = [&](const std::string& name, int trial, Decomposition d, const MatrixXd& target, double bound) {
    const double cost = decomposition_cost(d, r, s, ambient);
    record(name, trial, cost, bound);
    record(name + "-reconstruct", trial, (d.reconstruct() - target).cwiseAbs().maxCoeff(), 0.0);
  };

  for (int trial = 0; trial < options.trials; ++trial) {
    const Index n = 1 + trial % std::max<Index>(1, options.n_max);
    const MultiVector x = random_tuple(rng, space, n);
    const NormResult base = engine(x);

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const MultiVector xp = x.permuted(order);
    both("A1", trial, base, engine(xp));

    VectorXd alpha(n);
    for (Index i = 0; i < n; ++i) alpha(i) = unit(rng);
    const MultiVector xa = scale_by(alpha, x);
    record("A2", trial, engine(xa).value, base.upper_bound);

    const MultiVector x0 = x.with_column(VectorXd::Zero(x.m()));
    both("A3", trial, base, engine(x0));

    const MultiVector xd = x.with_column(x.column(n - 1));
    const NormResult dup = engine(xd);
    if (kind == EngineKind::multi) {
      both("A4", trial, base, dup);
    } else {
      both("B4", trial, dup, engine(MultiVector(space, double_last(x.columns()))));
    }

    double max_single = 0.0;
    double sum_single = 0.0;
    for (Index i = 0; i < n; ++i) {
      const NormResult one = engine(MultiVector(space, MatrixXd(x.column(i))));
      max_single = std::max(max_single, one.value);
      sum_single += one.upper_bound;
    }
    record("sandwich-lower", trial, max_single, base.upper_bound);
    record("sandwich-upper", trial, base.value, sum_single);

    if (kind == EngineKind::dual_multi) {
      const auto& d = std::get<Decomposition>(base.certificate);
      Decomposition perm, scaled, padded;
      for (const auto& term : d.terms) {
        VectorXd pa(n);
        for (Index i = 0; i < n; ++i) pa(i) = term.alpha(order[static_cast<std::size_t>(i)]);
        perm.terms.push_back({pa, term.y.permuted(order), 0.0});
        scaled.terms.push_back({alpha.cwiseProduct(term.alpha), term.y, 0.0});
        VectorXd za(n + 1);
        za << term.alpha, 0.0;
        padded.terms.push_back({za, term.y.with_column(VectorXd::Zero(x.m())), 0.0});
      }
      transfer("A1-transfer", trial, perm, xp.columns(), base.upper_bound);
      transfer("A2-transfer", trial, scaled, xa.columns(), base.upper_bound);
      transfer("A3-transfer", trial, padded, x0.columns(), base.upper_bound);

      // Merge the duplicated pair: gamma = |(a_n, a_{n+1})|_s, y'_n = (a_n y_n + a_{n+1} y_{n+1}) / gamma.
      const auto& dd = std::get<Decomposition>(dup.certificate);
      Decomposition merged;
      for (const auto& term : dd.terms) {
        const double g = lp_norm(term.alpha.tail(2), s);
        VectorXd a2 = term.alpha.head(n);
        MatrixXd y2 = term.y.columns().leftCols(n);
        a2(n - 1) = g;
        y2.col(n - 1) = g > 0.0 ? VectorXd((term.alpha(n - 1) * term.y.column(n - 1) +
                                            term.alpha(n) * term.y.column(n)) / g)
                                : VectorXd::Zero(x.m());
        merged.terms.push_back({a2, MultiVector(space, y2), 0.0});
      }
      transfer("B4-transfer", trial, merged, double_last(x.columns()), dup.upper_bound);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

bool ordering_applies(const PQ& first, const PQ& second) {
  const auto& [p1, q1] = first;
  const auto& [p2, q2] = second;
  const double lhs = p2.reciprocal() - q2.reciprocal();
  const double rhs = p1.reciprocal() - q1.reciprocal();
  return q2 <= q1 && lhs <= rhs + 1e-15;
}

OrderingReport ordering_check(const std::vector<MultiVector>& samples, const PQ& first, const PQ& second,
                              const Exponent& r, const WeakOptions& options, double tol) {
  OrderingReport rep;
  OrderingLink link{first, second, {}, {}, true};
  if (!ordering_applies(first, second)) {
    rep.applicable = false;
    rep.links.push_back(link);
    return rep;
  }
  for (const auto& x : samples) {
    const double a = weak_pq(x, first.first, first.second, r, options).value;
    const double b = weak_pq(x, second.first, second.second, r, options).upper_bound;
    link.lhs.push_back(a);
    link.rhs.push_back(b);
    link.ok = link.ok && a <= b + tol * (1.0 + b);
  }
  rep.ok = link.ok;
  rep.links.push_back(link);
  return rep;
}

OrderingReport ordering_chain(const std::vector<MultiVector>& samples, const std::vector<PQ>& chain,
                              const Exponent& r, const WeakOptions& options, double tol) {
  OrderingReport rep;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    OrderingReport one = ordering_check(samples, chain[i], chain[i + 1], r, options, tol);
    rep.applicable = rep.applicable && one.applicable;
    rep.ok = rep.ok && one.ok && one.applicable;
    rep.links.push_back(one.links.front());
  }
  return rep;
}

std::vector<std::vector<PQ>> standard_chains(const Exponent& p, const Exponent& q) {
  const Exponent one = Exponent::one();
  return {{{one, q}, {p, q}, {q, q}}, {{q, q}, {p, p}, {one, one}}};
}

}  // namespace mnorm
