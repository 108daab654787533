#include "mnorm/operators.hpp"

#include <random>
#include <stdexcept>

namespace mnorm {

LinOp::LinOp(MatrixXd m, SpacePtr dom, Exponent r_, SpacePtr cod, Exponent t_)
    : matrix(std::move(m)), domain(std::move(dom)), r(r_), codomain(std::move(cod)), t(t_) {
  if (!domain || !codomain) throw std::invalid_argument("operator without spaces");
  if (matrix.rows() != codomain->size() || matrix.cols() != domain->size()) {
    throw std::invalid_argument("operator matrix shape differs from its spaces");
  }
}

MultiVector LinOp::apply(const MultiVector& x) const {
  if (x.m() != domain->size()) throw std::invalid_argument("operator applied to a tuple on another space");
  return MultiVector(codomain, matrix * x.columns());
}

LinOp rank_one(const Vector& x, const Vector& lambda, const Exponent& r, const Exponent& t) {
  const VectorXd wl = lambda.space->weights().cwiseProduct(lambda.values);
  return LinOp(x.values * wl.transpose(), lambda.space, r, x.space, t);
}

namespace {

MatrixXd weighted(const LinOp& T) {
  return T.codomain->weight_power(T.t).asDiagonal() * T.matrix * T.domain->weight_power(T.r).cwiseInverse().asDiagonal();
}

}  // namespace

NormResult op_norm(const LinOp& T, const MatrixNormOptions& options) {
  const MatrixNormResult mn = matrix_norm(weighted(T), T.r, T.t, options);
  NormResult out;
  out.value = mn.lower;
  out.upper_bound = std::max(mn.upper, mn.lower);
  out.method = mn.closed_form ? Method::closed_form : (mn.exact ? Method::brute_extreme : Method::branch_and_bound);
  return out;
}

OperatorEngines weak_operator_engines(const LinOp& T, const Exponent& p, const Exponent& q,
                                      const WeakOptions& options) {
  return {weak_engine(p, q, T.r, options), weak_engine(p, q, T.t, options), PQ{p, q}};
}

AmplificationResult amplification_norm(const LinOp& T, Index k, const OperatorEngines& engines,
                                       const AmplificationOptions& options) {
  if (k < 1) throw std::invalid_argument("amplification needs k >= 1");
  const Index m = T.domain->size();
  const NormResult op = op_norm(T, options.op);

  auto padded = [&](const MatrixXd& cols) {
    MatrixXd x = MatrixXd::Zero(m, k);
    x.leftCols(std::min(k, cols.cols())) = cols.leftCols(std::min(k, cols.cols()));
    return x;
  };
  auto ratio = [&](const MatrixXd& x) {
    const MultiVector mx(T.domain, x);
    const double den = engines.domain(mx).upper_bound;
    if (!(den > 0.0)) return 0.0;
    return engines.codomain(T.apply(mx)).value / den;
  };

  std::vector<MatrixXd> cands;
  {
    const MatrixNormResult mn = matrix_norm(weighted(T), T.r, T.t, options.op);
    cands.push_back(padded(T.domain->weight_power(T.r).cwiseInverse().cwiseProduct(mn.argmax)));
  }
  for (const auto& s : options.seeds) cands.push_back(padded(s.columns()));
  std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(k));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < options.random_starts; ++i) {
    MatrixXd x(m, k);
    for (Index a = 0; a < m; ++a)
      for (Index b = 0; b < k; ++b) x(a, b) = normal(rng);
    cands.push_back(x);
  }

  MatrixXd best = cands.front();
  double best_ratio = -1.0;
  for (const auto& c : cands) {
    const double v = ratio(c);
    if (v > best_ratio) {
      best_ratio = v;
      best = c;
    }
  }
  double step = 0.3;
  for (int it = 0; it < options.local_steps; ++it) {
    MatrixXd trial = best;
    for (Index a = 0; a < m; ++a)
      for (Index b = 0; b < k; ++b) trial(a, b) += step * best.norm() / std::sqrt(double(m * k)) * normal(rng);
    const double v = ratio(trial);
    if (v > best_ratio) {
      best_ratio = v;
      best = trial;
    } else {
      step *= 0.5;
    }
  }

  AmplificationResult out{NormResult{}, MultiVector(T.domain, best)};
  out.result.value = std::max(best_ratio, 0.0);
  out.result.upper_bound = engines.weak ? op.upper_bound : static_cast<double>(k) * op.upper_bound;
  out.result.method = k == 1 && engines.weak ? op.method : Method::sampled;
  return out;
}

MbNormResult mb_norm(const LinOp& T, Index k_max, const OperatorEngines& engines,
                     const AmplificationOptions& options, double tol) {
  if (k_max < 1) throw std::invalid_argument("mb_norm needs k_max >= 1");
  MbNormResult out;
  out.op = op_norm(T, options.op);
  AmplificationOptions opts = options;
  for (Index k = 1; k <= k_max; ++k) {
    const AmplificationResult a = amplification_norm(T, k, engines, opts);
    if (!out.by_k.empty()) {
      const double prev = out.by_k.back().value;
      if (a.result.value < prev - tol * std::max(1.0, prev)) out.monotone = false;
    }
    out.by_k.push_back(a.result);
    opts.seeds.push_back(a.argmax);
    out.result.value = std::max(out.result.value, a.result.value);
    out.result.upper_bound = std::max(out.result.upper_bound, a.result.upper_bound);
  }
  out.result.method = Method::sampled;
  if (engines.weak) {
    out.contract_checked = true;
    const double slack = tol * std::max(1.0, out.op.upper_bound);
    out.contract_ok = out.result.value >= out.op.value - slack && out.result.value <= out.op.upper_bound + slack;
  }
  return out;
}

MbSetResult mb_set_constant(const std::vector<Vector>& B, const Engine& engine, Index n_max, double tol) {
  MbSetResult out;
  if (B.empty()) return out;
  const SpacePtr& space = B.front().space;
  const Index b = static_cast<Index>(B.size());
  auto eval = [&](const std::vector<Index>& idx) {
    MatrixXd x(space->size(), static_cast<Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) x.col(static_cast<Index>(i)) = B[static_cast<std::size_t>(idx[i])].values;
    return engine(MultiVector(space, std::move(x)));
  };
  double sub_upper = 0.0;
  for (Index n = 1; n <= n_max; ++n) {
    std::vector<Index> idx(static_cast<std::size_t>(n), 0);
    while (true) {
      const NormResult r = eval(idx);
      out.value = std::max(out.value, r.value);
      out.upper = std::max(out.upper, r.upper_bound);
      bool distinct = true;
      for (std::size_t i = 1; i < idx.size(); ++i) distinct = distinct && idx[i - 1] < idx[i];
      if (distinct) {
        out.by_subsets = std::max(out.by_subsets, r.value);
        sub_upper = std::max(sub_upper, r.upper_bound);
      }
      std::size_t j = 0;
      while (j < idx.size() && ++idx[j] == b) idx[j++] = 0;
      if (j == idx.size()) break;
    }
  }
  const double slack = tol * std::max(1.0, out.upper);
  out.agree = out.value <= sub_upper + slack && out.by_subsets <= out.upper + slack;
  return out;
}

}  // namespace mnorm
