#include "mnorm/dual.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "mnorm/weaksum.hpp"

namespace mnorm {
namespace {

// Exponent tau with 1/tau = 1/s + max(0, 1/r - 1/a'): the cost of a piece with
// disjointly supported coordinates of norms c is at most |c|_tau.
Exponent piece_exponent(const Exponent& r, const Exponent& s, const Exponent& a) {
  const double inv = s.reciprocal() + std::max(0.0, r.reciprocal() - a.conjugate().reciprocal());
  return inv == 0.0 ? Exponent::infinity() : Exponent(1.0 / inv);
}

// Holder-optimal scaling of a disjoint piece z with coordinate norms c.
Decomposition::Term split_piece(const SpacePtr& space, const MatrixXd& z, const VectorXd& c, const Exponent& s,
                                const Exponent& tau) {
  const Index n = z.cols();
  VectorXd alpha = VectorXd::Zero(n);
  MatrixXd y = MatrixXd::Zero(z.rows(), n);
  for (Index i = 0; i < n; ++i) {
    if (c(i) == 0.0) continue;
    alpha(i) = s.is_inf() ? 1.0 : std::pow(c(i), tau.value() / s.value());
    y.col(i) = z.col(i) / alpha(i);
  }
  return Decomposition::Term{alpha, MultiVector(space, y), 0.0};
}

std::vector<std::vector<int>> partition_family(const MatrixXd& X, std::size_t cap, std::uint64_t seed) {
  const Index m = X.rows();
  const int n = static_cast<int>(X.cols());
  std::vector<std::vector<int>> family;
  const double count = std::pow(static_cast<double>(n), static_cast<double>(m));
  if (count <= static_cast<double>(cap)) {
    std::vector<int> a(static_cast<std::size_t>(m), 0);
    while (true) {
      family.push_back(a);
      Index k = 0;
      while (k < m && ++a[static_cast<std::size_t>(k)] == n) a[static_cast<std::size_t>(k++)] = 0;
      if (k == m) break;
    }
    return family;
  }
  // Constant partitions keep every (point, coordinate) pair covered.
  for (int i = 0; i < n; ++i) family.emplace_back(static_cast<std::size_t>(m), i);
  std::vector<int> top(static_cast<std::size_t>(m));
  for (Index k = 0; k < m; ++k) {
    Index arg = 0;
    X.row(k).cwiseAbs().maxCoeff(&arg);
    top[static_cast<std::size_t>(k)] = static_cast<int>(arg);
  }
  family.push_back(top);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  while (family.size() < cap) {
    std::vector<int> a(static_cast<std::size_t>(m));
    for (auto& d : a) d = pick(rng);
    family.push_back(a);
  }
  return family;
}

}  // namespace

double decomposition_cost(Decomposition& d, const Exponent& r, const Exponent& s, const Exponent& a,
                          const MatrixNormOptions& options) {
  double cost = 0.0;
  for (auto& t : d.terms) {
    t.mu_upper = t.y.columns().isZero(0.0) ? 0.0 : mu(r, t.y, a, options).upper_bound;
    cost += lp_norm(t.alpha, s) * t.mu_upper;
  }
  return cost;
}

NormResult dual_multinorm_upper(const MultiVector& x, const Exponent& r, const Exponent& s, const Exponent& a,
                                const DualOptions& options) {
  if (r.is_inf()) throw std::invalid_argument("dual multi-norm: r must be finite");
  if (s.is_one()) throw std::invalid_argument("dual multi-norm: requires s > 1");
  if (s > r.conjugate()) throw std::invalid_argument("dual multi-norm: requires s <= r'");
  const auto& space = x.space();
  const VectorXd& w = space->weights();
  const MatrixXd& X = x.columns();
  const Index m = x.m();
  const Index n = x.n();

  NormResult out;
  out.method = Method::decomposition_search;
  for (Index i = 0; i < n; ++i) out.value = std::max(out.value, lp_norm(X.col(i), w, a));

  Decomposition best;
  best.terms.push_back({VectorXd::Ones(n), x, 0.0});
  double best_cost = decomposition_cost(best, r, s, a, options.mu);
  auto offer = [&](Decomposition d) {
    const double c = decomposition_cost(d, r, s, a, options.mu);
    if (c < best_cost) {
      best_cost = c;
      best = std::move(d);
    }
  };

  if (n > 1 && !X.isZero(0.0)) {
    Decomposition coords;
    for (Index i = 0; i < n; ++i) {
      if (X.col(i).isZero(0.0)) continue;
      MatrixXd y = MatrixXd::Zero(m, n);
      y.col(i) = X.col(i);
      coords.terms.push_back({VectorXd::Unit(n, i), MultiVector(space, y), 0.0});
    }
    offer(std::move(coords));

    // Disjoint pieces: piece j keeps x_{k, X_j(k)} scaled by theta(j, k).
    const auto family = partition_family(X, options.max_partitions, options.seed);
    const Index P = static_cast<Index>(family.size());
    const Exponent tau = piece_exponent(r, s, a);
    MatrixXd theta(P, m);
    MatrixXd group_count = MatrixXd::Zero(m, n);
    for (Index j = 0; j < P; ++j)
      for (Index k = 0; k < m; ++k) group_count(k, family[j][k]) += 1.0;
    for (Index j = 0; j < P; ++j)
      for (Index k = 0; k < m; ++k) theta(j, k) = 1.0 / group_count(k, family[j][k]);

    auto piece_matrix = [&](const MatrixXd& th, Index j) {
      MatrixXd z = MatrixXd::Zero(m, n);
      for (Index k = 0; k < m; ++k) z(k, family[j][k]) = th(j, k) * X(k, family[j][k]);
      return z;
    };
    auto piece_norms = [&](const MatrixXd& z) {
      VectorXd c(n);
      for (Index i = 0; i < n; ++i) c(i) = lp_norm(z.col(i), w, a);
      return c;
    };
    auto surrogate = [&](const MatrixXd& th) {
      double acc = 0.0;
      for (Index j = 0; j < P; ++j) acc += lp_norm(piece_norms(piece_matrix(th, j)), tau);
      return acc;
    };
    auto realize = [&](MatrixXd th) {
      // Drop negligible shares so the decomposition stays small, then renormalize.
      th = (th.array() < 1e-7).select(0.0, th);
      MatrixXd sums = MatrixXd::Zero(m, n);
      for (Index j = 0; j < P; ++j)
        for (Index k = 0; k < m; ++k) sums(k, family[j][k]) += th(j, k);
      for (Index j = 0; j < P; ++j)
        for (Index k = 0; k < m; ++k) {
          const double g = sums(k, family[j][k]);
          th(j, k) = g > 0.0 ? th(j, k) / g : 1.0 / group_count(k, family[j][k]);
        }
      Decomposition d;
      for (Index j = 0; j < P; ++j) {
        const MatrixXd z = piece_matrix(th, j);
        if (z.isZero(0.0)) continue;
        d.terms.push_back(split_piece(space, z, piece_norms(z), s, tau));
      }
      return d;
    };

    MatrixXd best_theta = theta;
    double best_surrogate = surrogate(theta);
    const int checkpoints = 4;
    for (int t = 0; t < options.budget; ++t) {
      MatrixXd grad = MatrixXd::Zero(P, m);
      for (Index j = 0; j < P; ++j) {
        const MatrixXd z = piece_matrix(theta, j);
        const VectorXd c = piece_norms(z);
        const VectorXd dc = duality_map(c, tau);
        for (Index i = 0; i < n; ++i) {
          if (c(i) == 0.0 || dc(i) == 0.0) continue;
          const VectorXd col = z.col(i).cwiseAbs();
          if (a.is_inf()) {
            Index arg = 0;
            col.maxCoeff(&arg);
            grad(j, arg) += dc(i) * std::abs(X(arg, i));
          } else {
            for (Index k = 0; k < m; ++k) {
              if (family[j][k] != i || col(k) == 0.0) continue;
              const double dk = a.is_one() ? w(k) : w(k) * std::pow(col(k) / c(i), a.value() - 1.0);
              grad(j, k) += dc(i) * dk * std::abs(X(k, i));
            }
          }
        }
      }
      const double gmax = grad.cwiseAbs().maxCoeff();
      if (gmax == 0.0) break;
      const double eta = 2.0 / std::sqrt(static_cast<double>(t) + 1.0);
      theta = theta.cwiseProduct((-eta * grad / gmax).array().exp().matrix());
      MatrixXd sums = MatrixXd::Zero(m, n);
      for (Index j = 0; j < P; ++j)
        for (Index k = 0; k < m; ++k) sums(k, family[j][k]) += theta(j, k);
      for (Index j = 0; j < P; ++j)
        for (Index k = 0; k < m; ++k) theta(j, k) /= sums(k, family[j][k]);
      const double sv = surrogate(theta);
      if (sv < best_surrogate) {
        best_surrogate = sv;
        best_theta = theta;
      }
      if ((t + 1) % std::max(1, options.budget / checkpoints) == 0) offer(realize(theta));
    }
    offer(realize(best_theta));
  }

  out.upper_bound = std::max(best_cost, out.value);
  out.certificate = std::move(best);
  return out;
}

}  // namespace mnorm
