#pragma once

// Independent brute-force references used only by the tests.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "mnorm/space.hpp"

namespace oracle {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

inline double pnorm(const VectorXd& v, double p) {
  if (std::isinf(p)) return v.cwiseAbs().maxCoeff();
  double s = 0.0;
  for (Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v(i)), p);
  return std::pow(s, 1.0 / p);
}

inline double wnorm(const VectorXd& v, const VectorXd& w, double p) {
  if (std::isinf(p)) return v.cwiseAbs().maxCoeff();
  double s = 0.0;
  for (Index i = 0; i < v.size(); ++i) s += w(i) * std::pow(std::abs(v(i)), p);
  return std::pow(s, 1.0 / p);
}

inline double conj(double p) {
  if (p == 1.0) return INFINITY;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

// Max of f over the unit sphere of the norm `nrm` in R^dim, sampled on a grid
// of the cube surface and rescaled onto the sphere.
inline double grid_sup(const std::function<double(const VectorXd&)>& f,
                       const std::function<double(const VectorXd&)>& nrm, int dim, int per_axis) {
  double best = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  VectorXd u(dim);
  for (int face = 0; face < dim; ++face) {
    const long total = static_cast<long>(std::pow(per_axis + 1, dim - 1));
    for (long code = 0; code < total; ++code) {
      long c = code;
      for (int j = 0; j < dim; ++j) {
        if (j == face) {
          u(j) = 1.0;
          continue;
        }
        u(j) = -1.0 + 2.0 * static_cast<double>(c % (per_axis + 1)) / per_axis;
        c /= (per_axis + 1);
      }
      best = std::max(best, f(u / nrm(u)));
    }
  }
  return best;
}

// sup over assignments of points to blocks of (sum_i s_i^{q/p})^{1/q} with
// s_i = sum_{k in X_i} w_k |F(k,i)|^p.
inline double brute_partition(const MatrixXd& F, const VectorXd& w, double p, double q) {
  const Index m = F.rows();
  const Index n = F.cols();
  std::vector<int> a(static_cast<std::size_t>(m), 0);
  double best = 0.0;
  while (true) {
    VectorXd s = VectorXd::Zero(n);
    for (Index k = 0; k < m; ++k) {
      const int i = a[static_cast<std::size_t>(k)];
      s(i) += w(k) * std::pow(std::abs(F(k, i)), p);
    }
    double acc = 0.0;
    for (Index i = 0; i < n; ++i) acc += std::pow(s(i), q / p);
    best = std::max(best, std::pow(acc, 1.0 / q));
    Index k = 0;
    while (k < m && ++a[static_cast<std::size_t>(k)] == n) {
      a[static_cast<std::size_t>(k)] = 0;
      ++k;
    }
    if (k == m) break;
  }
  return best;
}

// Same value as brute_partition for p = 1 on nonnegative data: a point with a
// single nonzero coordinate goes to that block, only shared points are enumerated.
inline double brute_partition_shared(const MatrixXd& F, const VectorXd& w, double q) {
  const Index n = F.cols();
  VectorXd base = VectorXd::Zero(n);
  std::vector<Index> shared;
  for (Index k = 0; k < F.rows(); ++k) {
    Index nz = 0, last = 0;
    for (Index i = 0; i < n; ++i)
      if (F(k, i) != 0.0) {
        ++nz;
        last = i;
      }
    if (nz == 1) base(last) += w(k) * std::abs(F(k, last));
    if (nz > 1) shared.push_back(k);
  }
  std::vector<int> a(shared.size(), 0);
  double best = 0.0;
  while (true) {
    VectorXd s = base;
    for (std::size_t j = 0; j < shared.size(); ++j) s(a[j]) += w(shared[j]) * std::abs(F(shared[j], a[j]));
    best = std::max(best, pnorm(s, q));
    std::size_t j = 0;
    while (j < a.size() && ++a[j] == n) a[j++] = 0;
    if (j == a.size()) break;
  }
  return best;
}

inline MatrixXd random_matrix(std::mt19937_64& rng, Index m, Index n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MatrixXd a(m, n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = u(rng);
  return a;
}

inline VectorXd random_weights(std::mt19937_64& rng, Index m) {
  std::uniform_real_distribution<double> u(0.2, 2.0);
  VectorXd w(m);
  for (Index i = 0; i < m; ++i) w(i) = u(rng);
  return w;
}

inline mnorm::SpacePtr space_with(const VectorXd& w) {
  std::vector<std::string> pts;
  for (Index k = 0; k < w.size(); ++k) pts.push_back("k" + std::to_string(k));
  return mnorm::DiscreteSpace::make(pts, w);
}

}  // namespace oracle
