#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "mnorm/exponent.hpp"

namespace mnorm {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Unweighted l^p norm of a dense expression (all coefficients).
template <typename Derived>
double lp_norm(const Eigen::MatrixBase<Derived>& v, const Exponent& p) {
  if (v.size() == 0) return 0.0;
  if (p.is_inf()) return v.cwiseAbs().maxCoeff();
  if (p.is_one()) return v.cwiseAbs().sum();
  if (p.value() == 2.0) return v.norm();
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  const double e = p.value();
  double acc = 0.0;
  for (Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v(i)) / scale, e);
  return scale * std::pow(acc, 1.0 / e);
}

/// Weighted norm (sum_k w_k |f_k|^p)^(1/p); p = inf ignores the weights.
template <typename Derived, typename WeightDerived>
double lp_norm(const Eigen::MatrixBase<Derived>& f, const Eigen::MatrixBase<WeightDerived>& w,
               const Exponent& p) {
  if (f.size() == 0) return 0.0;
  if (p.is_inf()) return f.cwiseAbs().maxCoeff();
  if (p.is_one()) return w.cwiseProduct(f.cwiseAbs()).sum();
  const double scale = f.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  const double e = p.value();
  double acc = 0.0;
  for (Index k = 0; k < f.size(); ++k) acc += w(k) * std::pow(std::abs(f(k)) / scale, e);
  return scale * std::pow(acc, 1.0 / e);
}

/// Duality map of l^p: a vector d with <d, v> = ||v||_p and ||d||_{p'} = 1.
VectorXd duality_map(const Eigen::Ref<const VectorXd>& v, const Exponent& p);

/// A finite measure space: ordered atoms with positive weights.
class DiscreteSpace {
 public:
  /// Throws std::invalid_argument on empty, duplicate labels or non-positive weights.
  DiscreteSpace(std::vector<std::string> points, VectorXd weights);

  /// n atoms labelled "0".."n-1" with unit weights.
  static std::shared_ptr<const DiscreteSpace> counting(Index n);
  static std::shared_ptr<const DiscreteSpace> make(std::vector<std::string> points, VectorXd weights);

  Index size() const { return static_cast<Index>(points_.size()); }
  const std::vector<std::string>& points() const { return points_; }
  const VectorXd& weights() const { return weights_; }
  bool unit_weights() const { return (weights_.array() == 1.0).all(); }

  /// w^(1/p) per atom (all ones when p = inf).
  VectorXd weight_power(const Exponent& p) const;

  friend bool operator==(const DiscreteSpace& a, const DiscreteSpace& b) {
    return a.points_ == b.points_ && a.weights_ == b.weights_;
  }

 private:
  std::vector<std::string> points_;
  VectorXd weights_;
};

using SpacePtr = std::shared_ptr<const DiscreteSpace>;

/// A real function on a DiscreteSpace.
struct Vector {
  SpacePtr space;
  VectorXd values;

  Vector(SpacePtr s, VectorXd v);
};

/// An n-tuple of functions on one space, stored column-wise (size x n).
class MultiVector {
 public:
  MultiVector(SpacePtr space, MatrixXd columns);
  MultiVector(SpacePtr space, const std::vector<VectorXd>& columns);

  const SpacePtr& space() const { return space_; }
  const MatrixXd& columns() const { return columns_; }
  Index n() const { return columns_.cols(); }
  Index m() const { return columns_.rows(); }
  auto column(Index i) const { return columns_.col(i); }
  Vector vector(Index i) const { return Vector(space_, columns_.col(i)); }

  /// Tuple with column i removed / appended / permuted.
  MultiVector with_column(const Eigen::Ref<const VectorXd>& v) const;
  MultiVector permuted(const std::vector<Index>& order) const;

 private:
  SpacePtr space_;
  MatrixXd columns_;
};

/// Weighted pairing <f, g> = sum_k w_k f(k) g(k).
double pairing(const DiscreteSpace& space, const Eigen::Ref<const VectorXd>& f,
               const Eigen::Ref<const VectorXd>& g);

double lp_norm(const Vector& f, const Exponent& p);

/// M_alpha(x) = (alpha_1 x_1, ..., alpha_n x_n).
MultiVector scale_by(const Eigen::Ref<const VectorXd>& alpha, const MultiVector& x);

}  // namespace mnorm
