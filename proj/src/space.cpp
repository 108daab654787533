#include "mnorm/space.hpp"

#include <set>
#include <stdexcept>

namespace mnorm {

VectorXd duality_map(const Eigen::Ref<const VectorXd>& v, const Exponent& p) {
  VectorXd d = VectorXd::Zero(v.size());
  const double nv = lp_norm(v, p);
  if (nv == 0.0) return d;
  if (p.is_one()) {
    for (Index i = 0; i < v.size(); ++i) d(i) = v(i) > 0 ? 1.0 : (v(i) < 0 ? -1.0 : 0.0);
    return d;
  }
  if (p.is_inf()) {
    Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    d(arg) = v(arg) > 0 ? 1.0 : -1.0;
    return d;
  }
  const double e = p.value();
  for (Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i)) / nv;
    d(i) = (v(i) < 0 ? -1.0 : 1.0) * std::pow(a, e - 1.0);
  }
  return d;
}

DiscreteSpace::DiscreteSpace(std::vector<std::string> points, VectorXd weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty()) throw std::invalid_argument("space must have at least one point");
  if (static_cast<Index>(points_.size()) != weights_.size()) {
    throw std::invalid_argument("points and weights differ in length");
  }
  std::set<std::string> seen(points_.begin(), points_.end());
  if (seen.size() != points_.size()) throw std::invalid_argument("duplicate point identifiers");
  for (Index k = 0; k < weights_.size(); ++k) {
    if (!(weights_(k) > 0.0) || !std::isfinite(weights_(k))) {
      throw std::invalid_argument("weights must be positive and finite");
    }
  }
}

std::shared_ptr<const DiscreteSpace> DiscreteSpace::counting(Index n) {
  std::vector<std::string> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) pts.push_back(std::to_string(k));
  return std::make_shared<const DiscreteSpace>(std::move(pts), VectorXd::Ones(n));
}

std::shared_ptr<const DiscreteSpace> DiscreteSpace::make(std::vector<std::string> points,
                                                         VectorXd weights) {
  return std::make_shared<const DiscreteSpace>(std::move(points), std::move(weights));
}

VectorXd DiscreteSpace::weight_power(const Exponent& p) const {
  if (p.is_inf()) return VectorXd::Ones(size());
  if (p.is_one()) return weights_;
  return weights_.array().pow(p.reciprocal()).matrix();
}

Vector::Vector(SpacePtr s, VectorXd v) : space(std::move(s)), values(std::move(v)) {
  if (!space) throw std::invalid_argument("vector without space");
  if (values.size() != space->size()) throw std::invalid_argument("vector length differs from space size");
}

MultiVector::MultiVector(SpacePtr space, MatrixXd columns)
    : space_(std::move(space)), columns_(std::move(columns)) {
  if (!space_) throw std::invalid_argument("multivector without space");
  if (columns_.rows() != space_->size()) {
    throw std::invalid_argument("multivector column length differs from space size");
  }
  if (columns_.cols() < 1) throw std::invalid_argument("multivector needs n >= 1");
}

MultiVector::MultiVector(SpacePtr space, const std::vector<VectorXd>& columns)
    : MultiVector(space, [&] {
        if (!space) throw std::invalid_argument("multivector without space");
        MatrixXd m(space->size(), static_cast<Index>(columns.size()));
        for (std::size_t i = 0; i < columns.size(); ++i) {
          if (columns[i].size() != space->size()) {
            throw std::invalid_argument("multivector column length differs from space size");
          }
          m.col(static_cast<Index>(i)) = columns[i];
        }
        return m;
      }()) {}

MultiVector MultiVector::with_column(const Eigen::Ref<const VectorXd>& v) const {
  MatrixXd c(m(), n() + 1);
  c.leftCols(n()) = columns_;
  c.col(n()) = v;
  return MultiVector(space_, std::move(c));
}

MultiVector MultiVector::permuted(const std::vector<Index>& order) const {
  if (static_cast<Index>(order.size()) != n()) throw std::invalid_argument("permutation size mismatch");
  MatrixXd c(m(), n());
  for (Index i = 0; i < n(); ++i) c.col(i) = columns_.col(order[static_cast<std::size_t>(i)]);
  return MultiVector(space_, std::move(c));
}

double pairing(const DiscreteSpace& space, const Eigen::Ref<const VectorXd>& f,
               const Eigen::Ref<const VectorXd>& g) {
  return (space.weights().array() * f.array() * g.array()).sum();
}

double lp_norm(const Vector& f, const Exponent& p) { return lp_norm(f.values, f.space->weights(), p); }

MultiVector scale_by(const Eigen::Ref<const VectorXd>& alpha, const MultiVector& x) {
  if (alpha.size() != x.n()) throw std::invalid_argument("scale_by: alpha length differs from n");
  return MultiVector(x.space(), x.columns() * alpha.asDiagonal());
}

}  // namespace mnorm
