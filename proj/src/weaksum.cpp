#include "mnorm/weaksum.hpp"

#include <stdexcept>

namespace mnorm {

MatrixXd weighted_columns(const MultiVector& x, const Exponent& r) {
  return x.space()->weight_power(r).asDiagonal() * x.columns();
}

double mu_objective(const Exponent& p, const MultiVector& x, const Eigen::Ref<const VectorXd>& lambda) {
  const VectorXd c = x.columns().transpose() * x.space()->weights().cwiseProduct(lambda);
  return lp_norm(c, p);
}

MuResult mu(const Exponent& p, const MultiVector& x, const Exponent& r, const MatrixNormOptions& options) {
  if (p.is_inf()) throw std::invalid_argument("mu: p = inf is not defined");
  const auto& space = *x.space();
  const Exponent rc = r.conjugate();
  const MatrixXd B = weighted_columns(x, r);
  const MatrixNormResult mn = matrix_norm(B, p.conjugate(), r, options);

  MuResult out;
  out.alpha = mn.argmax;
  const VectorXd nu = duality_map(B * mn.argmax, r);
  VectorXd lambda = nu.cwiseQuotient(space.weight_power(rc));
  const double ln = lp_norm(lambda, space.weights(), rc);
  if (ln > 1.0) lambda /= ln;
  out.witness = lambda;
  out.value = mu_objective(p, x, lambda);

  // Triangle inequality bound (sum_i |x_i|^p)^{1/p}.
  VectorXd norms(x.n());
  for (Index i = 0; i < x.n(); ++i) norms(i) = lp_norm(x.column(i), space.weights(), r);
  out.upper_bound = std::max(out.value, std::min(mn.upper, lp_norm(norms, p)));

  if (r.is_inf() || mn.closed_form) {
    out.method = Method::closed_form;
  } else if (mn.exact) {
    out.method = Method::brute_extreme;
  } else {
    out.method = Method::optimizer;
  }
  return out;
}

double mu_pointwise_sup(const MultiVector& lambda) {
  return lambda.columns().cwiseAbs().rowwise().sum().maxCoeff();
}

HolderReport holder_interpolation_check(const Exponent& p, const Exponent& u, const Exponent& v,
                                        const Eigen::Ref<const VectorXd>& alpha, const MultiVector& x,
                                        const Exponent& r, double tol) {
  if (u.is_inf() || v.is_inf() || u.is_one() || v.is_one() ||
      std::abs(u.reciprocal() + v.reciprocal() - 1.0) > 1e-12) {
    throw std::invalid_argument("holder_interpolation_check: u, v must be conjugate and in (1, inf)");
  }
  const Exponent pu(p.value() * u.value());
  const Exponent pv(p.value() * v.value());
  const MuResult lhs = mu(p, scale_by(alpha, x), r);
  const MuResult rhs = mu(pv, x, r);
  const double a = lp_norm(alpha, pu);
  HolderReport rep;
  rep.lhs_lower = lhs.value;
  rep.lhs_upper = lhs.upper_bound;
  rep.rhs_lower = a * rhs.value;
  rep.rhs_upper = a * rhs.upper_bound;
  rep.holds = rep.lhs_lower <= rep.rhs_upper + tol;
  return rep;
}

}  // namespace mnorm
