#pragma once

#include "mnorm/matrix_norm.hpp"
#include "mnorm/norm_result.hpp"

namespace mnorm {

struct MuResult {
  double value = 0.0;
  double upper_bound = 0.0;
  VectorXd witness;  ///< lambda on x.space(), in the unit ball of L^{r'}(w)
  Method method = Method::closed_form;
  VectorXd alpha;  ///< unit vector of l^{p'} attaining |sum alpha_i x_i|_r
};

/// Weighted column matrix diag(w^{1/r}) X, so mu_{p,n}(x) on L^r(w) is its
/// l^{p'} -> l^r norm.
MatrixXd weighted_columns(const MultiVector& x, const Exponent& r);

/// Weak p-summing norm mu_{p,n}(x) for x in L^r(w)^n. Throws for p = inf.
MuResult mu(const Exponent& p, const MultiVector& x, const Exponent& r,
            const MatrixNormOptions& options = {});

/// (sum_i |<x_i, lambda>|^p)^{1/p}.
double mu_objective(const Exponent& p, const MultiVector& x, const Eigen::Ref<const VectorXd>& lambda);

/// max over points of sum_i |lambda_i(k)|: mu_{1,n} in a sup-normed space.
double mu_pointwise_sup(const MultiVector& lambda);

struct HolderReport {
  double lhs_lower = 0.0;
  double lhs_upper = 0.0;
  double rhs_lower = 0.0;  ///< |alpha|_{pu} mu_{pv}(x) from certified values
  double rhs_upper = 0.0;
  bool holds = false;
};

/// mu_p(M_alpha x) <= |alpha|_{pu} mu_{pv}(x) for conjugate u, v in (1, inf).
HolderReport holder_interpolation_check(const Exponent& p, const Exponent& u, const Exponent& v,
                                        const Eigen::Ref<const VectorXd>& alpha, const MultiVector& x,
                                        const Exponent& r, double tol = 1e-9);

}  // namespace mnorm
