#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mnorm/amenability.hpp"
#include "mnorm/groups.hpp"

namespace mnorm {

using GroupPtr = std::shared_ptr<const GroupModel>;

/// (f * g)(s) = sum_t f(t) g(t^-1 s).
FiniteSupportVector convolve(const GroupModel& G, const FiniteSupportVector& f, const FiniteSupportVector& g);

/// sum_t f(t).
double augmentation(const FiniteSupportVector& f);

/// Dense vectors on a finite group are indexed by element index.
VectorXd dense(const GroupModel& G, const FiniteSupportVector& f);
FiniteSupportVector sparse(const VectorXd& v);

/// (r . x)(s) = x(r^-1 s) on a finite group.
VectorXd translate(const GroupModel& G, const Element& r, const VectorXd& x);

/// An operator U: l^1(G) -> l^p(G) on a finite group, U(t,s) = U(delta_t)(s).
struct ModuleMatrix {
  GroupPtr G;
  MatrixXd U;
  Exponent p;

  ModuleMatrix(GroupPtr g, MatrixXd u, Exponent p_);
  /// max_t |U(t, .)|_p, exact for an l^1 domain.
  double norm() const;
};

/// (r * U)(t,s) = U(r^-1 t, r^-1 s).
ModuleMatrix star_action(const Element& r, const ModuleMatrix& U);
/// (b . U)(a) = U(a * b), so (delta_r . U)(t,s) = U(tr, s).
ModuleMatrix left_action(const FiniteSupportVector& b, const ModuleMatrix& U);

/// Pi(x)(t,s) = x(t^-1 s).
ModuleMatrix Pi(const GroupPtr& G, const VectorXd& x, const Exponent& p);
/// PiTilde(x)(t,s) = x(s).
ModuleMatrix PiTilde(const GroupPtr& G, const VectorXd& x, const Exponent& p);
/// Q(U)(t,s) = U(t^-1, t^-1 s).
ModuleMatrix Q_map(const ModuleMatrix& U);

/// A linear map R from module matrices to l^p(G): R(U)(s0) = sum rho[s0] .* U.
struct Retraction {
  GroupPtr G;
  Exponent p;
  std::vector<MatrixXd> rho;
  double norm_lower = 0.0;  ///< from witness matrices
  double norm_upper = 0.0;  ///< C_{p,p} of the inducing mean, +inf if unknown

  VectorXd apply(const ModuleMatrix& U) const;
};

/// R(U)(s) = sum_t (s . Lambda)(t) U(t,s). The norm interval comes from the
/// weak (p,p) norm of the translates of Lambda: its witness gives the lower
/// end and its upper bound the upper end.
Retraction retraction_from_mean(const GroupPtr& G, const FiniteSupportVector& Lambda, const Exponent& p,
                                const WeakOptions& options = {});

/// Lambda(t) = R(delta_e (x) delta_t)(e).
FiniteSupportVector mean_from_retraction(const Retraction& R);

/// chi_V U: keeps the output coordinates s in V.
ModuleMatrix mask_output(const ModuleMatrix& U, const std::vector<char>& in_V);

struct SignLemmaReport {
  double diagonal = 0.0;  ///< (sum_j |F(j,j)|^p)^(1/p)
  double C = 0.0;         ///< max over sign vectors d of (sum_j |sum_i d_i F(i,j)|^p)^(1/p)
  bool holds = false;
};

/// F[i][j] in l^p(w); exhaustive over the 2^n sign vectors, n <= 12.
SignLemmaReport sign_lemma_check(const std::vector<std::vector<VectorXd>>& F, const Exponent& p,
                                 const VectorXd& weights = {});

struct DiagonalReport {
  double lhs = 0.0;  ///< (sum_i |chi_{X_i} R(chi_{Y_i} U)|_p^p)^(1/p)
  double rhs = 0.0;  ///< |R|_upper |U|
  bool holds = false;
};

/// X and Y assign each element index to a block 0..n-1.
DiagonalReport diagonal_inequality_check(const Retraction& R, const ModuleMatrix& U, const std::vector<int>& X,
                                         const std::vector<int>& Y, double tol = 1e-12);
/// The singleton case: (sum_s |R(chi_{s} U)(s)|^p)^(1/p).
DiagonalReport singleton_diagonal_check(const Retraction& R, const ModuleMatrix& U, double tol = 1e-12);

struct TestOperatorReport {
  ModuleMatrix T;
  double norm = 0.0;
  double bound = 0.0;  ///< |U| max_i |f_i|_{p'} |x_i|_p
  bool holds = false;
};

/// T = sum_i x_i (x) U'(f_i), i.e. T(t,s) = sum_i <U(delta_t), f_i> x_i(s).
/// Throws if the x_i or the f_i overlap in support.
TestOperatorReport disjoint_test_operator(const std::vector<VectorXd>& xs, const std::vector<VectorXd>& fs,
                                          const ModuleMatrix& U);

struct ModuleVerifyReport {
  std::vector<std::pair<std::string, double>> residuals;  ///< max residual per identity
  double norm_lower = 0.0;
  double norm_upper = 0.0;
  double mean_constant = 0.0;  ///< C_{p,p} of the recovered mean (certified value)
  bool inequalities_hold = true;
  bool ok = true;
};

/// Runs the identity suite with the uniform mean on a finite group.
ModuleVerifyReport module_verify(const GroupPtr& G, const Exponent& p, std::uint64_t seed = 1, int samples = 50,
                                 double tol = 1e-12);

}  // namespace mnorm
