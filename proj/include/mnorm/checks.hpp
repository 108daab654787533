#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mnorm/dual.hpp"
#include "mnorm/multinorm.hpp"

namespace mnorm {

/// A norm sequence evaluated on n-tuples of any length.
using Engine = std::function<NormResult(const MultiVector&)>;

Engine weak_engine(const Exponent& p, const Exponent& q, const Exponent& r, const WeakOptions& options = {});
Engine standard_engine(const Exponent& p, const Exponent& q, PartitionMode mode = PartitionMode::exact);
Engine max_engine();
Engine dual_engine(const Exponent& r, const Exponent& s, const Exponent& a, const DualOptions& options = {});

// ---------------------------------------------------------------------------

struct DualitySample {
  double lower = 0.0;  ///< certified dual value sup{|<x, lambda>| : |x|^{(p,q)} <= 1}
  double upper = 0.0;  ///< dual (p,q')-multi-norm upper bound
  double rel_gap = 0.0;
  bool ok = false;
};

struct DualityReport {
  std::vector<DualitySample> samples;
  double max_rel_gap = 0.0;
  bool ok = true;
};

struct DualityOptions {
  int iterations = 2000;
  DualOptions dual;
  WeakOptions weak;
  double tol = 1e-9;
};

/// Duality sandwich for E = L^1(w), so lambda lives in E' = L^inf(w). The
/// dual value is exact for q = 1 and otherwise a certified lower bound from a
/// primal point minimizing |x|^{(p,q)} on {<x, lambda> = 1}.
DualityReport duality_check(const std::vector<MultiVector>& lambdas, const Exponent& p, const Exponent& q,
                            const DualityOptions& options = {});

// ---------------------------------------------------------------------------

struct ExtensionResult {
  NormResult result;        ///< value: best certified lower bound; upper_bound: weak (p,q) upper
  MatrixXd U;               ///< best operator, target x F
  double u_norm_upper = 0.0;
  double weak_value = 0.0;
  double weak_upper = 0.0;
  bool consistent = false;  ///< weak.value - tol <= value <= weak.upper + tol
};

/// Extension to F = L^t(w) of the standard (p,q)-multi-norm on `target`:
/// sup over contractions U: F -> L^p(target) of the standard norm of (U x_i).
/// Tries the operator built from the weak (p,q) dual witness, the identity
/// when target and F coincide, and `samples` random operators.
ExtensionResult extension_norm(const MultiVector& x, const Exponent& t, const SpacePtr& target, const Exponent& p,
                               const Exponent& q, int samples = 16, std::uint64_t seed = 3, double tol = 1e-9);

// ---------------------------------------------------------------------------

enum class EngineKind { multi, dual_multi };

struct AxiomCase {
  std::string axiom;
  int trial = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

struct AxiomReport {
  std::vector<AxiomCase> cases;
  bool ok = true;
  int failures() const;
};

struct AxiomOptions {
  Index n_max = 3;
  int trials = 20;
  std::uint64_t seed = 5;
  double tol = 1e-9;
  bool random_weights = true;
};

/// Randomized A1-A4 (multi) or A1-A3 and B4 (dual_multi) checks on random
/// tuples over `space`, gap-aware, plus the sandwich max|x_i| <= |x| <= sum|x_i|.
/// For dual_multi engines the best decomposition is also mapped through each
/// axiom (permute, scale, pad, merge duplicates) and the mapped cost, with mu
/// recomputed in L^ambient for exponents (r, s), must not exceed the original.
AxiomReport axioms_check(const Engine& engine, const SpacePtr& space, EngineKind kind,
                         const AxiomOptions& options = {}, const Exponent& ambient = Exponent::one(),
                         const Exponent& r = Exponent::one(), const Exponent& s = Exponent::infinity());

// ---------------------------------------------------------------------------

using PQ = std::pair<Exponent, Exponent>;

/// q2 <= q1 and 1/p2 - 1/q2 <= 1/p1 - 1/q1.
bool ordering_applies(const PQ& first, const PQ& second);

struct OrderingLink {
  PQ first;
  PQ second;
  std::vector<double> lhs;  ///< |x|^{first} certified values
  std::vector<double> rhs;  ///< |x|^{second} upper bounds
  bool ok = true;
};

struct OrderingReport {
  std::vector<OrderingLink> links;
  bool applicable = true;
  bool ok = true;
};

/// Checks |x|^{first} <= |x|^{second} (weak multi-norms on L^r) on each sample.
OrderingReport ordering_check(const std::vector<MultiVector>& samples, const PQ& first, const PQ& second,
                              const Exponent& r = Exponent::one(), const WeakOptions& options = {},
                              double tol = 1e-9);

/// Consecutive links of a chain; not applicable if any link fails the conditions.
OrderingReport ordering_chain(const std::vector<MultiVector>& samples, const std::vector<PQ>& chain,
                              const Exponent& r = Exponent::one(), const WeakOptions& options = {},
                              double tol = 1e-9);

/// The chains (1,q) <= (p,q) <= (q,q) and (q,q) <= (p,p) <= (1,1).
std::vector<std::vector<PQ>> standard_chains(const Exponent& p, const Exponent& q);

}  // namespace mnorm
