#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mnorm/checks.hpp"

namespace mnorm {

/// A matrix viewed as an operator L^r(domain) -> L^t(codomain).
struct LinOp {
  MatrixXd matrix;  ///< codomain size x domain size
  SpacePtr domain;
  Exponent r;
  SpacePtr codomain;
  Exponent t;

  /// Throws std::invalid_argument on a shape mismatch.
  LinOp(MatrixXd m, SpacePtr dom, Exponent r_, SpacePtr cod, Exponent t_);

  MultiVector apply(const MultiVector& x) const;
};

/// x (x) lambda: f -> <f, lambda> x, with the weighted pairing of the domain.
LinOp rank_one(const Vector& x, const Vector& lambda, const Exponent& r, const Exponent& t);

/// Operator norm between the weighted spaces. Exact for r = 1, t = inf and r = t = 2.
NormResult op_norm(const LinOp& T, const MatrixNormOptions& options = {});

/// Multi-norms on the domain and codomain of an operator. `weak` marks both as
/// weak (p,q)-multi-norms with the given exponents, which bounds every
/// amplification by |T| (the adjoint maps dual tuples to dual tuples).
struct OperatorEngines {
  Engine domain;
  Engine codomain;
  std::optional<PQ> weak;
};

OperatorEngines weak_operator_engines(const LinOp& T, const Exponent& p, const Exponent& q,
                                      const WeakOptions& options = {});

struct AmplificationOptions {
  int random_starts = 4;
  int local_steps = 8;
  std::uint64_t seed = 17;
  MatrixNormOptions op;
  std::vector<MultiVector> seeds;  ///< extra k-tuples to try (shorter tuples are zero padded)
};

struct AmplificationResult {
  NormResult result;   ///< value: best certified |T^(k) x| / |x|; upper: |T| or k|T|
  MultiVector argmax;  ///< the tuple attaining value
};

/// Lower certificate for |T^(k)| = sup |(T x_1, ..., T x_k)|_k / |x|_k, using
/// codomain values over domain upper bounds. Candidates are the top singular
/// direction, the seeds, random tuples and coordinate perturbations.
AmplificationResult amplification_norm(const LinOp& T, Index k, const OperatorEngines& engines,
                                       const AmplificationOptions& options = {});

struct MbNormResult {
  NormResult result;                ///< max over k of the amplification certificates
  std::vector<NormResult> by_k;     ///< index k - 1
  NormResult op;                    ///< |T|
  bool monotone = true;             ///< |T^(k)| nondecreasing up to engine gaps
  bool contract_checked = false;    ///< weak engines on both sides
  bool contract_ok = true;          ///< result within the gaps of |T|
};

/// sup_{k <= k_max} |T^(k)|. Each k starts from the previous witness padded with zero.
MbNormResult mb_norm(const LinOp& T, Index k_max, const OperatorEngines& engines,
                     const AmplificationOptions& options = {}, double tol = 1e-9);

struct MbSetResult {
  double value = 0.0;        ///< max over tuples with repetition
  double upper = 0.0;
  double by_subsets = 0.0;   ///< max over tuples of distinct elements
  bool agree = true;
};

/// c_B = sup |(x_1, ..., x_n)|_n over x_i in B, n <= n_max, by both tuple routes.
MbSetResult mb_set_constant(const std::vector<Vector>& B, const Engine& engine, Index n_max, double tol = 1e-9);

}  // namespace mnorm
