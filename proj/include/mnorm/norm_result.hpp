#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mnorm/space.hpp"

namespace mnorm {

enum class Method {
  closed_form,
  brute_extreme,
  optimizer,
  greedy,
  exact_enumeration,
  local_search,
  branch_and_bound,
  decomposition_search,
  sampled,
};

std::string to_string(Method m);

/// Dual tuple (lambda_1, ..., lambda_n) with mu_{p,n}(lambda) <= 1, stored as
/// columns of a MultiVector over the same space.
struct DualTuple {
  MultiVector lambda;
  double mu = 0.0;  ///< upper bound on mu_{p,n}(lambda)
};

/// Assignment of each point to a block 0..n-1.
struct Partition {
  std::vector<int> block;
};

/// x = sum_k M_{alpha_k}(y_k).
struct Decomposition {
  struct Term {
    VectorXd alpha;
    MultiVector y;
    double mu_upper = 0.0;  ///< certified upper bound on mu_{r,n}(y)
  };
  std::vector<Term> terms;

  double cost(const Exponent& s) const;
  MatrixXd reconstruct() const;
};

using Witness = std::variant<std::monostate, DualTuple, Partition, Decomposition>;

struct NormResult {
  double value = 0.0;        ///< certified lower value, reproduced by the witness
  double upper_bound = 0.0;
  Witness certificate;
  Method method = Method::closed_form;

  double gap() const { return upper_bound - value; }
  bool exact() const { return upper_bound == value; }
};

}  // namespace mnorm
