#include "mnorm/norm_result.hpp"

#include <stdexcept>

namespace mnorm {

std::string to_string(Method m) {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::brute_extreme: return "brute_extreme";
    case Method::optimizer: return "optimizer";
    case Method::greedy: return "greedy";
    case Method::exact_enumeration: return "exact_enumeration";
    case Method::local_search: return "local_search";
    case Method::branch_and_bound: return "branch_and_bound";
    case Method::decomposition_search: return "decomposition_search";
    case Method::sampled: return "sampled";
  }
  return "unknown";
}

double Decomposition::cost(const Exponent& s) const {
  double c = 0.0;
  for (const auto& t : terms) c += lp_norm(t.alpha, s) * t.mu_upper;
  return c;
}

MatrixXd Decomposition::reconstruct() const {
  if (terms.empty()) throw std::logic_error("empty decomposition");
  MatrixXd out = MatrixXd::Zero(terms.front().y.m(), terms.front().y.n());
  for (const auto& t : terms) out += t.y.columns() * t.alpha.asDiagonal();
  return out;
}

}  // namespace mnorm
