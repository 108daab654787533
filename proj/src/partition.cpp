#include "mnorm/partition.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "mnorm/errors.hpp"

namespace mnorm {
namespace {

// w_k |f_i(k)|^p
MatrixXd masses(const MultiVector& f, const Exponent& p) {
  const VectorXd& w = f.space()->weights();
  return w.asDiagonal() * f.columns().cwiseAbs().array().pow(p.value()).matrix();
}

double objective(const VectorXd& s, double ratio) {
  double acc = 0.0;
  // Incremental mass updates can leave -1e-17 where the exact value is 0.
  for (Index i = 0; i < s.size(); ++i) acc += std::pow(std::max(s(i), 0.0), ratio);
  return acc;
}

void validate(const Exponent& p, const Exponent& q) {
  if (q.is_inf() || p.is_inf()) throw std::invalid_argument("standard_pq: p and q must be finite");
  if (p > q) throw std::invalid_argument("standard_pq: requires p <= q");
}

struct Search {
  const MatrixXd& M;
  double ratio;  // q / p
  double inv_q;

  VectorXd sums(const std::vector<int>& a) const {
    VectorXd s = VectorXd::Zero(M.cols());
    for (Index k = 0; k < M.rows(); ++k) s(a[static_cast<std::size_t>(k)]) += M(k, a[static_cast<std::size_t>(k)]);
    return s;
  }

  // First-improvement single-point moves until no move helps.
  double climb(std::vector<int>& a) const {
    VectorXd s = sums(a);
    double cur = objective(s, ratio);
    bool improved = true;
    while (improved) {
      improved = false;
      for (Index k = 0; k < M.rows(); ++k) {
        const int from = a[static_cast<std::size_t>(k)];
        for (Index to = 0; to < M.cols(); ++to) {
          if (to == from) continue;
          VectorXd t = s;
          t(from) -= M(k, from);
          t(to) += M(k, to);
          const double v = objective(t, ratio);
          if (v > cur * (1.0 + 1e-14)) {
            a[static_cast<std::size_t>(k)] = static_cast<int>(to);
            s = t;
            cur = v;
            improved = true;
            break;
          }
        }
      }
    }
    return cur;
  }
};

}  // namespace

PartitionMode parse_partition_mode(const std::string& text) {
  if (text == "exact") return PartitionMode::exact;
  if (text == "greedy") return PartitionMode::greedy;
  if (text == "local_search") return PartitionMode::local_search;
  throw std::invalid_argument("unknown partition mode '" + text + "'");
}

std::string to_string(PartitionMode mode) {
  switch (mode) {
    case PartitionMode::exact: return "exact";
    case PartitionMode::greedy: return "greedy";
    case PartitionMode::local_search: return "local_search";
  }
  return "unknown";
}

double partition_value(const MultiVector& f, const Partition& X, const Exponent& p, const Exponent& q) {
  if (static_cast<Index>(X.block.size()) != f.m()) throw std::invalid_argument("partition size mismatch");
  const MatrixXd M = masses(f, p);
  VectorXd s = VectorXd::Zero(f.n());
  for (Index k = 0; k < f.m(); ++k) {
    const int i = X.block[static_cast<std::size_t>(k)];
    if (i < 0 || i >= f.n()) throw std::invalid_argument("partition block out of range");
    s(i) += M(k, i);
  }
  return std::pow(objective(s, q.value() / p.value()), 1.0 / q.value());
}

Partition argmax_partition(const MultiVector& f) {
  Partition X;
  X.block.resize(static_cast<std::size_t>(f.m()));
  for (Index k = 0; k < f.m(); ++k) {
    Index arg = 0;
    double best = -1.0;
    for (Index i = 0; i < f.n(); ++i) {
      if (std::abs(f.columns()(k, i)) > best) {
        best = std::abs(f.columns()(k, i));
        arg = i;
      }
    }
    X.block[static_cast<std::size_t>(k)] = static_cast<int>(arg);
  }
  return X;
}

NormResult standard_pq(const MultiVector& f, const Exponent& p, const Exponent& q, PartitionMode mode,
                       const PartitionOptions& options) {
  validate(p, q);
  NormResult out;
  Partition greedy = argmax_partition(f);
  // Value of the pointwise maximum |f_1| v ... v |f_n| in L^p: the (p,p) value.
  const VectorXd top = f.columns().cwiseAbs().rowwise().maxCoeff();
  const double pp = lp_norm(top, f.space()->weights(), p);

  if (q == p) {
    out.value = out.upper_bound = pp;
    out.certificate = greedy;
    out.method = Method::greedy;
    return out;
  }

  const MatrixXd M = masses(f, p);
  const Search search{M, q.value() / p.value(), 1.0 / q.value()};
  std::vector<int> best = greedy.block;
  double best_obj = objective(search.sums(best), search.ratio);

  if (mode == PartitionMode::exact) {
    // A point with at most one nonzero mass has a dominant block.
    std::vector<Index> contested;
    std::vector<int> base = greedy.block;
    for (Index k = 0; k < M.rows(); ++k) {
      int nonzero = 0;
      for (Index i = 0; i < M.cols(); ++i) nonzero += M(k, i) > 0.0 ? 1 : 0;
      if (nonzero > 1) contested.push_back(k);
    }
    const double bits = static_cast<double>(contested.size()) * std::log2(static_cast<double>(f.n()));
    if (bits > options.guard_bits) {
      throw GuardExceeded("partition enumeration needs 2^" + std::to_string(bits) + " assignments");
    }
    std::vector<int> a = base;
    for (Index k : contested) a[static_cast<std::size_t>(k)] = 0;
    VectorXd s = search.sums(a);
    const int n = static_cast<int>(f.n());
    while (true) {
      const double v = objective(s, search.ratio);
      if (v > best_obj) {
        best_obj = v;
        best = a;
      }
      std::size_t c = 0;
      for (; c < contested.size(); ++c) {
        const Index k = contested[c];
        int& digit = a[static_cast<std::size_t>(k)];
        s(digit) -= M(k, digit);
        digit = (digit + 1) % n;
        s(digit) += M(k, digit);
        if (digit != 0) break;
      }
      if (c == contested.size()) break;
    }
    out.certificate = Partition{best};
    out.value = partition_value(f, Partition{best}, p, q);
    out.upper_bound = out.value;
    out.method = Method::exact_enumeration;
    return out;
  }

  if (mode == PartitionMode::local_search) {
    std::vector<int> a = greedy.block;
    double v = search.climb(a);
    if (v > best_obj) {
      best_obj = v;
      best = a;
    }
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(f.n()) - 1);
    for (int r = 0; r < options.random_starts; ++r) {
      for (auto& d : a) d = pick(rng);
      v = search.climb(a);
      if (v > best_obj) {
        best_obj = v;
        best = a;
      }
    }
  }
  out.certificate = Partition{best};
  out.value = partition_value(f, Partition{best}, p, q);
  out.upper_bound = std::max(out.value, pp);
  out.method = mode == PartitionMode::greedy ? Method::greedy : Method::local_search;
  return out;
}

NormResult partition_sup_q(const MultiVector& mu, const Exponent& q, PartitionMode mode,
                           const PartitionOptions& options) {
  return standard_pq(mu, Exponent::one(), q, mode, options);
}

NormResult max_multinorm(const MultiVector& mu) {
  NormResult out = standard_pq(mu, Exponent::one(), Exponent::one(), PartitionMode::greedy);
  out.method = Method::closed_form;
  return out;
}

}  // namespace mnorm
