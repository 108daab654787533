#include "mnorm/ball_max.hpp"

#include <algorithm>
#include <queue>

#include "mnorm/errors.hpp"

namespace mnorm {
namespace {

struct Cell {
  int face = 0;
  VectorXd lo;
  VectorXd hi;
  double upper = 0.0;
  double width = 0.0;
};

struct CellOrder {
  bool operator()(const Cell& a, const Cell& b) const { return a.upper < b.upper; }
};

class Search {
 public:
  Search(const ConvexObjective& g, Index dim, const Exponent& s) : g_(g), dim_(dim), s_(s) {}

  void offer(const VectorXd& u) {
    const double nu = lp_norm(u, s_);
    if (!(nu > 0.0)) return;
    const double val = g_(u) / nu;
    if (val > lower_ || best_.size() == 0) {
      lower_ = std::max(lower_, val);
      best_ = u / nu;
    }
  }

  // Evaluates bounds for the cell and records vertex values as candidates.
  void evaluate(Cell& cell) {
    std::vector<Index> free;
    for (Index i = 0; i < dim_; ++i) {
      if (cell.hi(i) > cell.lo(i)) free.push_back(i);
    }
    const VectorXd center = 0.5 * (cell.lo + cell.hi);
    const VectorXd z = duality_map(center, s_);

    double gmax = 0.0;
    double ratio_z = 0.0;
    bool z_valid = true;
    const std::size_t nv = std::size_t{1} << free.size();
    VectorXd v = cell.lo;
    for (std::size_t mask = 0; mask < nv; ++mask) {
      for (std::size_t b = 0; b < free.size(); ++b) {
        const Index i = free[b];
        v(i) = (mask >> b) & 1U ? cell.hi(i) : cell.lo(i);
      }
      const double gv = g_(v);
      const double nrm = lp_norm(v, s_);
      if (gv / nrm > lower_) {
        lower_ = gv / nrm;
        best_ = v / nrm;
      }
      gmax = std::max(gmax, gv);
      const double dot = v.dot(z);
      if (dot <= 0.0) {
        z_valid = false;
      } else {
        ratio_z = std::max(ratio_z, gv / dot);
      }
    }
    offer(center);

    // Smallest l^s norm over the box (separable).
    double acc = 0.0;
    const double e = s_.value();
    for (Index i = 0; i < dim_; ++i) {
      double a = 0.0;
      if (cell.lo(i) > 0.0) {
        a = cell.lo(i);
      } else if (cell.hi(i) < 0.0) {
        a = -cell.hi(i);
      }
      acc += std::pow(a, e);
    }
    const double min_norm = std::pow(acc, 1.0 / e);
    double ub = gmax / min_norm;
    if (z_valid) ub = std::min(ub, ratio_z);
    cell.upper = std::max(ub, 0.0);
    cell.width = 0.0;
    for (Index i : free) cell.width = std::max(cell.width, cell.hi(i) - cell.lo(i));
  }

  double lower() const { return lower_; }
  const VectorXd& best() const { return best_; }

 private:
  const ConvexObjective& g_;
  Index dim_;
  Exponent s_;
  double lower_ = 0.0;
  VectorXd best_;
};

}  // namespace

BallMaxResult maximize_on_ball(const ConvexObjective& g, Index dim, const Exponent& s,
                               const BallMaxOptions& options, const std::vector<VectorXd>& seeds) {
  BallMaxResult out;
  if (dim <= 0) {
    out.exact = true;
    out.argmax = VectorXd();
    return out;
  }

  if (s.is_one()) {
    // Extreme points of the l^1 ball are +-e_j.
    out.exact = true;
    out.argmax = VectorXd::Zero(dim);
    VectorXd e = VectorXd::Zero(dim);
    for (Index j = 0; j < dim; ++j) {
      e.setZero();
      e(j) = 1.0;
      const double v = g(e);
      if (j == 0 || v > out.lower) {
        out.lower = v;
        out.argmax = e;
      }
    }
    out.upper = out.lower;
    out.cells = static_cast<std::size_t>(dim);
    return out;
  }

  if (s.is_inf()) {
    // Extreme points are sign vectors; g even, so fix the first sign.
    if (dim > options.max_cube_dim) {
      throw GuardExceeded("sign-vertex enumeration in dimension " + std::to_string(dim));
    }
    out.exact = true;
    VectorXd u = VectorXd::Ones(dim);
    const std::size_t count = std::size_t{1} << (dim - 1);
    for (std::size_t mask = 0; mask < count; ++mask) {
      for (Index j = 1; j < dim; ++j) u(j) = (mask >> (j - 1)) & 1U ? -1.0 : 1.0;
      const double v = g(u);
      if (mask == 0 || v > out.lower) {
        out.lower = v;
        out.argmax = u;
      }
    }
    out.upper = out.lower;
    out.cells = count;
    return out;
  }

  Search search(g, dim, s);
  for (const auto& seed : seeds) {
    if (seed.size() == dim) search.offer(seed);
  }

  std::priority_queue<Cell, std::vector<Cell>, CellOrder> queue;
  double pruned = 0.0;
  std::size_t evaluated = 0;
  auto threshold = [&] { return search.lower() * (1.0 + options.rel_tol) + options.abs_tol; };

  for (Index j = 0; j < dim; ++j) {
    Cell c;
    c.face = static_cast<int>(j);
    c.lo = VectorXd::Constant(dim, -1.0);
    c.hi = VectorXd::Constant(dim, 1.0);
    c.lo(j) = 1.0;
    c.hi(j) = 1.0;
    search.evaluate(c);
    ++evaluated;
    queue.push(std::move(c));
  }

  double upper = 0.0;
  bool done = false;
  while (!queue.empty()) {
    Cell top = queue.top();
    if (top.upper <= threshold() || top.width == 0.0) {
      if (top.width == 0.0 && top.upper > threshold()) {
        // Degenerate cell: its bound is attained at its only vertex.
        queue.pop();
        pruned = std::max(pruned, top.upper);
        continue;
      }
      upper = top.upper;
      done = true;
      break;
    }
    if (evaluated >= options.max_cells) {
      upper = top.upper;
      done = true;
      break;
    }
    queue.pop();
    Index split = 0;
    double w = -1.0;
    for (Index i = 0; i < dim; ++i) {
      if (top.hi(i) - top.lo(i) > w) {
        w = top.hi(i) - top.lo(i);
        split = i;
      }
    }
    const double mid = 0.5 * (top.lo(split) + top.hi(split));
    Cell a = top;
    Cell b = top;
    a.hi(split) = mid;
    b.lo(split) = mid;
    for (Cell* child : {&a, &b}) {
      search.evaluate(*child);
      ++evaluated;
      if (child->upper > threshold()) {
        queue.push(std::move(*child));
      } else {
        pruned = std::max(pruned, child->upper);
      }
    }
  }
  if (!done) upper = 0.0;

  out.lower = search.lower();
  out.argmax = search.best();
  out.upper = std::max({out.lower, upper, pruned});
  out.cells = evaluated;
  return out;
}

}  // namespace mnorm
