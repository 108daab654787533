#include "mnorm/gmodules.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "mnorm/errors.hpp"

namespace mnorm {

namespace {

Index at(const Element& g) { return static_cast<Index>(g.rep.at(0)); }

Element el(Index i) { return Element{{static_cast<int>(i)}}; }

void need_finite(const GroupModel& G) {
  if (G.kind() != GroupKind::finite) throw std::invalid_argument("module matrices need a finite group");
}

double max_abs(const MatrixXd& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

FiniteSupportVector convolve(const GroupModel& G, const FiniteSupportVector& f, const FiniteSupportVector& g) {
  FiniteSupportVector out;
  for (const auto& [t, a] : f)
    for (const auto& [u, b] : g) out[G.mul(t, u)] += a * b;
  return out;
}

double augmentation(const FiniteSupportVector& f) {
  double acc = 0.0;
  for (const auto& [t, v] : f) acc += v;
  return acc;
}

VectorXd dense(const GroupModel& G, const FiniteSupportVector& f) {
  need_finite(G);
  VectorXd v = VectorXd::Zero(static_cast<Index>(G.order()));
  for (const auto& [t, a] : f) {
    G.validate(t);
    v(at(t)) = a;
  }
  return v;
}

FiniteSupportVector sparse(const VectorXd& v) {
  FiniteSupportVector f;
  for (Index i = 0; i < v.size(); ++i)
    if (v(i) != 0.0) f[el(i)] = v(i);
  return f;
}

VectorXd translate(const GroupModel& G, const Element& r, const VectorXd& x) {
  need_finite(G);
  const Element ri = G.inv(r);
  VectorXd y(x.size());
  for (Index s = 0; s < x.size(); ++s) y(s) = x(at(G.mul(ri, el(s))));
  return y;
}

ModuleMatrix::ModuleMatrix(GroupPtr g, MatrixXd u, Exponent p_) : G(std::move(g)), U(std::move(u)), p(p_) {
  if (!G) throw std::invalid_argument("module matrix without a group");
  need_finite(*G);
  const auto n = static_cast<Index>(G->order());
  if (U.rows() != n || U.cols() != n) throw std::invalid_argument("module matrix must be |G| x |G|");
}

double ModuleMatrix::norm() const {
  double best = 0.0;
  for (Index t = 0; t < U.rows(); ++t) best = std::max(best, lp_norm(U.row(t), p));
  return best;
}

ModuleMatrix star_action(const Element& r, const ModuleMatrix& U) {
  const GroupModel& G = *U.G;
  const Element ri = G.inv(r);
  const Index n = U.U.rows();
  std::vector<Index> perm(static_cast<std::size_t>(n));
  for (Index t = 0; t < n; ++t) perm[static_cast<std::size_t>(t)] = at(G.mul(ri, el(t)));
  MatrixXd V(n, n);
  for (Index t = 0; t < n; ++t)
    for (Index s = 0; s < n; ++s) V(t, s) = U.U(perm[static_cast<std::size_t>(t)], perm[static_cast<std::size_t>(s)]);
  return ModuleMatrix(U.G, std::move(V), U.p);
}

ModuleMatrix left_action(const FiniteSupportVector& b, const ModuleMatrix& U) {
  const GroupModel& G = *U.G;
  const Index n = U.U.rows();
  MatrixXd V = MatrixXd::Zero(n, n);
  for (const auto& [r, c] : b)
    for (Index t = 0; t < n; ++t) V.row(t) += c * U.U.row(at(G.mul(el(t), r)));
  return ModuleMatrix(U.G, std::move(V), U.p);
}

ModuleMatrix Pi(const GroupPtr& G, const VectorXd& x, const Exponent& p) {
  need_finite(*G);
  const auto n = static_cast<Index>(G->order());
  if (x.size() != n) throw std::invalid_argument("vector length differs from |G|");
  MatrixXd U(n, n);
  for (Index t = 0; t < n; ++t) {
    const Element ti = G->inv(el(t));
    for (Index s = 0; s < n; ++s) U(t, s) = x(at(G->mul(ti, el(s))));
  }
  return ModuleMatrix(G, std::move(U), p);
}

ModuleMatrix PiTilde(const GroupPtr& G, const VectorXd& x, const Exponent& p) {
  need_finite(*G);
  const auto n = static_cast<Index>(G->order());
  if (x.size() != n) throw std::invalid_argument("vector length differs from |G|");
  return ModuleMatrix(G, MatrixXd(x.transpose().replicate(n, 1)), p);
}

ModuleMatrix Q_map(const ModuleMatrix& U) {
  const GroupModel& G = *U.G;
  const Index n = U.U.rows();
  MatrixXd V(n, n);
  for (Index t = 0; t < n; ++t) {
    const Element ti = G.inv(el(t));
    for (Index s = 0; s < n; ++s) V(t, s) = U.U(at(ti), at(G.mul(ti, el(s))));
  }
  return ModuleMatrix(U.G, std::move(V), U.p);
}

VectorXd Retraction::apply(const ModuleMatrix& U) const {
  VectorXd out(static_cast<Index>(rho.size()));
  for (std::size_t s = 0; s < rho.size(); ++s) out(static_cast<Index>(s)) = rho[s].cwiseProduct(U.U).sum();
  return out;
}

Retraction retraction_from_mean(const GroupPtr& G, const FiniteSupportVector& Lambda, const Exponent& p,
                                const WeakOptions& options) {
  need_finite(*G);
  validate_mean(Lambda);
  const auto n = static_cast<Index>(G->order());
  const VectorXd lam = dense(*G, Lambda);
  Retraction R{G, p, {}, 0.0, INFINITY};
  for (Index s0 = 0; s0 < n; ++s0) {
    MatrixXd r = MatrixXd::Zero(n, n);
    r.col(s0) = translate(*G, el(s0), lam);
    R.rho.push_back(std::move(r));
  }

  // |R(PiTilde x)| = |x| = |PiTilde x| gives |R| >= 1.
  const ModuleMatrix id = PiTilde(G, VectorXd::Unit(n, 0), p);
  R.norm_lower = lp_norm(R.apply(id), p) / id.norm();

  if (p.is_inf()) {
    // |R(U)(s)| <= sum_t (s . Lambda)(t) |U(t,s)| <= |U|.
    R.norm_upper = 1.0;
    return R;
  }
  const std::vector<Element> F = G->elements();
  const MultiVector x = translate_tuple(*G, Lambda, F);
  const NormResult c = weak_pq(x, p, p, Exponent::one(), options);
  R.norm_upper = c.upper_bound;
  if (const auto* dt = std::get_if<DualTuple>(&c.certificate)) {
    // The dual tuple (mu_s) gives the witness U(t,s) = mu_s(t).
    MatrixXd W = MatrixXd::Zero(n, n);
    const auto& pts = x.space()->points();
    for (Index k = 0; k < x.m(); ++k) {
      const Index t = at(G->parse(pts[static_cast<std::size_t>(k)]));
      for (Index s = 0; s < n; ++s) W(t, s) = dt->lambda.columns()(k, s);
    }
    const ModuleMatrix w(G, std::move(W), p);
    if (w.norm() > 0.0) R.norm_lower = std::max(R.norm_lower, lp_norm(R.apply(w), p) / w.norm());
  }
  return R;
}

FiniteSupportVector mean_from_retraction(const Retraction& R) {
  const GroupModel& G = *R.G;
  const auto n = static_cast<Index>(G.order());
  const Index e = at(G.identity());
  VectorXd lam(n);
  for (Index t = 0; t < n; ++t) {
    MatrixXd U = MatrixXd::Zero(n, n);
    U(t, e) = 1.0;
    lam(t) = R.apply(ModuleMatrix(R.G, std::move(U), R.p))(e);
  }
  return sparse(lam);
}

ModuleMatrix mask_output(const ModuleMatrix& U, const std::vector<char>& in_V) {
  if (static_cast<Index>(in_V.size()) != U.U.cols()) throw std::invalid_argument("mask length differs from |G|");
  MatrixXd V = U.U;
  for (Index s = 0; s < V.cols(); ++s)
    if (!in_V[static_cast<std::size_t>(s)]) V.col(s).setZero();
  return ModuleMatrix(U.G, std::move(V), U.p);
}

SignLemmaReport sign_lemma_check(const std::vector<std::vector<VectorXd>>& F, const Exponent& p,
                                 const VectorXd& weights) {
  const auto n = F.size();
  if (n == 0) throw std::invalid_argument("sign lemma needs n >= 1");
  if (n > 12) throw GuardExceeded("sign lemma enumeration is limited to n <= 12");
  for (const auto& row : F)
    if (row.size() != n) throw std::invalid_argument("sign lemma needs an n x n array");
  const Index dim = F[0][0].size();
  const VectorXd w = weights.size() ? weights : VectorXd::Ones(dim);
  auto pnorm = [&](const VectorXd& v) { return lp_norm(v, w, p); };
  auto combine = [&](const std::vector<double>& terms) {
    if (p.is_inf()) return *std::max_element(terms.begin(), terms.end());
    double acc = 0.0;
    for (double t : terms) acc += std::pow(t, p.value());
    return std::pow(acc, p.reciprocal());
  };
  SignLemmaReport rep;
  std::vector<double> diag;
  for (std::size_t j = 0; j < n; ++j) diag.push_back(pnorm(F[j][j]));
  rep.diagonal = combine(diag);
  for (std::uint32_t code = 0; code < (1u << n); ++code) {
    std::vector<double> cols;
    for (std::size_t j = 0; j < n; ++j) {
      VectorXd acc = VectorXd::Zero(dim);
      for (std::size_t i = 0; i < n; ++i) acc += ((code >> i) & 1u ? -1.0 : 1.0) * F[i][j];
      cols.push_back(pnorm(acc));
    }
    rep.C = std::max(rep.C, combine(cols));
  }
  rep.holds = rep.diagonal <= rep.C * (1.0 + 1e-12) + 1e-15;
  return rep;
}

DiagonalReport diagonal_inequality_check(const Retraction& R, const ModuleMatrix& U, const std::vector<int>& X,
                                         const std::vector<int>& Y, double tol) {
  const auto n = static_cast<std::size_t>(U.U.rows());
  if (X.size() != n || Y.size() != n) throw std::invalid_argument("partition size differs from |G|");
  const int bx = *std::max_element(X.begin(), X.end()) + 1;
  const int by = *std::max_element(Y.begin(), Y.end()) + 1;
  if (bx != by || *std::min_element(X.begin(), X.end()) < 0 || *std::min_element(Y.begin(), Y.end()) < 0) {
    throw std::invalid_argument("partition mismatch");
  }
  DiagonalReport rep;
  double acc = 0.0;
  for (int i = 0; i < bx; ++i) {
    std::vector<char> inY(n), inX(n);
    for (std::size_t s = 0; s < n; ++s) {
      inY[s] = Y[s] == i;
      inX[s] = X[s] == i;
    }
    const VectorXd v = R.apply(mask_output(U, inY));
    VectorXd masked = VectorXd::Zero(v.size());
    for (std::size_t s = 0; s < n; ++s)
      if (inX[s]) masked(static_cast<Index>(s)) = v(static_cast<Index>(s));
    const double m = lp_norm(masked, R.p);
    acc = R.p.is_inf() ? std::max(acc, m) : acc + std::pow(m, R.p.value());
  }
  rep.lhs = R.p.is_inf() ? acc : std::pow(acc, R.p.reciprocal());
  rep.rhs = R.norm_upper * U.norm();
  rep.holds = rep.lhs <= rep.rhs * (1.0 + tol) + tol;
  return rep;
}

DiagonalReport singleton_diagonal_check(const Retraction& R, const ModuleMatrix& U, double tol) {
  std::vector<int> X(static_cast<std::size_t>(U.U.rows()));
  for (std::size_t s = 0; s < X.size(); ++s) X[s] = static_cast<int>(s);
  return diagonal_inequality_check(R, U, X, X, tol);
}

TestOperatorReport disjoint_test_operator(const std::vector<VectorXd>& xs, const std::vector<VectorXd>& fs,
                                          const ModuleMatrix& U) {
  if (xs.size() != fs.size()) throw std::invalid_argument("x and f lists differ in length");
  const Index n = U.U.rows();
  auto disjoint = [&](const std::vector<VectorXd>& vs) {
    VectorXd used = VectorXd::Zero(n);
    for (const auto& v : vs) {
      if (v.size() != n) throw std::invalid_argument("vector length differs from |G|");
      for (Index s = 0; s < n; ++s) {
        if (v(s) == 0.0) continue;
        if (used(s) != 0.0) return false;
        used(s) = 1.0;
      }
    }
    return true;
  };
  if (!disjoint(xs) || !disjoint(fs)) throw std::invalid_argument("supports overlap");
  MatrixXd T = MatrixXd::Zero(n, n);
  double m = 0.0;
  const Exponent pc = U.p.conjugate();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    T += (U.U * fs[i]) * xs[i].transpose();
    m = std::max(m, lp_norm(fs[i], pc) * lp_norm(xs[i], U.p));
  }
  TestOperatorReport rep{ModuleMatrix(U.G, std::move(T), U.p), 0.0, 0.0, false};
  rep.norm = rep.T.norm();
  rep.bound = U.norm() * m;
  rep.holds = rep.norm <= rep.bound * (1.0 + 1e-12) + 1e-15;
  return rep;
}

ModuleVerifyReport module_verify(const GroupPtr& G, const Exponent& p, std::uint64_t seed, int samples, double tol) {
  need_finite(*G);
  const auto n = static_cast<Index>(G->order());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<Index> pick(0, n - 1);
  auto rvec = [&] {
    VectorXd v(n);
    for (Index i = 0; i < n; ++i) v(i) = u(rng);
    return v;
  };
  auto rmat = [&] {
    MatrixXd m(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) m(i, j) = u(rng);
    return ModuleMatrix(G, std::move(m), p);
  };

  const FiniteSupportVector Lambda = uniform_mean(G->elements());
  const Retraction R = retraction_from_mean(G, Lambda, p);
  const FiniteSupportVector back = mean_from_retraction(R);

  ModuleVerifyReport rep;
  rep.norm_lower = R.norm_lower;
  rep.norm_upper = R.norm_upper;
  if (p.is_inf()) {
    rep.mean_constant = R.norm_upper;
  } else {
    const std::vector<Element> F = G->elements();
    rep.mean_constant = weak_pq(translate_tuple(*G, back, F), p, p, Exponent::one()).value;
  }

  double pi_morph = 0, q_pi = 0, q_eq = 0, star = 0, r_id = 0, r_eq = 0, assoc = 0, chr = 0;
  for (int t = 0; t < samples; ++t) {
    const VectorXd x = rvec();
    const ModuleMatrix U = rmat();
    const Element r = el(pick(rng)), r2 = el(pick(rng));
    const FiniteSupportVector b = sparse(rvec()), c = sparse(rvec()), d = sparse(rvec());

    pi_morph = std::max(pi_morph, max_abs(Pi(G, dense(*G, convolve(*G, b, sparse(x))), p).U - left_action(b, Pi(G, x, p)).U));
    q_pi = std::max(q_pi, max_abs(Q_map(Pi(G, x, p)).U - PiTilde(G, x, p).U));
    q_eq = std::max(q_eq, max_abs(Q_map(left_action(delta(r), U)).U - star_action(r, Q_map(U)).U));
    star = std::max(star, max_abs(star_action(G->mul(r, r2), U).U - star_action(r, star_action(r2, U)).U));
    r_id = std::max(r_id, max_abs(R.apply(PiTilde(G, x, p)) - x));
    r_eq = std::max(r_eq, max_abs(R.apply(star_action(r, U)) - translate(*G, r, R.apply(U))));
    assoc = std::max(assoc, max_abs(dense(*G, convolve(*G, convolve(*G, b, c), d)) -
                                    dense(*G, convolve(*G, b, convolve(*G, c, d)))));
    chr = std::max(chr, std::abs(augmentation(convolve(*G, b, c)) - augmentation(b) * augmentation(c)));

    const bool single = singleton_diagonal_check(R, U).holds;
    std::vector<int> X(static_cast<std::size_t>(n)), Y(static_cast<std::size_t>(n));
    const int blocks = 1 + t % std::min<int>(3, static_cast<int>(n));
    for (auto& v : X) v = static_cast<int>(pick(rng) % blocks);
    for (auto& v : Y) v = static_cast<int>(pick(rng) % blocks);
    for (int i = 0; i < blocks; ++i) X[static_cast<std::size_t>(i)] = Y[static_cast<std::size_t>(i)] = i;
    const bool diag = diagonal_inequality_check(R, U, X, Y).holds;
    std::vector<std::vector<VectorXd>> Fij(static_cast<std::size_t>(blocks), std::vector<VectorXd>(static_cast<std::size_t>(blocks)));
    for (int i = 0; i < blocks; ++i) {
      std::vector<char> inY(static_cast<std::size_t>(n));
      for (std::size_t s = 0; s < inY.size(); ++s) inY[s] = Y[s] == i;
      const VectorXd v = R.apply(mask_output(U, inY));
      for (int j = 0; j < blocks; ++j) {
        VectorXd m = VectorXd::Zero(n);
        for (Index s = 0; s < n; ++s)
          if (X[static_cast<std::size_t>(s)] == j) m(s) = v(s);
        Fij[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m;
      }
    }
    const bool lemma = sign_lemma_check(Fij, p).holds;
    std::vector<VectorXd> xs, fs;
    for (Index s = 0; s < n; ++s) {
      VectorXd a = VectorXd::Zero(n), f = VectorXd::Zero(n);
      a(s) = u(rng);
      f((s + 1) % n) = u(rng);
      xs.push_back(a);
      fs.push_back(f);
    }
    const bool test_op = disjoint_test_operator(xs, fs, U).holds;
    rep.inequalities_hold = rep.inequalities_hold && single && diag && lemma && test_op;
  }
  double round_trip = 0.0, mass = std::abs(augmentation(back) - 1.0);
  for (Index t = 0; t < n; ++t) {
    const auto it = back.find(el(t));
    round_trip = std::max(round_trip, std::abs((it == back.end() ? 0.0 : it->second) - Lambda.at(el(t))));
  }
  rep.residuals = {{"augmentation_character", chr},
                   {"convolution_associativity", assoc},
                   {"mean_round_trip", round_trip},
                   {"mean_unit_mass", mass},
                   {"pi_module_morphism", pi_morph},
                   {"q_equivariance", q_eq},
                   {"q_pi_equals_pitilde", q_pi},
                   {"r_equivariance", r_eq},
                   {"r_pitilde_identity", r_id},
                   {"star_composition", star}};
  rep.ok = rep.inequalities_hold && rep.norm_lower <= rep.norm_upper * (1.0 + 1e-9) &&
           rep.mean_constant <= rep.norm_upper * (1.0 + 1e-9) + 1e-12;
  for (const auto& [name, v] : rep.residuals) rep.ok = rep.ok && v <= tol;
  return rep;
}

}  // namespace mnorm
