#include "doctest.h"
#include "oracle.hpp"

#include "mnorm/errors.hpp"
#include "mnorm/gmodules.hpp"

using namespace mnorm;

namespace {

GroupPtr share(GroupModel G) { return std::make_shared<const GroupModel>(std::move(G)); }

Element idx(int i) { return Element{{i}}; }

double max_abs(const MatrixXd& a) { return a.cwiseAbs().maxCoeff(); }

MatrixXd random_square(std::mt19937_64& rng, Index n) { return oracle::random_matrix(rng, n, n); }

VectorXd random_vec(std::mt19937_64& rng, Index n) { return oracle::random_matrix(rng, n, 1).col(0); }

}  // namespace

TEST_CASE("cyclic indices are residues") {
  const GroupModel Z5 = GroupModel::cyclic(5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(Z5.mul(idx(i), idx(j)) == idx((i + j) % 5));
}

TEST_CASE("convolution and augmentation") {
  const GroupModel S3 = GroupModel::symmetric(3);
  const auto E = S3.elements();
  for (const auto& s : E)
    for (const auto& t : E) {
      const auto c = convolve(S3, delta(s), delta(t));
      CHECK(c.size() == 1);
      CHECK(c.at(S3.mul(s, t)) == 1.0);
    }

  const auto u = uniform_mean(E);
  const auto uu = convolve(S3, u, u);
  for (const auto& s : E) CHECK(uu.at(s) == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(augmentation(u) == doctest::Approx(1.0));

  std::mt19937_64 rng(3);
  for (int k = 0; k < 10; ++k) {
    const auto f = sparse(random_vec(rng, 6)), g = sparse(random_vec(rng, 6)), h = sparse(random_vec(rng, 6));
    CHECK(convolve(S3, delta(S3.identity()), f) == f);
    CHECK(augmentation(convolve(S3, f, g)) == doctest::Approx(augmentation(f) * augmentation(g)).epsilon(1e-13));
    CHECK(max_abs(dense(S3, convolve(S3, convolve(S3, f, g), h)) - dense(S3, convolve(S3, f, convolve(S3, g, h)))) <
          1e-12);
    CHECK(norm(convolve(S3, f, g), Exponent::one()) <=
          norm(f, Exponent::one()) * norm(g, Exponent::one()) * (1 + 1e-12));
  }
}

TEST_CASE("module matrices and the maps") {
  const auto Z3 = share(GroupModel::cyclic(3));
  const Exponent p(2.0);
  std::mt19937_64 rng(5);

  CHECK_THROWS(ModuleMatrix(Z3, MatrixXd::Zero(2, 3), p));
  CHECK_THROWS(ModuleMatrix(share(GroupModel::lattice(1)), MatrixXd::Zero(1, 1), p));

  const ModuleMatrix U(Z3, random_square(rng, 3), p);
  double expect = 0.0;
  for (Index t = 0; t < 3; ++t) expect = std::max(expect, oracle::pnorm(U.U.row(t).transpose(), 2.0));
  CHECK(U.norm() == doctest::Approx(expect).epsilon(1e-14));

  CHECK(star_action(Z3->identity(), U).U == U.U);
  for (int r = 0; r < 3; ++r) CHECK(star_action(idx(r), U).norm() == doctest::Approx(U.norm()).epsilon(1e-14));

  CHECK(Pi(Z3, VectorXd::Unit(3, 0), p).U == MatrixXd::Identity(3, 3));
  const VectorXd x = random_vec(rng, 3);
  const MatrixXd pt = PiTilde(Z3, x, p).U;
  for (Index t = 0; t < 3; ++t) CHECK(pt.row(t) == x.transpose());

  // Entrywise on Z3 with residue arithmetic: Pi(x)(t,s) = x(s - t).
  const MatrixXd pix = Pi(Z3, x, p).U;
  for (int t = 0; t < 3; ++t)
    for (int s = 0; s < 3; ++s) CHECK(pix(t, s) == x((s - t + 3) % 3));
  CHECK(max_abs(Q_map(Pi(Z3, x, p)).U - PiTilde(Z3, x, p).U) < 1e-12);

  // Q(U)(t,s) = U(-t, s - t).
  const MatrixXd q = Q_map(U).U;
  for (int t = 0; t < 3; ++t)
    for (int s = 0; s < 3; ++s) CHECK(q(t, s) == U.U((3 - t) % 3, (s - t + 3) % 3));
  const ModuleMatrix V(Z3, random_square(rng, 3), p);
  CHECK(max_abs(Q_map(ModuleMatrix(Z3, U.U + V.U, p)).U - (Q_map(U).U + Q_map(V).U)) < 1e-15);
}

TEST_CASE("module identities on random data") {
  const auto S3 = share(GroupModel::symmetric(3));
  const Exponent p(1.5);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(0, 5);
  for (int k = 0; k < 20; ++k) {
    const ModuleMatrix U(S3, random_square(rng, 6), p);
    const VectorXd x = random_vec(rng, 6);
    const Element r1 = idx(pick(rng)), r2 = idx(pick(rng));
    const auto b = sparse(random_vec(rng, 6));
    CHECK(max_abs(star_action(S3->mul(r1, r2), U).U - star_action(r1, star_action(r2, U)).U) == 0.0);
    CHECK(max_abs(Q_map(left_action(delta(r1), U)).U - star_action(r1, Q_map(U)).U) < 1e-12);
    CHECK(max_abs(Pi(S3, dense(*S3, convolve(*S3, b, sparse(x))), p).U - left_action(b, Pi(S3, x, p)).U) < 1e-12);
  }
}

TEST_CASE("retraction from a mean") {
  const Exponent p(2.0);
  std::mt19937_64 rng(7);

  SUBCASE("uniform on Z2 averages over t") {
    const auto Z2 = share(GroupModel::cyclic(2));
    const auto R = retraction_from_mean(Z2, uniform_mean(Z2->elements()), p);
    const ModuleMatrix U(Z2, random_square(rng, 2), p);
    const VectorXd y = R.apply(U);
    for (Index s = 0; s < 2; ++s) CHECK(y(s) == doctest::Approx(0.5 * U.U.col(s).sum()).epsilon(1e-15));
    const VectorXd x = random_vec(rng, 2);
    CHECK(max_abs(R.apply(PiTilde(Z2, x, p)) - x) < 1e-15);
  }

  SUBCASE("uniform on S3 and Z4") {
    for (const auto& G : {share(GroupModel::symmetric(3)), share(GroupModel::cyclic(4))}) {
      const auto n = static_cast<Index>(G->order());
      const auto R = retraction_from_mean(G, uniform_mean(G->elements()), p);
      CHECK(R.norm_lower == doctest::Approx(1.0));
      CHECK(R.norm_upper <= 1.0 + 1e-9);
      std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
      for (int k = 0; k < 20; ++k) {
        const VectorXd x = random_vec(rng, n);
        CHECK(max_abs(R.apply(PiTilde(G, x, p)) - x) < 1e-12);
        const ModuleMatrix U(G, random_square(rng, n), p);
        const Element r = idx(pick(rng));
        CHECK(max_abs(R.apply(star_action(r, U)) - translate(*G, r, R.apply(U))) < 1e-12);
      }
    }
  }

  SUBCASE("round trip of a non-uniform mean on Z3") {
    const auto Z3 = share(GroupModel::cyclic(3));
    const FiniteSupportVector L{{idx(0), 0.5}, {idx(1), 0.3}, {idx(2), 0.2}};
    const auto R = retraction_from_mean(Z3, L, p);
    const auto back = mean_from_retraction(R);
    for (const auto& [t, v] : L) CHECK(back.at(t) == doctest::Approx(v).epsilon(1e-15));
    CHECK(augmentation(back) == doctest::Approx(1.0));
    CHECK(R.norm_lower <= R.norm_upper * (1 + 1e-9));
    CHECK(R.norm_lower > 1.0);
    const auto C = weak_pq(translate_tuple(*Z3, back, Z3->elements()), p, p, Exponent::one());
    CHECK(C.value <= R.norm_upper * (1 + 1e-9));
  }

  SUBCASE("errors") {
    const auto Z3 = share(GroupModel::cyclic(3));
    CHECK_THROWS(retraction_from_mean(Z3, {{idx(0), 0.5}}, p));
    CHECK_THROWS(retraction_from_mean(Z3, {{idx(0), 1.5}, {idx(1), -0.5}}, p));
  }
}

TEST_CASE("sign lemma") {
  const Exponent p2(2.0);
  const VectorXd v = (VectorXd(3) << 1.0, -2.0, 0.5).finished();
  auto one = sign_lemma_check({{v}}, p2);
  CHECK(one.diagonal == doctest::Approx(one.C));
  CHECK(one.holds);

  // Diagonal-only arrays give equality.
  std::vector<std::vector<VectorXd>> D(3, std::vector<VectorXd>(3, VectorXd::Zero(3)));
  for (int j = 0; j < 3; ++j) D[j][j] = (j + 1) * v;
  auto eq = sign_lemma_check(D, p2);
  CHECK(eq.diagonal == doctest::Approx(eq.C).epsilon(1e-14));

  // 2x2 against an explicit enumeration of the four sign vectors.
  std::mt19937_64 rng(13);
  std::vector<std::vector<VectorXd>> F(2, std::vector<VectorXd>(2));
  for (auto& row : F)
    for (auto& f : row) f = random_vec(rng, 4);
  double C = 0.0;
  for (double d0 : {-1.0, 1.0})
    for (double d1 : {-1.0, 1.0}) {
      const double a = oracle::pnorm(d0 * F[0][0] + d1 * F[1][0], 2.0);
      const double b = oracle::pnorm(d0 * F[0][1] + d1 * F[1][1], 2.0);
      C = std::max(C, std::sqrt(a * a + b * b));
    }
  auto two = sign_lemma_check(F, p2);
  CHECK(two.C == doctest::Approx(C).epsilon(1e-14));
  CHECK(two.diagonal == doctest::Approx(std::hypot(oracle::pnorm(F[0][0], 2), oracle::pnorm(F[1][1], 2))));
  CHECK(two.holds);

  for (double pv : {1.0, 1.5, 2.0, 3.0})
    for (int n : {3, 6, 10}) {
      std::vector<std::vector<VectorXd>> G(n, std::vector<VectorXd>(n));
      for (auto& row : G)
        for (auto& f : row) f = random_vec(rng, 3);
      CHECK(sign_lemma_check(G, Exponent(pv)).holds);
    }

  std::vector<std::vector<VectorXd>> big(13, std::vector<VectorXd>(13, VectorXd::Zero(1)));
  CHECK_THROWS_AS(sign_lemma_check(big, p2), GuardExceeded);
}

TEST_CASE("diagonal inequalities") {
  const Exponent p(2.0);
  const auto Z4 = share(GroupModel::cyclic(4));
  const auto R = retraction_from_mean(Z4, uniform_mean(Z4->elements()), p);
  std::mt19937_64 rng(17);

  const ModuleMatrix zero(Z4, MatrixXd::Zero(4, 4), p);
  auto z = singleton_diagonal_check(R, zero);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
  CHECK(z.holds);

  for (int k = 0; k < 20; ++k) {
    const ModuleMatrix U(Z4, random_square(rng, 4), p);
    const std::vector<int> single(4, 0);
    auto one = diagonal_inequality_check(R, U, single, single);
    CHECK(one.lhs == doctest::Approx(oracle::pnorm(R.apply(U), 2.0)));
    CHECK(one.holds);

    // Singleton partitions: sum_s |R(chi_s U)(s)|^2 = sum_s (mean_t U(t,s))^2.
    auto s = singleton_diagonal_check(R, U);
    CHECK(s.lhs == doctest::Approx(oracle::pnorm(U.U.colwise().mean().transpose(), 2.0)).epsilon(1e-14));
    CHECK(s.holds);
  }

  const ModuleMatrix U(Z4, random_square(rng, 4), p);
  CHECK_THROWS(diagonal_inequality_check(R, U, {0, 1, 0, 1}, {0, 0, 0, 0}));
  CHECK_THROWS(diagonal_inequality_check(R, U, {0, 1, 0}, {0, 1, 0}));
}

TEST_CASE("disjoint test operator") {
  const Exponent p(2.0);
  const auto Z4 = share(GroupModel::cyclic(4));
  const ModuleMatrix I(Z4, MatrixXd::Identity(4, 4), p);

  std::vector<VectorXd> xs, fs;
  for (Index i = 0; i < 4; ++i) {
    fs.push_back(VectorXd::Unit(4, i));
    xs.push_back(VectorXd::Unit(4, (i + 1) % 4));
  }
  auto rep = disjoint_test_operator(xs, fs, I);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) CHECK(rep.T.U(i, j) == (j == (i + 1) % 4 ? 1.0 : 0.0));
  CHECK(rep.norm == 1.0);
  CHECK(rep.bound == 1.0);
  CHECK(rep.holds);

  auto empty = disjoint_test_operator({}, {}, I);
  CHECK(empty.T.U.isZero());
  CHECK(empty.holds);

  std::mt19937_64 rng(19);
  const ModuleMatrix U(Z4, random_square(rng, 4), p);
  VectorXd x = random_vec(rng, 4), f = random_vec(rng, 4);
  x /= oracle::pnorm(x, 2.0);
  f /= oracle::pnorm(f, 2.0);
  auto single = disjoint_test_operator({x}, {f}, U);
  CHECK(single.norm <= U.norm() * (1 + 1e-12));

  CHECK_THROWS(disjoint_test_operator({VectorXd::Ones(4), VectorXd::Unit(4, 0)}, {fs[0], fs[1]}, I));
  CHECK_THROWS(disjoint_test_operator({xs[0]}, {}, I));
}

TEST_CASE("module verify") {
  for (double pv : {1.0, 2.0, 3.0}) {
    const auto rep = module_verify(share(GroupModel::symmetric(3)), Exponent(pv), 1, 20);
    CHECK(rep.ok);
    CHECK(rep.inequalities_hold);
    CHECK(rep.norm_upper <= 1.0 + 1e-9);
    CHECK(rep.mean_constant == doctest::Approx(1.0));
    CHECK(rep.residuals.size() == 10);
    for (const auto& [name, v] : rep.residuals) CHECK_MESSAGE(v <= 1e-12, name);
  }
  CHECK(module_verify(share(GroupModel::cyclic(5)), Exponent::infinity(), 2, 10).ok);
}
