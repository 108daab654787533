#include "doctest.h"
#include "oracle.hpp"

#include "mnorm/ball_max.hpp"
#include "mnorm/matrix_norm.hpp"
#include "mnorm/weaksum.hpp"

using namespace mnorm;

namespace {

double grid_mu(const MatrixXd& X, const VectorXd& w, double p, double r) {
  const double rc = oracle::conj(r);
  auto f = [&](const VectorXd& lam) {
    return oracle::pnorm(X.transpose() * w.cwiseProduct(lam), p);
  };
  auto nrm = [&](const VectorXd& lam) { return oracle::wnorm(lam, w, rc); };
  const int per_axis = X.rows() == 1 ? 1 : (X.rows() == 2 ? 4000 : 240);
  return oracle::grid_sup(f, nrm, static_cast<int>(X.rows()), per_axis);
}

void check_witness(const MuResult& res, const MultiVector& x, const Exponent& p, const Exponent& r) {
  const auto& w = x.space()->weights();
  CHECK(lp_norm(res.witness, w, r.conjugate()) <= 1.0 + 1e-12);
  CHECK(mu_objective(p, x, res.witness) == doctest::Approx(res.value).epsilon(1e-9));
  CHECK(res.value <= res.upper_bound);
}

}  // namespace

TEST_CASE("ball maximization of a norm") {
  // max |A u|_2 over the l^2 ball is the top singular value.
  const MatrixXd A{{2.0, 1.0, 0.0}, {0.0, 1.0, 3.0}};
  ConvexObjective g = [&](const Eigen::Ref<const VectorXd>& u) { return (A * u).norm(); };
  const double sigma = Eigen::JacobiSVD<MatrixXd>(A).singularValues()(0);
  BallMaxResult r = maximize_on_ball(g, 3, Exponent(2.0));
  CHECK(r.lower <= sigma + 1e-12);
  CHECK(r.upper >= sigma - 1e-12);
  CHECK(r.upper - r.lower <= 1e-6 * sigma);
  r = maximize_on_ball(g, 3, Exponent(1.0));
  CHECK(r.exact);
  CHECK(r.lower == doctest::Approx(3.0));
  r = maximize_on_ball(g, 3, Exponent::infinity());
  CHECK(r.exact);
  CHECK(r.lower == doctest::Approx(std::sqrt(9.0 + 16.0)));
}

TEST_CASE("matrix norm exact routes") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const MatrixXd A = oracle::random_matrix(rng, 3, 3);
    const double sigma = Eigen::JacobiSVD<MatrixXd>(A).singularValues()(0);
    auto r22 = matrix_norm(A, Exponent(2.0), Exponent(2.0));
    CHECK(r22.lower == doctest::Approx(sigma).epsilon(1e-12));
    auto r1 = matrix_norm(A, Exponent(1.0), Exponent(3.0));
    double col = 0.0;
    for (Index j = 0; j < 3; ++j) col = std::max(col, oracle::pnorm(A.col(j), 3.0));
    CHECK(r1.lower == doctest::Approx(col).epsilon(1e-12));
    auto rinf = matrix_norm(A, Exponent(3.0), Exponent::infinity());
    double row = 0.0;
    for (Index i = 0; i < 3; ++i) row = std::max(row, oracle::pnorm(A.row(i).transpose(), 1.5));
    CHECK(rinf.lower == doctest::Approx(row).epsilon(1e-12));
    // B&B route agrees with the spectral norm when forced through (2, 2 + tiny).
    auto r3 = matrix_norm(A, Exponent(3.0), Exponent(1.5));
    CHECK(r3.lower <= r3.upper);
    CHECK(r3.upper - r3.lower <= 1e-6 * r3.upper);
    // Duality |A|_{a->b} = |A^T|_{b'->a'}.
    auto r3d = matrix_norm(A.transpose(), Exponent(1.5).conjugate(), Exponent(3.0).conjugate());
    CHECK(r3d.lower <= r3.upper + 1e-9);
    CHECK(r3.lower <= r3d.upper + 1e-9);
  }
}

TEST_CASE("mu examples") {
  auto s = DiscreteSpace::counting(2);
  MultiVector lam(s, MatrixXd::Identity(2, 2));
  auto r = mu(Exponent(1.0), lam, Exponent::infinity());
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(r.method == Method::closed_form);
  CHECK(mu_pointwise_sup(lam) == 1.0);
  // Cross-check by brute force over sign patterns alpha.
  double brute = 0.0;
  for (double a0 : {-1.0, 1.0})
    for (double a1 : {-1.0, 1.0}) brute = std::max(brute, (a0 * lam.column(0) + a1 * lam.column(1)).cwiseAbs().maxCoeff());
  CHECK(brute == doctest::Approx(r.value));

  r = mu(Exponent(2.0), lam, Exponent(2.0));
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(r.upper_bound == doctest::Approx(1.0));

  MultiVector ones(s, MatrixXd::Ones(2, 2));
  CHECK(mu_pointwise_sup(ones) == 2.0);
  CHECK(mu(Exponent(1.0), ones, Exponent::infinity()).value == doctest::Approx(2.0));

  MultiVector single(s, MatrixXd{{1.0}, {-3.0}});
  CHECK(mu_pointwise_sup(single) == 3.0);
  CHECK_THROWS_AS(mu(Exponent::infinity(), lam, Exponent(2.0)), std::invalid_argument);
}

TEST_CASE("mu of a single vector is its norm") {
  std::mt19937_64 rng(3);
  for (double pv : {1.0, 1.5, 2.0, 3.0})
    for (double rv : {1.0, 1.5, 2.0, 3.0, double(INFINITY)}) {
      const VectorXd w = oracle::random_weights(rng, 4);
      MultiVector x(oracle::space_with(w), oracle::random_matrix(rng, 4, 1));
      auto res = mu(Exponent(pv), x, Exponent(rv));
      CHECK(res.value == doctest::Approx(oracle::wnorm(x.column(0), w, rv)).epsilon(1e-9));
      check_witness(res, x, Exponent(pv), Exponent(rv));
    }
}

TEST_CASE("mu agrees with a dual-sphere grid oracle") {
  std::mt19937_64 rng(2024);
  for (Index m = 1; m <= 3; ++m)
    for (Index n = 1; n <= 3; ++n)
      for (double pv : {1.0, 2.0, 3.0})
        for (double rv : {1.0, 2.0, 3.0}) {
          const VectorXd w = oracle::random_weights(rng, m);
          MultiVector x(oracle::space_with(w), oracle::random_matrix(rng, m, n));
          const Exponent p(pv), r(rv);
          auto res = mu(p, x, r);
          check_witness(res, x, p, r);
          const double ref = grid_mu(x.columns(), w, pv, rv);
          CHECK(ref <= res.upper_bound * (1.0 + 1e-9));
          CHECK(std::abs(res.value - ref) <= 1e-3 * ref);
        }
}

TEST_CASE("mu is nonincreasing in p") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    MultiVector x(oracle::space_with(oracle::random_weights(rng, 3)), oracle::random_matrix(rng, 3, 3));
    double prev_upper = INFINITY;
    for (double pv : {1.0, 1.5, 2.0, 3.0, 6.0}) {
      auto res = mu(Exponent(pv), x, Exponent(2.0));
      CHECK(res.value <= prev_upper + 1e-9);
      prev_upper = res.upper_bound;
    }
  }
}

TEST_CASE("mu equals the matrix norm where both are exact") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const MatrixXd X = oracle::random_matrix(rng, 3, 2);
    MultiVector x(DiscreteSpace::counting(3), X);
    const double sigma = Eigen::JacobiSVD<MatrixXd>(X).singularValues()(0);
    CHECK(mu(Exponent(2.0), x, Exponent(2.0)).value == doctest::Approx(sigma).epsilon(1e-9));
    double rowmax = 0.0;
    for (Index k = 0; k < 3; ++k) rowmax = std::max(rowmax, oracle::pnorm(X.row(k).transpose(), 1.5));
    CHECK(mu(Exponent(1.5), x, Exponent::infinity()).value == doctest::Approx(rowmax).epsilon(1e-9));
  }
}

TEST_CASE("Holder interpolation") {
  std::mt19937_64 rng(17);
  auto s = oracle::space_with(oracle::random_weights(rng, 3));
  MultiVector x(s, oracle::random_matrix(rng, 3, 3));
  const Exponent two(2.0);
  auto rep = holder_interpolation_check(Exponent(1.0), two, two, VectorXd::Ones(3), x, two);
  CHECK(rep.holds);
  rep = holder_interpolation_check(Exponent(1.0), two, two, VectorXd::Zero(3), x, two);
  CHECK(rep.lhs_lower == 0.0);
  CHECK(rep.holds);
  for (int trial = 0; trial < 10; ++trial) {
    const VectorXd alpha = oracle::random_matrix(rng, 3, 1).col(0);
    MultiVector y(s, oracle::random_matrix(rng, 3, 3));
    rep = holder_interpolation_check(Exponent(1.0), two, two, alpha, y, Exponent(1.5));
    CHECK(rep.holds);
    // Independent grid evaluation of both sides.
    const VectorXd& w = s->weights();
    const double lhs = grid_mu(y.columns() * alpha.asDiagonal(), w, 1.0, 1.5);
    const double rhs = oracle::pnorm(alpha, 2.0) * grid_mu(y.columns(), w, 2.0, 1.5);
    CHECK(lhs <= rhs * (1.0 + 1e-3));
  }
  CHECK_THROWS_AS(holder_interpolation_check(Exponent(1.0), two, Exponent(3.0), VectorXd::Ones(3), x, two),
                  std::invalid_argument);
}
