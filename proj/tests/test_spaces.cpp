#include "doctest.h"
#include "oracle.hpp"

#include "mnorm/space.hpp"

using namespace mnorm;

TEST_CASE("conjugate exponents") {
  CHECK(conjugate(Exponent(2.0)) == Exponent(2.0));
  CHECK(conjugate(Exponent(1.0)).is_inf());
  CHECK(conjugate(Exponent::infinity()).is_one());
  CHECK(conjugate(Exponent(3.0)).value() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK_THROWS_AS(Exponent(0.5), std::invalid_argument);
  CHECK_THROWS_AS(Exponent(std::nan("")), std::invalid_argument);
}

TEST_CASE("conjugate is an involution on a grid") {
  std::vector<Exponent> grid{Exponent::infinity()};
  for (int i = 0; i < 49; ++i) grid.emplace_back(1.0 + 0.37 * i * i);
  for (const auto& p : grid) {
    CHECK(conjugate(conjugate(p)) == p);
    CHECK(p.reciprocal() + p.conjugate().reciprocal() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("exponent parsing") {
  CHECK(Exponent::parse("inf").is_inf());
  CHECK(Exponent::parse(" Infinity ").is_inf());
  CHECK(Exponent::parse("1.5").value() == 1.5);
  CHECK_THROWS(Exponent::parse("abc"));
  CHECK_THROWS(Exponent::parse("2x"));
  CHECK(Exponent::parse(Exponent(2.25).to_string()) == Exponent(2.25));
}

TEST_CASE("lp_norm examples") {
  auto unit = DiscreteSpace::counting(2);
  CHECK(lp_norm(Vector(unit, VectorXd{{3.0, 4.0}}), Exponent(2.0)) == doctest::Approx(5.0));
  auto weighted = DiscreteSpace::make({"a", "b"}, VectorXd{{2.0, 3.0}});
  CHECK(lp_norm(Vector(weighted, VectorXd{{1.0, 1.0}}), Exponent(1.0)) == doctest::Approx(5.0));
  CHECK(lp_norm(Vector(unit, VectorXd{{1.0, -2.0}}), Exponent::infinity()) == 2.0);
}

TEST_CASE("space validation") {
  CHECK_THROWS_AS(DiscreteSpace({}, VectorXd()), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteSpace({"a", "a"}, VectorXd::Ones(2)), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteSpace({"a", "b"}, VectorXd{{1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteSpace({"a"}, VectorXd::Ones(2)), std::invalid_argument);
  auto s = DiscreteSpace::counting(3);
  CHECK_THROWS_AS(Vector(s, VectorXd::Ones(2)), std::invalid_argument);
  CHECK_THROWS_AS(MultiVector(s, MatrixXd(3, 0)), std::invalid_argument);
}

TEST_CASE("Holder inequality and weight scaling") {
  std::mt19937_64 rng(7);
  const std::vector<Exponent> ps{Exponent(1.0), Exponent(1.5), Exponent(2.0), Exponent(3.0),
                                 Exponent::infinity()};
  for (int trial = 0; trial < 50; ++trial) {
    const VectorXd w = oracle::random_weights(rng, 5);
    auto s = oracle::space_with(w);
    const VectorXd f = oracle::random_matrix(rng, 5, 1).col(0);
    const VectorXd g = oracle::random_matrix(rng, 5, 1).col(0);
    for (const auto& p : ps) {
      const double lhs = std::abs(pairing(*s, f, g));
      CHECK(lhs <= lp_norm(Vector(s, f), p) * lp_norm(Vector(s, g), p.conjugate()) + 1e-12);
      CHECK(lp_norm(Vector(s, f), p) == doctest::Approx(oracle::wnorm(f, w, p.value())));
      if (!p.is_inf()) {
        auto s2 = oracle::space_with(2.0 * w);
        CHECK(lp_norm(Vector(s2, f), p) ==
              doctest::Approx(std::pow(2.0, p.reciprocal()) * lp_norm(Vector(s, f), p)));
      }
    }
  }
}

TEST_CASE("duality map") {
  const VectorXd v{{1.0, -2.0, 0.5}};
  for (double pv : {1.0, 1.5, 2.0, 4.0, double(INFINITY)}) {
    const Exponent p(pv);
    const VectorXd d = duality_map(v, p);
    CHECK(d.dot(v) == doctest::Approx(lp_norm(v, p)));
    CHECK(lp_norm(d, p.conjugate()) == doctest::Approx(1.0));
  }
}

TEST_CASE("scale_by") {
  auto s = DiscreteSpace::counting(2);
  MultiVector x(s, MatrixXd::Identity(2, 2));
  CHECK(scale_by(VectorXd::Ones(2), x).columns() == x.columns());
  CHECK(scale_by(VectorXd::Zero(2), x).columns().isZero(0.0));
  const MatrixXd y = scale_by(VectorXd{{2.0, -1.0}}, x).columns();
  CHECK(y(0, 0) == 2.0);
  CHECK(y(1, 0) == 0.0);
  CHECK(y(0, 1) == 0.0);
  CHECK(y(1, 1) == -1.0);
  CHECK_THROWS_AS(scale_by(VectorXd::Ones(3), x), std::invalid_argument);
}

TEST_CASE("multivector helpers") {
  auto s = DiscreteSpace::counting(2);
  MultiVector x(s, std::vector<VectorXd>{VectorXd{{1.0, 2.0}}, VectorXd{{3.0, 4.0}}});
  CHECK(x.n() == 2);
  CHECK(x.with_column(VectorXd::Zero(2)).n() == 3);
  CHECK(x.permuted({1, 0}).column(0)(0) == 3.0);
}
