#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cloneq/optimize.hpp"

using namespace cloneq::opt;

namespace {

/// Brute-force oracle for the moment table: integrate alpha^m (1-alpha^2)^(k/2)
/// as sin^m(t) cos^(k+1)(t) over [0, pi/2] with a 10^4-point Gauss rule. The
/// substituted integrand is smooth, so this is accurate to machine precision.
double moment_oracle(int m, int k) {
  double sum = 0;
  for (const auto& [u, w] : gauss_legendre_unit(10000)) {
    const double t = std::numbers::pi / 2.0 * u;
    sum += w * std::pow(std::sin(t), m) * std::pow(std::cos(t), k + 1) * std::numbers::pi / 2.0;
  }
  return sum;
}

QuadraticObjective one_dim_square() {
  QuadraticObjective q;
  q.dim = 1;
  q.quad = {{Rational(1)}};
  q.linear = {Rational(0)};
  q.constant = Rational(0);
  return q;
}

}  // namespace

TEST_CASE("moment table matches stated values") {
  CHECK(moment(0, 0).rational_part == Rational(1));
  CHECK(moment(4, 0).rational_part == Rational(1, 5));
  CHECK(moment(2, 2).rational_part == Rational(2, 15));
  CHECK(moment(0, 4).rational_part == Rational(8, 15));
  CHECK(moment(3, 1).rational_part == Rational(2, 15));
  CHECK(moment(1, 3).rational_part == Rational(1, 5));
  // even m with odd k picks up a factor of pi
  CHECK(moment(0, 1).pi_part == Rational(1, 4));
  CHECK(moment(2, 1).pi_part == Rational(1, 16));
}

TEST_CASE("moment table against brute-force quadrature") {
  for (int m = 0; m <= 8; ++m) {
    for (int k = 0; k <= 4; ++k) {
      const AlphaMoment v = moment(m, k);
      CHECK(v.value() > 0.0);
      CHECK(std::abs(v.value() - moment_oracle(m, k)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(moment(9, 0), std::out_of_range);
  CHECK_THROWS_AS(moment(0, 5), std::out_of_range);
  CHECK_THROWS_AS(moment(-1, 0), std::out_of_range);
}

TEST_CASE("stationary point of x^2 is the origin") {
  const auto sp = stationary_point(one_dim_square());
  REQUIRE_FALSE(sp.indeterminate);
  CHECK(sp.point[0] == Rational(0));
  CHECK(sp.value == Rational(0));
}

TEST_CASE("stationary point solves a 2x2 rational system exactly") {
  // q = x^2 + xy + y^2 - x: grad = (2x + y - 1, x + 2y) = 0 at (2/3, -1/3)
  QuadraticObjective q;
  q.dim = 2;
  q.quad = {{Rational(1), Rational(1, 2)}, {Rational(1, 2), Rational(1)}};
  q.linear = {Rational(-1), Rational(0)};
  q.constant = Rational(0);
  const auto sp = stationary_point(q);
  REQUIRE_FALSE(sp.indeterminate);
  CHECK(sp.point[0] == Rational(2, 3));
  CHECK(sp.point[1] == Rational(-1, 3));
  CHECK(sp.value == Rational(-1, 3));
}

TEST_CASE("singular quadratic part reports indeterminate") {
  QuadraticObjective q;
  q.dim = 2;
  q.quad = {{Rational(1), Rational(1)}, {Rational(1), Rational(1)}};
  q.linear = {Rational(1), Rational(0)};
  q.constant = Rational(0);
  CHECK(stationary_point(q).indeterminate);
}

TEST_CASE("exact hessian classification") {
  const RationalMatrix identity = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
  CHECK(classify_hessian(identity) == Definiteness::PositiveDefinite);
  const RationalMatrix neg = {{Rational(-2), Rational(0)}, {Rational(0), Rational(-3)}};
  CHECK(classify_hessian(neg) == Definiteness::NegativeDefinite);
  const RationalMatrix saddle = {{Rational(1), Rational(0)}, {Rational(0), Rational(-1)}};
  CHECK(classify_hessian(saddle) == Definiteness::Indefinite);
  const RationalMatrix rank1 = {{Rational(1), Rational(1)}, {Rational(1), Rational(1)}};
  CHECK(classify_hessian(rank1) == Definiteness::Singular);
  // zero leading minor but nonsingular: cannot be definite
  const RationalMatrix zero_corner = {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
  CHECK(classify_hessian(zero_corner) == Definiteness::Indefinite);
}

TEST_CASE("floating hessian classification") {
  Eigen::MatrixXd m(2, 2);
  m << 4.0, 1.0, 1.0, 3.0;
  CHECK(classify_hessian(m) == Definiteness::PositiveDefinite);
  m << 1.0, 2.0, 2.0, 1.0;
  CHECK(classify_hessian(m) == Definiteness::Indefinite);
  m << 1.0, 1.0, 1.0, 1.0 + 1e-15;
  CHECK(classify_hessian(m) == Definiteness::Singular);
}

TEST_CASE("classification is consistent with second differences") {
  QuadraticObjective q;
  q.dim = 2;
  q.quad = {{Rational(3), Rational(1)}, {Rational(1), Rational(2)}};
  q.linear = {Rational(1), Rational(-1)};
  q.constant = Rational(2);
  REQUIRE(classify_hessian(q.hessian()) == Definiteness::PositiveDefinite);
  const auto sp = stationary_point(q);
  const double base = sp.value.to_double();
  const double x0 = sp.point[0].to_double(), x1 = sp.point[1].to_double();
  const double h = 1e-3;
  for (const auto& [dx, dy] : {std::pair{h, 0.0}, {0.0, h}, {-h, 0.0}, {0.0, -h}, {h, h}}) {
    const double probe[] = {x0 + dx, x1 + dy};
    CHECK(q.eval(probe) >= base - 1e-15);
  }
}

TEST_CASE("constrained quadratic maximization on the phase-covariant ellipse") {
  Eigen::MatrixXd q(2, 2);
  q << 2.0, -2.0, -2.0, 6.0;
  const auto best = constrained_quadratic_max(q);
  const double expected_max = 0.5 + 0.5 / std::sqrt(2.0);  // 1 / (4 - 2 sqrt 2)
  CHECK(best.value == doctest::Approx(expected_max).epsilon(1e-14));
  CHECK(best.argmax(0) == doctest::Approx(0.5 + std::sqrt(0.125)).epsilon(1e-12));
  CHECK(best.argmax(1) == doctest::Approx(std::sqrt(0.125)).epsilon(1e-12));
  // constraint and first-order stationarity residuals
  const double constraint = best.argmax.transpose() * q * best.argmax;
  CHECK(std::abs(constraint - 1.0) < 1e-12);
  const Eigen::VectorXd lagrange = best.argmax - best.value * (q * best.argmax);
  CHECK(lagrange.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("constrained maximization conventions and errors") {
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
  const auto unit = constrained_quadratic_max(id);
  CHECK(unit.value == doctest::Approx(1.0));
  CHECK(unit.argmax(0) == doctest::Approx(1.0));
  CHECK(std::abs(unit.argmax(1)) < 1e-12);

  Eigen::MatrixXd diag(2, 2);
  diag << 1.0, 0.0, 0.0, 4.0;
  const auto d = constrained_quadratic_max(diag);
  CHECK(d.value == doctest::Approx(1.0));
  CHECK(d.argmax(0) == doctest::Approx(1.0));

  Eigen::MatrixXd indef(2, 2);
  indef << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(constrained_quadratic_max(indef), std::domain_error);
}

TEST_CASE("quadrature spec parsing") {
  CHECK(QuadratureSpec::parse("gauss:128").kind == QuadratureSpec::Kind::GaussLegendre);
  CHECK(QuadratureSpec::parse("gauss:128").nodes == 128);
  CHECK(QuadratureSpec::parse("simpson:257").kind == QuadratureSpec::Kind::Simpson);
  CHECK(QuadratureSpec::parse("gauss:64").str() == "gauss:64");
  CHECK_THROWS_AS(QuadratureSpec::parse("trapezoid:10"), std::invalid_argument);
  CHECK_THROWS_AS(QuadratureSpec::parse("gauss:1"), std::invalid_argument);
  CHECK_THROWS_AS(QuadratureSpec::parse("simpson:4"), std::invalid_argument);
  CHECK_THROWS_AS(QuadratureSpec::parse("gauss"), std::invalid_argument);
}

TEST_CASE("average_over_alpha on reference integrands") {
  CHECK(std::abs(average_over_alpha([](double) { return 1.0; }) - 1.0) < 1e-15);
  CHECK(std::abs(average_over_alpha([](double a) { return std::pow(a, 4); }) - 0.2) < 1e-14);
  // odd surd moment: alpha^3 sqrt(1-alpha^2) -> 2/15
  CHECK(std::abs(average_over_alpha([](double a) { return a * a * a * std::sqrt(1.0 - a * a); }) -
                 2.0 / 15.0) < 1e-13);
  const QuadratureSpec simpson{QuadratureSpec::Kind::Simpson, 2001};
  CHECK(std::abs(average_over_alpha([](double a) { return std::pow(a, 4); }, simpson) - 0.2) <
        1e-10);
  CHECK_THROWS_AS(
      average_over_alpha([](double) { return 1.0; }, QuadratureSpec{QuadratureSpec::Kind::Simpson, 4}),
      std::invalid_argument);
}

TEST_CASE("gauss-legendre nodes are a unit-interval rule") {
  for (int n : {2, 5, 64, 128}) {
    const auto& nw = gauss_legendre_unit(n);
    REQUIRE(static_cast<int>(nw.size()) == n);
    double total = 0;
    for (const auto& [x, w] : nw) {
      CHECK(x > 0.0);
      CHECK(x < 1.0);
      CHECK(w > 0.0);
      total += w;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("merge and fix variable transforms") {
  QuadraticObjective q;
  q.dim = 2;
  q.quad = {{Rational(1), Rational(2)}, {Rational(2), Rational(3)}};
  q.linear = {Rational(4), Rational(5)};
  q.constant = Rational(6);
  // y := x gives (1 + 3 + 4) x^2 + 9 x + 6
  const auto merged = q.merge_vars(0, 1);
  CHECK(merged.dim == 1);
  CHECK(merged.quad[0][0] == Rational(8));
  CHECK(merged.linear[0] == Rational(9));
  CHECK(merged.constant == Rational(6));
  // y := 2 gives x^2 + (4 + 8) x + (6 + 10 + 12)
  const auto fixed = q.fix_var(1, Rational(2));
  CHECK(fixed.dim == 1);
  CHECK(fixed.quad[0][0] == Rational(1));
  CHECK(fixed.linear[0] == Rational(12));
  CHECK(fixed.constant == Rational(28));
}
