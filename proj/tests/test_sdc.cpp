#include <doctest.h>

#include <cmath>
#include <random>

#include "cloneq/sdc.hpp"

using namespace cloneq;
using namespace cloneq::sdc;
using opt::Rational;
using qmat::PureQubit;

namespace {

std::mt19937_64 rng(20240814);

double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

SDCOverlaps random_marginal_overlaps() {
  return {uniform(0.0, 1.0 / 3.0), uniform(0.0, 1.0 / 3.0),
          uniform(-1.0, 1.0) / std::sqrt(3.0)};
}

/// Overlaps whose full machine-state Gram matrix is positive semidefinite,
/// so every derived state is physical.
SDCOverlaps random_realizable_overlaps() {
  const double a = uniform(0.0, 1.0 / 3.0), b = uniform(0.0, 1.0 / 3.0);
  const double cmax = std::sqrt(std::min(b * (1.0 - 3.0 * a), a * (1.0 - 3.0 * b)));
  return {a, b, uniform(-1.0, 1.0) * cmax};
}

}  // namespace

TEST_CASE("reduced output at the general optimum, alpha = 1") {
  const auto rho = output_density_a(PureQubit::from_alpha(1.0), SDCOverlaps::optimum_general());
  CHECK(std::abs(rho(0, 0).real() - 33.0 / 59.0) < 1e-14);
  CHECK(std::abs(rho(0, 1).real() - 13.0 / 59.0) < 1e-14);
  CHECK(std::abs(rho(1, 0).real() - 13.0 / 59.0) < 1e-14);
  CHECK(std::abs(rho(1, 1).real() - 26.0 / 59.0) < 1e-14);
}

TEST_CASE("reduced output edge cases") {
  const auto psi = PureQubit::from_alpha(0.6);
  const auto blank = output_density_a(psi, SDCOverlaps(0.0, 0.0, 0.0));
  CHECK(std::abs(blank(0, 0).real() - 0.36) < 1e-15);
  CHECK(std::abs(blank(1, 1).real() - 0.64) < 1e-15);
  CHECK(std::abs(blank(0, 1)) < 1e-15);

  // the "perfect cloning" overlaps copy exactly, but violate the CSI bounds
  const double a = 0.6, b = 0.8;
  const SDCOverlaps perfect(a * b, a * b, a * a - b * b);
  const auto rho = output_density_a(psi, perfect);
  CHECK((rho.matrix() - psi.density()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(std::abs(hs_norm_a(0.6, perfect)) < 1e-14);
  CHECK(std::abs(fidelity(psi, perfect) - 1.0) < 1e-14);
  CHECK(std::abs(entropy_K(psi, perfect) - 1.0) < 1e-12);
  CHECK(std::abs(qmat::von_neumann_entropy(rho)) < 1e-12);

  CHECK_THROWS_AS(output_density_a(PureQubit(qmat::Complex(0.6, 0.2), qmat::Complex(0.7, 0.1)),
                                   SDCOverlaps(0.1, 0.1, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("joint output: trace, symmetry, reductions") {
  for (int i = 0; i < 1000; ++i) {
    const auto ov = random_marginal_overlaps();
    const auto psi = PureQubit::from_alpha(uniform(0.0, 1.0));
    const auto joint = joint_output_density(psi, ov);
    CHECK(std::abs(joint.matrix().trace().real() - 1.0) < 1e-14);
    const auto reduced_a = qmat::partial_trace(joint, qmat::Mode::A);
    const auto reduced_b = qmat::partial_trace(joint, qmat::Mode::B);
    const auto closed = output_density_a(psi, ov);
    CHECK((reduced_a.matrix() - closed.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((reduced_b.matrix() - closed.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  }
  const auto pure = joint_output_density(PureQubit::from_alpha(1.0), SDCOverlaps(0.0, 0.0, 0.0));
  CHECK(std::abs(pure(0, 0) - qmat::Complex(1, 0)) < 1e-15);
  CHECK(std::abs(pure.matrix().cwiseAbs().sum() - 1.0) < 1e-14);
}

TEST_CASE("joint output at the optimum reduces to the closed form") {
  const auto ov = SDCOverlaps::optimum_general();
  for (double alpha : {1.0, 1.0 / std::sqrt(2.0), 0.0, 0.31}) {
    const auto psi = PureQubit::from_alpha(alpha);
    const auto traced = qmat::partial_trace(joint_output_density(psi, ov), qmat::Mode::A);
    CHECK((traced.matrix() - output_density_a(psi, ov).matrix()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("joint output is physical on realizable Gram data") {
  for (int i = 0; i < 300; ++i) {
    const auto ov = random_realizable_overlaps();
    const auto psi = PureQubit::from_alpha(uniform(0.0, 1.0));
    CHECK(joint_output_density(psi, ov).min_eigenvalue() > -1e-10);
  }
}

TEST_CASE("norm closed form matches the matrix route") {
  for (int i = 0; i < 1000; ++i) {
    const auto ov = random_marginal_overlaps();
    const double alpha = uniform(0.0, 1.0);
    const auto psi = PureQubit::from_alpha(alpha);
    const auto rho_id = qmat::DensityMatrix2(psi.density());
    CHECK(std::abs(hs_norm_a(alpha, ov) -
                   qmat::hs_distance(rho_id, output_density_a(psi, ov))) < 1e-12);
  }
}

TEST_CASE("norm reference values") {
  CHECK(std::abs(hs_norm_a(1.0 / std::sqrt(2.0), SDCOverlaps(0.0, 0.0, 0.0)) - 0.5) < 1e-13);
  const double b_val = 0.21;
  CHECK(std::abs(hs_norm_a(0.0, SDCOverlaps(0.05, b_val, 0.3)) - 10.0 * b_val * b_val) < 1e-13);
}

TEST_CASE("pointwise hessian is singular everywhere") {
  const auto h_half = hessian_Da(1.0 / std::sqrt(2.0));
  CHECK(std::abs(h_half.determinant()) < 1e-12);

  const auto h0 = hessian_Da(0.0);
  CHECK(h0(1, 1) == doctest::Approx(20.0));
  CHECK(h0.cwiseAbs().sum() == doctest::Approx(20.0));  // only the B,B entry survives
  CHECK(std::abs(h0.determinant()) < 1e-12);

  CHECK(std::abs(hessian_Da(0.37).determinant()) < 1e-10);
  for (int i = 0; i <= 100; ++i)
    CHECK(std::abs(hessian_Da(i / 100.0).determinant()) < 1e-10);
  CHECK(opt::classify_hessian(Eigen::MatrixXd(hessian_Da(0.37)), 1e-10) ==
        opt::Definiteness::Singular);
}

TEST_CASE("averaged objective coefficients match the printed forms") {
  const auto general = averaged_objective(Subcase::General);
  REQUIRE(general.dim == 3);
  CHECK(general.quad[0][0] == Rational(2));
  CHECK(general.quad[1][1] == Rational(16, 3));
  CHECK(general.quad[2][2] == Rational(16, 15));
  CHECK(general.quad[0][1] == Rational(-4, 5));
  CHECK(general.quad[0][2] == Rational(-16, 15));
  CHECK(general.quad[1][2] == Rational(8, 5));
  CHECK(general.linear[0] == Rational(-8, 15));
  CHECK(general.linear[1] == Rational(-4, 5));
  CHECK(general.linear[2] == Rational(0));
  CHECK(general.constant == Rational(4, 15));

  // B := A collapses to 2[43/15 A^2 + 2/15 (1 + 4C^2) - 2/3 A + 8/15 AC]
  const auto equal_ab = averaged_objective(Subcase::EqualAB);
  REQUIRE(equal_ab.dim == 2);
  CHECK(equal_ab.quad[0][0] == Rational(86, 15));
  CHECK(equal_ab.quad[1][1] == Rational(16, 15));
  CHECK(equal_ab.quad[0][1] == Rational(8, 15));
  CHECK(equal_ab.linear[0] == Rational(-4, 3));
  CHECK(equal_ab.linear[1] == Rational(0));
  CHECK(equal_ab.constant == Rational(4, 15));

  // C := 0 collapses to 2[A^2 + 8/3 B^2 + 2/15 (1 - 6AB) - 4/15 A - 2/5 B]
  const auto zero_c = averaged_objective(Subcase::ZeroC);
  REQUIRE(zero_c.dim == 2);
  CHECK(zero_c.quad[0][0] == Rational(2));
  CHECK(zero_c.quad[1][1] == Rational(16, 3));
  CHECK(zero_c.quad[0][1] == Rational(-4, 5));
  CHECK(zero_c.linear[0] == Rational(-8, 15));
  CHECK(zero_c.linear[1] == Rational(-4, 5));
  CHECK(zero_c.constant == Rational(4, 15));
}

TEST_CASE("exact optima of the averaged norm") {
  const auto general = optimize_subcase(Subcase::General);
  CHECK(general.point[0] == Rational(13, 59));
  CHECK(general.point[1] == Rational(9, 118));
  CHECK(general.point[2] == Rational(25, 236));
  CHECK(general.d_bar == Rational(157, 885));
  CHECK(general.hessian == opt::Definiteness::PositiveDefinite);

  const auto equal_ab = optimize_subcase(Subcase::EqualAB);
  CHECK(equal_ab.point[0] == Rational(5, 41));
  CHECK(equal_ab.point[1] == Rational(-5, 82));
  CHECK(equal_ab.d_bar == Rational(38, 205));
  CHECK(equal_ab.abc()[1] == Rational(5, 41));  // B expands to A

  const auto zero_c = optimize_subcase(Subcase::ZeroC);
  CHECK(zero_c.point[0] == Rational(49, 282));
  CHECK(zero_c.point[1] == Rational(19, 188));
  CHECK(zero_c.d_bar == Rational(761, 4230));
  CHECK(std::abs(zero_c.d_bar.to_double() - 0.1799) < 5e-5);
}

TEST_CASE("averaged norm closed form agrees with quadrature") {
  const opt::QuadratureSpec quad{};  // gauss:128
  for (const auto& [subcase, ov] :
       {std::pair{Subcase::General, SDCOverlaps::optimum_general()},
        {Subcase::EqualAB, SDCOverlaps::optimum_equal_ab()},
        {Subcase::ZeroC, SDCOverlaps::optimum_zero_c()}}) {
    const double closed = avg_hs_norm(ov, subcase);
    const double general = avg_hs_norm(ov, Subcase::General);
    const double numeric =
        opt::average_over_alpha([&](double a) { return hs_norm_a(a, ov); }, quad);
    CHECK(std::abs(closed - general) < 1e-15);
    CHECK(std::abs(closed - numeric) < 1e-10);
  }
  for (int i = 0; i < 50; ++i) {
    const auto ov = random_marginal_overlaps();
    const double closed = avg_hs_norm(ov);
    const double numeric =
        opt::average_over_alpha([&](double a) { return hs_norm_a(a, ov); }, {});
    CHECK(std::abs(closed - numeric) < 1e-10);
  }
  CHECK_THROWS_AS(avg_hs_norm(SDCOverlaps(0.1, 0.2, 0.0), Subcase::EqualAB),
                  std::invalid_argument);
  CHECK_THROWS_AS(avg_hs_norm(SDCOverlaps(0.1, 0.1, 0.2), Subcase::ZeroC), std::invalid_argument);
}

TEST_CASE("fidelity closed form") {
  CHECK(std::abs(fidelity(PureQubit::from_alpha(1.0), SDCOverlaps(0.0, 0.0, 0.0)) - 1.0) < 1e-15);
  CHECK(std::abs(fidelity(PureQubit::from_alpha(1.0), SDCOverlaps::optimum_general()) -
                 std::sqrt(33.0 / 59.0)) < 1e-14);
  for (int i = 0; i < 300; ++i) {
    const auto ov = random_realizable_overlaps();
    const double alpha = uniform(0.0, 1.0);
    const auto psi = PureQubit::from_alpha(alpha);
    CHECK(std::abs(fidelity(psi, ov) -
                   qmat::fidelity(qmat::DensityMatrix2(psi.density()),
                                  output_density_a(psi, ov))) < 1e-12);
  }
}

TEST_CASE("averaged fidelity closed forms") {
  // exact radicands at the three optima
  CHECK(avg_fidelity_squared(Rational(13, 59), Rational(9, 118), Rational(25, 236)) ==
        Rational(1271, 1770));
  CHECK(avg_fidelity_squared(Rational(5, 41), Rational(5, 41), Rational(-5, 82)) ==
        Rational(436, 615));
  CHECK(avg_fidelity_squared(Rational(49, 282), Rational(19, 188), Rational(0)) ==
        Rational(3029, 4230));

  CHECK(std::abs(avg_fidelity(SDCOverlaps::optimum_general()) - std::sqrt(1271.0 / 1770.0)) <
        1e-14);
  CHECK(std::abs(avg_fidelity(SDCOverlaps::optimum_general()) - 0.8474) < 5e-4);
  CHECK(std::abs(avg_fidelity(SDCOverlaps::optimum_equal_ab()) - 0.8420) < 5e-4);
  CHECK(std::abs(avg_fidelity(SDCOverlaps::optimum_zero_c()) - 0.8462) < 5e-4);
}

TEST_CASE("averaged fidelity reduces to the printed subcase forms") {
  for (int i = 0; i < 200; ++i) {
    const double a = uniform(0.0, 1.0 / 3.0);
    const double c = uniform(-0.5, 0.5);
    const SDCOverlaps equal_ab(a, a, c);
    const double printed_equal = std::sqrt(11.0 / 15.0 - 2.0 / 15.0 * c - 4.0 / 15.0 * a);
    CHECK(std::abs(avg_fidelity(equal_ab) - printed_equal) < 1e-12);

    const double b = uniform(0.0, 1.0 / 3.0);
    const SDCOverlaps zero_c(a, b, 0.0);
    const double printed_zero = std::sqrt(0.2 * (1.0 - 2.0 * a) + 4.0 / 15.0 * (2.0 * a + b) +
                                          0.4 * b + 8.0 / 15.0 * (1.0 - 2.0 * b));
    CHECK(std::abs(avg_fidelity(zero_c) - printed_zero) < 1e-12);
  }
}

TEST_CASE("literal fidelity integral differs from the closed form") {
  const auto ov = SDCOverlaps::optimum_general();
  const double literal = avg_fidelity_literal(ov);
  const double closed = avg_fidelity(ov);
  CHECK(std::abs(literal - closed) > 1e-4);  // the published convention is sqrt of the mean square
  CHECK(std::abs(literal - closed) < 5e-3);  // but they are close
}

TEST_CASE("entropy gap equals the spectral gap") {
  CHECK(std::abs(entropy_K(PureQubit::from_alpha(1.0), SDCOverlaps(0.0, 0.0, 0.0)) - 1.0) < 1e-15);
  CHECK(std::abs(entropy_K(PureQubit::from_alpha(1.0), SDCOverlaps::optimum_general()) -
                 std::sqrt(725.0) / 59.0) < 1e-13);
  CHECK(std::abs(entropy_K(PureQubit::from_alpha(1.0), SDCOverlaps::optimum_general()) -
                 2.0 * 0.228184) < 1e-5);
  for (int i = 0; i < 1000; ++i) {
    const auto ov = random_marginal_overlaps();
    const double alpha = uniform(0.0, 1.0);
    const auto psi = PureQubit::from_alpha(alpha);
    const auto rho = output_density_a(psi, ov);
    const double gap = std::sqrt(std::norm(rho(0, 0) - rho(1, 1)) + 4.0 * std::norm(rho(0, 1)));
    CHECK(std::abs(entropy_K(psi, ov) - gap) < 1e-12);
  }
}

TEST_CASE("entropy of the optimum output at alpha = 1") {
  const auto rho = output_density_a(PureQubit::from_alpha(1.0), SDCOverlaps::optimum_general());
  const auto ev = rho.eigenvalues();
  CHECK(std::abs(ev(1) - 0.72818) < 5e-6);
  CHECK(std::abs(ev(0) - 0.27182) < 5e-6);
  // closed-form oracle: lambda = (1 +- sqrt(725)/59)/2 for [[33,13],[13,26]]/59
  const double k = std::sqrt(725.0) / 59.0;
  const double lp = (1.0 + k) / 2.0, lm = (1.0 - k) / 2.0;
  const double expected = -(lp * std::log2(lp) + lm * std::log2(lm));
  CHECK(std::abs(qmat::von_neumann_entropy(rho) - expected) < 1e-12);
  CHECK(std::abs(expected - 0.84404) < 1e-4);
}

TEST_CASE("fidelity radicand guard") {
  CHECK_THROWS_AS(fidelity(PureQubit::from_alpha(1.0), SDCOverlaps(0.8, 0.0, 0.0)),
                  std::domain_error);
}

TEST_CASE("averaged entropy at the optima") {
  CHECK(std::abs(avg_entropy(SDCOverlaps::optimum_general()) - 0.825) < 2e-3);
  CHECK(std::abs(avg_entropy(SDCOverlaps::optimum_equal_ab()) - 0.8438) < 2e-3);
  CHECK(std::abs(avg_entropy(SDCOverlaps::optimum_zero_c()) - 0.8297) < 2e-3);
  // regression pins for the quadrature values themselves
  CHECK(std::abs(avg_entropy(SDCOverlaps::optimum_general()) - 0.8265548874864379) < 1e-9);
  const double base_e = avg_entropy(SDCOverlaps::optimum_general(), qmat::LogBase::E);
  CHECK(std::abs(base_e - 0.5729241898392675) < 1e-9);
  CHECK(std::abs(base_e - avg_entropy(SDCOverlaps::optimum_general()) * std::log(2.0)) < 1e-12);
}

TEST_CASE("feasibility curves: equal-overlap subcase") {
  const auto report = feasibility_curves(Subcase::EqualAB, 101);
  REQUIRE(report.first_feasible.size() == 2);
  REQUIRE(report.second_feasible.size() == 1);
  // closed-form endpoints: alpha^2 (1 - alpha^2) = 1/9 and 2 alpha^2 - 1 = +-1/sqrt3
  const double r1 = std::sqrt((3.0 - std::sqrt(5.0)) / 6.0);
  const double r2 = std::sqrt((3.0 + std::sqrt(5.0)) / 6.0);
  const double c1 = std::sqrt((1.0 - 1.0 / std::sqrt(3.0)) / 2.0);
  const double c2 = std::sqrt((1.0 + 1.0 / std::sqrt(3.0)) / 2.0);
  CHECK(std::abs(report.first_feasible[0].hi - r1) < 1e-9);
  CHECK(std::abs(report.first_feasible[1].lo - r2) < 1e-9);
  CHECK(std::abs(report.second_feasible[0].lo - c1) < 1e-9);
  CHECK(std::abs(report.second_feasible[0].hi - c2) < 1e-9);
  // the published 4-digit endpoints
  CHECK(std::abs(report.first_feasible[0].hi - 0.3568) < 1e-3);
  CHECK(std::abs(report.first_feasible[1].lo - 0.9342) < 1e-3);
  CHECK(std::abs(report.second_feasible[0].lo - 0.4597) < 1e-3);
  CHECK(std::abs(report.second_feasible[0].hi - 0.8881) < 1e-3);
  CHECK(report.disjoint);
  CHECK(report.intersection.empty());
  // endpoint defining equations hold
  const double x = report.first_feasible[0].hi;
  CHECK(std::abs(x * x * (1.0 - x * x) - 1.0 / 9.0) < 1e-12);
  REQUIRE(report.samples.size() == 101);
  CHECK(std::abs(report.samples.front().first_value) < 1e-15);
  CHECK(std::abs(report.samples.front().second_value + 1.0) < 1e-15);
}

TEST_CASE("feasibility curves: vanishing cross overlap subcase") {
  const auto report = feasibility_curves(Subcase::ZeroC, 11);
  REQUIRE(report.first_feasible.size() == 1);
  REQUIRE(report.second_feasible.size() == 1);
  CHECK(std::abs(report.first_feasible[0].hi - 2.0 / std::sqrt(13.0)) < 1e-9);
  CHECK(std::abs(report.second_feasible[0].lo - 3.0 / std::sqrt(13.0)) < 1e-9);
  CHECK(report.disjoint);
  REQUIRE(report.published_endpoints.has_value());
  CHECK(report.published_mismatch);  // derived endpoints disagree with the published ones
  // endpoint rows are clamped to the open interval, never infinite
  for (const auto& s : report.samples) {
    CHECK(std::isfinite(s.first_value));
    CHECK(std::isfinite(s.second_value));
  }
  CHECK_FALSE(report.samples.back().first_ok);
  CHECK(report.samples.back().second_ok);
  CHECK_THROWS_AS(feasibility_curves(Subcase::General, 11), std::invalid_argument);
  CHECK_THROWS_AS(feasibility_curves(Subcase::ZeroC, 1), std::invalid_argument);
}

TEST_CASE("CSI feasibility report") {
  const auto at_optimum = csi_feasible(SDCOverlaps::optimum_general());
  CHECK(at_optimum.feasible());
  // joint margin: C^2 = 0.01122 <= B(1-3A) = 0.02585
  const auto ov = SDCOverlaps::optimum_general();
  CHECK(std::abs(ov.C * ov.C - 0.011222) < 1e-4);
  CHECK(std::abs(ov.B * (1.0 - 3.0 * ov.A) - 0.025853) < 1e-4);

  const auto saturated = csi_feasible(SDCOverlaps(1.0 / 3.0, 1.0 / 3.0, 0.5));
  CHECK(saturated.a_marginal);
  CHECK(saturated.b_marginal);
  CHECK(saturated.c_marginal);
  CHECK_FALSE(saturated.joint);  // 0.25 > 0
  CHECK_FALSE(saturated.feasible());
  CHECK(saturated.marginal_only());

  CHECK(csi_feasible(SDCOverlaps(0.0, 0.0, 0.0)).feasible());
  CHECK_FALSE(csi_feasible(SDCOverlaps(0.4, 0.0, 0.0)).a_marginal);
  CHECK_FALSE(csi_feasible(SDCOverlaps(0.0, 0.0, 0.99)).c_marginal);
}

TEST_CASE("subcase names round-trip") {
  for (Subcase s : {Subcase::General, Subcase::EqualAB, Subcase::ZeroC})
    CHECK(subcase_from_name(subcase_name(s)) == s);
  CHECK_THROWS_AS(subcase_from_name("fancy"), std::invalid_argument);
}
