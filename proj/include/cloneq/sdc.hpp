#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cloneq/optimize.hpp"
#include "cloneq/qmat.hpp"

namespace cloneq::sdc {

/// Gram data of the four-machine-state protocol: A = <Y0|Y0>, B = <Y1|Y1>,
/// C = <Y1|Q0> = -<Y0|Q1>, with <Q0|Q0> = 1-3A, <Q1|Q1> = 1-3B and
/// <Y0|Y1> = <Qi|Yi> = <Q0|Q1> = 0. Bounds are reported, not enforced.
struct SDCOverlaps {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;

  SDCOverlaps(double a, double b, double c);
  double q0() const { return 1.0 - 3.0 * A; }
  double q1() const { return 1.0 - 3.0 * B; }

  static SDCOverlaps optimum_general();   // (13/59, 9/118, 25/236)
  static SDCOverlaps optimum_equal_ab();  // (5/41, 5/41, -5/82)
  static SDCOverlaps optimum_zero_c();    // (49/282, 19/188, 0)
};

enum class Subcase { General, EqualAB, ZeroC };

Subcase subcase_from_name(const std::string& name);  // general | equalAB | zeroC
std::string subcase_name(Subcase s);

struct CsiReport {
  bool a_marginal = false;  // 0 <= A <= 1/3
  bool b_marginal = false;  // 0 <= B <= 1/3
  bool c_marginal = false;  // |C| <= 1/sqrt(3)
  bool joint = false;       // C^2 <= B(1 - 3A)
  bool feasible() const { return a_marginal && b_marginal && c_marginal && joint; }
  bool marginal_only() const { return a_marginal && b_marginal && c_marginal && !joint; }
};

CsiReport csi_feasible(const SDCOverlaps& ov, double tol = 1e-12);

/// All sixteen terms of the two-qubit output, assembled from the Gram data.
/// Amplitudes must be real.
qmat::DensityMatrix4 joint_output_density(const qmat::PureQubit& psi, const SDCOverlaps& ov);

/// Closed-form reduced state of either output mode (the two coincide).
qmat::DensityMatrix2 output_density_a(const qmat::PureQubit& psi, const SDCOverlaps& ov);

/// D_a = 2[5a^4 A^2 + 5b^4 B^2 + a^2 b^2 (1 + 4C^2 - 6AB)
///        - 2a^3 b A(1+4C) - 2a b^3 B(1-4C)].
double hs_norm_a(double alpha, const SDCOverlaps& ov);

/// Second derivatives of D_a with respect to (A, B, C). Singular for every
/// alpha, which is why the pointwise norm has no Hessian-certified minimum.
Eigen::Matrix3d hessian_Da(double alpha);

/// Exact-rational alpha-average of D_a, assembled from the moment table.
/// Variables: General (A,B,C); EqualAB (A,C) with B = A; ZeroC (A,B).
opt::QuadraticObjective averaged_objective(Subcase subcase);

/// Average of D_a over alpha at the given overlaps, via the closed form.
double avg_hs_norm(const SDCOverlaps& ov, Subcase subcase = Subcase::General);

struct SubcaseOptimum {
  Subcase subcase = Subcase::General;
  opt::RationalVector point;  // subcase variables
  opt::Rational d_bar;
  opt::Definiteness hessian = opt::Definiteness::PositiveDefinite;
  std::array<opt::Rational, 3> abc() const;  // expanded to (A, B, C)
  SDCOverlaps overlaps() const;
};

SubcaseOptimum optimize_subcase(Subcase subcase);

/// F = [(1-2A)a^4 + 2(A+C)a^3 b + 2(A+B)a^2 b^2 + 2(B-C)a b^3 + (1-2B)b^4]^(1/2).
double fidelity(const qmat::PureQubit& psi, const SDCOverlaps& ov);

/// Exact alpha-average of F^2; the published closed form for the averaged
/// fidelity is the square root of this quantity.
opt::Rational avg_fidelity_squared(const opt::Rational& A, const opt::Rational& B,
                                   const opt::Rational& C);
double avg_fidelity(const SDCOverlaps& ov);

/// The averaged fidelity taken literally as integral of F d(alpha); kept for
/// comparison against the closed form, which it does not reproduce.
double avg_fidelity_literal(const SDCOverlaps& ov, const opt::QuadratureSpec& quad = {});

/// Spectral gap K of the output state, so the eigenvalues are (1 +- K)/2.
/// Closed-form radicand; the published version carries a sign/power typo on
/// the 20 a^4 A^2 term, fixed here to match the spectral gap identically.
double entropy_K(const qmat::PureQubit& psi, const SDCOverlaps& ov);

double avg_entropy(const SDCOverlaps& ov, qmat::LogBase base = qmat::LogBase::Two,
                   const opt::QuadratureSpec& quad = {});

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Feasibility of the "perfect cloning" parameter curves against the CSI
/// bounds. EqualAB: A(alpha) = alpha sqrt(1-alpha^2) vs A <= 1/3 and
/// C(alpha) = 2 alpha^2 - 1 vs |C| <= 1/sqrt(3). ZeroC: A = alpha/(2 beta)
/// and B = beta/(2 alpha) vs 1/3. Disjoint feasible sets mean no alpha
/// admits the perfect-cloning overlaps.
struct FeasibilityReport {
  Subcase subcase = Subcase::EqualAB;
  std::string first_name, second_name;
  std::vector<Interval> first_feasible, second_feasible, intersection;
  bool disjoint = false;
  std::optional<std::array<double, 2>> published_endpoints;  // ZeroC: {0.6546, 0.8944}
  bool published_mismatch = false;

  struct Sample {
    double alpha = 0.0;
    double first_value = 0.0;
    double second_value = 0.0;
    bool first_ok = false;
    bool second_ok = false;
  };
  std::vector<Sample> samples;
};

FeasibilityReport feasibility_curves(Subcase subcase, int samples);

}  // namespace cloneq::sdc
