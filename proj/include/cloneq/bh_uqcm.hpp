#pragma once

#include <array>
#include <optional>

#include "cloneq/optimize.hpp"
#include "cloneq/qmat.hpp"

namespace cloneq::bh {

/// Machine-state Gram data of the two-machine-state copying transformation:
/// A = <Y0|Y0> = <Y1|Y1>, C = <Y1|Q0> = <Y0|Q1>, with <Q_i|Q_i> = 1 - 2A and
/// all remaining cross overlaps zero. Values are accepted as given; bound
/// checks are reported through joint_csi_feasible rather than enforced here.
struct BHOverlaps {
  double A = 0.0;
  double C = 0.0;

  BHOverlaps(double a, double c);
  double q() const { return 1.0 - 2.0 * A; }
  bool marginal_ok(double tol = 1e-12) const;
  /// A(1-2A) - C^2; nonnegative iff the Gram matrix of the four machine
  /// states is realizable.
  double joint_margin() const { return A * (1.0 - 2.0 * A) - C * C; }

  static BHOverlaps original();  // (1/6, 1/3)
  static BHOverlaps improved();  // ((1 - 1/sqrt2)/2, 1/(2 sqrt2))
};

enum class CsiVerdict { Feasible, MarginalOnly, Infeasible };

std::string csi_verdict_name(CsiVerdict v);

/// Feasible iff the marginal bounds 0<=A<=1/2, 0<=C<=1/(2 sqrt2) hold AND
/// C^2 <= A(1-2A); marginal-only when only the bounds hold.
CsiVerdict joint_csi_feasible(const BHOverlaps& ov, double tol = 1e-12);

/// Reduced state of the original mode after copying (complex amplitudes).
qmat::DensityMatrix2 output_density_a(const qmat::PureQubit& psi, const BHOverlaps& ov);

/// Two-qubit output assembled from the machine-state Gram data; its partial
/// trace over the copy mode reproduces output_density_a.
qmat::DensityMatrix4 joint_output_density(const qmat::PureQubit& psi, const BHOverlaps& ov);

/// D_a = 2A^2(4a^4-4a^2+1) + 2a^2(1-a^2)(1-2C)^2 for real amplitude a.
double hs_norm_a(double alpha, const BHOverlaps& ov);

/// F = sqrt(1 - A + |alpha|^2 |beta|^2 (4C - 2 + 4A)).
double fidelity_closed(const qmat::PureQubit& psi, const BHOverlaps& ov);

/// integral over alpha of Tr[(|psi psi><psi psi| - rho_ab_out)^2], evaluated
/// through the matrix pipeline (the published polynomial for this quantity is
/// inconsistent; see dab2_published).
double avg_hs_norm_ab(const BHOverlaps& ov, const opt::QuadratureSpec& quad = {});

/// The joint-norm polynomial exactly as published. It goes negative on valid
/// inputs and does not reproduce the published averages; kept only for
/// side-by-side comparison behind the published-forms switch.
double dab2_published(double alpha, const BHOverlaps& ov);

/// Components of Q0, Y0, Q1, Y1 in the 2-dimensional machine basis {up, down},
/// orientation Q0 ~ up, Y0 ~ down, Q1 ~ down, Y1 ~ up.
struct MachineRealization {
  std::array<double, 2> q0{}, y0{}, q1{}, y1{};
  /// Max deviation of the two image vectors from orthonormality in the
  /// 8-dimensional joint space.
  double isometry_residual() const;
  BHOverlaps gram() const;
};

/// Exists only when the Gram data is realizable in two machine dimensions,
/// i.e. joint feasibility holds with equality C = sqrt(A(1-2A)).
std::optional<MachineRealization> realize_machine_vectors(const BHOverlaps& ov, double tol = 1e-9);

/// Both columns of the comparison table, recomputed from the operations above.
struct ComparisonTable {
  struct Column {
    double d_a = 0.0;
    double fidelity = 0.0;
    double d_ab_avg = 0.0;
  };
  Column original;
  Column improved;
};

ComparisonTable table1(const opt::QuadratureSpec& quad = {});

}  // namespace cloneq::bh
