#include "cloneq/bh_uqcm.hpp"

#include <cmath>
#include <stdexcept>

namespace cloneq::bh {

namespace {

using qmat::Complex;
using qmat::Mat2;
using qmat::Mat4;

constexpr double kCBoundFactor = 0.35355339059327373;  // 1/(2 sqrt 2)

/// Machine-vector coefficients of the joint output in the order
/// (Q0, Y0, Q1, Y1): |out> = sum_p |p>_ab (x) |m_p>_x.
std::array<Eigen::Vector4cd, 4> machine_coefficients(const qmat::PureQubit& psi) {
  const Complex a = psi.alpha(), b = psi.beta();
  std::array<Eigen::Vector4cd, 4> m;
  m[0] << a, 0, 0, 0;  // |00>: alpha Q0
  m[1] << 0, a, 0, b;  // |01>: alpha Y0 + beta Y1
  m[2] = m[1];         // |10>
  m[3] << 0, 0, b, 0;  // |11>: beta Q1
  return m;
}

Eigen::Matrix4d gram(const BHOverlaps& ov) {
  Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
  g(0, 0) = g(2, 2) = ov.q();
  g(1, 1) = g(3, 3) = ov.A;
  g(0, 3) = g(3, 0) = ov.C;  // <Q0|Y1> = <Y1|Q0>
  g(1, 2) = g(2, 1) = ov.C;  // <Y0|Q1> = <Q1|Y0>
  return g;
}

}  // namespace

BHOverlaps::BHOverlaps(double a, double c) : A(a), C(c) {
  if (!std::isfinite(a) || !std::isfinite(c))
    throw std::invalid_argument("BHOverlaps: non-finite overlaps");
}

bool BHOverlaps::marginal_ok(double tol) const {
  return A >= -tol && A <= 0.5 + tol && C >= -tol && C <= kCBoundFactor + tol;
}

BHOverlaps BHOverlaps::original() { return {1.0 / 6.0, 1.0 / 3.0}; }

BHOverlaps BHOverlaps::improved() {
  return {(1.0 - 1.0 / std::sqrt(2.0)) / 2.0, 1.0 / (2.0 * std::sqrt(2.0))};
}

std::string csi_verdict_name(CsiVerdict v) {
  switch (v) {
    case CsiVerdict::Feasible: return "feasible";
    case CsiVerdict::MarginalOnly: return "marginal-only";
    case CsiVerdict::Infeasible: return "infeasible";
  }
  return "unknown";
}

CsiVerdict joint_csi_feasible(const BHOverlaps& ov, double tol) {
  if (!ov.marginal_ok(tol)) return CsiVerdict::Infeasible;
  return ov.joint_margin() >= -tol ? CsiVerdict::Feasible : CsiVerdict::MarginalOnly;
}

qmat::DensityMatrix2 output_density_a(const qmat::PureQubit& psi, const BHOverlaps& ov) {
  const Complex a = psi.alpha(), b = psi.beta();
  const double pa = std::norm(a), pb = std::norm(b);
  Mat2 m;
  m(0, 0) = pa + (pb - pa) * ov.A;
  m(0, 1) = 2.0 * ov.C * a * std::conj(b);
  m(1, 0) = std::conj(m(0, 1));
  m(1, 1) = pb + (pa - pb) * ov.A;
  return qmat::DensityMatrix2(m);
}

qmat::DensityMatrix4 joint_output_density(const qmat::PureQubit& psi, const BHOverlaps& ov) {
  const auto m = machine_coefficients(psi);
  const Mat4 g = gram(ov).cast<Complex>();
  Mat4 rho;
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) rho(p, q) = (m[q].adjoint() * g * m[p]).value();
  rho = ((rho + rho.adjoint()) / 2.0).eval();
  return qmat::DensityMatrix4(rho);
}

double hs_norm_a(double alpha, const BHOverlaps& ov) {
  if (!(alpha >= -1e-12 && alpha <= 1.0 + 1e-12))
    throw std::invalid_argument("hs_norm_a: alpha must lie in [0,1]");
  const double a2 = alpha * alpha;
  const double one_minus_2c = 1.0 - 2.0 * ov.C;
  return 2.0 * ov.A * ov.A * (4.0 * a2 * a2 - 4.0 * a2 + 1.0) +
         2.0 * a2 * (1.0 - a2) * one_minus_2c * one_minus_2c;
}

double fidelity_closed(const qmat::PureQubit& psi, const BHOverlaps& ov) {
  const double w = std::norm(psi.alpha()) * std::norm(psi.beta());
  const double radicand = 1.0 - ov.A + w * (4.0 * ov.C - 2.0 + 4.0 * ov.A);
  if (radicand < -1e-12)
    throw std::domain_error("fidelity_closed: negative radicand for these overlaps");
  return std::sqrt(std::max(radicand, 0.0));
}

double avg_hs_norm_ab(const BHOverlaps& ov, const opt::QuadratureSpec& quad) {
  if (quad.nodes < 2) throw std::invalid_argument("avg_hs_norm_ab: node count must be >= 2");
  return opt::average_over_alpha(
      [&](double alpha) {
        const auto psi = qmat::PureQubit::from_alpha(alpha);
        const Complex a = psi.alpha(), b = psi.beta();
        Eigen::Vector4cd ideal;
        ideal << a * a, a * b, b * a, b * b;  // |psi psi>
        const qmat::DensityMatrix4 rho_id((ideal * ideal.adjoint()).eval());
        return qmat::hs_distance(rho_id, joint_output_density(psi, ov));
      },
      quad);
}

double dab2_published(double alpha, const BHOverlaps& ov) {
  const double a2 = alpha * alpha;
  const double w = a2 * (1.0 - a2);           // alpha^2 beta^2
  const double g = 1.0 - 2.0 * ov.A;
  return 1.0 + 8.0 * w * w - 4.0 * w * (1.0 + 2.0 * ov.A) + g * g - 2.0 * g * (1.0 - w) +
         4.0 * ov.A * ov.A;
}

double MachineRealization::isometry_residual() const {
  // Image vectors live in a (x) b (x) x; index ((2i + j) * 2 + x).
  Eigen::Matrix<double, 8, 2> v = Eigen::Matrix<double, 8, 2>::Zero();
  for (int x = 0; x < 2; ++x) {
    v(0 * 2 + x, 0) += q0[x];                      // |00>
    v(1 * 2 + x, 0) += y0[x];                      // |01>
    v(2 * 2 + x, 0) += y0[x];                      // |10>
    v(3 * 2 + x, 1) += q1[x];                      // |11>
    v(1 * 2 + x, 1) += y1[x];
    v(2 * 2 + x, 1) += y1[x];
  }
  const Eigen::Matrix2d gram_images = v.transpose() * v;
  return (gram_images - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
}

BHOverlaps MachineRealization::gram() const {
  const double a = y0[0] * y0[0] + y0[1] * y0[1];
  const double c = y1[0] * q0[0] + y1[1] * q0[1];
  return {a, c};
}

std::optional<MachineRealization> realize_machine_vectors(const BHOverlaps& ov, double tol) {
  if (joint_csi_feasible(ov) != CsiVerdict::Feasible) return std::nullopt;
  if (std::abs(ov.joint_margin()) > tol) return std::nullopt;  // needs rank > 2
  const double q = std::sqrt(std::max(ov.q(), 0.0));
  const double y = std::sqrt(std::max(ov.A, 0.0));
  MachineRealization r;
  r.q0 = {q, 0.0};
  r.y0 = {0.0, y};
  r.q1 = {0.0, q};
  r.y1 = {y, 0.0};
  return r;
}

ComparisonTable table1(const opt::QuadratureSpec& quad) {
  ComparisonTable t;
  const double probe = 1.0 / std::sqrt(2.0);
  for (auto [column, ov] :
       {std::pair{&t.original, BHOverlaps::original()}, {&t.improved, BHOverlaps::improved()}}) {
    column->d_a = hs_norm_a(probe, ov);
    column->fidelity = fidelity_closed(qmat::PureQubit::from_alpha(probe), ov);
    column->d_ab_avg = avg_hs_norm_ab(ov, quad);
  }
  return t;
}

}  // namespace cloneq::bh
