#pragma once

#include <Eigen/Dense>
#include <complex>

namespace cloneq::qmat {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kEigenvalueFloor = -1e-10;

enum class LogBase { Two, E };

/// Normalized single-qubit pure state alpha|0> + beta|1>. The constructor
/// renormalizes inputs off by more than 1e-12 and rejects zero/non-finite
/// amplitude pairs.
class PureQubit {
 public:
  PureQubit(Complex alpha, Complex beta);
  /// Real-amplitude state (alpha, sqrt(1-alpha^2)) for alpha in [0,1].
  static PureQubit from_alpha(double alpha);

  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }
  bool is_real(double tol = 1e-12) const;
  Eigen::Vector2cd ket() const;
  Mat2 density() const;

 private:
  Complex alpha_, beta_;
};

/// Hermitian trace-one 2x2 operator. Construction checks Hermiticity and
/// trace to 1e-12; positivity is a query (protocols are allowed to produce
/// unphysical states when given infeasible overlaps, and those must remain
/// representable so the violation can be reported).
class DensityMatrix2 {
 public:
  explicit DensityMatrix2(const Mat2& m);
  const Mat2& matrix() const { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  Eigen::Vector2d eigenvalues() const;  // ascending
  double min_eigenvalue() const;
  bool is_physical(double floor = kEigenvalueFloor) const;

 private:
  Mat2 m_;
};

/// Two-qubit analogue of DensityMatrix2, basis order |00>,|01>,|10>,|11>.
class DensityMatrix4 {
 public:
  explicit DensityMatrix4(const Mat4& m);
  const Mat4& matrix() const { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  Eigen::Vector4d eigenvalues() const;  // ascending
  double min_eigenvalue() const;
  bool is_physical(double floor = kEigenvalueFloor) const;

 private:
  Mat4 m_;
};

/// Subsystem kept by partial_trace: A = original mode, B = copy mode.
enum class Mode { A, B };

DensityMatrix2 partial_trace(const DensityMatrix4& rho, Mode keep);

/// Principal square root of a positive-semidefinite Hermitian 2x2 matrix via
/// the trace/determinant closed form (M + sqrt(det) I) / sqrt(tr + 2 sqrt(det)).
/// A vanishing divisor (only the zero matrix) falls back to eigendecomposition.
Mat2 sqrt_2x2(const Mat2& m);

/// Uhlmann fidelity Tr sqrt( sqrt(rho_id) rho_out sqrt(rho_id) ) in [0,1].
double fidelity(const DensityMatrix2& rho_id, const DensityMatrix2& rho_out);

/// Squared Hilbert-Schmidt distance Tr[(rho1 - rho2)^2].
double hs_distance(const DensityMatrix2& rho1, const DensityMatrix2& rho2);
double hs_distance(const DensityMatrix4& rho1, const DensityMatrix4& rho2);

/// -sum lambda log lambda with 0 log 0 := 0; eigenvalues in [-1e-10, 0) are
/// clipped to zero, anything lower is an invalid state.
double von_neumann_entropy(const DensityMatrix2& rho, LogBase base = LogBase::Two);

}  // namespace cloneq::qmat
