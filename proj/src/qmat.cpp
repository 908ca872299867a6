#include "cloneq/qmat.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cloneq::qmat {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

template <typename M>
void check_state(const M& m, const char* what) {
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTol)
    throw std::invalid_argument(std::string(what) + ": Hermiticity residual " + std::to_string(herm));
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol)
    throw std::invalid_argument(std::string(what) + ": trace differs from one");
}

template <typename M>
auto sorted_eigenvalues(const M& m) {
  Eigen::SelfAdjointEigenSolver<M> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double entropy_of(const Eigen::Ref<const Eigen::VectorXd>& evals, LogBase base) {
  double s = 0;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    const double lambda = evals(i);
    if (lambda < kEigenvalueFloor)
      throw std::domain_error("von_neumann_entropy: eigenvalue below tolerance");
    if (lambda <= 0) continue;
    s -= lambda * std::log(lambda);
  }
  if (base == LogBase::Two) s /= std::numbers::ln2;
  return std::max(s, 0.0);
}

}  // namespace

PureQubit::PureQubit(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
  if (!finite(alpha) || !finite(beta))
    throw std::invalid_argument("PureQubit: non-finite amplitudes");
  const double n2 = std::norm(alpha_) + std::norm(beta_);
  if (n2 < 1e-24) throw std::invalid_argument("PureQubit: zero state");
  if (std::abs(n2 - 1.0) > 1e-12) {
    const double inv = 1.0 / std::sqrt(n2);
    alpha_ *= inv;
    beta_ *= inv;
  }
}

PureQubit PureQubit::from_alpha(double alpha) {
  if (!(alpha >= -1e-12 && alpha <= 1.0 + 1e-12))
    throw std::invalid_argument("PureQubit::from_alpha: alpha must lie in [0,1]");
  const double a = std::clamp(alpha, 0.0, 1.0);
  return PureQubit(Complex(a, 0.0), Complex(std::sqrt(std::max(0.0, 1.0 - a * a)), 0.0));
}

bool PureQubit::is_real(double tol) const {
  return std::abs(alpha_.imag()) <= tol && std::abs(beta_.imag()) <= tol;
}

Eigen::Vector2cd PureQubit::ket() const { return {alpha_, beta_}; }

Mat2 PureQubit::density() const {
  const Eigen::Vector2cd k = ket();
  return k * k.adjoint();
}

DensityMatrix2::DensityMatrix2(const Mat2& m) : m_(m) { check_state(m_, "DensityMatrix2"); }

Eigen::Vector2d DensityMatrix2::eigenvalues() const { return sorted_eigenvalues(m_); }

double DensityMatrix2::min_eigenvalue() const { return eigenvalues()(0); }

bool DensityMatrix2::is_physical(double floor) const { return min_eigenvalue() >= floor; }

DensityMatrix4::DensityMatrix4(const Mat4& m) : m_(m) { check_state(m_, "DensityMatrix4"); }

Eigen::Vector4d DensityMatrix4::eigenvalues() const { return sorted_eigenvalues(m_); }

double DensityMatrix4::min_eigenvalue() const { return eigenvalues()(0); }

bool DensityMatrix4::is_physical(double floor) const { return min_eigenvalue() >= floor; }

DensityMatrix2 partial_trace(const DensityMatrix4& rho, Mode keep) {
  const Mat4& m = rho.matrix();
  Mat2 out = Mat2::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      Complex sum = 0;
      for (int l = 0; l < 2; ++l) {
        // basis index of |xy> is 2x + y with x the a-mode bit
        sum += (keep == Mode::A) ? m(2 * i + l, 2 * k + l) : m(2 * l + i, 2 * l + k);
      }
      out(i, k) = sum;
    }
  }
  out = (out + out.adjoint().eval()) / 2.0;  // absorb roundoff
  return DensityMatrix2(out);
}

Mat2 sqrt_2x2(const Mat2& m) {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
    throw std::invalid_argument("sqrt_2x2: Hermitian input required");
  const double trace = m.trace().real();
  double det = m.determinant().real();
  if (det < -1e-12 || trace < -1e-10 || sorted_eigenvalues(m)(0) < kEigenvalueFloor)
    throw std::domain_error("sqrt_2x2: input not positive-semidefinite");
  det = std::max(det, 0.0);
  // Rank-one inputs carry determinant roundoff of order eps*trace^2, which
  // sqrt would amplify to ~1e-8; snapping s to zero there makes the formula
  // exact (sqrt of a rank-one PSD matrix is m / sqrt(trace)).
  const double s = (det < 1e-13 * trace * trace) ? 0.0 : std::sqrt(det);
  const double t2 = trace + 2.0 * s;
  if (t2 < 1e-300) {
    // degenerate: both eigenvalues vanish; rebuild from the spectrum
    Eigen::SelfAdjointEigenSolver<Mat2> es(m);
    Eigen::Vector2d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  }
  return (m + s * Mat2::Identity()) / std::sqrt(t2);
}

double fidelity(const DensityMatrix2& rho_id, const DensityMatrix2& rho_out) {
  if (rho_id.min_eigenvalue() < kEigenvalueFloor || rho_out.min_eigenvalue() < kEigenvalueFloor)
    throw std::domain_error("fidelity: state has a negative eigenvalue beyond tolerance");
  const Mat2 root = sqrt_2x2(rho_id.matrix());
  Mat2 inner = root * rho_out.matrix() * root;
  inner = (inner + inner.adjoint().eval()) / 2.0;
  const double f = sqrt_2x2(inner).trace().real();
  return std::clamp(f, 0.0, 1.0);
}

double hs_distance(const DensityMatrix2& rho1, const DensityMatrix2& rho2) {
  return (rho1.matrix() - rho2.matrix()).squaredNorm();
}

double hs_distance(const DensityMatrix4& rho1, const DensityMatrix4& rho2) {
  return (rho1.matrix() - rho2.matrix()).squaredNorm();
}

double von_neumann_entropy(const DensityMatrix2& rho, LogBase base) {
  return entropy_of(rho.eigenvalues(), base);
}

}  // namespace cloneq::qmat
