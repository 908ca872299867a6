#include "cloneq/phase_covariant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "cloneq/optimize.hpp"

namespace cloneq::pcc {

namespace {

using qmat::Complex;
using Vec8 = Eigen::Matrix<Complex, 8, 1>;

/// Full output of the copying transformation on alpha|0> + beta|1>, in the
/// basis |a b x> with index (2a + b) * 2 + x. The bit-flipped branch sends
/// |1> to a|11>|1> + b(|01> + |10>)|0> + c|00>|1>.
Vec8 joint_output_ket(const qmat::PureQubit& psi, const PCCoeffs& k) {
  const Complex al = psi.alpha(), be = psi.beta();
  Vec8 out = Vec8::Zero();
  out(0 * 2 + 0) += al * k.a;  // |00 0>
  out(1 * 2 + 1) += al * k.b;  // |01 1>
  out(2 * 2 + 1) += al * k.b;  // |10 1>
  out(3 * 2 + 0) += al * k.c;  // |11 0>
  out(3 * 2 + 1) += be * k.a;  // |11 1>
  out(1 * 2 + 0) += be * k.b;  // |01 0>
  out(2 * 2 + 0) += be * k.b;  // |10 0>
  out(0 * 2 + 1) += be * k.c;  // |00 1>
  return out;
}

double sqrt_checked(double radicand, const char* what) {
  if (radicand < -1e-12) throw std::domain_error(std::string(what) + ": negative radicand");
  return std::sqrt(std::max(radicand, 0.0));
}

}  // namespace

PCCoeffs::PCCoeffs(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
    throw std::invalid_argument("PCCoeffs: non-finite coefficients");
  if (unitarity_residual() >= 1e-10)
    throw std::invalid_argument("PCCoeffs: a^2 + 2b^2 + c^2 must equal 1");
}

double PCCoeffs::unitarity_residual() const { return std::abs(a * a + 2.0 * b * b + c * c - 1.0); }

PCCase case_from_index(int index) {
  switch (index) {
    case 1: return PCCase::Case1;
    case 2: return PCCase::Case2;
    case 3: return PCCase::Case3;
  }
  throw std::invalid_argument("case index must be 1, 2 or 3");
}

double case_relation_residual(PCCase c, const PCCoeffs& k) {
  switch (c) {
    case PCCase::Case1: return std::abs(2.0 * k.b - (k.a - k.c));
    case PCCase::Case2: return std::abs(2.0 * k.b - (k.a + k.c));
    case PCCase::Case3: return std::max(std::abs(k.c), std::abs(2.0 * k.b - k.a));
  }
  return 0.0;
}

qmat::DensityMatrix2 output_density_a(const qmat::PureQubit& psi, const PCCoeffs& k) {
  const Complex al = psi.alpha(), be = psi.beta();
  const double pa = std::norm(al), pb = std::norm(be);
  qmat::Mat2 m;
  m(0, 0) = k.a * k.a * pa + k.b * k.b + k.c * k.c * pb;
  m(0, 1) = 2.0 * (k.a * k.b * al * std::conj(be) + k.b * k.c * std::conj(al) * be);
  m(1, 0) = std::conj(m(0, 1));
  m(1, 1) = k.a * k.a * pb + k.b * k.b + k.c * k.c * pa;
  return qmat::DensityMatrix2(m);
}

qmat::DensityMatrix2 output_density_mode(const qmat::PureQubit& psi, const PCCoeffs& k,
                                         qmat::Mode mode) {
  const Vec8 out = joint_output_ket(psi, k);
  qmat::Mat4 rho_ab = qmat::Mat4::Zero();
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      for (int x = 0; x < 2; ++x) rho_ab(p, q) += out(p * 2 + x) * std::conj(out(q * 2 + x));
  rho_ab = ((rho_ab + rho_ab.adjoint()) / 2.0).eval();
  return qmat::partial_trace(qmat::DensityMatrix4(rho_ab), mode);
}

double fidelity(const qmat::PureQubit& psi, const PCCoeffs& k) {
  const double a1 = psi.alpha().real(), a2 = psi.alpha().imag();
  const double b1 = psi.beta().real(), b2 = psi.beta().imag();
  const double plus = a1 * b1 + a2 * b2;
  const double minus = a1 * b2 - a2 * b1;
  const double radicand = k.a * k.a + k.b * k.b +
                          2.0 * (2.0 * k.a * k.b + 2.0 * k.b * k.c - k.a * k.a + k.c * k.c) * plus * plus +
                          2.0 * (2.0 * k.a * k.b - 2.0 * k.b * k.c - k.a * k.a + k.c * k.c) * minus * minus;
  return sqrt_checked(radicand, "pcc::fidelity");
}

double fidelity_modulus_form(const qmat::PureQubit& psi, const PCCoeffs& k) {
  const Complex al = psi.alpha(), be = psi.beta();
  const double w = std::norm(al) * std::norm(be);
  const Complex cross = al * al * std::conj(be) * std::conj(be);
  const double radicand = k.a * k.a + k.b * k.b +
                          2.0 * (2.0 * k.a * k.b - k.a * k.a + k.c * k.c) * w +
                          2.0 * k.b * k.c * 2.0 * cross.real();
  return sqrt_checked(radicand, "pcc::fidelity_modulus_form");
}

CaseOptimum maximize_fidelity(PCCase c) {
  if (c == PCCase::Case3) {
    const double b = std::sqrt(1.0 / 6.0);
    const PCCoeffs k(2.0 * b, b, 0.0);
    return {k, std::sqrt(5.0 / 6.0)};
  }
  Eigen::Matrix2d q;
  q << 2.0, -2.0, -2.0, 6.0;
  const auto best = opt::constrained_quadratic_max(q);
  const double a = best.argmax(0), b = best.argmax(1);
  const double cc = (c == PCCase::Case1) ? a - 2.0 * b : 2.0 * b - a;
  const PCCoeffs k(a, b, cc);
  return {k, std::sqrt(best.value)};
}

std::vector<qmat::PureQubit> input_family(PCCase family, const FamilySpec& spec) {
  if (spec.points < 2) throw std::invalid_argument("input_family: need at least 2 points");
  std::vector<qmat::PureQubit> out;
  out.reserve(spec.points);
  if (spec.seed) {
    std::mt19937_64 rng(*spec.seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> uniform;
    for (int i = 0; i < spec.points; ++i) {
      switch (family) {
        case PCCase::Case1: {
          const double a = uniform(rng);
          out.emplace_back(Complex(a, 0), Complex(std::sqrt(1.0 - a * a), 0));
          break;
        }
        case PCCase::Case2: {
          const double a = uniform(rng);
          out.emplace_back(Complex(a, 0), Complex(0, std::sqrt(1.0 - a * a)));
          break;
        }
        case PCCase::Case3: {
          Complex al(gauss(rng), gauss(rng)), be(gauss(rng), gauss(rng));
          out.emplace_back(al, be);  // constructor normalizes
          break;
        }
      }
    }
    return out;
  }
  for (int i = 0; i < spec.points; ++i) {
    const double t = static_cast<double>(i) / (spec.points - 1);
    switch (family) {
      case PCCase::Case1:
        out.push_back(qmat::PureQubit::from_alpha(t));
        break;
      case PCCase::Case2:
        out.emplace_back(Complex(t, 0), Complex(0, std::sqrt(std::max(0.0, 1.0 - t * t))));
        break;
      case PCCase::Case3: {
        const double theta = std::numbers::pi / 2.0 * t;
        const double phi = 1.0 + 0.9 * t;
        // relative phase stays inside (0.9, 2.2): both bilinear invariants
        // vary and neither vanishes where |alpha beta| peaks
        const double chi = phi + 0.9 + 1.3 * t;
        out.emplace_back(std::polar(std::cos(theta), phi), std::polar(std::sin(theta), chi));
        break;
      }
    }
  }
  return out;
}

double input_independence_residual(PCCase family, const PCCoeffs& k, const FamilySpec& spec) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& psi : input_family(family, spec)) {
    const double f = fidelity(psi, k);
    lo = std::min(lo, f);
    hi = std::max(hi, f);
  }
  return hi - lo;
}

}  // namespace cloneq::pcc
