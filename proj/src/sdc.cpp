#include "cloneq/sdc.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace cloneq::sdc {

namespace {

using opt::Rational;
using qmat::Complex;
using qmat::Mat2;
using qmat::Mat4;

constexpr double kCBound = 0.5773502691896258;  // 1/sqrt(3)

void require_real(const qmat::PureQubit& psi, const char* what) {
  if (!psi.is_real()) throw std::invalid_argument(std::string(what) + ": amplitudes must be real");
}

/// Machine-vector coefficients over (Q0, Y0, Q1, Y1) per two-qubit basis ket.
std::array<Eigen::Vector4d, 4> machine_coefficients(double a, double b) {
  std::array<Eigen::Vector4d, 4> m;
  m[0] << a, 0, 0, b;  // |00>: alpha Q0 + beta Y1
  m[1] << 0, a, 0, b;  // |01>: alpha Y0 + beta Y1
  m[2] = m[1];         // |10>
  m[3] << 0, a, b, 0;  // |11>: alpha Y0 + beta Q1
  return m;
}

Eigen::Matrix4d gram(const SDCOverlaps& ov) {
  Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
  g(0, 0) = ov.q0();
  g(1, 1) = ov.A;
  g(2, 2) = ov.q1();
  g(3, 3) = ov.B;
  g(0, 3) = g(3, 0) = ov.C;    // <Q0|Y1>
  g(1, 2) = g(2, 1) = -ov.C;   // <Y0|Q1>
  return g;
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((flo <= 0) == (fm <= 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<Interval> intersect(const std::vector<Interval>& xs, const std::vector<Interval>& ys) {
  std::vector<Interval> out;
  for (const auto& x : xs)
    for (const auto& y : ys) {
      const double lo = std::max(x.lo, y.lo);
      const double hi = std::min(x.hi, y.hi);
      if (lo < hi) out.push_back({lo, hi});
    }
  return out;
}

}  // namespace

SDCOverlaps::SDCOverlaps(double a, double b, double c) : A(a), B(b), C(c) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
    throw std::invalid_argument("SDCOverlaps: non-finite overlaps");
}

SDCOverlaps SDCOverlaps::optimum_general() { return {13.0 / 59.0, 9.0 / 118.0, 25.0 / 236.0}; }
SDCOverlaps SDCOverlaps::optimum_equal_ab() { return {5.0 / 41.0, 5.0 / 41.0, -5.0 / 82.0}; }
SDCOverlaps SDCOverlaps::optimum_zero_c() { return {49.0 / 282.0, 19.0 / 188.0, 0.0}; }

Subcase subcase_from_name(const std::string& name) {
  if (name == "general") return Subcase::General;
  if (name == "equalAB") return Subcase::EqualAB;
  if (name == "zeroC") return Subcase::ZeroC;
  throw std::invalid_argument("unknown subcase '" + name + "'");
}

std::string subcase_name(Subcase s) {
  switch (s) {
    case Subcase::General: return "general";
    case Subcase::EqualAB: return "equalAB";
    case Subcase::ZeroC: return "zeroC";
  }
  return "unknown";
}

CsiReport csi_feasible(const SDCOverlaps& ov, double tol) {
  CsiReport r;
  r.a_marginal = ov.A >= -tol && ov.A <= 1.0 / 3.0 + tol;
  r.b_marginal = ov.B >= -tol && ov.B <= 1.0 / 3.0 + tol;
  r.c_marginal = std::abs(ov.C) <= kCBound + tol;
  r.joint = ov.C * ov.C <= ov.B * (1.0 - 3.0 * ov.A) + tol;
  return r;
}

qmat::DensityMatrix4 joint_output_density(const qmat::PureQubit& psi, const SDCOverlaps& ov) {
  require_real(psi, "sdc::joint_output_density");
  const auto m = machine_coefficients(psi.alpha().real(), psi.beta().real());
  const Eigen::Matrix4d g = gram(ov);
  Mat4 rho;
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) rho(p, q) = Complex((m[q].transpose() * g * m[p]).value(), 0.0);
  return qmat::DensityMatrix4(rho);
}

qmat::DensityMatrix2 output_density_a(const qmat::PureQubit& psi, const SDCOverlaps& ov) {
  require_real(psi, "sdc::output_density_a");
  const double a = psi.alpha().real(), b = psi.beta().real();
  const double a2 = a * a, b2 = b * b;
  Mat2 m;
  m(0, 0) = a2 * (1.0 - 2.0 * ov.A) + 2.0 * a * b * ov.C + 2.0 * b2 * ov.B;
  m(0, 1) = a2 * ov.A + b2 * ov.B;
  m(1, 0) = m(0, 1);
  m(1, 1) = b2 + 2.0 * a2 * ov.A - 2.0 * a * b * ov.C - 2.0 * b2 * ov.B;
  return qmat::DensityMatrix2(m);
}

double hs_norm_a(double alpha, const SDCOverlaps& ov) {
  if (!(alpha >= -1e-12 && alpha <= 1.0 + 1e-12))
    throw std::invalid_argument("hs_norm_a: alpha must lie in [0,1]");
  const double a2 = std::clamp(alpha * alpha, 0.0, 1.0);
  const double b2 = 1.0 - a2;
  const double a = std::sqrt(a2), b = std::sqrt(b2);
  return 2.0 * (5.0 * a2 * a2 * ov.A * ov.A + 5.0 * b2 * b2 * ov.B * ov.B +
                a2 * b2 * (1.0 + 4.0 * ov.C * ov.C - 6.0 * ov.A * ov.B) -
                2.0 * a2 * a * b * ov.A * (1.0 + 4.0 * ov.C) -
                2.0 * a * b2 * b * ov.B * (1.0 - 4.0 * ov.C));
}

Eigen::Matrix3d hessian_Da(double alpha) {
  if (!(alpha >= -1e-12 && alpha <= 1.0 + 1e-12))
    throw std::invalid_argument("hessian_Da: alpha must lie in [0,1]");
  const double a2 = std::clamp(alpha * alpha, 0.0, 1.0);
  const double b2 = 1.0 - a2;
  const double a = std::sqrt(a2), b = std::sqrt(b2);
  Eigen::Matrix3d h;
  h << 20.0 * a2 * a2, -12.0 * a2 * b2, -16.0 * a2 * a * b,
      -12.0 * a2 * b2, 20.0 * b2 * b2, 16.0 * a * b2 * b,
      -16.0 * a2 * a * b, 16.0 * a * b2 * b, 16.0 * a2 * b2;
  return h;
}

opt::QuadraticObjective averaged_objective(Subcase subcase) {
  const Rational m40 = opt::moment(4, 0).rational_part;
  const Rational m04 = opt::moment(0, 4).rational_part;
  const Rational m22 = opt::moment(2, 2).rational_part;
  const Rational m31 = opt::moment(3, 1).rational_part;
  const Rational m13 = opt::moment(1, 3).rational_part;

  opt::QuadraticObjective general;
  general.dim = 3;
  general.quad.assign(3, opt::RationalVector(3, Rational(0)));
  general.linear.assign(3, Rational(0));
  general.quad[0][0] = Rational(10) * m40;
  general.quad[1][1] = Rational(10) * m04;
  general.quad[2][2] = Rational(8) * m22;
  general.quad[0][1] = general.quad[1][0] = Rational(-6) * m22;
  general.quad[0][2] = general.quad[2][0] = Rational(-8) * m31;
  general.quad[1][2] = general.quad[2][1] = Rational(8) * m13;
  general.linear[0] = Rational(-4) * m31;
  general.linear[1] = Rational(-4) * m13;
  general.constant = Rational(2) * m22;

  switch (subcase) {
    case Subcase::General: return general;
    case Subcase::EqualAB: return general.merge_vars(0, 1);  // B := A, vars (A, C)
    case Subcase::ZeroC: return general.fix_var(2, Rational(0));  // vars (A, B)
  }
  throw std::invalid_argument("averaged_objective: bad subcase");
}

double avg_hs_norm(const SDCOverlaps& ov, Subcase subcase) {
  switch (subcase) {
    case Subcase::General: {
      const double x[] = {ov.A, ov.B, ov.C};
      return averaged_objective(subcase).eval(x);
    }
    case Subcase::EqualAB: {
      if (std::abs(ov.A - ov.B) > 1e-12)
        throw std::invalid_argument("avg_hs_norm: equalAB requires B = A");
      const double x[] = {ov.A, ov.C};
      return averaged_objective(subcase).eval(x);
    }
    case Subcase::ZeroC: {
      if (std::abs(ov.C) > 1e-12) throw std::invalid_argument("avg_hs_norm: zeroC requires C = 0");
      const double x[] = {ov.A, ov.B};
      return averaged_objective(subcase).eval(x);
    }
  }
  throw std::invalid_argument("avg_hs_norm: bad subcase");
}

std::array<Rational, 3> SubcaseOptimum::abc() const {
  switch (subcase) {
    case Subcase::General: return {point[0], point[1], point[2]};
    case Subcase::EqualAB: return {point[0], point[0], point[1]};
    case Subcase::ZeroC: return {point[0], point[1], Rational(0)};
  }
  throw std::logic_error("SubcaseOptimum: bad subcase");
}

SDCOverlaps SubcaseOptimum::overlaps() const {
  const auto v = abc();
  return {v[0].to_double(), v[1].to_double(), v[2].to_double()};
}

SubcaseOptimum optimize_subcase(Subcase subcase) {
  const auto objective = averaged_objective(subcase);
  const auto stationary = opt::stationary_point(objective);
  if (stationary.indeterminate)
    throw std::domain_error("optimize_subcase: singular quadratic part, minimum indeterminate");
  SubcaseOptimum out;
  out.subcase = subcase;
  out.point = stationary.point;
  out.d_bar = stationary.value;
  out.hessian = opt::classify_hessian(objective.hessian());
  return out;
}

double fidelity(const qmat::PureQubit& psi, const SDCOverlaps& ov) {
  require_real(psi, "sdc::fidelity");
  const double a = psi.alpha().real(), b = psi.beta().real();
  const double a2 = a * a, b2 = b * b;
  const double radicand = (1.0 - 2.0 * ov.A) * a2 * a2 + 2.0 * (ov.A + ov.C) * a2 * a * b +
                          2.0 * (ov.A + ov.B) * a2 * b2 + 2.0 * (ov.B - ov.C) * a * b2 * b +
                          (1.0 - 2.0 * ov.B) * b2 * b2;
  if (radicand < -1e-12) throw std::domain_error("sdc::fidelity: negative radicand");
  return std::sqrt(std::max(radicand, 0.0));
}

opt::Rational avg_fidelity_squared(const Rational& A, const Rational& B, const Rational& C) {
  const Rational m40 = opt::moment(4, 0).rational_part;
  const Rational m04 = opt::moment(0, 4).rational_part;
  const Rational m22 = opt::moment(2, 2).rational_part;
  const Rational m31 = opt::moment(3, 1).rational_part;
  const Rational m13 = opt::moment(1, 3).rational_part;
  return m40 * (Rational(1) - Rational(2) * A) + Rational(2) * m31 * (A + C) +
         Rational(2) * m22 * (A + B) + Rational(2) * m13 * (B - C) +
         m04 * (Rational(1) - Rational(2) * B);
}

double avg_fidelity(const SDCOverlaps& ov) {
  const double m40 = opt::moment(4, 0).value();
  const double m04 = opt::moment(0, 4).value();
  const double m22 = opt::moment(2, 2).value();
  const double m31 = opt::moment(3, 1).value();
  const double m13 = opt::moment(1, 3).value();
  const double f2 = m40 * (1.0 - 2.0 * ov.A) + 2.0 * m31 * (ov.A + ov.C) +
                    2.0 * m22 * (ov.A + ov.B) + 2.0 * m13 * (ov.B - ov.C) +
                    m04 * (1.0 - 2.0 * ov.B);
  if (f2 < -1e-12) throw std::domain_error("avg_fidelity: negative radicand");
  return std::sqrt(std::max(f2, 0.0));
}

double avg_fidelity_literal(const SDCOverlaps& ov, const opt::QuadratureSpec& quad) {
  return opt::average_over_alpha(
      [&](double alpha) { return fidelity(qmat::PureQubit::from_alpha(alpha), ov); }, quad);
}

double entropy_K(const qmat::PureQubit& psi, const SDCOverlaps& ov) {
  require_real(psi, "sdc::entropy_K");
  const double a = psi.alpha().real(), b = psi.beta().real();
  const double a2 = a * a, b2 = b * b;
  const double A = ov.A, B = ov.B, C = ov.C;
  const double radicand =
      1.0 + 8.0 * a * b * C + (8.0 * B - 4.0 + 16.0 * C * C) * b2 +
      16.0 * (2.0 * B - 1.0) * C * a * b2 * b +
      4.0 * (1.0 - 4.0 * B + 5.0 * B * B - 4.0 * C * C) * b2 * b2 +
      20.0 * a2 * a2 * A * A -
      8.0 * a2 * A * (1.0 + 4.0 * C * a * b + (3.0 * B - 2.0) * b2);
  if (radicand < -1e-12) throw std::domain_error("entropy_K: negative radicand");
  return std::sqrt(std::max(radicand, 0.0));
}

double avg_entropy(const SDCOverlaps& ov, qmat::LogBase base, const opt::QuadratureSpec& quad) {
  return opt::average_over_alpha(
      [&](double alpha) {
        return qmat::von_neumann_entropy(output_density_a(qmat::PureQubit::from_alpha(alpha), ov),
                                         base);
      },
      quad);
}

FeasibilityReport feasibility_curves(Subcase subcase, int samples) {
  if (subcase == Subcase::General)
    throw std::invalid_argument("feasibility_curves: choose equalAB or zeroC");
  if (samples < 2) throw std::invalid_argument("feasibility_curves: need at least 2 samples");

  FeasibilityReport report;
  report.subcase = subcase;
  const double third = 1.0 / 3.0;

  std::function<double(double)> first_curve, second_curve;
  std::function<bool(double)> first_ok, second_ok;
  if (subcase == Subcase::EqualAB) {
    report.first_name = "A";
    report.second_name = "C";
    first_curve = [](double x) { return x * std::sqrt(1.0 - x * x); };
    second_curve = [](double x) { return 2.0 * x * x - 1.0; };
    first_ok = [=](double v) { return v >= 0.0 && v <= third; };
    second_ok = [](double v) { return std::abs(v) <= kCBound; };
    // A(alpha) rises to 1/2 at alpha = 1/sqrt2 and falls back; two crossings.
    const double r1 = bisect([&](double x) { return first_curve(x) - third; }, 0.0, M_SQRT1_2);
    const double r2 = bisect([&](double x) { return first_curve(x) - third; }, M_SQRT1_2, 1.0);
    report.first_feasible = {{0.0, r1}, {r2, 1.0}};
    const double c1 = bisect([&](double x) { return second_curve(x) + kCBound; }, 0.0, 1.0);
    const double c2 = bisect([&](double x) { return second_curve(x) - kCBound; }, 0.0, 1.0);
    report.second_feasible = {{c1, c2}};
  } else {
    report.first_name = "A";
    report.second_name = "B";
    first_curve = [](double x) { return x / (2.0 * std::sqrt(1.0 - x * x)); };
    second_curve = [](double x) { return std::sqrt(1.0 - x * x) / (2.0 * x); };
    first_ok = [=](double v) { return v >= 0.0 && v <= third; };
    second_ok = first_ok;
    const double eps = 1e-9;
    const double r1 = bisect([&](double x) { return first_curve(x) - third; }, eps, 1.0 - eps);
    const double r2 = bisect([&](double x) { return second_curve(x) - third; }, eps, 1.0 - eps);
    report.first_feasible = {{0.0, r1}};
    report.second_feasible = {{r2, 1.0}};
    report.published_endpoints = {{0.6546, 0.8944}};
    report.published_mismatch = std::abs(r1 - (*report.published_endpoints)[0]) > 1e-3 ||
                                std::abs(r2 - (*report.published_endpoints)[1]) > 1e-3;
  }

  report.intersection = intersect(report.first_feasible, report.second_feasible);
  report.disjoint = report.intersection.empty();

  report.samples.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    double alpha = static_cast<double>(i) / (samples - 1);
    double eval_at = alpha;
    if (subcase == Subcase::ZeroC) eval_at = std::clamp(alpha, 1e-6, 1.0 - 1e-6);
    FeasibilityReport::Sample s;
    s.alpha = alpha;
    s.first_value = first_curve(eval_at);
    s.second_value = second_curve(eval_at);
    s.first_ok = first_ok(s.first_value);
    s.second_ok = second_ok(s.second_value);
    report.samples.push_back(s);
  }
  return report;
}

}  // namespace cloneq::sdc
