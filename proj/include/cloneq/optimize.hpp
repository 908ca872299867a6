#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cloneq/rational.hpp"

namespace cloneq::opt {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

/// q(x) = x^T quad x + linear^T x + constant, with a symmetric quadratic part
/// and exact-rational coefficients. Dimension is at most 3.
struct QuadraticObjective {
  int dim = 0;
  RationalMatrix quad;
  RationalVector linear;
  Rational constant;

  Rational eval(const RationalVector& x) const;
  double eval(std::span<const double> x) const;
  RationalMatrix hessian() const;  // 2 * quad

  /// Identify variable j with variable i (x_j := x_i) and drop slot j.
  QuadraticObjective merge_vars(int i, int j) const;
  /// Substitute x_j := value and drop slot j.
  QuadraticObjective fix_var(int j, const Rational& value) const;
};

enum class Definiteness { PositiveDefinite, NegativeDefinite, Indefinite, Singular };

std::string definiteness_name(Definiteness d);

struct StationaryPoint {
  bool indeterminate = false;  // singular quadratic part, no unique stationary point
  RationalVector point;
  Rational value;
};

/// Exact solution of grad q = 0 by rational Gaussian elimination.
StationaryPoint stationary_point(const QuadraticObjective& q);

/// Classification by leading principal minors, exact arithmetic.
Definiteness classify_hessian(const RationalMatrix& h);
/// Same test on floating-point input; minors compared against `tol`.
Definiteness classify_hessian(const Eigen::MatrixXd& h, double tol = 1e-12);

struct ConstrainedMax {
  Eigen::VectorXd argmax;
  double value = 0.0;
};

/// max x^T x subject to x^T Q x = 1 for symmetric positive-definite Q.
/// The maximum is 1/lambda_min(Q); the maximizer is the matching eigenvector
/// scaled onto the constraint set, first nonzero component positive.
ConstrainedMax constrained_quadratic_max(const Eigen::MatrixXd& constraint_quadratic);

/// Exact value of integral_0^1 alpha^m (1-alpha^2)^(k/2) d(alpha), split into
/// a rational part plus a rational multiple of pi (the pi part is nonzero
/// only for even m with odd k).
struct AlphaMoment {
  Rational rational_part;
  Rational pi_part;
  bool is_rational() const { return pi_part.is_zero(); }
  double value() const;
};

/// Table range: 0 <= m <= 8, 0 <= k <= 4. Throws std::out_of_range beyond it.
AlphaMoment moment(int m, int k);

struct QuadratureSpec {
  enum class Kind { GaussLegendre, Simpson };
  Kind kind = Kind::GaussLegendre;
  int nodes = 128;

  static QuadratureSpec parse(std::string_view text);  // "gauss:128" | "simpson:257"
  std::string str() const;
};

/// Nodes/weights for n-point Gauss-Legendre on [0,1]; cached per n.
const std::vector<std::pair<double, double>>& gauss_legendre_unit(int n);

/// integral_0^1 f(alpha) d(alpha) == average of f over the input family.
double average_over_alpha(const std::function<double(double)>& f, const QuadratureSpec& spec = {});

}  // namespace cloneq::opt
