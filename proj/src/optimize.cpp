#include "cloneq/optimize.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace cloneq::opt {

namespace {

void check_objective(const QuadraticObjective& q) {
  if (q.dim < 1 || q.dim > 3) throw std::invalid_argument("QuadraticObjective: dim must be 1..3");
  if (static_cast<int>(q.quad.size()) != q.dim || static_cast<int>(q.linear.size()) != q.dim)
    throw std::invalid_argument("QuadraticObjective: inconsistent sizes");
  for (int i = 0; i < q.dim; ++i) {
    if (static_cast<int>(q.quad[i].size()) != q.dim)
      throw std::invalid_argument("QuadraticObjective: quad not square");
    for (int j = 0; j < q.dim; ++j)
      if (q.quad[i][j] != q.quad[j][i])
        throw std::invalid_argument("QuadraticObjective: quad not symmetric");
  }
}

Rational det_rational(const RationalMatrix& m, int n) {
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Rational d = 0;
  for (int j = 0; j < n; ++j) {
    RationalMatrix minor(n - 1, RationalVector(n - 1));
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor[r - 1][cc++] = m[r][c];
      }
    }
    const Rational term = m[0][j] * det_rational(minor, n - 1);
    d = (j % 2 == 0) ? d + term : d - term;
  }
  return d;
}

RationalMatrix leading_block(const RationalMatrix& m, int k) {
  RationalMatrix b(k, RationalVector(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) b[i][j] = m[i][j];
  return b;
}

Definiteness classify_from_minors(const std::vector<int>& signs, bool singular) {
  if (singular) return Definiteness::Singular;
  bool pd = true, nd = true;
  for (std::size_t k = 0; k < signs.size(); ++k) {
    if (signs[k] <= 0) pd = false;
    const int expected = (k % 2 == 0) ? -1 : 1;  // minor order k+1
    if (signs[k] != expected) nd = false;
  }
  if (pd) return Definiteness::PositiveDefinite;
  if (nd) return Definiteness::NegativeDefinite;
  return Definiteness::Indefinite;
}

}  // namespace

Rational QuadraticObjective::eval(const RationalVector& x) const {
  check_objective(*this);
  if (static_cast<int>(x.size()) != dim)
    throw std::invalid_argument("QuadraticObjective::eval: wrong dimension");
  Rational v = constant;
  for (int i = 0; i < dim; ++i) {
    v += linear[i] * x[i];
    for (int j = 0; j < dim; ++j) v += quad[i][j] * x[i] * x[j];
  }
  return v;
}

double QuadraticObjective::eval(std::span<const double> x) const {
  check_objective(*this);
  if (static_cast<int>(x.size()) != dim)
    throw std::invalid_argument("QuadraticObjective::eval: wrong dimension");
  double v = constant.to_double();
  for (int i = 0; i < dim; ++i) {
    v += linear[i].to_double() * x[i];
    for (int j = 0; j < dim; ++j) v += quad[i][j].to_double() * x[i] * x[j];
  }
  return v;
}

RationalMatrix QuadraticObjective::hessian() const {
  check_objective(*this);
  RationalMatrix h = quad;
  for (auto& row : h)
    for (auto& e : row) e = e * 2;
  return h;
}

QuadraticObjective QuadraticObjective::merge_vars(int i, int j) const {
  check_objective(*this);
  if (i == j || i < 0 || j < 0 || i >= dim || j >= dim)
    throw std::invalid_argument("merge_vars: bad indices");
  QuadraticObjective out;
  out.dim = dim - 1;
  out.quad.assign(out.dim, RationalVector(out.dim));
  out.linear.assign(out.dim, Rational(0));
  out.constant = constant;
  auto slot = [&](int v) { return v == j ? i : v; };
  std::vector<int> keep;
  for (int v = 0; v < dim; ++v)
    if (v != j) keep.push_back(v);
  auto pos = [&](int v) {
    for (std::size_t p = 0; p < keep.size(); ++p)
      if (keep[p] == v) return static_cast<int>(p);
    throw std::logic_error("merge_vars: unmapped variable");
  };
  for (int a = 0; a < dim; ++a) {
    out.linear[pos(slot(a))] += linear[a];
    for (int b = 0; b < dim; ++b) out.quad[pos(slot(a))][pos(slot(b))] += quad[a][b];
  }
  return out;
}

QuadraticObjective QuadraticObjective::fix_var(int j, const Rational& value) const {
  check_objective(*this);
  if (j < 0 || j >= dim) throw std::invalid_argument("fix_var: bad index");
  QuadraticObjective out;
  out.dim = dim - 1;
  out.quad.assign(out.dim, RationalVector(out.dim));
  out.linear.assign(out.dim, Rational(0));
  out.constant = constant + linear[j] * value + quad[j][j] * value * value;
  std::vector<int> keep;
  for (int v = 0; v < dim; ++v)
    if (v != j) keep.push_back(v);
  for (int a = 0; a < out.dim; ++a) {
    out.linear[a] = linear[keep[a]] + quad[keep[a]][j] * value * 2;
    for (int b = 0; b < out.dim; ++b) out.quad[a][b] = quad[keep[a]][keep[b]];
  }
  return out;
}

StationaryPoint stationary_point(const QuadraticObjective& q) {
  check_objective(q);
  const int n = q.dim;
  // grad q = 2 quad x + linear = 0
  RationalMatrix a = q.quad;
  RationalVector rhs(n);
  for (int i = 0; i < n; ++i) {
    rhs[i] = -q.linear[i];
    for (int j = 0; j < n; ++j) a[i][j] = a[i][j] * 2;
  }
  StationaryPoint out;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (!a[r][col].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) {
      out.indeterminate = true;
      return out;
    }
    std::swap(a[col], a[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const Rational factor = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  out.point.resize(n);
  for (int i = 0; i < n; ++i) out.point[i] = rhs[i] / a[i][i];
  out.value = q.eval(out.point);
  return out;
}

std::string definiteness_name(Definiteness d) {
  switch (d) {
    case Definiteness::PositiveDefinite: return "positive-definite";
    case Definiteness::NegativeDefinite: return "negative-definite";
    case Definiteness::Indefinite: return "indefinite";
    case Definiteness::Singular: return "singular";
  }
  return "unknown";
}

Definiteness classify_hessian(const RationalMatrix& h) {
  const int n = static_cast<int>(h.size());
  if (n < 1 || n > 3) throw std::invalid_argument("classify_hessian: dim must be 1..3");
  std::vector<int> signs;
  for (int k = 1; k <= n; ++k) signs.push_back(det_rational(leading_block(h, k), k).sign());
  const bool singular = det_rational(h, n).is_zero();
  return classify_from_minors(signs, singular);
}

Definiteness classify_hessian(const Eigen::MatrixXd& h, double tol) {
  const int n = static_cast<int>(h.rows());
  if (h.cols() != n || n < 1) throw std::invalid_argument("classify_hessian: square input required");
  std::vector<int> signs;
  double full_det = 0;
  for (int k = 1; k <= n; ++k) {
    const double d = h.topLeftCorner(k, k).determinant();
    if (k == n) full_det = d;
    signs.push_back(d > tol ? 1 : (d < -tol ? -1 : 0));
  }
  return classify_from_minors(signs, std::abs(full_det) <= tol);
}

ConstrainedMax constrained_quadratic_max(const Eigen::MatrixXd& constraint_quadratic) {
  const auto n = constraint_quadratic.rows();
  if (constraint_quadratic.cols() != n || n < 1)
    throw std::invalid_argument("constrained_quadratic_max: square input required");
  if (!constraint_quadratic.isApprox(constraint_quadratic.transpose(), 1e-12))
    throw std::invalid_argument("constrained_quadratic_max: symmetric input required");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(constraint_quadratic);
  const double lambda_min = es.eigenvalues()(0);
  if (lambda_min <= 0)
    throw std::domain_error("constrained_quadratic_max: constraint form must be positive-definite");
  ConstrainedMax out;
  out.value = 1.0 / lambda_min;
  out.argmax = es.eigenvectors().col(0) / std::sqrt(lambda_min);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(out.argmax(i)) > 1e-14) {
      if (out.argmax(i) < 0) out.argmax = -out.argmax;
      break;
    }
  }
  return out;
}

double AlphaMoment::value() const {
  return rational_part.to_double() + pi_part.to_double() * std::numbers::pi;
}

AlphaMoment moment(int m, int k) {
  if (m < 0 || m > 8 || k < 0 || k > 4) throw std::out_of_range("moment: indices outside table");
  AlphaMoment out;
  if (k % 2 == 0) {
    // (1-a^2)^(k/2) expands binomially; every term integrates to a rational.
    const int j = k / 2;
    Rational sum = 0;
    std::int64_t binom = 1;
    for (int i = 0; i <= j; ++i) {
      const Rational term = Rational(binom, m + 2 * i + 1);
      sum = (i % 2 == 0) ? sum + term : sum - term;
      binom = binom * (j - i) / (i + 1);
    }
    out.rational_part = sum;
    return out;
  }
  if (m % 2 == 1) {
    // u = 1 - alpha^2 turns this into a Beta integral with one integer slot:
    // 1/2 * B((m+1)/2, k/2 + 1) = (p-1)! * 2^(p-1) / prod_{i<p} (k + 2 + 2i).
    const int p = (m + 1) / 2;
    Rational v = 1;
    for (int i = 1; i < p; ++i) v *= Rational(2 * i);  // (p-1)! * 2^(p-1)
    for (int i = 0; i < p; ++i) v /= Rational(k + 2 + 2 * i);
    out.rational_part = v;
    return out;
  }
  // Even m, odd k: a pure multiple of pi via Gamma(n + 1/2) = (2n)! sqrt(pi) / (4^n n!).
  const int mh = m / 2;
  const int kh = (k + 1) / 2;
  auto factorial = [](int n) {
    Rational f = 1;
    for (int i = 2; i <= n; ++i) f *= Rational(i);
    return f;
  };
  Rational pow4 = 1;
  for (int i = 0; i < mh + kh; ++i) pow4 *= Rational(4);
  out.pi_part = factorial(2 * mh) * factorial(2 * kh) /
                (pow4 * factorial(mh) * factorial(kh) * factorial(mh + kh)) / Rational(2);
  return out;
}

QuadratureSpec QuadratureSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("quadrature spec must look like gauss:128 or simpson:257");
  const std::string_view kind = text.substr(0, colon);
  int n = 0;
  try {
    n = std::stoi(std::string(text.substr(colon + 1)));
  } catch (const std::logic_error&) {
    throw std::invalid_argument("quadrature spec: bad node count");
  }
  QuadratureSpec spec;
  if (kind == "gauss")
    spec.kind = Kind::GaussLegendre;
  else if (kind == "simpson")
    spec.kind = Kind::Simpson;
  else
    throw std::invalid_argument("quadrature spec: unknown kind '" + std::string(kind) + "'");
  spec.nodes = n;
  if (n < 2) throw std::invalid_argument("quadrature spec: node count must be >= 2");
  if (spec.kind == Kind::Simpson && (n < 3 || n % 2 == 0))
    throw std::invalid_argument("quadrature spec: simpson needs an odd node count >= 3");
  return spec;
}

std::string QuadratureSpec::str() const {
  return (kind == Kind::GaussLegendre ? std::string("gauss:") : std::string("simpson:")) +
         std::to_string(nodes);
}

const std::vector<std::pair<double, double>>& gauss_legendre_unit(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_unit: n >= 1 required");
  static std::map<int, std::vector<std::pair<double, double>>> cache;
  static std::mutex mutex;
  std::scoped_lock lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<std::pair<double, double>> nw(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p1 = 0, dp = 1;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1,1] -> [0,1]; roots come in symmetric pairs
    nw[i] = {0.5 * (1.0 - x), 0.5 * w};
    nw[n - 1 - i] = {0.5 * (1.0 + x), 0.5 * w};
  }
  return cache.emplace(n, std::move(nw)).first->second;
}

double average_over_alpha(const std::function<double(double)>& f, const QuadratureSpec& spec) {
  if (spec.nodes < 2) throw std::invalid_argument("average_over_alpha: node count must be >= 2");
  // Integrate through alpha = sin(theta). The protocol integrands are
  // polynomials in alpha and sqrt(1 - alpha^2), so the substitution removes
  // the square-root derivative singularity at alpha = 1 and both rules
  // converge at their nominal order.
  constexpr double half_pi = std::numbers::pi / 2.0;
  const auto g = [&](double u) {
    const double theta = half_pi * u;
    return f(std::sin(theta)) * std::cos(theta) * half_pi;
  };
  if (spec.kind == QuadratureSpec::Kind::GaussLegendre) {
    double sum = 0;
    for (const auto& [x, w] : gauss_legendre_unit(spec.nodes)) sum += w * g(x);
    return sum;
  }
  const int n = spec.nodes;
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("average_over_alpha: simpson needs an odd node count >= 3");
  const double h = 1.0 / (n - 1);
  double sum = g(0.0) + g(1.0);
  for (int i = 1; i < n - 1; ++i) sum += g(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace cloneq::opt
