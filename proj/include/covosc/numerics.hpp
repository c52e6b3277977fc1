#pragma once

// Shared numerical machinery: uniform grids, quadrature with refinement
// checks, Fourier transform by quadrature, central differences and a cyclic
// Jacobi eigensolver for dense symmetric matrices.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace covosc {

/// Raised when a numerical result fails its stated accuracy check.
class ToleranceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an iterative routine gives up.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::size_t iterations)
      : std::runtime_error(what + " (after " + std::to_string(iterations) + " iterations)"),
        iterations_(iterations) {}

  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::size_t iterations_;
};

/// Uniform 1D grid: `points` nodes from `min` to `max` inclusive.
class GridSpec {
 public:
  GridSpec(double min, double max, std::size_t points) : min_(min), max_(max), points_(points) {
    if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
      throw std::invalid_argument("GridSpec: require finite min < max");
    }
    if (points < 2) {
      throw std::invalid_argument("GridSpec: require at least 2 points");
    }
  }

  /// Symmetric grid [-half_width, half_width].
  static GridSpec symmetric(double half_width, std::size_t points) {
    return GridSpec(-half_width, half_width, points);
  }

  double min() const noexcept { return min_; }
  double max() const noexcept { return max_; }
  std::size_t points() const noexcept { return points_; }
  double spacing() const noexcept { return (max_ - min_) / static_cast<double>(points_ - 1); }

  double at(std::size_t i) const noexcept {
    // endpoints exact
    if (i + 1 == points_) return max_;
    return min_ + static_cast<double>(i) * spacing();
  }

  std::vector<double> nodes() const {
    std::vector<double> out(points_);
    for (std::size_t i = 0; i < points_; ++i) out[i] = at(i);
    return out;
  }

  /// Same domain, spacing halved (every old node is kept).
  GridSpec refined() const { return GridSpec(min_, max_, 2 * points_ - 1); }

  bool operator==(const GridSpec&) const = default;

 private:
  double min_;
  double max_;
  std::size_t points_;
};

/// Trapezoid weights for a uniform grid.
inline std::vector<double> trapezoid_weights(const GridSpec& grid) {
  std::vector<double> w(grid.points(), grid.spacing());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

/// Plain composite trapezoid over a grid, summed in index order.
template <typename F>
double trapezoid(F&& f, const GridSpec& grid) {
  const std::size_t n = grid.points();
  double sum = 0.5 * (f(grid.min()) + f(grid.max()));
  for (std::size_t i = 1; i + 1 < n; ++i) sum += f(grid.at(i));
  return sum * grid.spacing();
}

/// Trapezoid over already-sampled values on a uniform grid.
inline double trapezoid_sampled(const std::vector<double>& values, const GridSpec& grid) {
  if (values.size() != grid.points()) {
    throw std::invalid_argument("trapezoid_sampled: size mismatch");
  }
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  return sum * grid.spacing();
}

namespace detail {

/// Orthonormal Hermite functions h_0..h_nmax at x via the three-term
/// recurrence on the normalized functions.
inline std::vector<double> hermite_functions(std::size_t nmax, double x) {
  std::vector<double> h(nmax + 1);
  h[0] = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(std::numbers::pi));
  if (nmax >= 1) h[1] = std::numbers::sqrt2 * x * h[0];
  for (std::size_t n = 2; n <= nmax; ++n) {
    const double dn = static_cast<double>(n);
    h[n] = std::sqrt(2.0 / dn) * x * h[n - 1] - std::sqrt((dn - 1.0) / dn) * h[n - 2];
  }
  return h;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Dense square matrix and symmetric eigensolver
// ---------------------------------------------------------------------------

/// Dense square matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
  double* row(std::size_t i) noexcept { return data_.data() + i * n_; }
  const double* row(std::size_t i) const noexcept { return data_.data() + i * n_; }

  double trace() const noexcept {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const noexcept {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
  }

  double max_asymmetry() const noexcept {
    double worst = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        worst = std::max(worst, std::abs((*this)(i, j) - (*this)(j, i)));
    return worst;
  }

  Matrix scaled(double factor) const {
    Matrix out = *this;
    for (double& v : out.data_) v *= factor;
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct EigenDecomposition {
  std::vector<double> values;                ///< descending
  std::vector<std::vector<double>> vectors;  ///< vectors[k] pairs with values[k], unit norm
  std::size_t sweeps = 0;
};

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// The input is symmetrized first; an asymmetry above 1e-10 is rejected.
/// Throws ConvergenceError if the off-diagonal mass does not vanish within
/// `max_sweeps` sweeps.
inline EigenDecomposition symmetric_eigen(const Matrix& input, std::size_t max_sweeps = 100) {
  const std::size_t n = input.size();
  if (input.max_asymmetry() > 1e-10) {
    throw std::invalid_argument("symmetric_eigen: matrix is not symmetric");
  }
  Matrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (input(i, j) + input(j, i));

  // Rows of vt are the eigenvectors, so each rotation touches two contiguous rows.
  Matrix vt = Matrix::identity(n);

  auto off_diagonal = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
  };

  const double scale = std::max(a.frobenius_norm(), std::numeric_limits<double>::min());
  const double eps = std::numeric_limits<double>::epsilon();
  const double target = static_cast<double>(std::max<std::size_t>(n, 1)) * eps * scale;

  std::size_t sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_diagonal() <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Negligible against both diagonal entries: zero it outright.
        if (sweep > 3 && std::abs(apq) < 0.01 * eps * std::abs(app) &&
            std::abs(apq) < 0.01 * eps * std::abs(aqq)) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;

        double* rp = a.row(p);
        double* rq = a.row(q);
        for (std::size_t k = 0; k < n; ++k) {
          const double xp = rp[k];
          const double xq = rq[k];
          rp[k] = c * xp - s * xq;
          rq[k] = s * xp + c * xq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          a(k, p) = rp[k];
          a(k, q) = rq[k];
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;

        double* vp = vt.row(p);
        double* vq = vt.row(q);
        for (std::size_t k = 0; k < n; ++k) {
          const double xp = vp[k];
          const double xq = vq[k];
          vp[k] = c * xp - s * xq;
          vq[k] = s * xp + c * xq;
        }
      }
    }
  }
  if (sweep == max_sweeps && off_diagonal() > target) {
    throw ConvergenceError("symmetric_eigen: Jacobi sweeps did not converge", sweep);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenDecomposition out;
  out.sweeps = sweep;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (std::size_t k : order) {
    out.values.push_back(a(k, k));
    out.vectors.emplace_back(vt.row(k), vt.row(k) + n);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

enum class QuadratureScheme { trapezoid, gauss_hermite };

/// Nodes and weights of the Gauss-Hermite rule with the e^{-x^2} factor
/// folded into the weights, so sum w_i f(x_i) approximates the plain
/// integral of f over the real line.
struct GaussHermiteNodes {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Golub-Welsch nodes polished by Newton on the normalized Hermite function
/// h_n; weights from w_i e^{x_i^2} = 1 / (n h_{n-1}(x_i)^2).
inline GaussHermiteNodes gauss_hermite(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_hermite: need at least one node");
  Matrix jacobi(n);
  for (std::size_t k = 1; k < n; ++k) {
    const double b = std::sqrt(static_cast<double>(k) / 2.0);
    jacobi(k - 1, k) = b;
    jacobi(k, k - 1) = b;
  }
  auto eig = symmetric_eigen(jacobi);

  GaussHermiteNodes out;
  for (double x : eig.values) {
    for (int it = 0; it < 8; ++it) {
      const auto h = detail::hermite_functions(n, x);
      // h_n' = sqrt(2n) h_{n-1} - x h_n
      const double deriv = std::sqrt(2.0 * static_cast<double>(n)) * h[n - 1] - x * h[n];
      if (deriv == 0.0) break;
      const double dx = h[n] / deriv;
      x -= dx;
      if (std::abs(dx) < 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    const double hm1 = detail::hermite_functions(n - 1, x)[n - 1];
    out.nodes.push_back(x);
    out.weights.push_back(1.0 / (static_cast<double>(n) * hm1 * hm1));
  }
  // ascending node order
  std::reverse(out.nodes.begin(), out.nodes.end());
  std::reverse(out.weights.begin(), out.weights.end());
  return out;
}

/// Quadrature rule description. For gauss_hermite the nodes are
/// center + scale * xi with xi the Hermite nodes; the domain's midpoint is
/// the center and `scale` stretches the rule.
struct QuadratureRule {
  double min = -12.0;
  double max = 12.0;
  std::size_t points = 401;
  QuadratureScheme scheme = QuadratureScheme::trapezoid;
  double scale = 1.0;

  static QuadratureRule trapezoid_on(const GridSpec& g) {
    return {g.min(), g.max(), g.points(), QuadratureScheme::trapezoid, 1.0};
  }

  QuadratureRule refined() const {
    QuadratureRule r = *this;
    r.points = scheme == QuadratureScheme::trapezoid ? 2 * points - 1 : 2 * points;
    return r;
  }
};

/// Single evaluation of a rule, no refinement.
template <typename F>
double apply_rule(F&& f, const QuadratureRule& rule) {
  if (rule.points < 2) throw std::invalid_argument("QuadratureRule: points must be >= 2");
  if (rule.scheme == QuadratureScheme::trapezoid) {
    return trapezoid(f, GridSpec(rule.min, rule.max, rule.points));
  }
  const auto gh = gauss_hermite(rule.points);
  const double center = 0.5 * (rule.min + rule.max);
  double sum = 0.0;
  for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
    sum += gh.weights[i] * f(center + rule.scale * gh.nodes[i]);
  }
  return sum * rule.scale;
}

struct QuadratureResult {
  double value = 0.0;
  double last_change = 0.0;
  std::size_t refinements = 0;
};

/// Integrate with doubling refinement until successive estimates differ by
/// less than `tolerance`; ConvergenceError after `max_refinements` doublings.
template <typename F>
QuadratureResult integrate_1d_detailed(F&& f, QuadratureRule rule, double tolerance = 1e-8,
                                       std::size_t max_refinements = 3) {
  double previous = apply_rule(f, rule);
  double change = 0.0;
  for (std::size_t r = 1; r <= max_refinements; ++r) {
    rule = rule.refined();
    const double current = apply_rule(f, rule);
    change = std::abs(current - previous);
    if (!std::isfinite(current)) break;
    if (change < tolerance) return {current, change, r};
    previous = current;
  }
  throw ConvergenceError("integrate_1d: refinement changed result by " + std::to_string(change),
                         max_refinements);
}

template <typename F>
double integrate_1d(F&& f, const QuadratureRule& rule, double tolerance = 1e-8) {
  return integrate_1d_detailed(std::forward<F>(f), rule, tolerance).value;
}

// ---------------------------------------------------------------------------
// Finite differences
// ---------------------------------------------------------------------------

/// Central second difference (f(x+h) - 2 f(x) + f(x-h)) / h^2.
template <typename F>
double second_derivative(F&& f, double x, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("second_derivative: step must be positive");
  return (f(x + step) - 2.0 * f(x) + f(x - step)) / (step * step);
}

// ---------------------------------------------------------------------------
// 2D Fourier transform by quadrature
// ---------------------------------------------------------------------------

/// Signs of the phase exp(i s_first k_first x_first + i s_second k_second x_second).
struct SignConvention {
  int first = 1;
  int second = 1;
  bool operator==(const SignConvention&) const = default;
};

inline constexpr SignConvention kAllConventions[] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};

/// Field sampled on the square product grid axis x axis; value(i, j) pairs
/// axis.at(i) in the first variable with axis.at(j) in the second. Storage
/// is second-variable-major.
template <typename T>
struct SampledField2D {
  GridSpec axis;
  std::vector<T> values;

  T operator()(std::size_t i, std::size_t j) const { return values[j * axis.points() + i]; }
};

/// Sample a function of two variables on a square grid.
template <typename F>
SampledField2D<double> sample_2d(F&& f, const GridSpec& axis) {
  const std::size_t n = axis.points();
  SampledField2D<double> out{axis, std::vector<double>(n * n)};
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) out.values[j * n + i] = f(axis.at(i), axis.at(j));
  return out;
}

/// Trapezoid double integral of sampled values.
inline double integrate_2d(const SampledField2D<double>& field) {
  const auto w = trapezoid_weights(field.axis);
  const std::size_t n = field.axis.points();
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double row = 0.0;
    for (std::size_t i = 0; i < n; ++i) row += w[i] * field.values[j * n + i];
    sum += w[j] * row;
  }
  return sum;
}

/// phi(k1, k2) = (1/2pi) iint psi(x1, x2) exp(i s1 k1 x1 + i s2 k2 x2) dx1 dx2
/// by trapezoid quadrature on `space`, evaluated on `frequency` x `frequency`.
///
/// Throws ToleranceError when |psi| on the boundary of `space` exceeds
/// `boundary_tolerance`.
template <typename F>
SampledField2D<std::complex<double>> fourier_2d(F&& psi, const GridSpec& space,
                                                const GridSpec& frequency,
                                                SignConvention convention,
                                                double boundary_tolerance = 1e-12) {
  const auto samples = sample_2d(psi, space);
  const std::size_t n = space.points();
  const std::size_t m = frequency.points();

  double boundary = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    boundary = std::max({boundary, std::abs(samples(k, 0)), std::abs(samples(k, n - 1)),
                         std::abs(samples(0, k)), std::abs(samples(n - 1, k))});
  }
  if (boundary > boundary_tolerance) {
    throw ToleranceError("fourier_2d: integrand does not decay at grid boundary (max " +
                         std::to_string(boundary) + ")");
  }

  const auto w = trapezoid_weights(space);
  auto phase_table = [&](int sign) {
    // table[a * n + i] = w_i exp(i sign k_a x_i)
    std::vector<std::complex<double>> table(m * n);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t i = 0; i < n; ++i)
        table[a * n + i] = w[i] * std::polar(1.0, sign * frequency.at(a) * space.at(i));
    return table;
  };
  const auto first = phase_table(convention.first);
  const auto second = phase_table(convention.second);

  // partial[b * n + i] = sum_j psi(x_i, y_j) w_j e^{i s2 k_b y_j}
  std::vector<std::complex<double>> partial(m * n);
  for (std::size_t b = 0; b < m; ++b) {
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<double> acc{};
      for (std::size_t j = 0; j < n; ++j) acc += samples.values[j * n + i] * second[b * n + j];
      partial[b * n + i] = acc;
    }
  }

  SampledField2D<std::complex<double>> out{frequency, std::vector<std::complex<double>>(m * m)};
  const double norm = 1.0 / (2.0 * std::numbers::pi);
  for (std::size_t b = 0; b < m; ++b) {
    for (std::size_t a = 0; a < m; ++a) {
      std::complex<double> acc{};
      for (std::size_t i = 0; i < n; ++i) acc += first[a * n + i] * partial[b * n + i];
      out.values[b * m + a] = norm * acc;
    }
  }
  return out;
}

}  // namespace covosc
