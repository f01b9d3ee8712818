#include "jfl/jacobi.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace jfl::jacobi {

JacobiMatrix::JacobiMatrix(std::vector<double> diag, std::vector<double> offdiag)
    : diag_(std::move(diag)), offdiag_(std::move(offdiag)) {
  if (diag_.empty()) throw ConfigError("Jacobi matrix needs at least one diagonal entry");
  if (offdiag_.size() + 1 != diag_.size()) {
    throw ConfigError("Jacobi matrix needs exactly size-1 off-diagonal entries, got " +
                      std::to_string(offdiag_.size()) + " for size " + std::to_string(diag_.size()));
  }
  for (double b : offdiag_) {
    if (!(b > 0.0)) throw ConfigError("Jacobi off-diagonal entries must be strictly positive");
  }
}

std::vector<double> spectral_moments(const JacobiMatrix& j, int n_max) {
  const int m = j.size();
  if (n_max < 0) throw BoundsError("moment order must be nonnegative");
  if (n_max > 2 * (m - 1)) {
    const int required = (n_max + 1) / 2 + 1;
    throw BoundsError("section of size " + std::to_string(m) + " is exact only up to order " +
                      std::to_string(2 * (m - 1)) + "; order " + std::to_string(n_max) +
                      " needs size >= " + std::to_string(required));
  }
  std::vector<double> moments(static_cast<std::size_t>(n_max) + 1);
  std::vector<double> v(static_cast<std::size_t>(m), 0.0);
  std::vector<double> next(static_cast<std::size_t>(m), 0.0);
  v[0] = 1.0;
  moments[0] = 1.0;
  const auto& a = j.diag();
  const auto& b = j.offdiag();
  for (int n = 1; n <= n_max; ++n) {
    for (int i = 0; i < m; ++i) {
      double s = a[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
      if (i > 0) s += b[static_cast<std::size_t>(i) - 1] * v[static_cast<std::size_t>(i) - 1];
      if (i + 1 < m) s += b[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i) + 1];
      next[static_cast<std::size_t>(i)] = s;
    }
    std::swap(v, next);
    moments[static_cast<std::size_t>(n)] = v[0];
  }
  return moments;
}

JacobiMatrix recurrence_coefficients_from_moments(std::span<const double> moments) {
  if (moments.size() < 3) throw BoundsError("need at least moments 0..2 to build a size-1 section");
  const int m = static_cast<int>((moments.size() - 1) / 2);
  const int h = m + 1;  // Hankel dimension

  // In-place Cholesky H = R^T R of the Hankel matrix H[i][j] = moments[i+j],
  // upper triangle stored row-major. Only rows 0..m-1 are needed (the last
  // pivot never enters the coefficients), so an exactly-m-point measure is
  // still fine.
  std::vector<double> r(static_cast<std::size_t>(h) * static_cast<std::size_t>(h), 0.0);
  auto at = [&](int i, int k) -> double& { return r[static_cast<std::size_t>(i) * h + k]; };
  for (int i = 0; i < m; ++i) {
    for (int k = i; k < h; ++k) {
      double s = moments[static_cast<std::size_t>(i + k)];
      for (int l = 0; l < i; ++l) s -= at(l, i) * at(l, k);
      if (k == i) {
        const double diag = moments[static_cast<std::size_t>(2 * i)];
        if (!(s > 1e-12 * diag)) {
          throw DegeneracyError("Hankel moment matrix is not positive definite at order " +
                                std::to_string(i) + " (measure supported on fewer points)");
        }
        at(i, i) = std::sqrt(s);
      } else {
        at(i, k) = s / at(i, i);
      }
    }
  }

  std::vector<double> a(static_cast<std::size_t>(m));
  std::vector<double> b(static_cast<std::size_t>(m) - 1);
  for (int i = 0; i < m; ++i) {
    double v = at(i, i + 1) / at(i, i);
    if (i > 0) v -= at(i - 1, i) / at(i - 1, i - 1);
    a[static_cast<std::size_t>(i)] = v;
  }
  for (int i = 0; i + 1 < m; ++i) b[static_cast<std::size_t>(i)] = at(i + 1, i + 1) / at(i, i);
  return JacobiMatrix(std::move(a), std::move(b));
}

double polynomial_value(const JacobiMatrix& j, int k, double x) {
  if (k < 0 || k >= j.size()) {
    throw BoundsError("polynomial degree " + std::to_string(k) + " out of range for section of size " +
                      std::to_string(j.size()));
  }
  double prev = 0.0;
  double cur = 1.0;
  for (int i = 0; i < k; ++i) {
    const double bprev = i > 0 ? j.offdiag()[static_cast<std::size_t>(i) - 1] : 0.0;
    const double next = ((x - j.diag()[static_cast<std::size_t>(i)]) * cur - bprev * prev) /
                        j.offdiag()[static_cast<std::size_t>(i)];
    prev = cur;
    cur = next;
  }
  return cur;
}

AtomicMeasure discretize_measure(const JacobiMatrix& j) {
  const int m = j.size();
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    t(i, i) = j.diag()[static_cast<std::size_t>(i)];
    if (i + 1 < m) {
      t(i, i + 1) = j.offdiag()[static_cast<std::size_t>(i)];
      t(i + 1, i) = j.offdiag()[static_cast<std::size_t>(i)];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t);
  if (solver.info() != Eigen::Success) throw DegeneracyError("tridiagonal eigensolver failed");
  AtomicMeasure out;
  out.nodes.resize(static_cast<std::size_t>(m));
  out.weights.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    out.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    const double first = solver.eigenvectors()(0, i);
    out.weights[static_cast<std::size_t>(i)] = first * first;
  }
  return out;
}

JacobiMatrix legendre_section(int m) {
  if (m < 1) throw BoundsError("quadrature order must be positive");
  std::vector<double> a(static_cast<std::size_t>(m), 0.0);
  std::vector<double> b(static_cast<std::size_t>(m) - 1);
  for (int k = 0; k + 1 < m; ++k) {
    b[static_cast<std::size_t>(k)] =
        (k + 1) / std::sqrt((2.0 * k + 1.0) * (2.0 * k + 3.0));
  }
  return JacobiMatrix(std::move(a), std::move(b));
}

}  // namespace jfl::jacobi
