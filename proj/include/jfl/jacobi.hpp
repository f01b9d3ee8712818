#ifndef JFL_JACOBI_HPP
#define JFL_JACOBI_HPP

#include <span>
#include <vector>

#include "jfl/errors.hpp"

namespace jfl::jacobi {

// Finite section of a Jacobi (tridiagonal) matrix: m diagonal entries
// a_0..a_{m-1} and m-1 strictly positive off-diagonal entries b_0..b_{m-2}.
// Positivity pins the standard orthonormal-polynomial sign gauge; any other
// gauge leaves all spectral moments unchanged.
class JacobiMatrix {
 public:
  JacobiMatrix(std::vector<double> diag, std::vector<double> offdiag);

  int size() const { return static_cast<int>(diag_.size()); }
  const std::vector<double>& diag() const { return diag_; }
  const std::vector<double>& offdiag() const { return offdiag_; }

 private:
  std::vector<double> diag_;
  std::vector<double> offdiag_;
};

// Moments 0..n_max of the spectral measure at e_0, i.e. (J^n)_{00} by
// iterated tridiagonal products. The finite section determines these
// independently of any larger section only for n_max <= 2(m-1); beyond that
// a bounds error reports the minimum section size.
std::vector<double> spectral_moments(const JacobiMatrix& j, int n_max);

// Recovers the size-m Jacobi matrix from moments 0..2m via Cholesky of the
// Hankel moment matrix (Golub-Welsch). A non-positive-definite Hankel matrix
// (finitely supported measure) raises a degeneracy error naming the failing
// order.
JacobiMatrix recurrence_coefficients_from_moments(std::span<const double> moments);

// p_k(x) by the forward three-term recurrence b_k p_{k+1} = (x - a_k) p_k -
// b_{k-1} p_{k-1}, p_0 = 1. Requires k < m.
double polynomial_value(const JacobiMatrix& j, int k, double x);

struct AtomicMeasure {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss quadrature rule of the section: nodes are the eigenvalues, weights
// the squared first eigenvector components. Weights sum to one.
AtomicMeasure discretize_measure(const JacobiMatrix& j);

// Section for the normalized Lebesgue measure dt/2 on [-1,1]; its
// discretization is the m-point Gauss-Legendre rule.
JacobiMatrix legendre_section(int m);

}  // namespace jfl::jacobi

#endif  // JFL_JACOBI_HPP
