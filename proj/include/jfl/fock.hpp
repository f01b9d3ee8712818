#ifndef JFL_FOCK_HPP
#define JFL_FOCK_HPP

#include <Eigen/SparseCore>

#include <memory>
#include <span>
#include <vector>

#include "jfl/errors.hpp"

namespace jfl::fock {

// Finite-dimensional weighted base space, (u,v) = sum_k u_k v_k w_k. Stands
// in for L^2(X,dx) (weights = cell volumes) or L^2(X x R, dx dsigma)
// (weights = volume * mass products).
class BaseSpace {
 public:
  explicit BaseSpace(std::vector<double> weights);

  int dim() const { return static_cast<int>(weights_.size()); }
  const std::vector<double>& weights() const { return weights_; }
  double inner(std::span<const double> u, std::span<const double> v) const;

 private:
  std::vector<double> weights_;
};

// Shared descriptor of a truncated Fock space: enough structure to evaluate
// inner products (diagonal Gram) and degree-restricted checks without caring
// whether the space is symmetric or full. Operators compare spaces by
// identity of this object.
struct SpaceInfo {
  enum class Kind { symmetric, full };
  Kind kind;
  int base_dim = 0;
  int truncation = 0;
  std::vector<double> gram;  // squared Fock norm per basis state
  std::vector<int> degree;   // tensor degree per basis state
};

class FockOperator {
 public:
  FockOperator(std::shared_ptr<const SpaceInfo> space, Eigen::SparseMatrix<double> matrix);

  const std::shared_ptr<const SpaceInfo>& space() const { return space_; }
  const Eigen::SparseMatrix<double>& matrix() const { return matrix_; }

  FockOperator operator+(const FockOperator& other) const;
  FockOperator operator-(const FockOperator& other) const;
  FockOperator operator*(const FockOperator& other) const;  // composition
  friend FockOperator operator*(double scale, const FockOperator& op);

 private:
  std::shared_ptr<const SpaceInfo> space_;
  Eigen::SparseMatrix<double> matrix_;
};

// Truncated symmetric Fock space: occupation vectors (n_1,...,n_d) with
// sum <= N, ordered by degree and then lexicographically. Basis states are
// the symmetrized monomials e_1^(n_1) ... e_d^(n_d); under the n!-weighted
// Fock inner product their squared norms are prod_k n_k! w_k^{n_k}, held in
// the diagonal Gram.
class SymFockSpace {
 public:
  SymFockSpace(BaseSpace base, int truncation);

  const BaseSpace& base() const { return base_; }
  int truncation() const { return truncation_; }
  int dim() const { return static_cast<int>(occupations_.size()); }
  const std::vector<std::vector<int>>& occupations() const { return occupations_; }
  const std::shared_ptr<const SpaceInfo>& info() const { return info_; }
  int index_of(const std::vector<int>& occupation) const;

 private:
  BaseSpace base_;
  int truncation_;
  std::vector<std::vector<int>> occupations_;
  std::shared_ptr<const SpaceInfo> info_;
};

// Truncated full Fock space: words over {1,...,d} of length <= N, ordered by
// length and then lexicographically. Word indices are base-d numerals, so no
// explicit basis table is stored.
class FullFockSpace {
 public:
  FullFockSpace(BaseSpace base, int truncation);

  const BaseSpace& base() const { return base_; }
  int truncation() const { return truncation_; }
  int dim() const { return dim_; }
  const std::shared_ptr<const SpaceInfo>& info() const { return info_; }
  std::vector<int> word_of(int index) const;  // letters, most significant first

 private:
  BaseSpace base_;
  int truncation_;
  int dim_ = 0;
  std::vector<long long> offsets_;  // first index per word length
  std::shared_ptr<const SpaceInfo> info_;
};

// Creation by phi: degree m -> m+1 by symmetrized tensoring, components
// beyond the truncation projected out. Annihilation is its Fock adjoint,
// a^-(e_j) acting as n_j w_j on occupation vectors. The neutral operator is
// diagonal with eigenvalue sum_k n_k g_k.
FockOperator create_sym(const SymFockSpace& space, std::span<const double> phi);
FockOperator annihilate_sym(const SymFockSpace& space, std::span<const double> phi);
FockOperator neutral_sym(const SymFockSpace& space, std::span<const double> g);

// Free versions: create prepends a letter, annihilate strips the first letter
// against the weighted inner product, neutral rescales by g at the first
// letter and kills the vacuum.
FockOperator create_free(const FullFockSpace& space, std::span<const double> phi);
FockOperator annihilate_free(const FullFockSpace& space, std::span<const double> phi);
FockOperator neutral_free(const FullFockSpace& space, std::span<const double> g);

FockOperator identity(const std::shared_ptr<const SpaceInfo>& space);

// <op_1 op_2 ... op_L Omega, Omega> with the rightmost factor applied first.
// Product length is capped at the truncation so the projection of the top
// degree can never influence the value.
double vacuum_expectation(std::span<const FockOperator* const> ops);
double vacuum_expectation(std::span<const FockOperator> ops);

// max_ij |(A^T G - G B)_ij|: zero iff A and B are mutually adjoint under the
// space's Gram-weighted inner product.
double adjointness_residual(const FockOperator& a, const FockOperator& b);

// Residual of self-adjointness, adjointness_residual(op, op).
double symmetry_residual(const FockOperator& op);

// max over basis columns of degree <= max_degree of |op e|_F / |e|_F.
double max_column_norm(const FockOperator& op, int max_degree);

}  // namespace jfl::fock

#endif  // JFL_FOCK_HPP
