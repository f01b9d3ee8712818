#ifndef JFL_FIELDS_HPP
#define JFL_FIELDS_HPP

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "jfl/fock.hpp"
#include "jfl/measures.hpp"

namespace jfl::fields {

enum class FieldKind { gaussian, poisson, levy, free_levy };

// gaussian     A = a+ + a-                                on the symmetric space over L2(X)
// poisson      A = sqrt(l) a+ + a0 + sqrt(l) a- + l*int phi  (intensity lambda)
// levy         A = a+(phi x 1) + a0(phi x id) + a-(phi x 1)  over L2(X x R, dx dsigma),
//              plus int phi dx * int 1/s dsigma when uncompensated
// free_levy    the same three terms with free operators on the full Fock space
struct FieldSpec {
  FieldKind kind;
  measures::GridDomain domain;
  int truncation = 6;
  std::optional<measures::KolmogorovMeasure> sigma = std::nullopt;  // levy kinds (homogeneous)
  double lambda = 1.0;                                              // poisson intensity
  bool compensated = true;                                          // levy only
};

// A field specification bound to a concrete truncated Fock space. Immutable
// after construction; all evaluations are pure.
class FieldAlgebra {
 public:
  explicit FieldAlgebra(FieldSpec spec);

  const FieldSpec& spec() const { return spec_; }
  bool is_free() const { return spec_.kind == FieldKind::free_levy; }
  const fock::BaseSpace& base_space() const;

  // The smeared field operator A(phi) as a matrix on the truncated space.
  fock::FockOperator field(const measures::TestFunction& phi) const;

  // <A(phi_1) ... A(phi_n) Omega, Omega>, rightmost factor applied first.
  double joint_moment(std::span<const measures::TestFunction> phis) const;

  // The same moment predicted by the partition sum: non-crossing partitions
  // with free cumulants for free_levy, all set partitions with classical
  // cumulants otherwise.
  double predicted_moment(std::span<const measures::TestFunction> phis) const;

  // max over basis states v of degree <= N-2 of |[A(phi), A(psi)] v| / |v|.
  // Only classical kinds commute; the free kind raises a config error.
  double commutator_residual(const measures::TestFunction& phi,
                             const measures::TestFunction& psi) const;

 private:
  std::vector<double> lift_one(const measures::TestFunction& phi) const;
  std::vector<double> lift_id(const measures::TestFunction& phi) const;
  double first_cumulant(const measures::TestFunction& phi) const;

  FieldSpec spec_;
  // levy base-space layout: one slot per (cell, positive-mass atom)
  std::vector<int> slot_offset_;  // per cell, into the slot arrays
  std::vector<double> slot_s_;    // atom location per slot
  std::vector<int> slot_cell_;    // owning cell per slot
  std::variant<fock::SymFockSpace, fock::FullFockSpace> space_;
};

// Convenience wrappers matching the operation names used elsewhere.
fock::BaseSpace base_space_for(const FieldSpec& spec);
fock::FockOperator build_field(const FieldSpec& spec, const measures::TestFunction& phi);

}  // namespace jfl::fields

#endif  // JFL_FIELDS_HPP
