#include "jfl/fields.hpp"

#include <cmath>
#include <string>

#include "jfl/partitions.hpp"

namespace jfl::fields {

namespace {

using measures::GridDomain;
using measures::KolmogorovMeasure;
using measures::TestFunction;

GridDomain cells_only(const GridDomain& domain) { return GridDomain(domain.cells()); }

double integral(const GridDomain& domain, const TestFunction& phi) {
  double s = 0.0;
  for (int c = 0; c < domain.cell_count(); ++c)
    s += domain.cells()[static_cast<std::size_t>(c)].volume * phi.values[static_cast<std::size_t>(c)];
  return s;
}

// sum_i mass_i / s_i, the discrete int 1/s dsigma of the uncompensated shift
double inverse_first_moment(const KolmogorovMeasure& sigma) {
  double s = 0.0;
  for (const auto& atom : sigma.atoms()) {
    if (atom.mass == 0.0) continue;
    s += atom.mass / atom.location;
  }
  return s;
}

}  // namespace

FieldAlgebra::FieldAlgebra(FieldSpec spec)
    : spec_(std::move(spec)),
      space_(std::in_place_type<fock::SymFockSpace>, fock::BaseSpace({1.0}), 1) {
  const bool levy_kind = spec_.kind == FieldKind::levy || spec_.kind == FieldKind::free_levy;
  if (spec_.kind == FieldKind::poisson && !(spec_.lambda > 0.0)) {
    throw ConfigError("Poisson intensity must be strictly positive");
  }
  if (levy_kind) {
    if (spec_.kind == FieldKind::free_levy && spec_.domain.has_kernel()) {
      throw ConfigError("free Levy fields take a single Kolmogorov measure, not a kernel");
    }
    if (!spec_.domain.has_kernel() && !spec_.sigma.has_value()) {
      throw ConfigError("Levy fields need a Kolmogorov measure or a per-cell kernel");
    }
    const KolmogorovMeasure* homog = spec_.sigma ? &*spec_.sigma : nullptr;
    slot_offset_.push_back(0);
    for (int c = 0; c < spec_.domain.cell_count(); ++c) {
      const auto& sigma = measures::cell_sigma(spec_.domain, homog, c);
      if (spec_.kind == FieldKind::levy && !spec_.compensated && sigma.has_atom_at_zero()) {
        throw ConfigError("uncompensated Levy field requires sigma({0}) = 0");
      }
      for (const auto& atom : sigma.atoms()) {
        if (atom.mass == 0.0) continue;  // null directions of L2(dsigma)
        slot_s_.push_back(atom.location);
        slot_cell_.push_back(c);
      }
      slot_offset_.push_back(static_cast<int>(slot_s_.size()));
    }
  }

  fock::BaseSpace base = base_space_for(spec_);
  if (spec_.kind == FieldKind::free_levy) {
    space_.emplace<fock::FullFockSpace>(std::move(base), spec_.truncation);
  } else {
    space_.emplace<fock::SymFockSpace>(std::move(base), spec_.truncation);
  }
}

const fock::BaseSpace& FieldAlgebra::base_space() const {
  if (std::holds_alternative<fock::SymFockSpace>(space_))
    return std::get<fock::SymFockSpace>(space_).base();
  return std::get<fock::FullFockSpace>(space_).base();
}

std::vector<double> FieldAlgebra::lift_one(const TestFunction& phi) const {
  std::vector<double> v(slot_s_.size());
  for (std::size_t i = 0; i < slot_s_.size(); ++i)
    v[i] = phi.values[static_cast<std::size_t>(slot_cell_[i])];
  return v;
}

std::vector<double> FieldAlgebra::lift_id(const TestFunction& phi) const {
  std::vector<double> v(slot_s_.size());
  for (std::size_t i = 0; i < slot_s_.size(); ++i)
    v[i] = phi.values[static_cast<std::size_t>(slot_cell_[i])] * slot_s_[i];
  return v;
}

fock::FockOperator FieldAlgebra::field(const TestFunction& phi) const {
  measures::require_matching(phi, spec_.domain);
  switch (spec_.kind) {
    case FieldKind::gaussian: {
      const auto& space = std::get<fock::SymFockSpace>(space_);
      return fock::create_sym(space, phi.values) + fock::annihilate_sym(space, phi.values);
    }
    case FieldKind::poisson: {
      const auto& space = std::get<fock::SymFockSpace>(space_);
      const double root = std::sqrt(spec_.lambda);
      return root * fock::create_sym(space, phi.values) + fock::neutral_sym(space, phi.values) +
             root * fock::annihilate_sym(space, phi.values) +
             spec_.lambda * integral(spec_.domain, phi) * fock::identity(space.info());
    }
    case FieldKind::levy: {
      const auto& space = std::get<fock::SymFockSpace>(space_);
      auto op = fock::create_sym(space, lift_one(phi)) + fock::neutral_sym(space, lift_id(phi)) +
                fock::annihilate_sym(space, lift_one(phi));
      if (!spec_.compensated) {
        double shift = 0.0;
        const KolmogorovMeasure* homog = spec_.sigma ? &*spec_.sigma : nullptr;
        for (int c = 0; c < spec_.domain.cell_count(); ++c) {
          shift += spec_.domain.cells()[static_cast<std::size_t>(c)].volume *
                   phi.values[static_cast<std::size_t>(c)] *
                   inverse_first_moment(measures::cell_sigma(spec_.domain, homog, c));
        }
        op = op + shift * fock::identity(space.info());
      }
      return op;
    }
    case FieldKind::free_levy: {
      const auto& space = std::get<fock::FullFockSpace>(space_);
      return fock::create_free(space, lift_one(phi)) + fock::neutral_free(space, lift_id(phi)) +
             fock::annihilate_free(space, lift_one(phi));
    }
  }
  throw Error(ErrorCode::internal, "unreachable field kind");
}

double FieldAlgebra::joint_moment(std::span<const TestFunction> phis) const {
  std::vector<fock::FockOperator> ops;
  ops.reserve(phis.size());
  for (const auto& phi : phis) ops.push_back(field(phi));
  return fock::vacuum_expectation(std::span<const fock::FockOperator>(ops.data(), ops.size()));
}

double FieldAlgebra::first_cumulant(const TestFunction& phi) const {
  switch (spec_.kind) {
    case FieldKind::gaussian:
    case FieldKind::free_levy:
      return 0.0;
    case FieldKind::poisson:
      return spec_.lambda * integral(spec_.domain, phi);
    case FieldKind::levy: {
      if (spec_.compensated) return 0.0;
      double s = 0.0;
      const KolmogorovMeasure* homog = spec_.sigma ? &*spec_.sigma : nullptr;
      for (int c = 0; c < spec_.domain.cell_count(); ++c) {
        s += spec_.domain.cells()[static_cast<std::size_t>(c)].volume *
             phi.values[static_cast<std::size_t>(c)] *
             inverse_first_moment(measures::cell_sigma(spec_.domain, homog, c));
      }
      return s;
    }
  }
  throw Error(ErrorCode::internal, "unreachable field kind");
}

double FieldAlgebra::predicted_moment(std::span<const TestFunction> phis) const {
  const int n = static_cast<int>(phis.size());
  if (n == 0) return 1.0;
  if (n > spec_.truncation) {
    throw BoundsError("moment order " + std::to_string(n) + " exceeds truncation " +
                      std::to_string(spec_.truncation));
  }
  for (const auto& phi : phis) measures::require_matching(phi, spec_.domain);

  // Cumulant data: kind-specific Kolmogorov measure for orders >= 2, the
  // field's constant term for order 1.
  const GridDomain* domain = &spec_.domain;
  std::optional<GridDomain> plain;
  std::optional<KolmogorovMeasure> synthetic;
  const KolmogorovMeasure* sigma = spec_.sigma ? &*spec_.sigma : nullptr;
  if (spec_.kind == FieldKind::gaussian || spec_.kind == FieldKind::poisson) {
    synthetic = spec_.kind == FieldKind::gaussian
                    ? KolmogorovMeasure({{0.0, 1.0}})
                    : KolmogorovMeasure({{1.0, spec_.lambda}});
    sigma = &*synthetic;
    if (spec_.domain.has_kernel()) {
      plain = cells_only(spec_.domain);
      domain = &*plain;
    }
  }

  const auto mode = is_free() ? partitions::Mode::free : partitions::Mode::classical;
  auto cumulant = [&](std::span<const int> block) -> double {
    if (block.size() == 1) return first_cumulant(phis[static_cast<std::size_t>(block[0]) - 1]);
    std::vector<const TestFunction*> selected;
    selected.reserve(block.size());
    for (int b : block) selected.push_back(&phis[static_cast<std::size_t>(b) - 1]);
    return measures::levy_cumulant_multilinear(selected, *domain, sigma);
  };
  return partitions::moments_from_cumulants(n, cumulant, mode);
}

double FieldAlgebra::commutator_residual(const TestFunction& phi, const TestFunction& psi) const {
  if (is_free()) {
    throw ConfigError("free fields do not commute; the commutator residual is a classical check");
  }
  auto a = field(phi);
  auto b = field(psi);
  return fock::max_column_norm(a * b - b * a, spec_.truncation - 2);
}

fock::BaseSpace base_space_for(const FieldSpec& spec) {
  std::vector<double> weights;
  if (spec.kind == FieldKind::gaussian || spec.kind == FieldKind::poisson) {
    for (const auto& cell : spec.domain.cells()) weights.push_back(cell.volume);
    return fock::BaseSpace(std::move(weights));
  }
  const KolmogorovMeasure* homog = spec.sigma ? &*spec.sigma : nullptr;
  for (int c = 0; c < spec.domain.cell_count(); ++c) {
    const double vol = spec.domain.cells()[static_cast<std::size_t>(c)].volume;
    for (const auto& atom : measures::cell_sigma(spec.domain, homog, c).atoms()) {
      if (atom.mass == 0.0) continue;
      weights.push_back(vol * atom.mass);
    }
  }
  return fock::BaseSpace(std::move(weights));
}

fock::FockOperator build_field(const FieldSpec& spec, const TestFunction& phi) {
  return FieldAlgebra(spec).field(phi);
}

}  // namespace jfl::fields
