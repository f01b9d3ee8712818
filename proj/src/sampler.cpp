#include "jfl/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jfl::sampler {

namespace {

using measures::GridDomain;
using measures::KolmogorovMeasure;
using measures::TestFunction;

double per_cell(std::span<const double> values, int cell, const char* what) {
  if (values.size() == 1) return values[0];
  if (static_cast<std::size_t>(cell) < values.size()) return values[static_cast<std::size_t>(cell)];
  throw ConfigError(std::string(what) + " needs one entry per cell or a single shared entry");
}

// Precomputed compound-Poisson data for one cell: the Levy measure of the
// noise is s^-2 sigma(ds), the s = 0 mass is a Gaussian component.
struct CellLevy {
  double gaussian_sd = 0.0;
  double rate = 0.0;            // vol * sum mass_i / s_i^2
  double compensator = 0.0;     // vol * sum mass_i / s_i (0 when uncompensated)
  std::vector<double> cum;      // cumulative jump rates
  std::vector<double> sizes;    // jump sizes s_i
};

CellLevy prepare_cell(const KolmogorovMeasure& sigma, double volume, bool compensated) {
  CellLevy cell;
  double rate = 0.0;
  for (const auto& atom : sigma.atoms()) {
    if (atom.mass == 0.0) continue;
    if (atom.location == 0.0) {
      if (!compensated) throw ConfigError("uncompensated Levy sampling requires sigma({0}) = 0");
      cell.gaussian_sd = std::sqrt(atom.mass * volume);
      continue;
    }
    rate += volume * atom.mass / (atom.location * atom.location);
    cell.cum.push_back(rate);
    cell.sizes.push_back(atom.location);
    if (compensated) cell.compensator += volume * atom.mass / atom.location;
  }
  cell.rate = rate;
  return cell;
}

}  // namespace

std::vector<NoiseSample> sample(const NoiseSpec& spec, const GridDomain& domain,
                                const rng::RngSpec& rng_spec, int count) {
  if (count <= 0) throw BoundsError("sample count must be positive");
  const int cells = domain.cell_count();

  std::vector<CellLevy> levy_cells;
  if (spec.kind == NoiseKind::levy) {
    const KolmogorovMeasure* homog = spec.sigma ? &*spec.sigma : nullptr;
    for (int c = 0; c < cells; ++c) {
      levy_cells.push_back(prepare_cell(measures::cell_sigma(domain, homog, c),
                                        domain.cells()[static_cast<std::size_t>(c)].volume,
                                        spec.compensated));
    }
  }
  if (spec.kind == NoiseKind::poisson && !(spec.lambda > 0.0)) {
    throw ConfigError("Poisson intensity must be strictly positive");
  }
  if (spec.kind == NoiseKind::gamma) {
    for (int c = 0; c < cells; ++c) {
      if (!(per_cell(spec.alpha, c, "alpha") > 0.0) || !(per_cell(spec.beta, c, "beta") > 0.0))
        throw ConfigError("gamma parameters must be strictly positive");
    }
  }

  std::vector<NoiseSample> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    rng::Philox gen(rng_spec, static_cast<std::uint64_t>(k));
    auto& values = out[static_cast<std::size_t>(k)].values;
    values.resize(static_cast<std::size_t>(cells));
    for (int c = 0; c < cells; ++c) {
      const double vol = domain.cells()[static_cast<std::size_t>(c)].volume;
      double v = 0.0;
      switch (spec.kind) {
        case NoiseKind::gaussian:
          v = gen.next_gaussian() * std::sqrt(vol);
          break;
        case NoiseKind::poisson:
          v = static_cast<double>(gen.next_poisson(spec.lambda * vol));
          break;
        case NoiseKind::levy: {
          const auto& cell = levy_cells[static_cast<std::size_t>(c)];
          if (cell.gaussian_sd > 0.0) v += gen.next_gaussian() * cell.gaussian_sd;
          const long long jumps = gen.next_poisson(cell.rate);
          for (long long j = 0; j < jumps; ++j) {
            const double u = gen.next_unit() * cell.rate;
            const auto it = std::lower_bound(cell.cum.begin(), cell.cum.end(), u);
            const auto idx = static_cast<std::size_t>(it - cell.cum.begin());
            v += cell.sizes[idx < cell.sizes.size() ? idx : cell.sizes.size() - 1];
          }
          v -= cell.compensator;
          break;
        }
        case NoiseKind::gamma:
          v = gen.next_gamma(per_cell(spec.beta, c, "beta") * vol, per_cell(spec.alpha, c, "alpha"));
          break;
      }
      values[static_cast<std::size_t>(c)] = v;
    }
  }
  return out;
}

namespace {

void require_enough(std::span<const NoiseSample> samples) {
  if (samples.size() < 100) {
    throw BoundsError("functional estimates need at least 100 samples, got " +
                      std::to_string(samples.size()));
  }
}

double pairing(const NoiseSample& sample, const TestFunction& phi) {
  if (sample.values.size() != phi.values.size())
    throw ConfigError("test function length does not match the sample grid");
  double s = 0.0;
  for (std::size_t c = 0; c < phi.values.size(); ++c) s += sample.values[c] * phi.values[c];
  return s;
}

FunctionalEstimate estimate(std::span<const NoiseSample> samples, const TestFunction& phi,
                            bool laplace) {
  require_enough(samples);
  const double n = static_cast<double>(samples.size());
  double sum_re = 0.0;
  double sum_im = 0.0;
  for (const auto& s : samples) {
    const double x = pairing(s, phi);
    if (laplace) {
      sum_re += std::exp(-x);
    } else {
      sum_re += std::cos(x);
      sum_im += std::sin(x);
    }
  }
  const double mean_re = sum_re / n;
  const double mean_im = sum_im / n;
  double var_re = 0.0;
  double var_im = 0.0;
  for (const auto& s : samples) {
    const double x = pairing(s, phi);
    const double re = laplace ? std::exp(-x) : std::cos(x);
    var_re += (re - mean_re) * (re - mean_re);
    if (!laplace) {
      const double im = std::sin(x);
      var_im += (im - mean_im) * (im - mean_im);
    }
  }
  FunctionalEstimate out;
  out.value = {mean_re, laplace ? 0.0 : mean_im};
  out.se_re = std::sqrt(var_re / (n - 1.0) / n);
  out.se_im = laplace ? 0.0 : std::sqrt(var_im / (n - 1.0) / n);
  return out;
}

}  // namespace

FunctionalEstimate empirical_char_functional(std::span<const NoiseSample> samples,
                                             const TestFunction& phi) {
  return estimate(samples, phi, false);
}

FunctionalEstimate empirical_laplace_functional(const NoiseSpec& spec,
                                                std::span<const NoiseSample> samples,
                                                const TestFunction& phi) {
  switch (spec.kind) {
    case NoiseKind::poisson:
    case NoiseKind::gamma:
      break;
    case NoiseKind::levy: {
      if (spec.compensated) throw ConfigError("Laplace functional needs a nonnegative law; compensated Levy noise is centered");
      if (spec.sigma) {
        for (const auto& atom : spec.sigma->atoms()) {
          if (atom.mass > 0.0 && atom.location <= 0.0)
            throw ConfigError("Laplace functional needs positive jump sizes");
        }
      }
      break;
    }
    case NoiseKind::gaussian:
      throw ConfigError("Laplace functional needs a nonnegative law; Gaussian noise is signed");
  }
  return estimate(samples, phi, true);
}

std::complex<double> predicted_char(const NoiseSpec& spec, const TestFunction& phi,
                                    const GridDomain& domain) {
  switch (spec.kind) {
    case NoiseKind::gaussian:
      return measures::char_functional(measures::CharKind::gaussian, phi, domain);
    case NoiseKind::poisson:
      return measures::char_functional(measures::CharKind::poisson, phi, domain, nullptr, spec.lambda);
    case NoiseKind::levy: {
      const KolmogorovMeasure* homog = spec.sigma ? &*spec.sigma : nullptr;
      return measures::char_functional(spec.compensated ? measures::CharKind::levy_compensated
                                                        : measures::CharKind::levy_uncompensated,
                                       phi, domain, homog);
    }
    case NoiseKind::gamma:
      throw ConfigError("the gamma noise is compared through its Laplace functional");
  }
  throw Error(ErrorCode::internal, "unreachable noise kind");
}

double predicted_laplace(const NoiseSpec& spec, const TestFunction& phi, const GridDomain& domain) {
  switch (spec.kind) {
    case NoiseKind::poisson: {
      const KolmogorovMeasure unit_jump({{1.0, spec.lambda}});
      return measures::levy_laplace(phi, domain, &unit_jump);
    }
    case NoiseKind::gamma:
      return measures::gamma_laplace(phi, domain, spec.alpha, spec.beta);
    case NoiseKind::levy: {
      const KolmogorovMeasure* homog = spec.sigma ? &*spec.sigma : nullptr;
      return measures::levy_laplace(phi, domain, homog);
    }
    case NoiseKind::gaussian:
      throw ConfigError("Laplace functional needs a nonnegative law; Gaussian noise is signed");
  }
  throw Error(ErrorCode::internal, "unreachable noise kind");
}

bool laplace_applicable(const NoiseSpec& spec, const GridDomain& domain) {
  switch (spec.kind) {
    case NoiseKind::poisson:
    case NoiseKind::gamma:
      return true;
    case NoiseKind::levy: {
      if (spec.compensated) return false;
      const KolmogorovMeasure* homog = spec.sigma ? &*spec.sigma : nullptr;
      for (int c = 0; c < domain.cell_count(); ++c) {
        for (const auto& atom : measures::cell_sigma(domain, homog, c).atoms()) {
          if (atom.mass > 0.0 && atom.location <= 0.0) return false;
        }
      }
      return true;
    }
    case NoiseKind::gaussian:
      return false;
  }
  return false;
}

}  // namespace jfl::sampler
