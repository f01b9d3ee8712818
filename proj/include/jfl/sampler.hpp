#ifndef JFL_SAMPLER_HPP
#define JFL_SAMPLER_HPP

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "jfl/measures.hpp"
#include "jfl/rng.hpp"

namespace jfl::sampler {

enum class NoiseKind { gaussian, poisson, levy, gamma };

struct NoiseSpec {
  NoiseKind kind;
  double lambda = 1.0;                                              // poisson
  std::optional<measures::KolmogorovMeasure> sigma = std::nullopt;  // levy (homogeneous)
  bool compensated = true;                                          // levy
  std::vector<double> alpha{1.0};                                   // gamma, per cell or shared
  std::vector<double> beta{1.0};
};

// One realization: the pairing <omega, 1_cell> per grid cell. Poisson values
// are raw counts; gamma values are nonnegative masses.
struct NoiseSample {
  std::vector<double> values;
};

// count independent realizations, cells independent within each. Sample k
// draws from the substream (spec.seed, spec.stream, k), so generation is
// reproducible draw-by-draw and trivially parallel.
std::vector<NoiseSample> sample(const NoiseSpec& spec, const measures::GridDomain& domain,
                                const rng::RngSpec& rng_spec, int count);

struct FunctionalEstimate {
  std::complex<double> value;
  double se_re = 0.0;  // standard error of the real part
  double se_im = 0.0;
};

// Monte Carlo mean of exp(i <omega, phi>), with per-component standard errors.
FunctionalEstimate empirical_char_functional(std::span<const NoiseSample> samples,
                                             const measures::TestFunction& phi);

// Monte Carlo mean of exp(-<eta, phi>); only meaningful for nonnegative
// kinds (poisson, gamma, uncompensated levy with positive atoms).
FunctionalEstimate empirical_laplace_functional(const NoiseSpec& spec,
                                                std::span<const NoiseSample> samples,
                                                const measures::TestFunction& phi);

// Closed forms matching the sampled laws, for comparison reports.
std::complex<double> predicted_char(const NoiseSpec& spec, const measures::TestFunction& phi,
                                    const measures::GridDomain& domain);
double predicted_laplace(const NoiseSpec& spec, const measures::TestFunction& phi,
                         const measures::GridDomain& domain);
bool laplace_applicable(const NoiseSpec& spec, const measures::GridDomain& domain);

}  // namespace jfl::sampler

#endif  // JFL_SAMPLER_HPP
