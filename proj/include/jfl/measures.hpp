#ifndef JFL_MEASURES_HPP
#define JFL_MEASURES_HPP

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jfl/errors.hpp"

namespace jfl::measures {

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

// Finite nonnegative atomic measure on the real line. Nonzero total mass,
// pairwise distinct locations.
class KolmogorovMeasure {
 public:
  explicit KolmogorovMeasure(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  double total_mass() const;
  bool has_atom_at_zero() const;

 private:
  std::vector<Atom> atoms_;
};

struct Cell {
  int id = 0;
  double volume = 0.0;
};

// Finite discretization of the underlying space: cells with positive volumes,
// optionally carrying one Kolmogorov measure per cell (x-dependent kernel).
class GridDomain {
 public:
  explicit GridDomain(std::vector<Cell> cells,
                      std::optional<std::vector<KolmogorovMeasure>> kernel = std::nullopt);

  const std::vector<Cell>& cells() const { return cells_; }
  int cell_count() const { return static_cast<int>(cells_.size()); }
  bool has_kernel() const { return kernel_.has_value(); }
  const KolmogorovMeasure& kernel_at(int cell) const { return (*kernel_)[static_cast<std::size_t>(cell)]; }

 private:
  std::vector<Cell> cells_;
  std::optional<std::vector<KolmogorovMeasure>> kernel_;
};

// One real value per grid cell.
struct TestFunction {
  std::vector<double> values;
};

// Shape guard shared by every operation pairing a test function with a domain.
void require_matching(const TestFunction& phi, const GridDomain& domain);

// Per-cell measure resolution: the kernel entry when the domain has one,
// otherwise the homogeneous measure (which must then be supplied).
const KolmogorovMeasure& cell_sigma(const GridDomain& domain, const KolmogorovMeasure* sigma, int cell);

// Signed moment  sum_i mass_i location_i^n,  and the absolute variant.
double sigma_moment(const KolmogorovMeasure& sigma, int n);
double sigma_abs_moment(const KolmogorovMeasure& sigma, int n);

// Smallest C >= 0 with  int |s|^n dsigma <= C^n n!  for all 1 <= n <= n_max,
// i.e. max_n (int |s|^n dsigma / n!)^(1/n).
double check_moment_growth(const KolmogorovMeasure& sigma, int n_max);

// Volume-weighted mixture of the domain's per-cell measures (atoms at equal
// locations merged); the homogeneous measure scaled by total volume when no
// kernel is present. Feeding this to check_moment_growth is the grid-level
// content of the local moment bound for kernels.
KolmogorovMeasure kernel_mixture(const GridDomain& domain, const KolmogorovMeasure* sigma);

// n-th classical Levy cumulant of the smeared field:
//   int s^(n-2) dsigma(s) * sum_c vol_c phi_c^n
// (per-cell measures in kernel mode). Defined for n >= 2.
double levy_cumulant(int n, const TestFunction& phi, const GridDomain& domain,
                     const KolmogorovMeasure* sigma);

// Multilinear variant: int s^(n-2) dsigma * sum_c vol_c phi_1,c ... phi_n,c.
// This is simultaneously the classical multilinear cumulant and the free one.
double levy_cumulant_multilinear(std::span<const TestFunction* const> phis, const GridDomain& domain,
                                 const KolmogorovMeasure* sigma);

// Free cumulant C^(n): zero for n = 1, the multilinear form above for n >= 2.
// Homogeneous measures only (the free construction has no kernel variant).
double free_levy_cumulant(std::span<const TestFunction> phis, const GridDomain& domain,
                          const KolmogorovMeasure& sigma);

enum class CharKind { gaussian, poisson, levy_compensated, levy_uncompensated };

// Characteristic functional  E exp(i <omega, phi>)  evaluated in closed form:
//   gaussian            exp[-1/2 sum vol phi^2]
//   poisson             exp[lambda sum vol (e^{i phi} - 1)]
//   levy_compensated    exp[sum_c vol_c sum_i mass_i (e^{i s phi} - 1 - i s phi)/s^2]
//                       with the s = 0 integrand taken as -phi^2/2
//   levy_uncompensated  exp[sum_c vol_c sum_i mass_i (e^{i s phi} - 1)/s^2],
//                       requires no atom at s = 0
std::complex<double> char_functional(CharKind kind, const TestFunction& phi, const GridDomain& domain,
                                     const KolmogorovMeasure* sigma = nullptr, double lambda = 1.0);

// Laplace functional  E exp(-<eta, phi>)  of the uncompensated Levy noise,
// exp[sum_c vol_c sum_i mass_i (e^{-s phi} - 1)/s^2]. No atom at s = 0.
double levy_laplace(const TestFunction& phi, const GridDomain& domain, const KolmogorovMeasure* sigma);

// Laplace functional of the gamma noise, exp[-sum_c vol_c beta_c log(1 +
// alpha_c phi_c)]. alpha and beta have one entry per cell or a single shared
// entry; validity requires phi_c > -1/alpha_c.
double gamma_laplace(const TestFunction& phi, const GridDomain& domain, std::span<const double> alpha,
                     std::span<const double> beta);

// Free cumulant transform in closed form, sum_c vol_c sum_i mass_i phi_c^2 /
// (1 - s_i phi_c), valid for max |s_i phi_c| < 1.
double free_cumulant_transform(const TestFunction& phi, const GridDomain& domain,
                               const KolmogorovMeasure& sigma);

// Partial sum  sum_{n=2}^{terms} C^(n)(phi,...,phi)  of the defining series;
// converges to the closed form inside the validity region.
double free_cumulant_transform_partial(const TestFunction& phi, const GridDomain& domain,
                                       const KolmogorovMeasure& sigma, int terms);

// Gauss-Legendre discretization of the gamma kernel beta s e^{-s/alpha} ds on
// [0, S], with S chosen so the dropped tail mass is below tail_mass.
KolmogorovMeasure gamma_kolmogorov_quadrature(double alpha, double beta, int nodes = 64,
                                              double tail_mass = 1e-10);

// JSON round trip; serialization carries 17 significant digits so parsing the
// output reproduces the exact binary64 values.
GridDomain domain_from_json(const std::string& text);
std::string domain_to_json(const GridDomain& domain);
KolmogorovMeasure sigma_from_json(const std::string& text);
std::string sigma_to_json(const KolmogorovMeasure& sigma);

// Combined wire format: {"cells":[{"id":0,"volume":1.0},...]} plus either
// "sigma":{"atoms":[[s,mass],...]} or "kernel":[{"atoms":...} per cell].
struct NoiseDescription {
  GridDomain domain;
  std::optional<KolmogorovMeasure> sigma;
};
NoiseDescription noise_from_json(const std::string& text);
std::string noise_to_json(const NoiseDescription& description);

}  // namespace jfl::measures

#endif  // JFL_MEASURES_HPP
