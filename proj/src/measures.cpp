#include "jfl/measures.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>

#include "jfl/jacobi.hpp"
#include "jfl/json_io.hpp"

namespace jfl::measures {

namespace {

double ipow(double x, int n) {
  double v = 1.0;
  for (int i = 0; i < n; ++i) v *= x;
  return v;
}

}  // namespace

KolmogorovMeasure::KolmogorovMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw ConfigError("Kolmogorov measure needs at least one atom");
  bool positive = false;
  for (const auto& a : atoms_) {
    if (!(a.mass >= 0.0)) throw ConfigError("Kolmogorov measure masses must be nonnegative");
    if (!std::isfinite(a.location) || !std::isfinite(a.mass))
      throw ConfigError("Kolmogorov measure entries must be finite");
    positive = positive || a.mass > 0.0;
  }
  if (!positive) throw ConfigError("Kolmogorov measure must have nonzero total mass");
  auto sorted = atoms_;
  std::sort(sorted.begin(), sorted.end(), [](const Atom& a, const Atom& b) { return a.location < b.location; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].location == sorted[i - 1].location)
      throw ConfigError("Kolmogorov measure locations must be pairwise distinct");
  }
}

double KolmogorovMeasure::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.mass;
  return m;
}

bool KolmogorovMeasure::has_atom_at_zero() const {
  for (const auto& a : atoms_) {
    if (a.location == 0.0 && a.mass > 0.0) return true;
  }
  return false;
}

GridDomain::GridDomain(std::vector<Cell> cells, std::optional<std::vector<KolmogorovMeasure>> kernel)
    : cells_(std::move(cells)), kernel_(std::move(kernel)) {
  if (cells_.empty()) throw ConfigError("grid domain needs at least one cell");
  for (const auto& c : cells_) {
    if (!(c.volume > 0.0) || !std::isfinite(c.volume))
      throw ConfigError("cell volumes must be strictly positive");
  }
  if (kernel_ && kernel_->size() != cells_.size()) {
    throw ConfigError("kernel must provide exactly one Kolmogorov measure per cell");
  }
}

void require_matching(const TestFunction& phi, const GridDomain& domain) {
  if (static_cast<int>(phi.values.size()) != domain.cell_count()) {
    throw ConfigError("test function has " + std::to_string(phi.values.size()) +
                      " values for a domain of " + std::to_string(domain.cell_count()) + " cells");
  }
}

const KolmogorovMeasure& cell_sigma(const GridDomain& domain, const KolmogorovMeasure* sigma, int cell) {
  if (domain.has_kernel()) return domain.kernel_at(cell);
  if (sigma == nullptr) throw ConfigError("no Kolmogorov measure given and the domain has no kernel");
  return *sigma;
}

double sigma_moment(const KolmogorovMeasure& sigma, int n) {
  if (n < 0) throw BoundsError("moment order must be nonnegative");
  double s = 0.0;
  for (const auto& a : sigma.atoms()) s += a.mass * ipow(a.location, n);
  return s;
}

double sigma_abs_moment(const KolmogorovMeasure& sigma, int n) {
  if (n < 0) throw BoundsError("moment order must be nonnegative");
  double s = 0.0;
  for (const auto& a : sigma.atoms()) s += a.mass * ipow(std::abs(a.location), n);
  return s;
}

double check_moment_growth(const KolmogorovMeasure& sigma, int n_max) {
  if (n_max < 1 || n_max > 30) throw BoundsError("growth check order must lie in [1, 30]");
  double best = 0.0;
  double factorial = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    factorial *= n;
    const double ratio = sigma_abs_moment(sigma, n) / factorial;
    if (ratio > 0.0) best = std::max(best, std::pow(ratio, 1.0 / n));
  }
  return best;
}

KolmogorovMeasure kernel_mixture(const GridDomain& domain, const KolmogorovMeasure* sigma) {
  std::map<double, double> merged;
  for (int c = 0; c < domain.cell_count(); ++c) {
    const double vol = domain.cells()[static_cast<std::size_t>(c)].volume;
    for (const auto& a : cell_sigma(domain, sigma, c).atoms()) merged[a.location] += vol * a.mass;
  }
  std::vector<Atom> atoms;
  atoms.reserve(merged.size());
  for (const auto& [loc, mass] : merged) atoms.push_back({loc, mass});
  return KolmogorovMeasure(std::move(atoms));
}

double levy_cumulant(int n, const TestFunction& phi, const GridDomain& domain,
                     const KolmogorovMeasure* sigma) {
  if (n < 2) throw ConfigError("Levy cumulants start at order 2 (the first cumulant vanishes)");
  require_matching(phi, domain);
  double total = 0.0;
  for (int c = 0; c < domain.cell_count(); ++c) {
    const auto& cell = domain.cells()[static_cast<std::size_t>(c)];
    total += cell.volume * ipow(phi.values[static_cast<std::size_t>(c)], n) *
             sigma_moment(cell_sigma(domain, sigma, c), n - 2);
  }
  return total;
}

double levy_cumulant_multilinear(std::span<const TestFunction* const> phis, const GridDomain& domain,
                                 const KolmogorovMeasure* sigma) {
  const int n = static_cast<int>(phis.size());
  if (n < 2) throw ConfigError("Levy cumulants start at order 2 (the first cumulant vanishes)");
  for (const auto* phi : phis) require_matching(*phi, domain);
  double total = 0.0;
  for (int c = 0; c < domain.cell_count(); ++c) {
    const auto& cell = domain.cells()[static_cast<std::size_t>(c)];
    double prod = 1.0;
    for (const auto* phi : phis) prod *= phi->values[static_cast<std::size_t>(c)];
    total += cell.volume * prod * sigma_moment(cell_sigma(domain, sigma, c), n - 2);
  }
  return total;
}

double free_levy_cumulant(std::span<const TestFunction> phis, const GridDomain& domain,
                          const KolmogorovMeasure& sigma) {
  if (phis.empty()) throw ConfigError("free cumulant needs at least one test function");
  if (phis.size() == 1) {
    require_matching(phis[0], domain);
    return 0.0;
  }
  std::vector<const TestFunction*> ptrs;
  ptrs.reserve(phis.size());
  for (const auto& phi : phis) ptrs.push_back(&phi);
  return levy_cumulant_multilinear(ptrs, domain, &sigma);
}

std::complex<double> char_functional(CharKind kind, const TestFunction& phi, const GridDomain& domain,
                                     const KolmogorovMeasure* sigma, double lambda) {
  require_matching(phi, domain);
  const std::complex<double> i(0.0, 1.0);
  std::complex<double> exponent = 0.0;
  switch (kind) {
    case CharKind::gaussian: {
      double s = 0.0;
      for (int c = 0; c < domain.cell_count(); ++c)
        s += domain.cells()[static_cast<std::size_t>(c)].volume *
             ipow(phi.values[static_cast<std::size_t>(c)], 2);
      exponent = -0.5 * s;
      break;
    }
    case CharKind::poisson: {
      if (!(lambda > 0.0)) throw ConfigError("Poisson intensity must be strictly positive");
      for (int c = 0; c < domain.cell_count(); ++c) {
        const auto& cell = domain.cells()[static_cast<std::size_t>(c)];
        exponent += lambda * cell.volume *
                    (std::exp(i * phi.values[static_cast<std::size_t>(c)]) - 1.0);
      }
      break;
    }
    case CharKind::levy_compensated:
    case CharKind::levy_uncompensated: {
      const bool compensated = kind == CharKind::levy_compensated;
      for (int c = 0; c < domain.cell_count(); ++c) {
        const auto& cell = domain.cells()[static_cast<std::size_t>(c)];
        const auto& sig = cell_sigma(domain, sigma, c);
        if (!compensated && sig.has_atom_at_zero()) {
          throw ConfigError("uncompensated Levy functional requires sigma({0}) = 0");
        }
        const double p = phi.values[static_cast<std::size_t>(c)];
        for (const auto& atom : sig.atoms()) {
          std::complex<double> g;
          if (atom.location == 0.0) {
            g = -0.5 * p * p;  // limiting value of the compensated integrand
          } else {
            g = std::exp(i * atom.location * p) - 1.0;
            if (compensated) g -= i * atom.location * p;
            g /= atom.location * atom.location;
          }
          exponent += cell.volume * atom.mass * g;
        }
      }
      break;
    }
  }
  return std::exp(exponent);
}

double levy_laplace(const TestFunction& phi, const GridDomain& domain, const KolmogorovMeasure* sigma) {
  require_matching(phi, domain);
  double exponent = 0.0;
  for (int c = 0; c < domain.cell_count(); ++c) {
    const auto& cell = domain.cells()[static_cast<std::size_t>(c)];
    const auto& sig = cell_sigma(domain, sigma, c);
    if (sig.has_atom_at_zero()) throw ConfigError("Laplace functional requires sigma({0}) = 0");
    const double p = phi.values[static_cast<std::size_t>(c)];
    for (const auto& atom : sig.atoms()) {
      exponent += cell.volume * atom.mass * (std::exp(-atom.location * p) - 1.0) /
                  (atom.location * atom.location);
    }
  }
  return std::exp(exponent);
}

namespace {

double per_cell(std::span<const double> values, int cell, const char* what) {
  if (values.size() == 1) return values[0];
  if (static_cast<std::size_t>(cell) < values.size()) return values[static_cast<std::size_t>(cell)];
  throw ConfigError(std::string(what) + " needs one entry per cell or a single shared entry");
}

}  // namespace

double gamma_laplace(const TestFunction& phi, const GridDomain& domain, std::span<const double> alpha,
                     std::span<const double> beta) {
  require_matching(phi, domain);
  if (alpha.size() != 1 && static_cast<int>(alpha.size()) != domain.cell_count())
    throw ConfigError("alpha needs one entry per cell or a single shared entry");
  if (beta.size() != 1 && static_cast<int>(beta.size()) != domain.cell_count())
    throw ConfigError("beta needs one entry per cell or a single shared entry");
  double exponent = 0.0;
  for (int c = 0; c < domain.cell_count(); ++c) {
    const double a = per_cell(alpha, c, "alpha");
    const double b = per_cell(beta, c, "beta");
    if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("gamma parameters must be strictly positive");
    const double p = phi.values[static_cast<std::size_t>(c)];
    if (!(p > -1.0 / a)) {
      throw ConfigError("gamma Laplace functional needs phi > -1/alpha; cell " + std::to_string(c) +
                        " has phi = " + std::to_string(p) + " with alpha = " + std::to_string(a));
    }
    exponent -= domain.cells()[static_cast<std::size_t>(c)].volume * b * std::log1p(a * p);
  }
  return std::exp(exponent);
}

namespace {

void require_convergent(const TestFunction& phi, const KolmogorovMeasure& sigma) {
  double worst = 0.0;
  for (const auto& atom : sigma.atoms())
    for (double p : phi.values) worst = std::max(worst, std::abs(atom.location * p));
  if (!(worst < 1.0)) {
    throw ConfigError("free cumulant transform needs max |s phi| < 1, got " + std::to_string(worst));
  }
}

}  // namespace

double free_cumulant_transform(const TestFunction& phi, const GridDomain& domain,
                               const KolmogorovMeasure& sigma) {
  require_matching(phi, domain);
  require_convergent(phi, sigma);
  double total = 0.0;
  for (int c = 0; c < domain.cell_count(); ++c) {
    const double vol = domain.cells()[static_cast<std::size_t>(c)].volume;
    const double p = phi.values[static_cast<std::size_t>(c)];
    for (const auto& atom : sigma.atoms()) {
      total += vol * atom.mass * p * p / (1.0 - atom.location * p);
    }
  }
  return total;
}

double free_cumulant_transform_partial(const TestFunction& phi, const GridDomain& domain,
                                       const KolmogorovMeasure& sigma, int terms) {
  require_matching(phi, domain);
  if (terms < 1) throw BoundsError("partial sum needs at least one term");
  double total = 0.0;
  for (int n = 2; n <= terms; ++n) {
    const double smoment = sigma_moment(sigma, n - 2);
    double cell_sum = 0.0;
    for (int c = 0; c < domain.cell_count(); ++c) {
      cell_sum += domain.cells()[static_cast<std::size_t>(c)].volume *
                  ipow(phi.values[static_cast<std::size_t>(c)], n);
    }
    total += smoment * cell_sum;
  }
  return total;
}

KolmogorovMeasure gamma_kolmogorov_quadrature(double alpha, double beta, int nodes, double tail_mass) {
  if (!(alpha > 0.0) || !(beta > 0.0)) throw ConfigError("gamma parameters must be strictly positive");
  if (nodes < 2) throw BoundsError("quadrature needs at least two nodes");
  // tail of beta s e^{-s/alpha} beyond S is beta alpha e^{-S/alpha} (S + alpha)
  double s_max = alpha;
  while (beta * alpha * std::exp(-s_max / alpha) * (s_max + alpha) > tail_mass) s_max *= 1.25;
  const auto rule = jacobi::discretize_measure(jacobi::legendre_section(nodes));
  std::vector<Atom> atoms;
  atoms.reserve(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double s = 0.5 * s_max * (rule.nodes[i] + 1.0);
    // rule weights integrate against dt/2 on [-1,1]; rescale to ds on [0,S]
    const double mass = s_max * rule.weights[i] * beta * s * std::exp(-s / alpha);
    atoms.push_back({s, mass});
  }
  return KolmogorovMeasure(std::move(atoms));
}

namespace {

using njson = nlohmann::json;

njson parse(const std::string& text, const char* what) {
  njson j = njson::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError(std::string("invalid JSON for ") + what);
  return j;
}

std::vector<Atom> atoms_from(const njson& j, const char* what) {
  if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array())
    throw ConfigError(std::string(what) + R"( must look like {"atoms":[[location,mass],...]})");
  std::vector<Atom> atoms;
  for (const auto& entry : j["atoms"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
      throw ConfigError(std::string(what) + " atoms must be [location, mass] pairs");
    atoms.push_back({entry[0].get<double>(), entry[1].get<double>()});
  }
  return atoms;
}

}  // namespace

GridDomain domain_from_json(const std::string& text) {
  const njson j = parse(text, "domain");
  if (!j.is_object() || !j.contains("cells") || !j["cells"].is_array())
    throw ConfigError(R"(domain must look like {"cells":[{"id":0,"volume":1.0},...]})");
  std::vector<Cell> cells;
  for (const auto& entry : j["cells"]) {
    if (!entry.is_object() || !entry.contains("volume"))
      throw ConfigError("each cell must be an object with a volume");
    Cell c;
    c.id = entry.value("id", static_cast<int>(cells.size()));
    c.volume = entry["volume"].get<double>();
    cells.push_back(c);
  }
  std::optional<std::vector<KolmogorovMeasure>> kernel;
  if (j.contains("kernel")) {
    if (!j["kernel"].is_array()) throw ConfigError("kernel must be an array of Kolmogorov measures");
    std::vector<KolmogorovMeasure> entries;
    for (const auto& e : j["kernel"]) entries.push_back(KolmogorovMeasure(atoms_from(e, "kernel entry")));
    kernel = std::move(entries);
  }
  return GridDomain(std::move(cells), std::move(kernel));
}

std::string domain_to_json(const GridDomain& domain) {
  jfl::json::Writer w;
  w.begin_object().key("cells").begin_array();
  for (const auto& cell : domain.cells()) {
    w.begin_object().key("id").value(cell.id).key("volume").value(cell.volume).end_object();
  }
  w.end_array();
  if (domain.has_kernel()) {
    w.key("kernel").begin_array();
    for (int c = 0; c < domain.cell_count(); ++c) {
      w.begin_object().key("atoms").begin_array();
      for (const auto& atom : domain.kernel_at(c).atoms()) {
        w.begin_array().value(atom.location).value(atom.mass).end_array();
      }
      w.end_array().end_object();
    }
    w.end_array();
  }
  w.end_object();
  return w.str();
}

KolmogorovMeasure sigma_from_json(const std::string& text) {
  return KolmogorovMeasure(atoms_from(parse(text, "sigma"), "sigma"));
}

NoiseDescription noise_from_json(const std::string& text) {
  const njson j = parse(text, "noise description");
  if (!j.is_object() || !j.contains("cells"))
    throw ConfigError(R"(noise description must look like {"cells":[...], "sigma":{...}} or {"cells":[...], "kernel":[...]})");
  NoiseDescription out{domain_from_json(j.dump()), std::nullopt};
  if (j.contains("sigma")) {
    if (j.contains("kernel")) throw ConfigError("give either sigma or kernel, not both");
    out.sigma = KolmogorovMeasure(atoms_from(j.at("sigma"), "sigma"));
  }
  return out;
}

std::string noise_to_json(const NoiseDescription& description) {
  const auto& domain = description.domain;
  jfl::json::Writer w;
  w.begin_object().key("cells").begin_array();
  for (const auto& cell : domain.cells()) {
    w.begin_object().key("id").value(cell.id).key("volume").value(cell.volume).end_object();
  }
  w.end_array();
  auto write_atoms = [&](const KolmogorovMeasure& sigma) {
    w.begin_object().key("atoms").begin_array();
    for (const auto& atom : sigma.atoms()) {
      w.begin_array().value(atom.location).value(atom.mass).end_array();
    }
    w.end_array().end_object();
  };
  if (domain.has_kernel()) {
    w.key("kernel").begin_array();
    for (int c = 0; c < domain.cell_count(); ++c) write_atoms(domain.kernel_at(c));
    w.end_array();
  } else if (description.sigma) {
    w.key("sigma");
    write_atoms(*description.sigma);
  }
  w.end_object();
  return w.str();
}

std::string sigma_to_json(const KolmogorovMeasure& sigma) {
  jfl::json::Writer w;
  w.begin_object().key("atoms").begin_array();
  for (const auto& atom : sigma.atoms()) {
    w.begin_array().value(atom.location).value(atom.mass).end_array();
  }
  w.end_array().end_object();
  return w.str();
}

}  // namespace jfl::measures
