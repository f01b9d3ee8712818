#include "jfl/reports.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "jfl/fields.hpp"
#include "jfl/jacobi.hpp"
#include "jfl/json_io.hpp"
#include "jfl/measures.hpp"
#include "jfl/partitions.hpp"
#include "jfl/sampler.hpp"

namespace jfl::reports {

namespace {

using njson = nlohmann::json;
using json::Writer;

// Parsed configuration that records every default it hands out, so the echoed
// config is the fully resolved one.
class Config {
 public:
  explicit Config(const std::string& text) {
    if (text.empty()) {
      j_ = njson::object();
      return;
    }
    j_ = njson::parse(text, nullptr, false);
    if (j_.is_discarded() || !j_.is_object()) {
      throw ConfigError("config must be a JSON object");
    }
  }

  bool has(const char* key) const { return j_.contains(key); }

  const njson& require(const char* key) const {
    if (!j_.contains(key)) throw ConfigError(std::string("config field '") + key + "' is required");
    return j_.at(key);
  }

  template <typename T>
  T get(const char* key, T fallback) {
    if (!j_.contains(key)) {
      j_[key] = fallback;
      return fallback;
    }
    try {
      return j_.at(key).get<T>();
    } catch (const njson::exception&) {
      throw ConfigError(std::string("config field '") + key + "' has the wrong type");
    }
  }

  std::string get_string(const char* key, const std::string& fallback) {
    return get<std::string>(key, fallback);
  }

  std::vector<double> double_array(const char* key) const {
    const auto& v = require(key);
    if (!v.is_array() || v.empty()) throw ConfigError(std::string("config field '") + key + "' must be a nonempty array");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError(std::string("config field '") + key + "' must hold numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::vector<double> scalar_or_array(const char* key, double fallback) {
    if (!j_.contains(key)) {
      j_[key] = fallback;
      return {fallback};
    }
    const auto& v = j_.at(key);
    if (v.is_number()) return {v.get<double>()};
    if (v.is_array()) return double_array(key);
    throw ConfigError(std::string("config field '") + key + "' must be a number or an array");
  }

  njson& raw() { return j_; }
  const njson& raw() const { return j_; }

 private:
  njson j_;
};

void write_value(Writer& w, const njson& v) {
  switch (v.type()) {
    case njson::value_t::object:
      w.begin_object();
      for (auto it = v.begin(); it != v.end(); ++it) {
        w.key(it.key());
        write_value(w, it.value());
      }
      w.end_object();
      break;
    case njson::value_t::array:
      w.begin_array();
      for (const auto& e : v) write_value(w, e);
      w.end_array();
      break;
    case njson::value_t::string:
      w.value(std::string_view(v.get_ref<const std::string&>()));
      break;
    case njson::value_t::boolean:
      w.value(v.get<bool>());
      break;
    case njson::value_t::number_integer:
      w.value(static_cast<long long>(v.get<std::int64_t>()));
      break;
    case njson::value_t::number_unsigned:
      w.value(static_cast<unsigned long long>(v.get<std::uint64_t>()));
      break;
    case njson::value_t::number_float:
      w.value(v.get<double>());
      break;
    default:
      w.begin_object().end_object();  // null and friends do not appear in configs
  }
}

void write_doubles(Writer& w, std::span<const double> values) {
  w.begin_array();
  for (double v : values) w.value(v);
  w.end_array();
}

// The 'domain' document may embed "sigma" or "kernel" (the combined wire
// format); a top-level 'sigma' key overrides an embedded one.
measures::NoiseDescription noise_from(const Config& cfg) {
  auto desc = measures::noise_from_json(cfg.require("domain").dump());
  if (cfg.has("sigma")) desc.sigma = measures::sigma_from_json(cfg.raw().at("sigma").dump());
  return desc;
}

// "phi" is either one vector or a list of vectors, one value per cell.
std::vector<measures::TestFunction> phis_from(const Config& cfg, int cells, bool required) {
  if (!cfg.has("phi")) {
    if (required) throw ConfigError("config field 'phi' is required");
    return {};
  }
  const auto& v = cfg.raw().at("phi");
  if (!v.is_array() || v.empty()) throw ConfigError("config field 'phi' must be a nonempty array");
  std::vector<measures::TestFunction> out;
  if (v.front().is_array()) {
    for (const auto& row : v) {
      measures::TestFunction phi;
      for (const auto& e : row) phi.values.push_back(e.get<double>());
      out.push_back(std::move(phi));
    }
  } else {
    measures::TestFunction phi;
    for (const auto& e : v) phi.values.push_back(e.get<double>());
    out.push_back(std::move(phi));
  }
  for (const auto& phi : out) {
    if (static_cast<int>(phi.values.size()) != cells) {
      throw ConfigError("config field 'phi' must have one value per cell (" + std::to_string(cells) + ")");
    }
  }
  return out;
}

struct FieldKindInfo {
  fields::FieldKind kind;
  bool compensated;
};

FieldKindInfo field_kind_from(Config& cfg) {
  const std::string name = cfg.require("kind").get<std::string>();
  bool compensated = cfg.get<bool>("compensated", true);
  fields::FieldKind kind;
  if (name == "gaussian") {
    kind = fields::FieldKind::gaussian;
  } else if (name == "poisson") {
    kind = fields::FieldKind::poisson;
  } else if (name == "levy") {
    kind = fields::FieldKind::levy;
  } else if (name == "levy_compensated") {
    kind = fields::FieldKind::levy;
    compensated = true;
  } else if (name == "levy_uncompensated") {
    kind = fields::FieldKind::levy;
    compensated = false;
  } else if (name == "free_levy") {
    kind = fields::FieldKind::free_levy;
  } else {
    throw ConfigError("config field 'kind' must be one of gaussian, poisson, levy, levy_compensated, levy_uncompensated, free_levy");
  }
  return {kind, compensated};
}

void write_header(Writer& w, const char* command, const Config& cfg) {
  w.key("command").value(std::string_view(command));
  w.key("config");
  write_value(w, cfg.raw());
}

// ---------------------------------------------------------------- moments

int cmd_moments(Config& cfg, Writer& w) {
  const auto kind = field_kind_from(cfg);
  auto [domain, sigma] = noise_from(cfg);
  const int truncation = cfg.get<int>("truncation", 6);
  const double tolerance = cfg.get<double>("tolerance", 1e-9);
  const double lambda = cfg.get<double>("lambda", 1.0);
  auto phis = phis_from(cfg, domain.cell_count(), true);

  std::vector<std::vector<measures::TestFunction>> rows;
  if (phis.size() == 1) {
    const int order = cfg.require("order").get<int>();
    if (order < 1 || order > 8) throw BoundsError("moment order must lie in [1, 8]");
    for (int n = 1; n <= order; ++n)
      rows.emplace_back(static_cast<std::size_t>(n), phis.front());
  } else {
    rows.push_back(phis);
  }
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) > truncation) {
      throw BoundsError("moment order " + std::to_string(row.size()) + " exceeds truncation " +
                        std::to_string(truncation));
    }
  }

  fields::FieldAlgebra algebra(
      {kind.kind, std::move(domain), truncation, std::move(sigma), lambda, kind.compensated});

  struct Row {
    int order;
    double op;
    double predicted;
  };
  std::vector<Row> results;
  bool pass = true;
  for (const auto& row : rows) {
    Row r{static_cast<int>(row.size()), algebra.joint_moment(row), algebra.predicted_moment(row)};
    pass = pass && std::abs(r.op - r.predicted) <= tolerance;
    results.push_back(r);
  }

  w.begin_object();
  write_header(w, "moments", cfg);
  w.key("results").begin_array();
  for (const auto& r : results) {
    w.begin_object()
        .key("order").value(r.order)
        .key("operator").value(r.op)
        .key("predicted").value(r.predicted)
        .key("abs_diff").value(std::abs(r.op - r.predicted))
        .key("pass").value(std::abs(r.op - r.predicted) <= tolerance)
        .end_object();
  }
  w.end_array();
  w.key("pass").value(pass);
  w.end_object();
  return pass ? 0 : 5;
}

// ---------------------------------------------------------------- sample

sampler::NoiseSpec noise_spec_from(Config& cfg, const measures::GridDomain& domain,
                                   std::optional<measures::KolmogorovMeasure> sigma) {
  const std::string name = cfg.require("kind").get<std::string>();
  sampler::NoiseSpec spec{sampler::NoiseKind::gaussian};
  if (name == "gaussian") {
    spec.kind = sampler::NoiseKind::gaussian;
  } else if (name == "poisson") {
    spec.kind = sampler::NoiseKind::poisson;
    spec.lambda = cfg.get<double>("lambda", 1.0);
  } else if (name == "levy" || name == "levy_compensated" || name == "levy_uncompensated") {
    spec.kind = sampler::NoiseKind::levy;
    spec.compensated = name == "levy_uncompensated" ? false
                       : name == "levy_compensated" ? true
                                                    : cfg.get<bool>("compensated", true);
    spec.sigma = std::move(sigma);
    if (!spec.sigma && !domain.has_kernel()) {
      throw ConfigError("config field 'sigma' is required for levy sampling without a kernel");
    }
  } else if (name == "gamma") {
    spec.kind = sampler::NoiseKind::gamma;
    spec.alpha = cfg.scalar_or_array("alpha", 1.0);
    spec.beta = cfg.scalar_or_array("beta", 1.0);
  } else {
    throw ConfigError("config field 'kind' must be one of gaussian, poisson, levy, levy_compensated, levy_uncompensated, gamma");
  }
  return spec;
}

int cmd_sample(Config& cfg, Writer& w) {
  auto [domain, sigma] = noise_from(cfg);
  auto spec = noise_spec_from(cfg, domain, std::move(sigma));
  const int count = cfg.get<int>("samples", 100000);
  const rng::RngSpec rng_spec{cfg.get<std::uint64_t>("seed", 0), cfg.get<std::uint64_t>("stream", 0)};
  auto phis = phis_from(cfg, domain.cell_count(), false);

  std::string samples_path = cfg.get_string("samples_out", "");
  if (samples_path.empty()) {
    const std::string out = cfg.get_string("out", "");
    samples_path = out.empty() ? "samples.jsonl" : out + ".samples.jsonl";
    cfg.raw()["samples_out"] = samples_path;
  }

  auto samples = sampler::sample(spec, domain, rng_spec, count);

  {
    std::ofstream file(samples_path, std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError("cannot open samples_out path '" + samples_path + "'");
    for (const auto& s : samples) {
      Writer line;
      line.begin_object().key("values");
      write_doubles(line, s.values);
      line.end_object();
      file << line.str() << '\n';
    }
  }

  struct Check {
    std::string functional;
    const measures::TestFunction* phi;
    sampler::FunctionalEstimate estimate;
    std::complex<double> predicted;
    bool pass;
  };
  std::vector<Check> checks;
  const bool laplace_ok = sampler::laplace_applicable(spec, domain);
  for (const auto& phi : phis) {
    if (spec.kind != sampler::NoiseKind::gamma) {
      auto est = sampler::empirical_char_functional(samples, phi);
      auto pred = sampler::predicted_char(spec, phi, domain);
      const bool pass = std::abs(est.value.real() - pred.real()) <= 4.0 * est.se_re &&
                        std::abs(est.value.imag() - pred.imag()) <= 4.0 * est.se_im;
      checks.push_back({"char", &phi, est, pred, pass});
    }
    if (laplace_ok) {
      auto est = sampler::empirical_laplace_functional(spec, samples, phi);
      const double pred = sampler::predicted_laplace(spec, phi, domain);
      const bool pass = std::abs(est.value.real() - pred) <= 4.0 * est.se_re;
      checks.push_back({"laplace", &phi, est, {pred, 0.0}, pass});
    }
  }

  bool pass = true;
  for (const auto& c : checks) pass = pass && c.pass;

  w.begin_object();
  write_header(w, "sample", cfg);
  w.key("count").value(count);
  w.key("samples_path").value(std::string_view(samples_path));
  w.key("checks").begin_array();
  for (const auto& c : checks) {
    w.begin_object()
        .key("functional").value(std::string_view(c.functional))
        .key("phi");
    write_doubles(w, c.phi->values);
    w.key("empirical").begin_array().value(c.estimate.value.real()).value(c.estimate.value.imag()).end_array();
    w.key("stderr").value(std::max(c.estimate.se_re, c.estimate.se_im));
    w.key("predicted").begin_array().value(c.predicted.real()).value(c.predicted.imag()).end_array();
    w.key("pass").value(c.pass);
    w.end_object();
  }
  w.end_array();
  w.key("pass").value(pass);
  w.end_object();
  return pass ? 0 : 5;
}

// ---------------------------------------------------------------- jacobi

int cmd_jacobi(Config& cfg, Writer& w) {
  const double tolerance = cfg.get<double>("tolerance", 1e-9);
  std::optional<jacobi::JacobiMatrix> j;
  std::vector<double> input_moments;
  if (cfg.has("moments")) {
    input_moments = cfg.double_array("moments");
    j.emplace(jacobi::recurrence_coefficients_from_moments(input_moments));
  } else if (cfg.has("diag")) {
    auto diag = cfg.double_array("diag");
    std::vector<double> offdiag;
    if (cfg.has("offdiag")) offdiag = cfg.double_array("offdiag");
    j.emplace(std::move(diag), std::move(offdiag));
  } else {
    throw ConfigError("config needs either 'moments' or 'diag'/'offdiag'");
  }

  const int m = j->size();
  auto moments = jacobi::spectral_moments(*j, 2 * (m - 1));
  auto measure = jacobi::discretize_measure(*j);

  double ortho_residual = 0.0;
  for (int p = 0; p < m; ++p) {
    for (int q = 0; q <= p; ++q) {
      double s = 0.0;
      for (std::size_t i = 0; i < measure.nodes.size(); ++i) {
        s += measure.weights[i] * jacobi::polynomial_value(*j, p, measure.nodes[i]) *
             jacobi::polynomial_value(*j, q, measure.nodes[i]);
      }
      ortho_residual = std::max(ortho_residual, std::abs(s - (p == q ? 1.0 : 0.0)));
    }
  }

  double roundtrip_residual = 0.0;
  if (!input_moments.empty()) {
    // all recomputed orders 0..2m-2
    for (std::size_t k = 0; k < moments.size(); ++k) {
      const double ref = std::max(1.0, std::abs(input_moments[k]));
      roundtrip_residual = std::max(roundtrip_residual, std::abs(moments[k] - input_moments[k]) / ref);
    }
  }

  const bool pass = ortho_residual <= tolerance && roundtrip_residual <= tolerance;

  w.begin_object();
  write_header(w, "jacobi", cfg);
  w.key("jacobi").begin_object().key("diag");
  write_doubles(w, j->diag());
  w.key("offdiag");
  write_doubles(w, j->offdiag());
  w.end_object();
  w.key("moments");
  write_doubles(w, moments);
  w.key("measure").begin_object().key("nodes");
  write_doubles(w, measure.nodes);
  w.key("weights");
  write_doubles(w, measure.weights);
  w.end_object();
  w.key("orthonormality_residual").value(ortho_residual);
  w.key("roundtrip_residual").value(roundtrip_residual);
  w.key("pass").value(pass);
  w.end_object();
  return pass ? 0 : 5;
}

// ---------------------------------------------------------------- transform

int cmd_transform(Config& cfg, Writer& w) {
  const std::string name = cfg.require("kind").get<std::string>();
  auto [domain, sigma] = noise_from(cfg);
  const measures::KolmogorovMeasure* sigma_ptr = sigma ? &*sigma : nullptr;
  auto phis = phis_from(cfg, domain.cell_count(), true);
  const auto& phi = phis.front();

  w.begin_object();
  write_header(w, "transform", cfg);
  w.key("kind").value(std::string_view(name));

  if (name == "gaussian" || name == "poisson" || name == "levy" || name == "levy_compensated" ||
      name == "levy_uncompensated") {
    measures::CharKind kind = measures::CharKind::gaussian;
    double lambda = 1.0;
    if (name == "poisson") {
      kind = measures::CharKind::poisson;
      lambda = cfg.get<double>("lambda", 1.0);
    } else if (name != "gaussian") {
      const bool compensated =
          name == "levy_uncompensated" ? false
          : name == "levy_compensated" ? true
                                       : cfg.get<bool>("compensated", true);
      kind = compensated ? measures::CharKind::levy_compensated : measures::CharKind::levy_uncompensated;
    }
    const auto value = measures::char_functional(kind, phi, domain, sigma_ptr, lambda);
    w.key("char").begin_array().value(value.real()).value(value.imag()).end_array();
    if (kind == measures::CharKind::levy_compensated || kind == measures::CharKind::levy_uncompensated) {
      const int order = cfg.get<int>("order", 6);
      w.key("cumulants").begin_array();
      for (int n = 2; n <= order; ++n) w.value(measures::levy_cumulant(n, phi, domain, sigma_ptr));
      w.end_array();
    }
  } else if (name == "gamma") {
    const auto alpha = cfg.scalar_or_array("alpha", 1.0);
    const auto beta = cfg.scalar_or_array("beta", 1.0);
    w.key("laplace").value(measures::gamma_laplace(phi, domain, alpha, beta));
  } else if (name == "free_levy") {
    if (!sigma_ptr) throw ConfigError("config field 'sigma' is required for the free cumulant transform");
    const int order = cfg.get<int>("order", 40);
    const double closed = measures::free_cumulant_transform(phi, domain, *sigma_ptr);
    w.key("closed_form").value(closed);
    w.key("partial_sums").begin_array();
    double last = 0.0;
    for (int n = 2; n <= order; ++n) {
      last = measures::free_cumulant_transform_partial(phi, domain, *sigma_ptr, n);
      w.value(last);
    }
    w.end_array();
    w.key("truncation_error").value(std::abs(closed - last));
  } else {
    throw ConfigError("config field 'kind' must be one of gaussian, poisson, levy, levy_compensated, levy_uncompensated, gamma, free_levy");
  }

  if (sigma_ptr) w.key("growth_constant").value(measures::check_moment_growth(*sigma_ptr, 20));
  w.key("pass").value(true);
  w.end_object();
  return 0;
}

// ---------------------------------------------------------------- partitions

int cmd_partitions(Config& cfg, Writer& w) {
  const std::string mode_name = cfg.get_string("mode", "classical");
  partitions::Mode mode;
  if (mode_name == "classical") {
    mode = partitions::Mode::classical;
  } else if (mode_name == "free") {
    mode = partitions::Mode::free;
  } else {
    throw ConfigError("config field 'mode' must be classical or free");
  }

  std::optional<std::vector<double>> in_moments;
  std::optional<std::vector<double>> in_cumulants;
  if (cfg.has("moments")) in_moments = cfg.double_array("moments");
  if (cfg.has("cumulants")) in_cumulants = cfg.double_array("cumulants");

  int order = 0;
  if (cfg.has("order")) {
    order = cfg.require("order").get<int>();
  } else if (in_moments) {
    order = static_cast<int>(in_moments->size());
  } else if (in_cumulants) {
    order = static_cast<int>(in_cumulants->size());
  } else {
    throw ConfigError("config field 'order' is required");
  }
  cfg.raw()["order"] = order;

  long long count = 0;
  const bool list = order <= 8;
  std::vector<std::vector<std::vector<int>>> listed;
  partitions::for_each_partition(order, mode, [&](const std::vector<std::vector<int>>& blocks) {
    ++count;
    if (list) listed.push_back(blocks);
  });

  w.begin_object();
  write_header(w, "partitions", cfg);
  w.key("mode").value(std::string_view(mode_name));
  w.key("order").value(order);
  w.key("count").value(count);
  if (list) {
    w.key("partitions").begin_array();
    for (const auto& blocks : listed) {
      w.begin_array();
      for (const auto& block : blocks) {
        w.begin_array();
        for (int e : block) w.value(e);
        w.end_array();
      }
      w.end_array();
    }
    w.end_array();
  }
  if (in_moments) {
    auto cumulants = partitions::cumulants_from_moments(*in_moments, mode);
    w.key("cumulants_from_moments");
    write_doubles(w, cumulants);
  }
  if (in_cumulants) {
    w.key("moments_from_cumulants").begin_array();
    for (int n = 1; n <= static_cast<int>(in_cumulants->size()); ++n) {
      const auto diag = [&](std::span<const int> block) {
        return (*in_cumulants)[block.size() - 1];
      };
      w.value(partitions::moments_from_cumulants(n, diag, mode));
    }
    w.end_array();
  }
  w.key("pass").value(true);
  w.end_object();
  return 0;
}

void write_error(Writer& w, const std::string& command, const std::string& config_text, int code,
                 const std::string& message) {
  w.begin_object();
  w.key("command").value(std::string_view(command));
  njson parsed = njson::parse(config_text.empty() ? "{}" : config_text, nullptr, false);
  if (!parsed.is_discarded()) {
    w.key("config");
    write_value(w, parsed);
  }
  w.key("error").begin_object().key("code").value(code).key("message").value(std::string_view(message)).end_object();
  w.end_object();
}

}  // namespace

CommandResult run_command(const std::string& command, const std::string& config_json) {
  Writer w;
  try {
    Config cfg(config_json);
    int code;
    if (command == "moments") {
      code = cmd_moments(cfg, w);
    } else if (command == "sample") {
      code = cmd_sample(cfg, w);
    } else if (command == "jacobi") {
      code = cmd_jacobi(cfg, w);
    } else if (command == "transform") {
      code = cmd_transform(cfg, w);
    } else if (command == "partitions") {
      code = cmd_partitions(cfg, w);
    } else {
      throw ConfigError("unknown command '" + command + "'");
    }
    return {code, w.str()};
  } catch (const Error& e) {
    Writer ew;
    write_error(ew, command, config_json, static_cast<int>(e.code()), e.what());
    return {static_cast<int>(e.code()), ew.str()};
  } catch (const std::exception& e) {
    Writer ew;
    write_error(ew, command, config_json, 9, e.what());
    return {9, ew.str()};
  }
}

}  // namespace jfl::reports
