#include "jacobifield.h"

#include <cstring>
#include <string>

#include "jfl/errors.hpp"
#include "jfl/fields.hpp"
#include "jfl/measures.hpp"
#include "jfl/reports.hpp"

namespace {

thread_local std::string g_last_error;

jfl_status to_status(const jfl::Error& e) {
  switch (e.code()) {
    case jfl::ErrorCode::ok: return JFL_OK;
    case jfl::ErrorCode::config: return JFL_ERROR_CONFIG;
    case jfl::ErrorCode::bounds: return JFL_ERROR_BOUNDS;
    case jfl::ErrorCode::degenerate: return JFL_ERROR_DEGENERATE;
    case jfl::ErrorCode::check: return JFL_ERROR_CHECK;
    case jfl::ErrorCode::internal: return JFL_ERROR_INTERNAL;
  }
  return JFL_ERROR_INTERNAL;
}

template <typename Fn>
jfl_status guarded(Fn&& fn) {
  try {
    fn();
    return JFL_OK;
  } catch (const jfl::Error& e) {
    g_last_error = e.what();
    return to_status(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return JFL_ERROR_INTERNAL;
  }
}

jfl_status require(bool ok, const char* message) {
  if (ok) return JFL_OK;
  g_last_error = message;
  return JFL_ERROR_CONFIG;
}

}  // namespace

struct jfl_text {
  std::string data;
};

struct jfl_domain {
  jfl::measures::GridDomain domain;
};

struct jfl_sigma {
  jfl::measures::KolmogorovMeasure sigma;
};

struct jfl_field {
  jfl::fields::FieldAlgebra algebra;
};

extern "C" {

const char* jfl_version(void) { return "1.0.0"; }

const char* jfl_last_error(void) { return g_last_error.c_str(); }

const char* jfl_text_data(const jfl_text* text) { return text ? text->data.c_str() : ""; }

size_t jfl_text_size(const jfl_text* text) { return text ? text->data.size() : 0; }

void jfl_text_free(jfl_text* text) { delete text; }

jfl_status jfl_run_command(const char* command, const char* config_json, jfl_text** report_out) {
  if (auto bad = require(command && report_out, "command and report_out must be non-null")) return bad;
  *report_out = nullptr;
  auto result = jfl::reports::run_command(command, config_json ? config_json : "");
  *report_out = new jfl_text{std::move(result.report_json)};
  if (result.exit_code != 0) g_last_error = "command exited with code " + std::to_string(result.exit_code);
  switch (result.exit_code) {
    case 0: return JFL_OK;
    case 2: return JFL_ERROR_CONFIG;
    case 3: return JFL_ERROR_BOUNDS;
    case 4: return JFL_ERROR_DEGENERATE;
    case 5: return JFL_ERROR_CHECK;
    default: return JFL_ERROR_INTERNAL;
  }
}

jfl_status jfl_domain_parse(const char* json, jfl_domain** out) {
  if (auto bad = require(json && out, "json and out must be non-null")) return bad;
  *out = nullptr;
  return guarded([&] { *out = new jfl_domain{jfl::measures::domain_from_json(json)}; });
}

void jfl_domain_free(jfl_domain* domain) { delete domain; }

jfl_status jfl_domain_dump(const jfl_domain* domain, jfl_text** out) {
  if (auto bad = require(domain && out, "domain and out must be non-null")) return bad;
  *out = nullptr;
  return guarded([&] { *out = new jfl_text{jfl::measures::domain_to_json(domain->domain)}; });
}

int jfl_domain_cell_count(const jfl_domain* domain) {
  return domain ? domain->domain.cell_count() : 0;
}

jfl_status jfl_sigma_parse(const char* json, jfl_sigma** out) {
  if (auto bad = require(json && out, "json and out must be non-null")) return bad;
  *out = nullptr;
  return guarded([&] { *out = new jfl_sigma{jfl::measures::sigma_from_json(json)}; });
}

void jfl_sigma_free(jfl_sigma* sigma) { delete sigma; }

jfl_status jfl_sigma_dump(const jfl_sigma* sigma, jfl_text** out) {
  if (auto bad = require(sigma && out, "sigma and out must be non-null")) return bad;
  *out = nullptr;
  return guarded([&] { *out = new jfl_text{jfl::measures::sigma_to_json(sigma->sigma)}; });
}

jfl_status jfl_sigma_moment(const jfl_sigma* sigma, int order, int absolute, double* out) {
  if (auto bad = require(sigma && out, "sigma and out must be non-null")) return bad;
  return guarded([&] {
    *out = absolute ? jfl::measures::sigma_abs_moment(sigma->sigma, order)
                    : jfl::measures::sigma_moment(sigma->sigma, order);
  });
}

jfl_status jfl_sigma_growth_constant(const jfl_sigma* sigma, int n_max, double* out) {
  if (auto bad = require(sigma && out, "sigma and out must be non-null")) return bad;
  return guarded([&] { *out = jfl::measures::check_moment_growth(sigma->sigma, n_max); });
}

jfl_status jfl_field_create(const char* kind, const jfl_domain* domain, const jfl_sigma* sigma,
                            double lambda, int compensated, int truncation, jfl_field** out) {
  if (auto bad = require(kind && domain && out, "kind, domain and out must be non-null")) return bad;
  *out = nullptr;
  return guarded([&] {
    const std::string name = kind;
    jfl::fields::FieldKind field_kind;
    if (name == "gaussian") {
      field_kind = jfl::fields::FieldKind::gaussian;
    } else if (name == "poisson") {
      field_kind = jfl::fields::FieldKind::poisson;
    } else if (name == "levy") {
      field_kind = jfl::fields::FieldKind::levy;
    } else if (name == "free_levy") {
      field_kind = jfl::fields::FieldKind::free_levy;
    } else {
      throw jfl::ConfigError("kind must be one of gaussian, poisson, levy, free_levy");
    }
    std::optional<jfl::measures::KolmogorovMeasure> sig;
    if (sigma) sig = sigma->sigma;
    *out = new jfl_field{jfl::fields::FieldAlgebra(
        {field_kind, domain->domain, truncation, std::move(sig), lambda, compensated != 0})};
  });
}

void jfl_field_free(jfl_field* field) { delete field; }

namespace {

std::vector<jfl::measures::TestFunction> unpack_phis(const jfl_field* field, const double* matrix,
                                                     int phi_count, int cell_count) {
  if (phi_count < 0 || cell_count != field->algebra.spec().domain.cell_count()) {
    throw jfl::ConfigError("phi matrix shape does not match the field's domain");
  }
  std::vector<jfl::measures::TestFunction> phis;
  phis.reserve(static_cast<std::size_t>(phi_count));
  for (int i = 0; i < phi_count; ++i) {
    jfl::measures::TestFunction phi;
    phi.values.assign(matrix + static_cast<std::ptrdiff_t>(i) * cell_count,
                      matrix + static_cast<std::ptrdiff_t>(i + 1) * cell_count);
    phis.push_back(std::move(phi));
  }
  return phis;
}

}  // namespace

jfl_status jfl_field_joint_moment(const jfl_field* field, const double* phi_matrix, int phi_count,
                                  int cell_count, double* out) {
  if (auto bad = require(field && out && (phi_count == 0 || phi_matrix),
                         "field, out and phi_matrix must be non-null")) {
    return bad;
  }
  return guarded([&] {
    auto phis = unpack_phis(field, phi_matrix, phi_count, cell_count);
    *out = field->algebra.joint_moment(phis);
  });
}

jfl_status jfl_field_predicted_moment(const jfl_field* field, const double* phi_matrix, int phi_count,
                                      int cell_count, double* out) {
  if (auto bad = require(field && out && (phi_count == 0 || phi_matrix),
                         "field, out and phi_matrix must be non-null")) {
    return bad;
  }
  return guarded([&] {
    auto phis = unpack_phis(field, phi_matrix, phi_count, cell_count);
    *out = field->algebra.predicted_moment(phis);
  });
}

jfl_status jfl_field_commutator_residual(const jfl_field* field, const double* phi, const double* psi,
                                         int cell_count, double* out) {
  if (auto bad = require(field && phi && psi && out, "field, phi, psi and out must be non-null")) {
    return bad;
  }
  return guarded([&] {
    if (cell_count != field->algebra.spec().domain.cell_count()) {
      throw jfl::ConfigError("phi length does not match the field's domain");
    }
    jfl::measures::TestFunction a;
    jfl::measures::TestFunction b;
    a.values.assign(phi, phi + cell_count);
    b.values.assign(psi, psi + cell_count);
    *out = field->algebra.commutator_residual(a, b);
  });
}

}  // extern "C"
