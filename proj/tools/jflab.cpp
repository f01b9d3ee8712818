// jflab: command-line front end for the jacobifield library.
//
// Parses flags, merges them over an optional JSON config file (flags win),
// and forwards the resolved configuration to the library's C API. The report
// goes to --out or stdout; the exit code mirrors the library status.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "jacobifield.h"

namespace {

struct Flags {
  std::string config_path;
  std::string kind;
  std::string sigma;
  std::string domain;
  std::string phi;
  int order = 0;
  int truncation = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::string out;
  double tolerance = 0.0;
};

void add_common_options(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file; flags override its values");
  cmd->add_option("--kind", flags.kind, "noise/field kind");
  cmd->add_option("--sigma", flags.sigma, "Kolmogorov measure as JSON, {\"atoms\":[[s,mass],...]}");
  cmd->add_option("--domain", flags.domain, "grid domain as JSON, {\"cells\":[{\"id\":0,\"volume\":1.0},...]}");
  cmd->add_option("--phi", flags.phi, "test function(s) as JSON, [..] or [[..],[..]]");
  cmd->add_option("--order", flags.order, "moment/partition order");
  cmd->add_option("--truncation", flags.truncation, "Fock truncation level");
  cmd->add_option("--samples", flags.samples, "Monte Carlo sample count");
  cmd->add_option("--seed", flags.seed, "RNG seed");
  cmd->add_option("--out", flags.out, "write the report to this path (samples go to <out>.samples.jsonl)");
  cmd->add_option("--tolerance", flags.tolerance, "pass/fail tolerance");
}

int fail_config(const std::string& message) {
  std::cerr << "config error: " << message << "\n";
  return 2;
}

nlohmann::json parse_inline(const std::string& text, const char* flag) {
  auto v = nlohmann::json::parse(text, nullptr, false);
  if (v.is_discarded()) throw std::runtime_error(std::string("flag ") + flag + " is not valid JSON");
  return v;
}

int run(const std::string& command, const CLI::App* cmd, const Flags& flags) {
  nlohmann::json config = nlohmann::json::object();
  try {
    if (!flags.config_path.empty()) {
      std::ifstream file(flags.config_path);
      if (!file) return fail_config("cannot read config file '" + flags.config_path + "'");
      std::stringstream buf;
      buf << file.rdbuf();
      config = nlohmann::json::parse(buf.str(), nullptr, false);
      if (config.is_discarded() || !config.is_object()) {
        return fail_config("config file '" + flags.config_path + "' must hold a JSON object");
      }
    }
    if (cmd->count("--kind")) config["kind"] = flags.kind;
    if (cmd->count("--sigma")) config["sigma"] = parse_inline(flags.sigma, "--sigma");
    if (cmd->count("--domain")) config["domain"] = parse_inline(flags.domain, "--domain");
    if (cmd->count("--phi")) config["phi"] = parse_inline(flags.phi, "--phi");
    if (cmd->count("--order")) config["order"] = flags.order;
    if (cmd->count("--truncation")) config["truncation"] = flags.truncation;
    if (cmd->count("--samples")) config["samples"] = flags.samples;
    if (cmd->count("--seed")) config["seed"] = flags.seed;
    if (cmd->count("--out")) config["out"] = flags.out;
    if (cmd->count("--tolerance")) config["tolerance"] = flags.tolerance;
  } catch (const std::exception& e) {
    return fail_config(e.what());
  }

  jfl_text* report = nullptr;
  const jfl_status status = jfl_run_command(command.c_str(), config.dump().c_str(), &report);
  if (report == nullptr) {
    std::cerr << "error: " << jfl_last_error() << "\n";
    return status == JFL_OK ? 9 : static_cast<int>(status);
  }

  if (config.contains("out") && config["out"].is_string() && !config["out"].get<std::string>().empty()) {
    const std::string path = config["out"].get<std::string>();
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
      jfl_text_free(report);
      return fail_config("cannot write report to '" + path + "'");
    }
    file.write(jfl_text_data(report), static_cast<std::streamsize>(jfl_text_size(report)));
    file << '\n';
  } else {
    std::fwrite(jfl_text_data(report), 1, jfl_text_size(report), stdout);
    std::fputc('\n', stdout);
  }
  jfl_text_free(report);
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"jflab: vacuum moments, partition sums, Jacobi sections and white-noise sampling on finite grids"};
  app.require_subcommand(1);
  Flags flags;

  auto* moments = app.add_subcommand(
      "moments", "compare operator vacuum moments with their partition-sum predictions");
  auto* sample = app.add_subcommand(
      "sample", "draw white-noise realizations and check empirical functionals against closed forms");
  auto* jacobi = app.add_subcommand(
      "jacobi", "convert between moment sequences and Jacobi recurrence coefficients");
  auto* transform = app.add_subcommand(
      "transform", "evaluate characteristic/Laplace functionals and cumulant transforms");
  auto* partitions = app.add_subcommand(
      "partitions", "enumerate (non-crossing) set partitions and convert moments and cumulants");
  for (auto* cmd : {moments, sample, jacobi, transform, partitions}) add_common_options(cmd, flags);

  CLI11_PARSE(app, argc, argv);

  const auto* active = app.get_subcommands().front();
  return run(active->get_name(), active, flags);
}
