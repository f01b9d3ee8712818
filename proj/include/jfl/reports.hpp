#ifndef JFL_REPORTS_HPP
#define JFL_REPORTS_HPP

#include <string>

namespace jfl::reports {

struct CommandResult {
  int exit_code = 0;        // 0 ok, 2 config, 3 bounds, 4 degeneracy, 5 failed check
  std::string report_json;  // always present, even on errors
};

// Executes one command (moments, sample, jacobi, transform, partitions)
// against a fully resolved JSON configuration. The resolved configuration is
// echoed into the report, and every number is serialized with 17 significant
// digits, so a report identifies its run byte for byte.
CommandResult run_command(const std::string& command, const std::string& config_json);

}  // namespace jfl::reports

#endif  // JFL_REPORTS_HPP
