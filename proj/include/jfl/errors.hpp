#ifndef JFL_ERRORS_HPP
#define JFL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace jfl {

// Error buckets shared by the C API status codes and the CLI exit codes.
enum class ErrorCode : int {
  ok = 0,
  config = 2,      // invalid configuration, shape mismatch, value outside a formula's validity region
  bounds = 3,      // enumeration caps, truncation limits, index ranges
  degenerate = 4,  // numerical degeneracy (non-positive-definite Hankel matrix, eigensolver failure)
  check = 5,       // a requested verification did not hold (statistical or deterministic)
  internal = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Caps and truncation levels exceeded.
class BoundsError : public Error {
 public:
  explicit BoundsError(const std::string& what) : Error(ErrorCode::bounds, what) {}
};

// Shape mismatches, invalid parameters, arguments outside a validity region.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCode::config, what) {}
};

// Non-positive-definite moment data and other numerical degeneracies.
class DegeneracyError : public Error {
 public:
  explicit DegeneracyError(const std::string& what) : Error(ErrorCode::degenerate, what) {}
};

}  // namespace jfl

#endif  // JFL_ERRORS_HPP
