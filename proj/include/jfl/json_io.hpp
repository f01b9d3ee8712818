#ifndef JFL_JSON_IO_HPP
#define JFL_JSON_IO_HPP

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "jfl/errors.hpp"

namespace jfl::json {

// All numeric output goes through this: 17 significant decimal digits, enough
// to round-trip any binary64 exactly.
inline std::string format_double(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::internal, "non-finite value in JSON output");
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Minimal deterministic JSON emitter. Keys are written in call order, so the
// byte stream is a pure function of the emitted values.
class Writer {
 public:
  Writer& begin_object() { item(); out_ += '{'; open_.push_back(false); return *this; }
  Writer& end_object() { out_ += '}'; open_.pop_back(); return *this; }
  Writer& begin_array() { item(); out_ += '['; open_.push_back(false); return *this; }
  Writer& end_array() { out_ += ']'; open_.pop_back(); return *this; }

  Writer& key(std::string_view k) {
    item();
    quote(k);
    out_ += ':';
    pending_value_ = true;
    return *this;
  }

  Writer& value(double v) { item(); out_ += format_double(v); return *this; }
  Writer& value(int v) { return value(static_cast<long long>(v)); }
  Writer& value(long long v) { item(); out_ += std::to_string(v); return *this; }
  Writer& value(unsigned long long v) { item(); out_ += std::to_string(v); return *this; }
  Writer& value(bool v) { item(); out_ += v ? "true" : "false"; return *this; }
  Writer& value(std::string_view v) { item(); quote(v); return *this; }

  const std::string& str() const { return out_; }

 private:
  void item() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (!open_.empty()) {
      if (open_.back()) out_ += ',';
      open_.back() = true;
    }
  }

  void quote(std::string_view s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        case '\r': out_ += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> open_;
  bool pending_value_ = false;
};

}  // namespace jfl::json

#endif  // JFL_JSON_IO_HPP
