#pragma once

// Internal append-style JSON builder. Output key order follows call order,
// doubles go through format_double, and 64-bit integers are emitted as
// bare decimal text, so a given value always serializes to the same bytes.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "liftspec/format.hpp"

namespace liftspec::internal {

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

inline std::string json_array(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += format_double(xs[i]);
  }
  out += ']';
  return out;
}

class JsonObject {
 public:
  JsonObject& field(const char* k, double v) {
    key(k);
    buf_ += format_double(v);
    return *this;
  }
  JsonObject& field(const char* k, long long v) {
    key(k);
    buf_ += std::to_string(v);
    return *this;
  }
  JsonObject& field(const char* k, int v) { return field(k, static_cast<long long>(v)); }
  JsonObject& field_u64(const char* k, std::uint64_t v) {
    key(k);
    buf_ += std::to_string(v);
    return *this;
  }
  JsonObject& field(const char* k, bool v) {
    key(k);
    buf_ += v ? "true" : "false";
    return *this;
  }
  JsonObject& field(const char* k, const std::string& v) {
    key(k);
    buf_ += '"';
    buf_ += json_escape(v);
    buf_ += '"';
    return *this;
  }
  JsonObject& field_null(const char* k) {
    key(k);
    buf_ += "null";
    return *this;
  }
  // Pre-rendered JSON (a nested object or array).
  JsonObject& field_raw(const char* k, const std::string& raw) {
    key(k);
    buf_ += raw;
    return *this;
  }

  std::string str() const { return buf_ + "}"; }

 private:
  void key(const char* k) {
    buf_ += first_ ? "\"" : ",\"";
    first_ = false;
    buf_ += k;
    buf_ += "\":";
  }

  std::string buf_ = "{";
  bool first_ = true;
};

}  // namespace liftspec::internal
