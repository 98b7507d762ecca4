#include "framemap/jsonio.hpp"

#include <cmath>
#include <cstdio>

#include "framemap/error.hpp"

namespace framemap::jsonio {

std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

std::string real_fixed(double v) {
  if (!std::isfinite(v)) fail(ErrorKind::Domain, "cannot serialize non-finite real");
  if (v == 0.0) v = 0.0;  // collapse negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

std::string real_exact(double v) {
  if (!std::isfinite(v)) fail(ErrorKind::Domain, "cannot serialize non-finite real");
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Writer& Writer::begin_object() {
  before_value();
  out_ += '{';
  stack_.push_back({Ctx::Object, 0});
  return *this;
}

Writer& Writer::end_object() {
  if (stack_.empty() || stack_.back().ctx != Ctx::Object || pending_key_)
    fail(ErrorKind::State, "json writer: unbalanced end_object");
  bool had_items = stack_.back().items > 0;
  stack_.pop_back();
  if (had_items) newline_indent();
  out_ += '}';
  return *this;
}

Writer& Writer::begin_array() {
  before_value();
  out_ += '[';
  stack_.push_back({Ctx::Array, 0});
  return *this;
}

Writer& Writer::end_array() {
  if (stack_.empty() || stack_.back().ctx != Ctx::Array)
    fail(ErrorKind::State, "json writer: unbalanced end_array");
  bool had_items = stack_.back().items > 0;
  stack_.pop_back();
  if (had_items) newline_indent();
  out_ += ']';
  return *this;
}

Writer& Writer::key(std::string_view k) {
  if (stack_.empty() || stack_.back().ctx != Ctx::Object || pending_key_)
    fail(ErrorKind::State, "json writer: key outside object");
  if (stack_.back().items > 0) out_ += ',';
  stack_.back().items++;
  newline_indent();
  out_ += '"';
  out_ += escape(k);
  out_ += "\":";
  pending_key_ = true;
  return *this;
}

Writer& Writer::string(std::string_view v) {
  before_value();
  out_ += '"';
  out_ += escape(v);
  out_ += '"';
  return *this;
}

Writer& Writer::integer(int64_t v) {
  before_value();
  out_ += std::to_string(v);
  return *this;
}

Writer& Writer::real(double v) {
  before_value();
  out_ += real_fixed(v);
  return *this;
}

Writer& Writer::boolean(bool v) {
  before_value();
  out_ += v ? "true" : "false";
  return *this;
}

Writer& Writer::null() {
  before_value();
  out_ += "null";
  return *this;
}

std::string Writer::take() {
  if (!stack_.empty() || pending_key_)
    fail(ErrorKind::State, "json writer: document not closed");
  out_ += '\n';
  return std::move(out_);
}

void Writer::before_value() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!stack_.empty()) {
    if (stack_.back().ctx == Ctx::Object)
      fail(ErrorKind::State, "json writer: value without key in object");
    if (stack_.back().items > 0) out_ += ',';
    stack_.back().items++;
    newline_indent();
  }
}

void Writer::newline_indent() {
  out_ += '\n';
  out_.append(2 * stack_.size(), ' ');
}

}  // namespace framemap::jsonio
