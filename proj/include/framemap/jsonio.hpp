#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace framemap::jsonio {

// Escapes the body of a JSON string (no surrounding quotes).
std::string escape(std::string_view s);

// Canonical real formatting: fixed nine decimal places, negative zero
// normalized to zero. Keeps emitted documents byte-stable across runs.
std::string real_fixed(double v);

// Shortest representation that round-trips a double exactly. Used for data
// interchange (embedding files) where precision beats readability.
std::string real_exact(double v);

// Streaming writer with explicit key order and two-space indentation.
// Emits containers in insertion order so output bytes are reproducible.
class Writer {
 public:
  Writer& begin_object();
  Writer& end_object();
  Writer& begin_array();
  Writer& end_array();
  Writer& key(std::string_view k);
  Writer& string(std::string_view v);
  Writer& integer(int64_t v);
  Writer& real(double v);
  Writer& boolean(bool v);
  Writer& null();

  // Full document, with a trailing newline.
  std::string take();

 private:
  enum class Ctx { Object, Array };
  struct Level {
    Ctx ctx;
    int items = 0;
  };

  void before_value();
  void newline_indent();

  std::string out_;
  std::vector<Level> stack_;
  bool pending_key_ = false;
};

}  // namespace framemap::jsonio
