#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace schain {

/// Minimal JSON emitter. Numbers are printed with 12 significant digits so
/// results compare across languages; output is byte-stable for identical
/// inputs.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view name);
  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(std::span<const double> values);
  JsonWriter& value(std::span<const std::string> values);

  const std::string& str() const { return out_; }

 private:
  void separator();
  void append_quoted(std::string_view v);

  std::string out_;
  std::vector<bool> first_in_scope_;
  bool pending_key_ = false;
};

std::string format_double(double v);

}  // namespace schain
