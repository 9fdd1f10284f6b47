#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace talentflow::csv {

/// Shortest decimal that round-trips the double; locale-independent.
std::string format_double(double value);

/// RFC 4180 quoting: fields containing comma, quote, CR or LF are quoted.
std::string escape(std::string_view field);

/// Splits one CSV record. Throws Error(kMalformed) on an unterminated quote.
std::vector<std::string> split_line(std::string_view line);

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  Writer& field(std::string_view text);
  Writer& field(const char* text) { return field(std::string_view(text)); }
  Writer& field(const std::string& text) { return field(std::string_view(text)); }
  Writer& field(double value) { return field(format_double(value)); }
  Writer& field(std::int64_t value) { return field(std::to_string(value)); }
  Writer& field(std::uint64_t value) { return field(std::to_string(value)); }
  Writer& field(int value) { return field(std::to_string(value)); }
  Writer& field(unsigned long long value) { return field(std::to_string(value)); }
  Writer& field(long long value) { return field(std::to_string(value)); }
  /// nullopt is written as `missing`.
  Writer& field(const std::optional<double>& value, std::string_view missing);

  void end_row();
  void row(std::initializer_list<std::string_view> fields);

 private:
  std::ostream& out_;
  bool first_ = true;
};

}  // namespace talentflow::csv
