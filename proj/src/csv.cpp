#include "talentflow/csv.hpp"

#include <charconv>
#include <cmath>

#include "talentflow/error.hpp"

namespace talentflow::csv {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"' && current.empty() && !was_quoted) {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
      was_quoted = false;
    } else if (c == '\r' && i + 1 == line.size()) {
      break;
    } else {
      current.push_back(c);
    }
  }
  if (quoted) throw Error(ErrorCode::kMalformed, "unterminated quoted CSV field");
  fields.push_back(std::move(current));
  return fields;
}

Writer& Writer::field(std::string_view text) {
  if (!first_) out_ << ',';
  out_ << escape(text);
  first_ = false;
  return *this;
}

Writer& Writer::field(const std::optional<double>& value, std::string_view missing) {
  return value ? field(*value) : field(missing);
}

void Writer::end_row() {
  out_ << '\n';
  first_ = true;
}

void Writer::row(std::initializer_list<std::string_view> fields) {
  for (auto f : fields) field(f);
  end_row();
}

}  // namespace talentflow::csv
