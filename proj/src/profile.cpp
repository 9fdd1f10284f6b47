#include "talentflow/profile.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

#include "talentflow/error.hpp"

namespace talentflow {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidLabel: return "INVALID_LABEL";
    case ErrorCode::kInvalidDate: return "INVALID_DATE";
    case ErrorCode::kIoError: return "IO_ERROR";
    case ErrorCode::kMalformed: return "MALFORMED";
    case ErrorCode::kFutureJob: return "FUTURE_JOB";
    case ErrorCode::kInsufficientTail: return "INSUFFICIENT_TAIL";
    case ErrorCode::kValidation: return "VALIDATION_ERROR";
    case ErrorCode::kUsage: return "USAGE_ERROR";
  }
  return "UNKNOWN";
}

namespace {

bool parse_int(std::string_view digits, int& out) {
  if (digits.empty()) return false;
  for (char c : digits) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), out);
  return ec == std::errc{} && ptr == digits.data() + digits.size();
}

}  // namespace

DateMonth DateMonth::parse(std::string_view text) {
  DateMonth d;
  if (text.size() != 7 || text[4] != '-' || !parse_int(text.substr(0, 4), d.year) ||
      !parse_int(text.substr(5, 2), d.month) || d.month < 1 || d.month > 12) {
    throw Error(ErrorCode::kInvalidDate, "expected YYYY-MM, got '" + std::string(text) + "'");
  }
  return d;
}

std::string DateMonth::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
  return buf;
}

DateMonth DateMonth::from_ordinal(std::int64_t ordinal) {
  // floor division so negative ordinals stay consistent
  std::int64_t y = ordinal >= 0 ? ordinal / 12 : -((-ordinal + 11) / 12);
  return DateMonth{static_cast<int>(y), static_cast<int>(ordinal - y * 12) + 1};
}

std::string normalize_label(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (unsigned char c : raw) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c));
  }
  if (out.empty()) {
    throw Error(ErrorCode::kInvalidLabel, "label is empty after normalization");
  }
  return out;
}

void AnalysisConfig::validate() const {
  auto fail = [](const char* field, const char* why) {
    throw Error(ErrorCode::kValidation, std::string(field) + ": " + why);
  };
  if (curr_date.month < 1 || curr_date.month > 12) fail("curr_date", "month out of range");
  if (min_support < 1) fail("min_support", "must be positive");
  if (group_bin_width_years < 1) fail("group_bin_width_years", "must be positive");
  if (cohort_min_support < 1) fail("cohort_min_support", "must be positive");
  if (!(teleport_prob > 0.0 && teleport_prob < 1.0)) fail("teleport_prob", "must lie in (0,1)");
  if (!(pagerank_tol > 0.0)) fail("pagerank_tol", "must be positive");
  if (pagerank_max_iter < 1) fail("pagerank_max_iter", "must be positive");
}

}  // namespace talentflow
