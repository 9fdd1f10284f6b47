#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace talentflow {

/// Calendar month. All durations in the library are whole months.
struct DateMonth {
  int year = 1970;
  int month = 1;

  static DateMonth parse(std::string_view text);  // "YYYY-MM"
  std::string to_string() const;

  /// Months since year 0, used for arithmetic.
  std::int64_t ordinal() const { return static_cast<std::int64_t>(year) * 12 + (month - 1); }
  static DateMonth from_ordinal(std::int64_t ordinal);

  auto operator<=>(const DateMonth&) const = default;
};

/// Signed month count from `from` to `to`.
inline std::int64_t months_between(DateMonth from, DateMonth to) {
  return to.ordinal() - from.ordinal();
}

/// Trim, collapse internal whitespace runs, ASCII-lowercase. Throws
/// Error(kInvalidLabel) if nothing remains.
std::string normalize_label(std::string_view raw);

struct JobRecord {
  std::string title;
  std::string organization;
  std::string industry;
  DateMonth start;
  std::optional<DateMonth> end;  // nullopt: still held

  bool is_open() const { return !end.has_value(); }
  DateMonth end_or(DateMonth curr_date) const { return end.value_or(curr_date); }

  bool operator==(const JobRecord&) const = default;
};

struct UserProfile {
  std::string user_id;
  std::optional<DateMonth> grad_date;
  std::set<std::string> skills;
  int education_entries = 0;
  std::vector<JobRecord> jobs;

  bool is_active() const { return education_entries >= 1 && !skills.empty(); }
};

struct AnalysisConfig {
  DateMonth curr_date{2016, 6};
  int min_support = 10;
  int group_bin_width_years = 5;
  int cohort_min_support = 100;
  double teleport_prob = 0.15;
  double pagerank_tol = 1e-8;
  int pagerank_max_iter = 100;

  /// Throws Error(kValidation) naming the first offending field.
  void validate() const;
};

}  // namespace talentflow
