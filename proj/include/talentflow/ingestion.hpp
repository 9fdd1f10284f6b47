#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "talentflow/profile.hpp"

namespace talentflow {

// Rejection reasons as they appear in IngestReport::rejection_reasons.
inline constexpr const char* kRejectMalformed = "MALFORMED";
inline constexpr const char* kRejectDuplicateId = "DUPLICATE_ID";

struct IngestReport {
  std::size_t total_records = 0;
  std::size_t active_records = 0;
  std::size_t inactive_records = 0;
  std::size_t rejected_records = 0;
  std::map<std::string, std::size_t> rejection_reasons;
  /// Job records whose industry was overwritten by the organization's majority industry.
  std::size_t industry_repairs = 0;
  /// Job records dropped because start > end.
  std::size_t inverted_jobs = 0;
};

struct IngestResult {
  std::vector<UserProfile> profiles;  // input order; active and inactive
  IngestReport report;
};

/// Parses one JSON line into a profile. Throws Error(kMalformed) on any
/// structural problem.
UserProfile parse_profile_line(const std::string& line, std::size_t* inverted_jobs = nullptr);

/// Serializes a profile back to the one-line JSON schema (no trailing newline).
std::string profile_to_json_line(const UserProfile& profile);

IngestResult ingest_profiles(std::istream& in);

/// Throws Error(kIoError) if the file cannot be opened.
IngestResult ingest_profiles(const std::filesystem::path& path);

std::vector<UserProfile> filter_active(const std::vector<UserProfile>& profiles);

}  // namespace talentflow
