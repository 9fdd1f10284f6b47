#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "talentflow/profile.hpp"

namespace testutil {

using talentflow::DateMonth;
using talentflow::JobRecord;
using talentflow::UserProfile;

inline DateMonth dm(const char* s) { return DateMonth::parse(s); }

inline JobRecord job(const std::string& title, const std::string& org, const std::string& industry,
                     const char* start, const char* end) {
  JobRecord j{title, org, industry, dm(start), std::nullopt};
  if (end) j.end = dm(end);
  return j;
}

inline UserProfile person(const std::string& id, const char* grad, std::vector<JobRecord> jobs,
                          std::size_t skills = 3, int education = 1) {
  UserProfile p;
  p.user_id = id;
  if (grad) p.grad_date = dm(grad);
  for (std::size_t s = 0; s < skills; ++s) p.skills.insert("skill " + std::to_string(s));
  p.education_entries = education;
  p.jobs = std::move(jobs);
  return p;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::mt19937_64 rng(std::random_device{}());
    path_ = std::filesystem::temp_directory_path() /
            ("talentflow_" + tag + "_" + std::to_string(rng() % 1000000000ULL));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace testutil
