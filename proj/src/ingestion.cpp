#include "talentflow/ingestion.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "talentflow/error.hpp"

namespace talentflow {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::kMalformed, what); }

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) malformed(std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_string()) malformed(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

DateMonth parse_date_field(const json& v, const char* key) {
  if (!v.is_string()) malformed(std::string("field '") + key + "' must be a YYYY-MM string");
  try {
    return DateMonth::parse(v.get<std::string>());
  } catch (const Error& e) {
    malformed(std::string("field '") + key + "': " + e.what());
  }
}

std::string label_field(const json& obj, const char* key) {
  try {
    return normalize_label(require_string(obj, key));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kMalformed) throw;
    malformed(std::string("field '") + key + "': " + e.what());
  }
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

UserProfile parse_profile_line(const std::string& line, std::size_t* inverted_jobs) {
  json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (obj.is_discarded()) malformed("invalid JSON");
  if (!obj.is_object()) malformed("record is not an object");

  UserProfile p;
  p.user_id = require_string(obj, "user_id");
  if (p.user_id.empty()) malformed("empty user_id");

  // Either a single "grad_date" or a "grad_dates" list; the latest wins.
  if (auto it = obj.find("grad_date"); it != obj.end() && !it->is_null()) {
    p.grad_date = parse_date_field(*it, "grad_date");
  }
  if (auto it = obj.find("grad_dates"); it != obj.end() && !it->is_null()) {
    if (!it->is_array()) malformed("field 'grad_dates' must be an array");
    for (const auto& d : *it) {
      DateMonth g = parse_date_field(d, "grad_dates");
      if (!p.grad_date || *p.grad_date < g) p.grad_date = g;
    }
  }

  const json& edu = require(obj, "education_count");
  if (!edu.is_number_integer() || edu.get<long long>() < 0) {
    malformed("field 'education_count' must be a nonnegative integer");
  }
  p.education_entries = static_cast<int>(edu.get<long long>());

  const json& skills = require(obj, "skills");
  if (!skills.is_array()) malformed("field 'skills' must be an array");
  for (const auto& s : skills) {
    if (!s.is_string()) malformed("skill entries must be strings");
    try {
      p.skills.insert(normalize_label(s.get<std::string>()));
    } catch (const Error& e) {
      malformed(std::string("skill: ") + e.what());
    }
  }

  const json& jobs = require(obj, "jobs");
  if (!jobs.is_array()) malformed("field 'jobs' must be an array");
  for (const auto& j : jobs) {
    if (!j.is_object()) malformed("job entries must be objects");
    JobRecord rec;
    rec.title = label_field(j, "title");
    rec.organization = label_field(j, "organization");
    rec.industry = label_field(j, "industry");
    rec.start = parse_date_field(require(j, "start"), "start");
    if (auto it = j.find("end"); it != j.end() && !it->is_null()) {
      rec.end = parse_date_field(*it, "end");
    }
    if (rec.end && *rec.end < rec.start) {
      if (inverted_jobs) ++*inverted_jobs;
      continue;
    }
    p.jobs.push_back(std::move(rec));
  }
  return p;
}

std::string profile_to_json_line(const UserProfile& p) {
  // ordered_json keeps the schema's field order in the output bytes
  nlohmann::ordered_json obj;
  obj["user_id"] = p.user_id;
  obj["grad_date"] = p.grad_date ? nlohmann::ordered_json(p.grad_date->to_string()) : nullptr;
  obj["education_count"] = p.education_entries;
  obj["skills"] = nlohmann::ordered_json::array();
  for (const auto& s : p.skills) obj["skills"].push_back(s);
  obj["jobs"] = nlohmann::ordered_json::array();
  for (const auto& j : p.jobs) {
    nlohmann::ordered_json jo;
    jo["title"] = j.title;
    jo["organization"] = j.organization;
    jo["industry"] = j.industry;
    jo["start"] = j.start.to_string();
    jo["end"] = j.end ? nlohmann::ordered_json(j.end->to_string()) : nullptr;
    obj["jobs"].push_back(std::move(jo));
  }
  return obj.dump();
}

IngestResult ingest_profiles(std::istream& in) {
  IngestResult result;
  IngestReport& report = result.report;
  std::unordered_set<std::string> seen_ids;

  std::string line;
  while (std::getline(in, line)) {
    if (is_blank(line)) continue;
    ++report.total_records;
    UserProfile p;
    std::size_t inverted = 0;
    try {
      p = parse_profile_line(line, &inverted);
    } catch (const Error&) {
      ++report.rejected_records;
      ++report.rejection_reasons[kRejectMalformed];
      continue;
    }
    if (!seen_ids.insert(p.user_id).second) {
      ++report.rejected_records;
      ++report.rejection_reasons[kRejectDuplicateId];
      continue;
    }
    report.inverted_jobs += inverted;
    if (p.is_active()) {
      ++report.active_records;
    } else {
      ++report.inactive_records;
    }
    result.profiles.push_back(std::move(p));
  }
  if (in.bad()) throw Error(ErrorCode::kIoError, "read failure");

  // Each organization must map to exactly one industry: majority vote over
  // job records, ties to the lexicographically smallest industry.
  std::map<std::string, std::map<std::string, std::size_t>> votes;
  for (const auto& p : result.profiles) {
    for (const auto& j : p.jobs) ++votes[j.organization][j.industry];
  }
  std::map<std::string, std::string> canonical;
  for (const auto& [org, counts] : votes) {
    const std::string* best = nullptr;
    std::size_t best_count = 0;
    for (const auto& [industry, count] : counts) {
      if (count > best_count) {
        best = &industry;
        best_count = count;
      }
    }
    canonical.emplace(org, *best);
  }
  for (auto& p : result.profiles) {
    for (auto& j : p.jobs) {
      const std::string& industry = canonical.at(j.organization);
      if (j.industry != industry) {
        j.industry = industry;
        ++report.industry_repairs;
      }
    }
  }
  return result;
}

IngestResult ingest_profiles(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  return ingest_profiles(in);
}

std::vector<UserProfile> filter_active(const std::vector<UserProfile>& profiles) {
  std::vector<UserProfile> out;
  for (const auto& p : profiles) {
    if (p.is_active()) out.push_back(p);
  }
  return out;
}

}  // namespace talentflow
