#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "talentflow/profile.hpp"

namespace talentflow {

struct IndustryCatalog {
  std::string name;
  /// Titles from most junior to most senior; the index is the true level.
  std::vector<std::string> titles;
  int organizations = 20;
};

/// External-hop probability for hops leaving a job that ends with work
/// experience in [lower_years, upper_years).
struct PropensityBin {
  int lower_years = 0;
  int upper_years = 5;
  double p_external = 0.5;
};

struct GeneratorSpec {
  std::uint64_t seed = 1;
  std::size_t n_users = 1000;
  double active_rate = 0.19;
  DateMonth curr_date{2016, 6};
  int max_career_years = 40;
  std::vector<IndustryCatalog> industries;  // empty: built-in catalog
  std::vector<PropensityBin> hop_propensity;
  /// Probability that a non-lateral hop moves one level up rather than down.
  double promotion_bias = 0.8;
  /// Probability that an external hop keeps the current level.
  double lateral_external_prob = 0.1;
  double industry_switch_prob = 0.1;
  // stay length in months: lognormal with this median and log-sd, floored at stay_min
  double stay_median_months = 20.0;
  double stay_log_sigma = 0.55;
  int stay_min_months = 2;

  /// Parses the JSON spec; absent fields keep their defaults. Throws
  /// Error(kValidation) naming the offending field.
  static GeneratorSpec from_json_text(const std::string& text);
  static GeneratorSpec from_file(const std::filesystem::path& path);

  /// Fills the built-in catalog and propensity curve where empty, then checks
  /// every field. Throws Error(kValidation).
  void validate();

  double propensity_at(std::int64_t work_experience_months) const;
};

std::vector<IndustryCatalog> default_catalog();
/// Monotone-decreasing curve over 5-year bins up to 40 years.
std::vector<PropensityBin> default_propensity();

struct GeneratedCorpus {
  std::vector<UserProfile> profiles;
  std::string corpus_jsonl;  // one profile per line
  std::string truth_json;    // ground-truth sidecar
};

/// Deterministic: the same spec yields byte-identical output.
GeneratedCorpus generate(GeneratorSpec spec);

void generate_to_files(const GeneratorSpec& spec, const std::filesystem::path& corpus_path,
                       const std::filesystem::path& truth_path);

}  // namespace talentflow
