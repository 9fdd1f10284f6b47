#include "talentflow/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "talentflow/error.hpp"
#include "talentflow/ingestion.hpp"

namespace talentflow {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<IndustryCatalog> default_catalog() {
  return {
      {"information technology",
       {"intern", "junior developer", "software engineer", "senior software engineer",
        "engineering manager", "director", "ceo"},
       40},
      {"financial services",
       {"intern", "analyst", "associate", "vice president", "director", "managing director"},
       30},
      {"higher education",
       {"teaching assistant", "research assistant", "lecturer", "assistant professor",
        "associate professor", "professor"},
       15},
      {"management consulting",
       {"intern", "consultant", "senior consultant", "manager", "principal", "managing director"},
       20},
      {"marketing and advertising",
       {"intern", "marketing executive", "marketing manager", "senior marketing manager",
        "director", "ceo"},
       25},
  };
}

std::vector<PropensityBin> default_propensity() {
  return {{0, 5, 0.70},   {5, 10, 0.62},  {10, 15, 0.55}, {15, 20, 0.48},
          {20, 25, 0.42}, {25, 30, 0.36}, {30, 35, 0.30}, {35, 40, 0.25}};
}

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::kValidation, field + ": " + why);
}

template <typename T>
void read_field(const json& obj, const char* key, T& out) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    invalid(key, "wrong type");
  }
}

}  // namespace

GeneratorSpec GeneratorSpec::from_json_text(const std::string& text) {
  json obj = json::parse(text, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) invalid("spec", "not a JSON object");

  GeneratorSpec s;
  read_field(obj, "seed", s.seed);
  read_field(obj, "n_users", s.n_users);
  read_field(obj, "active_rate", s.active_rate);
  read_field(obj, "max_career_years", s.max_career_years);
  read_field(obj, "promotion_bias", s.promotion_bias);
  read_field(obj, "lateral_external_prob", s.lateral_external_prob);
  read_field(obj, "industry_switch_prob", s.industry_switch_prob);
  read_field(obj, "stay_median_months", s.stay_median_months);
  read_field(obj, "stay_log_sigma", s.stay_log_sigma);
  read_field(obj, "stay_min_months", s.stay_min_months);
  if (auto it = obj.find("curr_date"); it != obj.end()) {
    if (!it->is_string()) invalid("curr_date", "must be a YYYY-MM string");
    try {
      s.curr_date = DateMonth::parse(it->get<std::string>());
    } catch (const Error& e) {
      invalid("curr_date", e.what());
    }
  }
  if (auto it = obj.find("industries"); it != obj.end()) {
    if (!it->is_array()) invalid("industries", "must be an array");
    for (const auto& ind : *it) {
      if (!ind.is_object()) invalid("industries", "entries must be objects");
      IndustryCatalog c;
      read_field(ind, "name", c.name);
      read_field(ind, "titles", c.titles);
      read_field(ind, "organizations", c.organizations);
      s.industries.push_back(std::move(c));
    }
  }
  if (auto it = obj.find("hop_propensity"); it != obj.end()) {
    if (!it->is_array()) invalid("hop_propensity", "must be an array");
    for (const auto& b : *it) {
      if (!b.is_object()) invalid("hop_propensity", "entries must be objects");
      PropensityBin bin;
      read_field(b, "lower_years", bin.lower_years);
      read_field(b, "upper_years", bin.upper_years);
      read_field(b, "p_external", bin.p_external);
      s.hop_propensity.push_back(bin);
    }
  }
  s.validate();
  return s;
}

GeneratorSpec GeneratorSpec::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return from_json_text(text.str());
}

void GeneratorSpec::validate() {
  auto probability = [](const char* field, double p) {
    if (!(p >= 0.0 && p <= 1.0)) invalid(field, "must lie in [0,1]");
  };
  probability("active_rate", active_rate);
  probability("promotion_bias", promotion_bias);
  probability("lateral_external_prob", lateral_external_prob);
  probability("industry_switch_prob", industry_switch_prob);
  if (max_career_years < 1) invalid("max_career_years", "must be positive");
  if (!(stay_median_months >= 1.0)) invalid("stay_median_months", "must be >= 1");
  if (!(stay_log_sigma >= 0.0)) invalid("stay_log_sigma", "must be nonnegative");
  if (stay_min_months < 1) invalid("stay_min_months", "must be positive");
  if (curr_date.month < 1 || curr_date.month > 12) invalid("curr_date", "month out of range");

  if (industries.empty()) industries = default_catalog();
  std::set<std::string> names;
  for (auto& ind : industries) {
    try {
      ind.name = normalize_label(ind.name);
      for (auto& t : ind.titles) t = normalize_label(t);
    } catch (const Error&) {
      invalid("industries", "empty industry name or title");
    }
    if (!names.insert(ind.name).second) invalid("industries", "duplicate industry '" + ind.name + "'");
    if (ind.titles.size() < 2) invalid("industries", "'" + ind.name + "' needs at least two titles");
    if (std::set<std::string>(ind.titles.begin(), ind.titles.end()).size() != ind.titles.size()) {
      invalid("industries", "'" + ind.name + "' has duplicate titles");
    }
    if (ind.organizations < 2) invalid("industries", "'" + ind.name + "' needs two organizations");
  }

  if (hop_propensity.empty()) hop_propensity = default_propensity();
  int expected_lower = 0;
  for (const auto& b : hop_propensity) {
    if (b.lower_years != expected_lower) invalid("hop_propensity", "bins must be contiguous from 0");
    if (b.upper_years <= b.lower_years) invalid("hop_propensity", "empty bin");
    probability("hop_propensity", b.p_external);
    expected_lower = b.upper_years;
  }
}

double GeneratorSpec::propensity_at(std::int64_t months) const {
  for (const auto& b : hop_propensity) {
    if (months < static_cast<std::int64_t>(b.upper_years) * 12) return b.p_external;
  }
  return hop_propensity.back().p_external;
}

namespace {

// Distribution transforms written out so the byte stream depends only on
// mt19937_64, whose output sequence is fixed by the standard.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return uniform() < p; }
  /// Integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(engine_() % span);
  }
  double normal() {
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
  /// Index drawn with probability proportional to 1/(k+1).
  std::size_t zipf_index(std::size_t n) {
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) total += 1.0 / static_cast<double>(k + 1);
    double target = uniform() * total;
    for (std::size_t k = 0; k < n; ++k) {
      target -= 1.0 / static_cast<double>(k + 1);
      if (target < 0.0) return k;
    }
    return n - 1;
  }

 private:
  std::mt19937_64 engine_;
};

std::string org_name(const IndustryCatalog& ind, std::size_t k) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), " firm %03zu", k + 1);
  return ind.name + buf;
}

struct Realized {
  std::vector<std::size_t> external, internal;  // per propensity bin
  std::size_t promotions = 0, demotions = 0, laterals = 0;
};

std::size_t propensity_bin(const GeneratorSpec& spec, std::int64_t months) {
  for (std::size_t i = 0; i < spec.hop_propensity.size(); ++i) {
    if (months < static_cast<std::int64_t>(spec.hop_propensity[i].upper_years) * 12) return i;
  }
  return spec.hop_propensity.size() - 1;
}

UserProfile simulate_user(const GeneratorSpec& spec, std::size_t index, Stream& rng,
                          Realized& realized) {
  UserProfile p;
  char id[24];
  std::snprintf(id, sizeof(id), "u%07zu", index + 1);
  p.user_id = id;

  // education and skills; skill counts peak in the low teens and pile up at the cap of 50
  const bool active = rng.chance(spec.active_rate);
  int education = static_cast<int>(rng.between(1, 3));
  std::size_t skills = 0;
  if (rng.chance(0.04)) {
    skills = 50;
  } else {
    skills = static_cast<std::size_t>(std::clamp(std::lround(13.0 + 7.0 * rng.normal()), 1L, 50L));
  }
  if (!active) {
    switch (rng.between(0, 2)) {
      case 0: skills = 0; break;
      case 1: education = 0; break;
      default: skills = 0; education = 0; break;
    }
  }
  p.education_entries = education;
  for (std::size_t s = 0; s < skills; ++s) {
    char name[16];
    std::snprintf(name, sizeof(name), "skill %03zu", (s * 7 + index) % 200 + 1);
    p.skills.insert(name);
  }

  // young-skewed career length
  const auto max_months = static_cast<double>(spec.max_career_years) * 12.0;
  const auto career = std::max<std::int64_t>(1, std::llround(max_months * std::pow(rng.uniform(), 1.6)));
  const DateMonth grad = DateMonth::from_ordinal(spec.curr_date.ordinal() - career);
  p.grad_date = grad;

  std::size_t industry = rng.zipf_index(spec.industries.size());
  std::size_t org = rng.zipf_index(static_cast<std::size_t>(spec.industries[industry].organizations));
  std::size_t level = static_cast<std::size_t>(rng.between(0, 1));
  std::int64_t start = std::min(grad.ordinal() + rng.between(0, 6), spec.curr_date.ordinal());

  while (true) {
    const IndustryCatalog& ind = spec.industries[industry];
    const double stay_draw =
        std::exp(std::log(spec.stay_median_months) + spec.stay_log_sigma * rng.normal());
    const std::int64_t stay = std::max<std::int64_t>(spec.stay_min_months, std::llround(stay_draw));
    const std::int64_t end = start + stay;

    JobRecord job{ind.titles[level], org_name(ind, org), ind.name, DateMonth::from_ordinal(start),
                  std::nullopt};
    if (end > spec.curr_date.ordinal()) {
      p.jobs.push_back(std::move(job));
      break;
    }
    job.end = DateMonth::from_ordinal(end);
    p.jobs.push_back(std::move(job));

    const std::int64_t next_start = end + (rng.chance(0.6) ? 0 : rng.between(1, 6));
    if (next_start > spec.curr_date.ordinal()) break;

    const std::int64_t wk_exp = end - grad.ordinal();
    const bool external = rng.chance(spec.propensity_at(wk_exp));
    const std::size_t bin = propensity_bin(spec, wk_exp);
    ++(external ? realized.external : realized.internal)[bin];

    if (external && rng.chance(spec.lateral_external_prob)) {
      ++realized.laterals;
    } else {
      const std::size_t top = ind.titles.size() - 1;
      bool up = rng.chance(spec.promotion_bias);
      if (up && level == top) up = false;
      if (!up && level == 0) up = true;
      level = up ? level + 1 : level - 1;
      ++(up ? realized.promotions : realized.demotions);
    }

    if (external) {
      if (spec.industries.size() > 1 && rng.chance(spec.industry_switch_prob)) {
        std::size_t other = static_cast<std::size_t>(
            rng.between(0, static_cast<std::int64_t>(spec.industries.size()) - 2));
        industry = other >= industry ? other + 1 : other;
        level = std::min(level, spec.industries[industry].titles.size() - 1);
        org = rng.zipf_index(static_cast<std::size_t>(spec.industries[industry].organizations));
      } else {
        const auto n_orgs = static_cast<std::size_t>(ind.organizations);
        std::size_t other = rng.zipf_index(n_orgs - 1);
        org = other >= org ? other + 1 : other;
      }
    }
    start = next_start;
  }
  return p;
}

}  // namespace

GeneratedCorpus generate(GeneratorSpec spec) {
  spec.validate();
  GeneratedCorpus out;
  if (spec.n_users == 0) {
    out.truth_json = "{}\n";
    return out;
  }

  Stream rng(spec.seed);
  Realized realized;
  realized.external.assign(spec.hop_propensity.size(), 0);
  realized.internal.assign(spec.hop_propensity.size(), 0);
  std::string corpus;
  for (std::size_t u = 0; u < spec.n_users; ++u) {
    UserProfile p = simulate_user(spec, u, rng, realized);
    corpus += profile_to_json_line(p);
    corpus += '\n';
    out.profiles.push_back(std::move(p));
  }
  out.corpus_jsonl = std::move(corpus);

  ordered_json truth;
  truth["seed"] = spec.seed;
  truth["n_users"] = spec.n_users;
  truth["active_rate"] = spec.active_rate;
  truth["curr_date"] = spec.curr_date.to_string();
  truth["promotion_bias"] = spec.promotion_bias;
  truth["lateral_external_prob"] = spec.lateral_external_prob;
  truth["stay_median_months"] = spec.stay_median_months;
  ordered_json bins = ordered_json::array();
  for (std::size_t i = 0; i < spec.hop_propensity.size(); ++i) {
    const auto& b = spec.hop_propensity[i];
    bins.push_back({{"lower_years", b.lower_years},
                    {"upper_years", b.upper_years},
                    {"p_external", b.p_external},
                    {"generated_external", realized.external[i]},
                    {"generated_internal", realized.internal[i]}});
  }
  truth["hop_propensity"] = std::move(bins);
  ordered_json levels = ordered_json::array();
  for (const auto& ind : spec.industries) {
    for (std::size_t l = 0; l < ind.titles.size(); ++l) {
      levels.push_back({{"industry", ind.name}, {"title", ind.titles[l]}, {"level", l}});
    }
  }
  truth["job_levels"] = std::move(levels);
  const std::size_t moves = realized.promotions + realized.demotions;
  truth["promotion"] = {
      {"promotions", realized.promotions},
      {"demotions", realized.demotions},
      {"laterals", realized.laterals},
      {"promotion_fraction",
       moves == 0 ? 0.0 : static_cast<double>(realized.promotions) / static_cast<double>(moves)}};
  out.truth_json = truth.dump(2) + "\n";
  return out;
}

void generate_to_files(const GeneratorSpec& spec, const std::filesystem::path& corpus_path,
                       const std::filesystem::path& truth_path) {
  GeneratedCorpus g = generate(spec);
  auto write = [](const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "' for writing");
    out << bytes;
    out.flush();
    if (!out) throw Error(ErrorCode::kIoError, "write failed for '" + path.string() + "'");
  };
  write(corpus_path, g.corpus_jsonl);
  write(truth_path, g.truth_json);
}

}  // namespace talentflow
