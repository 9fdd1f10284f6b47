#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "talentflow/hops.hpp"
#include "talentflow/profile.hpp"

namespace talentflow {

/// (title, industry): a node of the job graph.
struct JobKey {
  std::string title;
  std::string industry;

  static JobKey of(const JobRecord& j) { return {j.title, j.industry}; }
  /// "title|industry", the node id used in graphs and reports.
  std::string node_id() const { return title + "|" + industry; }
  auto operator<=>(const JobKey&) const = default;
};

/// (title, organization): the unit a job level is measured on.
struct OrgJobKey {
  std::string title;
  std::string organization;

  static OrgJobKey of(const JobRecord& j) { return {j.title, j.organization}; }
  auto operator<=>(const OrgJobKey&) const = default;
};

/// Months from the profile's graduation to the end of `job` (open ends use
/// `curr_date`). nullopt when there is no graduation date or the job ended
/// before it.
std::optional<std::int64_t> work_experience(const UserProfile& profile, const JobRecord& job,
                                            DateMonth curr_date);

/// Months from the job's start to the analysis date. Throws
/// Error(kFutureJob) if the job starts after config.curr_date.
std::int64_t job_age(const JobRecord& job, const AnalysisConfig& config);

/// Integer-month sums are exact, so means are independent of corpus order.
struct MonthMean {
  std::int64_t sum = 0;
  std::size_t count = 0;

  void add(std::int64_t months) {
    sum += months;
    ++count;
  }
  double mean() const { return static_cast<double>(sum) / static_cast<double>(count); }
};

struct UserFacts {
  std::optional<DateMonth> grad_date;
  std::size_t skill_count = 0;
};

/// Per-corpus aggregates behind the job-level metrics. Averages run over job
/// record instances, so a person holding the same job twice counts twice.
class CorpusIndex {
 public:
  CorpusIndex(const std::vector<UserProfile>& profiles, const AnalysisConfig& config);

  const AnalysisConfig& config() const { return config_; }

  /// Mean work experience of a (title, industry); nullopt = no defined instance.
  std::optional<double> work_experience_of(const JobKey& key) const;
  /// Mean job age of a (title, industry); nullopt = no instance.
  std::optional<double> job_age_of(const JobKey& key) const;

  /// Mean work experience of a (title, organization); nullopt when fewer than
  /// config.min_support distinct people contribute a defined value.
  std::optional<double> job_level(const OrgJobKey& key) const;
  std::size_t job_level_support(const OrgJobKey& key) const;

  const UserFacts* user(const std::string& user_id) const;

  const std::map<JobKey, MonthMean>& work_experience_by_job() const { return wk_exp_; }
  const std::map<JobKey, MonthMean>& job_age_by_job() const { return job_age_; }

  std::size_t undefined_work_experience() const { return undefined_wk_exp_; }
  std::size_t negative_work_experience() const { return negative_wk_exp_; }
  std::size_t future_jobs() const { return future_jobs_; }

 private:
  struct LevelAccumulator {
    MonthMean mean;
    std::size_t people = 0;
  };

  AnalysisConfig config_;
  std::map<JobKey, MonthMean> wk_exp_;
  std::map<JobKey, MonthMean> job_age_;
  std::map<OrgJobKey, LevelAccumulator> levels_;
  std::unordered_map<std::string, UserFacts> users_;
  std::size_t undefined_wk_exp_ = 0;
  std::size_t negative_wk_exp_ = 0;
  std::size_t future_jobs_ = 0;
};

// ---------------------------------------------------------------------------
// External hop fraction by cohort

enum class CohortAxis { kWorkExp, kJobAge, kSkillCount };

std::string_view cohort_axis_name(CohortAxis axis);  // WORK_EXP / JOB_AGE / SKILL_COUNT

/// Bin width along one axis: years for WORK_EXP and JOB_AGE, skills for SKILL_COUNT.
struct AxisBinning {
  CohortAxis axis;
  int width;
};

/// Half-open bin [lower, upper) on one axis.
struct CohortSpec {
  CohortAxis axis;
  int lower;
  int upper;

  auto operator<=>(const CohortSpec&) const = default;
};

struct CohortCell {
  std::size_t external_hops = 0;
  std::size_t internal_hops = 0;
  std::optional<double> fraction;  // nullopt: SUPPRESSED

  std::size_t support() const { return external_hops + internal_hops; }
};

struct CohortStats {
  std::vector<AxisBinning> axes;
  std::map<std::vector<CohortSpec>, CohortCell> cells;
  /// Hops left out because some axis value was undefined.
  std::size_t unattributed_hops = 0;

  /// Cell for `key`; an unseen cell is empty and suppressed.
  CohortCell lookup(const std::vector<CohortSpec>& key) const;
};

/// Cross-tabulates hops by the attributes of their source job. Cells whose
/// hop count is below config.cohort_min_support are suppressed.
CohortStats external_hop_fraction(const std::vector<Hop>& hops,
                                  const std::vector<AxisBinning>& axes, const CorpusIndex& index);

// ---------------------------------------------------------------------------
// Level gain and promotion/demotion

enum class GainLabel { kPromotion, kDemotion, kNeutral };

std::string_view gain_label_name(GainLabel label);

struct LevelGainRecord {
  Hop hop;
  double source_level_months = 0;
  double dest_level_months = 0;
  double gain_months = 0;
  GainLabel label = GainLabel::kNeutral;
};

/// nullopt (UNSUPPORTED) when either endpoint's job level lacks support.
std::optional<LevelGainRecord> level_gain(const Hop& hop, const CorpusIndex& index);

/// All supported level-gain records, in hop order.
std::vector<LevelGainRecord> level_gains(const std::vector<Hop>& hops, const CorpusIndex& index);

struct PromotionSummary {
  // [kind][label], indexed by HopKind and GainLabel
  std::array<std::array<std::size_t, 3>, 2> counts{};

  std::size_t count(HopKind kind, GainLabel label) const {
    return counts[static_cast<int>(kind)][static_cast<int>(label)];
  }
  std::size_t total(HopKind kind) const;
  std::size_t total() const;
  std::size_t total(GainLabel label) const;

  std::optional<double> p_promotion() const;
  std::optional<double> p_promotion_given(HopKind kind) const;
};

PromotionSummary promotion_summary(const std::vector<LevelGainRecord>& records);

struct StayBin {
  std::int64_t lower_months = 0;
  std::int64_t upper_months = 0;
  HopKind kind = HopKind::kExternal;
  std::size_t promotions = 0;
  std::size_t hops = 0;
  std::optional<double> promotion_fraction;  // nullopt: SUPPRESSED
};

/// Promotion fraction and count per stay-duration bin and hop kind, for
/// every bin from 0 up to the longest observed stay.
std::vector<StayBin> promotion_by_stay(const std::vector<LevelGainRecord>& records,
                                       int bin_width_months, int min_support);

}  // namespace talentflow
