#include "talentflow/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "talentflow/error.hpp"

namespace talentflow {

std::optional<std::int64_t> work_experience(const UserProfile& profile, const JobRecord& job,
                                            DateMonth curr_date) {
  if (!profile.grad_date) return std::nullopt;
  std::int64_t months = months_between(*profile.grad_date, job.end_or(curr_date));
  if (months < 0) return std::nullopt;
  return months;
}

std::int64_t job_age(const JobRecord& job, const AnalysisConfig& config) {
  if (config.curr_date < job.start) {
    throw Error(ErrorCode::kFutureJob, "job starting " + job.start.to_string() +
                                           " is after the analysis date " +
                                           config.curr_date.to_string());
  }
  return months_between(job.start, config.curr_date);
}

CorpusIndex::CorpusIndex(const std::vector<UserProfile>& profiles, const AnalysisConfig& config)
    : config_(config) {
  for (const auto& p : profiles) {
    users_.emplace(p.user_id, UserFacts{p.grad_date, p.skills.size()});
    std::set<OrgJobKey> held;
    for (const auto& j : p.jobs) {
      if (config_.curr_date < j.start) {
        ++future_jobs_;
      } else {
        job_age_[JobKey::of(j)].add(months_between(j.start, config_.curr_date));
      }

      auto wk = work_experience(p, j, config_.curr_date);
      if (!wk) {
        ++undefined_wk_exp_;
        if (p.grad_date) ++negative_wk_exp_;
        continue;
      }
      wk_exp_[JobKey::of(j)].add(*wk);
      OrgJobKey ok = OrgJobKey::of(j);
      LevelAccumulator& acc = levels_[ok];
      acc.mean.add(*wk);
      if (held.insert(ok).second) ++acc.people;
    }
  }
}

std::optional<double> CorpusIndex::work_experience_of(const JobKey& key) const {
  auto it = wk_exp_.find(key);
  if (it == wk_exp_.end()) return std::nullopt;
  return it->second.mean();
}

std::optional<double> CorpusIndex::job_age_of(const JobKey& key) const {
  auto it = job_age_.find(key);
  if (it == job_age_.end()) return std::nullopt;
  return it->second.mean();
}

std::optional<double> CorpusIndex::job_level(const OrgJobKey& key) const {
  auto it = levels_.find(key);
  if (it == levels_.end()) return std::nullopt;
  if (it->second.people < static_cast<std::size_t>(config_.min_support)) return std::nullopt;
  return it->second.mean.mean();
}

std::size_t CorpusIndex::job_level_support(const OrgJobKey& key) const {
  auto it = levels_.find(key);
  return it == levels_.end() ? 0 : it->second.people;
}

const UserFacts* CorpusIndex::user(const std::string& user_id) const {
  auto it = users_.find(user_id);
  return it == users_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------

std::string_view cohort_axis_name(CohortAxis axis) {
  switch (axis) {
    case CohortAxis::kWorkExp: return "WORK_EXP";
    case CohortAxis::kJobAge: return "JOB_AGE";
    case CohortAxis::kSkillCount: return "SKILL_COUNT";
  }
  return "?";
}

CohortCell CohortStats::lookup(const std::vector<CohortSpec>& key) const {
  auto it = cells.find(key);
  return it == cells.end() ? CohortCell{} : it->second;
}

namespace {

CohortSpec bin_of(CohortAxis axis, int width, std::int64_t bin) {
  return CohortSpec{axis, static_cast<int>(bin * width), static_cast<int>((bin + 1) * width)};
}

std::optional<CohortSpec> attribute(const Hop& hop, const AxisBinning& binning,
                                    const UserFacts& user, const CorpusIndex& index) {
  const std::int64_t width_months = static_cast<std::int64_t>(binning.width) * 12;
  switch (binning.axis) {
    case CohortAxis::kWorkExp: {
      if (!user.grad_date) return std::nullopt;
      // hop.source carries a resolved end
      std::int64_t wk = months_between(*user.grad_date, *hop.source.end);
      if (wk < 0) return std::nullopt;
      return bin_of(binning.axis, binning.width, wk / width_months);
    }
    case CohortAxis::kJobAge: {
      auto age = index.job_age_of(JobKey::of(hop.source));
      if (!age) return std::nullopt;
      auto bin = static_cast<std::int64_t>(std::floor(*age / static_cast<double>(width_months)));
      return bin_of(binning.axis, binning.width, bin);
    }
    case CohortAxis::kSkillCount:
      return bin_of(binning.axis, binning.width,
                    static_cast<std::int64_t>(user.skill_count) / binning.width);
  }
  return std::nullopt;
}

}  // namespace

CohortStats external_hop_fraction(const std::vector<Hop>& hops,
                                  const std::vector<AxisBinning>& axes, const CorpusIndex& index) {
  for (const auto& a : axes) {
    if (a.width < 1) throw Error(ErrorCode::kValidation, "cohort bin width must be positive");
  }
  CohortStats stats;
  stats.axes = axes;
  std::vector<CohortSpec> key;
  for (const auto& hop : hops) {
    const UserFacts* user = index.user(hop.user_id);
    key.clear();
    bool defined = user != nullptr;
    for (std::size_t a = 0; defined && a < axes.size(); ++a) {
      auto spec = attribute(hop, axes[a], *user, index);
      if (spec) {
        key.push_back(*spec);
      } else {
        defined = false;
      }
    }
    if (!defined) {
      ++stats.unattributed_hops;
      continue;
    }
    CohortCell& cell = stats.cells[key];
    if (hop.kind == HopKind::kExternal) {
      ++cell.external_hops;
    } else {
      ++cell.internal_hops;
    }
  }
  const auto min_support = static_cast<std::size_t>(index.config().cohort_min_support);
  for (auto& [k, cell] : stats.cells) {
    if (cell.support() >= min_support && cell.support() > 0) {
      cell.fraction = static_cast<double>(cell.external_hops) / static_cast<double>(cell.support());
    }
  }
  return stats;
}

// ---------------------------------------------------------------------------

std::string_view gain_label_name(GainLabel label) {
  switch (label) {
    case GainLabel::kPromotion: return "PROMOTION";
    case GainLabel::kDemotion: return "DEMOTION";
    case GainLabel::kNeutral: return "NEUTRAL";
  }
  return "?";
}

std::optional<LevelGainRecord> level_gain(const Hop& hop, const CorpusIndex& index) {
  auto src = index.job_level(OrgJobKey::of(hop.source));
  if (!src) return std::nullopt;
  auto dst = index.job_level(OrgJobKey::of(hop.dest));
  if (!dst) return std::nullopt;
  LevelGainRecord rec{hop, *src, *dst, *dst - *src, GainLabel::kNeutral};
  if (rec.gain_months > 0) {
    rec.label = GainLabel::kPromotion;
  } else if (rec.gain_months < 0) {
    rec.label = GainLabel::kDemotion;
  }
  return rec;
}

std::vector<LevelGainRecord> level_gains(const std::vector<Hop>& hops, const CorpusIndex& index) {
  std::vector<LevelGainRecord> out;
  for (const auto& h : hops) {
    if (auto rec = level_gain(h, index)) out.push_back(std::move(*rec));
  }
  return out;
}

std::size_t PromotionSummary::total(HopKind kind) const {
  const auto& row = counts[static_cast<int>(kind)];
  return row[0] + row[1] + row[2];
}

std::size_t PromotionSummary::total() const {
  return total(HopKind::kInternal) + total(HopKind::kExternal);
}

std::size_t PromotionSummary::total(GainLabel label) const {
  return count(HopKind::kInternal, label) + count(HopKind::kExternal, label);
}

std::optional<double> PromotionSummary::p_promotion() const {
  if (total() == 0) return std::nullopt;
  return static_cast<double>(total(GainLabel::kPromotion)) / static_cast<double>(total());
}

std::optional<double> PromotionSummary::p_promotion_given(HopKind kind) const {
  if (total(kind) == 0) return std::nullopt;
  return static_cast<double>(count(kind, GainLabel::kPromotion)) /
         static_cast<double>(total(kind));
}

PromotionSummary promotion_summary(const std::vector<LevelGainRecord>& records) {
  PromotionSummary s;
  for (const auto& r : records) {
    ++s.counts[static_cast<int>(r.hop.kind)][static_cast<int>(r.label)];
  }
  return s;
}

std::vector<StayBin> promotion_by_stay(const std::vector<LevelGainRecord>& records,
                                       int bin_width_months, int min_support) {
  if (bin_width_months < 1) throw Error(ErrorCode::kValidation, "stay bin width must be positive");
  std::map<std::pair<std::int64_t, int>, std::pair<std::size_t, std::size_t>> tally;
  std::int64_t max_bin = -1;
  for (const auto& r : records) {
    std::int64_t bin = r.hop.stay_months / bin_width_months;
    max_bin = std::max(max_bin, bin);
    auto& [promotions, hops] = tally[{bin, static_cast<int>(r.hop.kind)}];
    ++hops;
    if (r.label == GainLabel::kPromotion) ++promotions;
  }
  std::vector<StayBin> out;
  for (std::int64_t bin = 0; bin <= max_bin; ++bin) {
    for (HopKind kind : {HopKind::kExternal, HopKind::kInternal}) {
      StayBin b;
      b.lower_months = bin * bin_width_months;
      b.upper_months = (bin + 1) * bin_width_months;
      b.kind = kind;
      if (auto it = tally.find({bin, static_cast<int>(kind)}); it != tally.end()) {
        b.promotions = it->second.first;
        b.hops = it->second.second;
      }
      if (b.hops > 0 && b.hops >= static_cast<std::size_t>(min_support)) {
        b.promotion_fraction = static_cast<double>(b.promotions) / static_cast<double>(b.hops);
      }
      out.push_back(b);
    }
  }
  return out;
}

}  // namespace talentflow
