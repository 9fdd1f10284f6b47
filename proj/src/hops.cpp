#include "talentflow/hops.hpp"

#include <algorithm>
#include <iterator>
#include <tuple>

namespace talentflow {

std::string_view hop_kind_name(HopKind kind) {
  return kind == HopKind::kInternal ? "INTERNAL" : "EXTERNAL";
}

HopClass classify_hop(const JobRecord& source, const JobRecord& dest) {
  if (!source.end || dest.start < *source.end) return HopClass::kNotAHop;
  if (source.organization != dest.organization) return HopClass::kExternal;
  if (source.title != dest.title) return HopClass::kInternal;
  return HopClass::kNotAHop;
}

bool chronological_less(const JobRecord& a, const JobRecord& b) {
  // Callers pass resolved records, but keep open ends last for safety.
  const bool a_open = !a.end.has_value();
  const bool b_open = !b.end.has_value();
  const DateMonth a_end = a.end.value_or(DateMonth{});
  const DateMonth b_end = b.end.value_or(DateMonth{});
  return std::tie(a.start, a_open, a_end, a.title, a.organization, a.industry) <
         std::tie(b.start, b_open, b_end, b.title, b.organization, b.industry);
}

HopExtraction extract_hops(const UserProfile& profile, DateMonth curr_date) {
  HopExtraction out;
  std::vector<JobRecord> jobs;
  jobs.reserve(profile.jobs.size());
  for (const auto& j : profile.jobs) {
    JobRecord resolved = j;
    resolved.end = j.end_or(curr_date);
    if (*resolved.end < resolved.start) {
      ++out.skipped_jobs;
      continue;
    }
    jobs.push_back(std::move(resolved));
  }
  std::sort(jobs.begin(), jobs.end(), chronological_less);

  for (std::size_t i = 1; i < jobs.size(); ++i) {
    const JobRecord& src = jobs[i - 1];
    const JobRecord& dst = jobs[i];
    HopClass c = classify_hop(src, dst);
    if (c == HopClass::kNotAHop) continue;
    out.hops.push_back(Hop{profile.user_id, src, dst,
                           c == HopClass::kInternal ? HopKind::kInternal : HopKind::kExternal,
                           months_between(src.start, *src.end)});
  }
  return out;
}

HopExtraction extract_all_hops(const std::vector<UserProfile>& profiles, DateMonth curr_date) {
  HopExtraction all;
  for (const auto& p : profiles) {
    HopExtraction one = extract_hops(p, curr_date);
    all.skipped_jobs += one.skipped_jobs;
    std::move(one.hops.begin(), one.hops.end(), std::back_inserter(all.hops));
  }
  return all;
}

}  // namespace talentflow
