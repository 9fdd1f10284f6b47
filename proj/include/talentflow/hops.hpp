#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "talentflow/profile.hpp"

namespace talentflow {

enum class HopKind { kInternal, kExternal };
enum class HopClass { kInternal, kExternal, kNotAHop };

std::string_view hop_kind_name(HopKind kind);  // "INTERNAL" / "EXTERNAL"

struct Hop {
  std::string user_id;
  JobRecord source;  // open ends already resolved to the analysis date
  JobRecord dest;
  HopKind kind = HopKind::kExternal;
  std::int64_t stay_months = 0;  // source end - source start

  bool operator==(const Hop&) const = default;
};

/// Organization/title rule for a transition between two jobs. The periods
/// must not overlap (dest.start >= source.end); an unresolved open source
/// end overlaps everything.
HopClass classify_hop(const JobRecord& source, const JobRecord& dest);

struct HopExtraction {
  std::vector<Hop> hops;
  std::size_t skipped_jobs = 0;  // start after (resolved) end
};

/// Chronological order used for pairing: start, end, title, then
/// organization and industry so the order is total.
bool chronological_less(const JobRecord& a, const JobRecord& b);

/// Hops between chronologically adjacent jobs of one profile. Open ends are
/// resolved to `curr_date` before sorting.
HopExtraction extract_hops(const UserProfile& profile, DateMonth curr_date);

/// extract_hops over a corpus, concatenated in profile order.
HopExtraction extract_all_hops(const std::vector<UserProfile>& profiles, DateMonth curr_date);

}  // namespace talentflow
