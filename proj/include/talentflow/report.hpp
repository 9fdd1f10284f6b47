#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "talentflow/graphalgo.hpp"
#include "talentflow/hopgraph.hpp"
#include "talentflow/hops.hpp"
#include "talentflow/ingestion.hpp"
#include "talentflow/metrics.hpp"
#include "talentflow/profile.hpp"

namespace talentflow {

/// Ingestion, active filter, hop extraction and corpus index for one input.
struct AnalysisRun {
  AnalysisConfig config;
  IngestReport ingest;
  std::vector<UserProfile> active;
  HopExtraction extraction;
  CorpusIndex index;

  static AnalysisRun from_file(const std::filesystem::path& input, const AnalysisConfig& config);
  AnalysisRun(IngestResult ingested, const AnalysisConfig& config);

  HopGraph graph(GraphLevel level, bool distinct_users = false) const;
};

// Marker strings used in report cells.
inline constexpr const char* kSuppressed = "SUPPRESSED";
inline constexpr const char* kNoSupport = "NO_SUPPORT";
inline constexpr const char* kNotAvailable = "NA";

void write_summary_csv(std::ostream& out, const AnalysisRun& run);
void write_hops_csv(std::ostream& out, const std::vector<Hop>& hops);

struct CohortGrouping {
  std::string name;
  std::vector<AxisBinning> axes;  // one or two axes
};
/// Groupings written by report-all: work experience alone, then job age and
/// skill count each crossed with work experience.
std::vector<CohortGrouping> default_cohort_groupings(const AnalysisConfig& config);
void write_cohorts_csv(std::ostream& out, const AnalysisRun& run,
                       const std::vector<CohortGrouping>& groupings);

void write_job_levels_csv(std::ostream& out, const AnalysisRun& run);
void write_job_metrics_csv(std::ostream& out, const AnalysisRun& run);
void write_promotion_table_csv(std::ostream& out, const PromotionSummary& summary);
void write_level_gain_hist_csv(std::ostream& out, const std::vector<LevelGainRecord>& records);
void write_stay_csv(std::ostream& out, const std::vector<StayBin>& bins);
void write_distributions_csv(std::ostream& out, const AnalysisRun& run);
void write_graph_stats_csv(std::ostream& out, const std::vector<HopGraph>& graphs);
void write_components_csv(std::ostream& out, const HopGraph& g);
void write_ccdf_csv(std::ostream& out, const std::vector<std::pair<double, double>>& ccdf);
void write_top_csv(std::ostream& out, const std::vector<std::pair<std::string, double>>& top);

CentralityTable centrality(const HopGraph& g, CentralityMetric metric, const AnalysisConfig& config);

/// Files written by report_all, relative to the output directory.
std::vector<std::string> report_all_files();

/// Runs the whole pipeline and writes every report into `out_dir`.
void report_all(const std::filesystem::path& input, const std::filesystem::path& out_dir,
                const AnalysisConfig& config);

}  // namespace talentflow
