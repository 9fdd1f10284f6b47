#include "talentflow/report.hpp"

#include <cmath>
#include <fstream>
#include <map>

#include "talentflow/csv.hpp"
#include "talentflow/error.hpp"

namespace talentflow {

AnalysisRun::AnalysisRun(IngestResult ingested, const AnalysisConfig& cfg)
    : config(cfg),
      ingest(std::move(ingested.report)),
      active(filter_active(ingested.profiles)),
      extraction(extract_all_hops(active, cfg.curr_date)),
      index(active, cfg) {}

AnalysisRun AnalysisRun::from_file(const std::filesystem::path& input, const AnalysisConfig& config) {
  config.validate();
  return AnalysisRun(ingest_profiles(input), config);
}

HopGraph AnalysisRun::graph(GraphLevel level, bool distinct_users) const {
  return build_graph(extraction.hops, active, level,
                     GraphBuildOptions{config.min_support, distinct_users});
}

void write_summary_csv(std::ostream& out, const AnalysisRun& run) {
  csv::Writer w(out);
  w.row({"key", "value"});
  auto kv = [&](const char* key, std::size_t value) {
    w.field(key).field(static_cast<std::uint64_t>(value)).end_row();
  };
  kv("total_records", run.ingest.total_records);
  kv("active_records", run.ingest.active_records);
  kv("inactive_records", run.ingest.inactive_records);
  kv("rejected_records", run.ingest.rejected_records);
  for (const auto& [reason, count] : run.ingest.rejection_reasons) {
    w.field("rejected_" + reason).field(static_cast<std::uint64_t>(count)).end_row();
  }
  kv("industry_repairs", run.ingest.industry_repairs);
  kv("inverted_jobs", run.ingest.inverted_jobs);
  kv("skipped_jobs", run.extraction.skipped_jobs);
  kv("future_jobs", run.index.future_jobs());
  kv("undefined_work_experience", run.index.undefined_work_experience());
  kv("negative_work_experience", run.index.negative_work_experience());
  std::size_t external = 0;
  for (const auto& h : run.extraction.hops) external += h.kind == HopKind::kExternal ? 1 : 0;
  kv("hops", run.extraction.hops.size());
  kv("external_hops", external);
  kv("internal_hops", run.extraction.hops.size() - external);
}

void write_hops_csv(std::ostream& out, const std::vector<Hop>& hops) {
  csv::Writer w(out);
  w.row({"user_id", "src_title", "src_org", "src_industry", "dst_title", "dst_org", "dst_industry",
         "kind", "stay_months", "gap_months"});
  for (const auto& h : hops) {
    w.field(h.user_id)
        .field(h.source.title)
        .field(h.source.organization)
        .field(h.source.industry)
        .field(h.dest.title)
        .field(h.dest.organization)
        .field(h.dest.industry)
        .field(hop_kind_name(h.kind))
        .field(h.stay_months)
        .field(months_between(*h.source.end, h.dest.start))
        .end_row();
  }
}

std::vector<CohortGrouping> default_cohort_groupings(const AnalysisConfig& config) {
  const int years = config.group_bin_width_years;
  return {
      {"work_exp", {{CohortAxis::kWorkExp, years}}},
      {"job_age x work_exp", {{CohortAxis::kJobAge, years}, {CohortAxis::kWorkExp, years}}},
      {"skill_count x work_exp", {{CohortAxis::kSkillCount, 10}, {CohortAxis::kWorkExp, years}}},
  };
}

void write_cohorts_csv(std::ostream& out, const AnalysisRun& run,
                       const std::vector<CohortGrouping>& groupings) {
  csv::Writer w(out);
  w.row({"grouping", "axis_1", "lower_1", "upper_1", "axis_2", "lower_2", "upper_2",
         "external_hops", "internal_hops", "support", "fraction"});
  for (const auto& grouping : groupings) {
    if (grouping.axes.empty() || grouping.axes.size() > 2) {
      throw Error(ErrorCode::kValidation, "cohort groupings take one or two axes");
    }
    CohortStats stats = external_hop_fraction(run.extraction.hops, grouping.axes, run.index);
    for (const auto& [key, cell] : stats.cells) {
      w.field(grouping.name);
      for (std::size_t a = 0; a < 2; ++a) {
        if (a < key.size()) {
          w.field(cohort_axis_name(key[a].axis)).field(key[a].lower).field(key[a].upper);
        } else {
          w.field("").field("").field("");
        }
      }
      w.field(static_cast<std::uint64_t>(cell.external_hops))
          .field(static_cast<std::uint64_t>(cell.internal_hops))
          .field(static_cast<std::uint64_t>(cell.support()))
          .field(cell.fraction, kSuppressed)
          .end_row();
    }
  }
}

void write_job_levels_csv(std::ostream& out, const AnalysisRun& run) {
  // every (title, organization) held by an active profile
  std::map<OrgJobKey, bool> keys;
  for (const auto& p : run.active) {
    for (const auto& j : p.jobs) keys.emplace(OrgJobKey::of(j), true);
  }
  csv::Writer w(out);
  w.row({"title", "organization", "support", "job_level_months", "job_level_years"});
  for (const auto& [key, unused] : keys) {
    auto level = run.index.job_level(key);
    w.field(key.title)
        .field(key.organization)
        .field(static_cast<std::uint64_t>(run.index.job_level_support(key)))
        .field(level, kNoSupport)
        .field(level ? std::optional<double>(*level / 12.0) : std::nullopt, kNoSupport)
        .end_row();
  }
}

void write_job_metrics_csv(std::ostream& out, const AnalysisRun& run) {
  csv::Writer w(out);
  w.row({"title", "industry", "work_exp_instances", "work_exp_months", "job_age_instances",
         "job_age_months"});
  std::map<JobKey, bool> keys;
  for (const auto& [k, m] : run.index.work_experience_by_job()) keys.emplace(k, true);
  for (const auto& [k, m] : run.index.job_age_by_job()) keys.emplace(k, true);
  for (const auto& [key, unused] : keys) {
    const auto& wk = run.index.work_experience_by_job();
    const auto& age = run.index.job_age_by_job();
    auto wk_it = wk.find(key);
    auto age_it = age.find(key);
    w.field(key.title).field(key.industry);
    w.field(static_cast<std::uint64_t>(wk_it == wk.end() ? 0 : wk_it->second.count))
        .field(run.index.work_experience_of(key), kNoSupport);
    w.field(static_cast<std::uint64_t>(age_it == age.end() ? 0 : age_it->second.count))
        .field(run.index.job_age_of(key), kNoSupport);
    w.end_row();
  }
}

void write_promotion_table_csv(std::ostream& out, const PromotionSummary& s) {
  csv::Writer w(out);
  w.row({"hop_kind", "promotion", "demotion", "neutral", "total", "p_promotion"});
  auto row = [&](const char* name, std::size_t promo, std::size_t demo, std::size_t neutral,
                 std::size_t total, std::optional<double> p) {
    w.field(name)
        .field(static_cast<std::uint64_t>(promo))
        .field(static_cast<std::uint64_t>(demo))
        .field(static_cast<std::uint64_t>(neutral))
        .field(static_cast<std::uint64_t>(total))
        .field(p, kNotAvailable)
        .end_row();
  };
  for (HopKind kind : {HopKind::kExternal, HopKind::kInternal}) {
    row(kind == HopKind::kExternal ? "EXTERNAL" : "INTERNAL", s.count(kind, GainLabel::kPromotion),
        s.count(kind, GainLabel::kDemotion), s.count(kind, GainLabel::kNeutral), s.total(kind),
        s.p_promotion_given(kind));
  }
  row("TOTAL", s.total(GainLabel::kPromotion), s.total(GainLabel::kDemotion),
      s.total(GainLabel::kNeutral), s.total(), s.p_promotion());
}

void write_level_gain_hist_csv(std::ostream& out, const std::vector<LevelGainRecord>& records) {
  // one-year bins of gain, per hop kind
  std::map<std::pair<int, std::int64_t>, std::uint64_t> hist;
  for (const auto& r : records) {
    auto bin = static_cast<std::int64_t>(std::floor(r.gain_months / 12.0));
    ++hist[{static_cast<int>(r.hop.kind), bin}];
  }
  csv::Writer w(out);
  w.row({"hop_kind", "lower_years", "upper_years", "count"});
  for (const auto& [key, count] : hist) {
    w.field(hop_kind_name(static_cast<HopKind>(key.first)))
        .field(key.second)
        .field(key.second + 1)
        .field(count)
        .end_row();
  }
}

void write_stay_csv(std::ostream& out, const std::vector<StayBin>& bins) {
  csv::Writer w(out);
  w.row({"hop_kind", "lower_months", "upper_months", "promotions", "hops", "promotion_fraction"});
  for (const auto& b : bins) {
    w.field(hop_kind_name(b.kind))
        .field(b.lower_months)
        .field(b.upper_months)
        .field(static_cast<std::uint64_t>(b.promotions))
        .field(static_cast<std::uint64_t>(b.hops))
        .field(b.promotion_fraction, kSuppressed)
        .end_row();
  }
}

void write_distributions_csv(std::ostream& out, const AnalysisRun& run) {
  std::map<std::int64_t, std::uint64_t> skills, wk_exp, job_age;
  for (const auto& p : run.active) {
    ++skills[static_cast<std::int64_t>(p.skills.size())];
    for (const auto& j : p.jobs) {
      if (auto wk = work_experience(p, j, run.config.curr_date)) ++wk_exp[*wk / 12];
      if (!(run.config.curr_date < j.start)) ++job_age[months_between(j.start, run.config.curr_date) / 12];
    }
  }
  csv::Writer w(out);
  w.row({"metric", "lower", "upper", "count"});
  auto emit = [&](const char* name, const std::map<std::int64_t, std::uint64_t>& hist) {
    for (const auto& [bin, count] : hist) w.field(name).field(bin).field(bin + 1).field(count).end_row();
  };
  emit("skill_count", skills);
  emit("work_experience_years", wk_exp);
  emit("job_age_years", job_age);
}

namespace {

std::vector<std::int64_t> positive_degrees(const CentralityTable& t) {
  std::vector<std::int64_t> v;
  for (double s : t.scores) {
    if (s >= 1.0) v.push_back(static_cast<std::int64_t>(s));
  }
  return v;
}

void fit_fields(csv::Writer& w, const CentralityTable& t) {
  try {
    PowerLawFit fit = fit_power_law(positive_degrees(t));
    w.field(fit.alpha).field(fit.xmin).field(static_cast<std::uint64_t>(fit.n_tail));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInsufficientTail) throw;
    w.field(kNotAvailable).field(kNotAvailable).field(kNotAvailable);
  }
}

}  // namespace

void write_graph_stats_csv(std::ostream& out, const std::vector<HopGraph>& graphs) {
  csv::Writer w(out);
  w.row({"graph", "nodes", "edges", "sparsity", "total_weight", "self_loop_weight", "scc_count",
         "largest_scc", "largest_scc_fraction", "second_scc", "second_scc_fraction", "wcc_count",
         "largest_wcc", "largest_wcc_fraction", "second_wcc", "second_wcc_fraction",
         "indegree_alpha", "indegree_xmin", "indegree_tail", "outdegree_alpha", "outdegree_xmin",
         "outdegree_tail"});
  for (const auto& g : graphs) {
    w.field(graph_level_name(g.level()))
        .field(static_cast<std::uint64_t>(g.node_count()))
        .field(static_cast<std::uint64_t>(g.edge_count()))
        .field(g.sparsity())
        .field(g.total_weight())
        .field(g.self_loop_weight());
    for (ComponentMode mode : {ComponentMode::kStrong, ComponentMode::kWeak}) {
      ComponentReport r = connected_components(g, mode);
      w.field(static_cast<std::uint64_t>(r.component_count))
          .field(static_cast<std::uint64_t>(r.largest_size))
          .field(r.largest_fraction())
          .field(static_cast<std::uint64_t>(r.second_size))
          .field(r.second_fraction());
    }
    fit_fields(w, degree_centrality(g, Direction::kIn));
    fit_fields(w, degree_centrality(g, Direction::kOut));
    w.end_row();
  }
}

void write_components_csv(std::ostream& out, const HopGraph& g) {
  Digraph d = Digraph::from(g);
  ComponentReport strong = connected_components(g, ComponentMode::kStrong);
  ComponentReport weak = connected_components(g, ComponentMode::kWeak);
  csv::Writer w(out);
  w.row({"node", "scc", "wcc"});
  for (std::size_t i = 0; i < d.size(); ++i) {
    w.field(d.ids[i])
        .field(static_cast<std::uint64_t>(strong.membership[i]))
        .field(static_cast<std::uint64_t>(weak.membership[i]))
        .end_row();
  }
}

void write_ccdf_csv(std::ostream& out, const std::vector<std::pair<double, double>>& ccdf) {
  csv::Writer w(out);
  w.row({"value", "ccdf"});
  for (const auto& [value, frac] : ccdf) w.field(value).field(frac).end_row();
}

void write_top_csv(std::ostream& out, const std::vector<std::pair<std::string, double>>& top) {
  csv::Writer w(out);
  w.row({"rank", "node", "score"});
  for (std::size_t i = 0; i < top.size(); ++i) {
    w.field(static_cast<std::uint64_t>(i + 1)).field(top[i].first).field(top[i].second).end_row();
  }
}

CentralityTable centrality(const HopGraph& g, CentralityMetric metric, const AnalysisConfig& config) {
  switch (metric) {
    case CentralityMetric::kInDegree: return degree_centrality(g, Direction::kIn);
    case CentralityMetric::kOutDegree: return degree_centrality(g, Direction::kOut);
    case CentralityMetric::kPageRank: return weighted_pagerank(g, config);
  }
  throw Error(ErrorCode::kUsage, "unknown metric");
}

namespace {

constexpr CentralityMetric kMetrics[] = {CentralityMetric::kInDegree, CentralityMetric::kOutDegree,
                                         CentralityMetric::kPageRank};
constexpr GraphLevel kLevels[] = {GraphLevel::kJob, GraphLevel::kOrg};

template <typename Fn>
void write_file(const std::filesystem::path& path, Fn&& fn) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "' for writing");
  fn(out);
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write failed for '" + path.string() + "'");
}

std::string suffix(GraphLevel level, CentralityMetric metric) {
  return std::string(graph_level_name(level)) + "_" + std::string(centrality_metric_name(metric));
}

}  // namespace

std::vector<std::string> report_all_files() {
  std::vector<std::string> files = {"summary.csv",        "distributions.csv",
                                    "cohort_fractions.csv", "promotion_table.csv",
                                    "level_gain_hist.csv", "stay_analysis.csv",
                                    "graph_stats.csv",    "job_graph.csv",
                                    "org_graph.csv"};
  for (GraphLevel level : kLevels) {
    for (CentralityMetric metric : kMetrics) {
      files.push_back("centrality_ccdf_" + suffix(level, metric) + ".csv");
      files.push_back("top20_" + suffix(level, metric) + ".csv");
    }
  }
  return files;
}

void report_all(const std::filesystem::path& input, const std::filesystem::path& out_dir,
                const AnalysisConfig& config) {
  AnalysisRun run = AnalysisRun::from_file(input, config);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create '" + out_dir.string() + "': " + ec.message());

  write_file(out_dir / "summary.csv", [&](std::ostream& o) { write_summary_csv(o, run); });
  write_file(out_dir / "distributions.csv", [&](std::ostream& o) { write_distributions_csv(o, run); });
  write_file(out_dir / "cohort_fractions.csv", [&](std::ostream& o) {
    write_cohorts_csv(o, run, default_cohort_groupings(run.config));
  });

  std::vector<LevelGainRecord> gains = level_gains(run.extraction.hops, run.index);
  write_file(out_dir / "promotion_table.csv",
             [&](std::ostream& o) { write_promotion_table_csv(o, promotion_summary(gains)); });
  write_file(out_dir / "level_gain_hist.csv",
             [&](std::ostream& o) { write_level_gain_hist_csv(o, gains); });
  write_file(out_dir / "stay_analysis.csv", [&](std::ostream& o) {
    write_stay_csv(o, promotion_by_stay(gains, 12, run.config.cohort_min_support));
  });

  std::vector<HopGraph> graphs = {run.graph(GraphLevel::kJob), run.graph(GraphLevel::kOrg)};
  write_file(out_dir / "graph_stats.csv", [&](std::ostream& o) { write_graph_stats_csv(o, graphs); });
  for (const auto& g : graphs) {
    export_graph(g, GraphFormat::kCsvEdgeList,
                 out_dir / (std::string(graph_level_name(g.level())) + "_graph.csv"));
    if (g.node_count() == 0) {
      // header-only tables for an empty graph
      for (CentralityMetric metric : kMetrics) {
        write_file(out_dir / ("centrality_ccdf_" + suffix(g.level(), metric) + ".csv"),
                   [&](std::ostream& o) { write_ccdf_csv(o, {}); });
        write_file(out_dir / ("top20_" + suffix(g.level(), metric) + ".csv"),
                   [&](std::ostream& o) { write_top_csv(o, {}); });
      }
      continue;
    }
    for (CentralityMetric metric : kMetrics) {
      CentralityTable table = centrality(g, metric, run.config);
      write_file(out_dir / ("centrality_ccdf_" + suffix(g.level(), metric) + ".csv"),
                 [&](std::ostream& o) { write_ccdf_csv(o, centrality_ccdf(table)); });
      write_file(out_dir / ("top20_" + suffix(g.level(), metric) + ".csv"),
                 [&](std::ostream& o) { write_top_csv(o, top_k(table, 20)); });
    }
  }
}

}  // namespace talentflow
