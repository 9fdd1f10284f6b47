// talentflow: command-line front-end for job-hop analytics.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "talentflow/csv.hpp"
#include "talentflow/error.hpp"
#include "talentflow/report.hpp"
#include "talentflow/synthgen.hpp"

namespace tf = talentflow;

namespace {

struct ConfigFlags {
  std::string config_file;
  std::optional<int> min_support;
  std::optional<int> cohort_min_support;
  std::optional<std::string> curr_date;
  std::optional<double> teleport;
  std::optional<int> bin_years;
  std::optional<double> pagerank_tol;
  std::optional<int> pagerank_max_iter;
};

// defaults < config file < flags
tf::AnalysisConfig resolve_config(const ConfigFlags& flags) {
  tf::AnalysisConfig c;
  if (!flags.config_file.empty()) {
    std::ifstream in(flags.config_file, std::ios::binary);
    if (!in) throw tf::Error(tf::ErrorCode::kIoError, "cannot open '" + flags.config_file + "'");
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw tf::Error(tf::ErrorCode::kValidation, "config file is not a JSON object");
    }
    try {
      if (j.contains("curr_date")) c.curr_date = tf::DateMonth::parse(j["curr_date"].get<std::string>());
      if (j.contains("min_support")) c.min_support = j["min_support"].get<int>();
      if (j.contains("group_bin_width_years")) c.group_bin_width_years = j["group_bin_width_years"].get<int>();
      if (j.contains("cohort_min_support")) c.cohort_min_support = j["cohort_min_support"].get<int>();
      if (j.contains("teleport_prob")) c.teleport_prob = j["teleport_prob"].get<double>();
      if (j.contains("pagerank_tol")) c.pagerank_tol = j["pagerank_tol"].get<double>();
      if (j.contains("pagerank_max_iter")) c.pagerank_max_iter = j["pagerank_max_iter"].get<int>();
    } catch (const nlohmann::json::exception& e) {
      throw tf::Error(tf::ErrorCode::kValidation, std::string("config file: ") + e.what());
    }
  }
  if (flags.curr_date) c.curr_date = tf::DateMonth::parse(*flags.curr_date);
  if (flags.min_support) c.min_support = *flags.min_support;
  if (flags.cohort_min_support) c.cohort_min_support = *flags.cohort_min_support;
  if (flags.teleport) c.teleport_prob = *flags.teleport;
  if (flags.bin_years) c.group_bin_width_years = *flags.bin_years;
  if (flags.pagerank_tol) c.pagerank_tol = *flags.pagerank_tol;
  if (flags.pagerank_max_iter) c.pagerank_max_iter = *flags.pagerank_max_iter;
  c.validate();
  return c;
}

// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw tf::Error(tf::ErrorCode::kIoError, "cannot open '" + path + "' for writing");
  fn(out);
  out.flush();
  if (!out) throw tf::Error(tf::ErrorCode::kIoError, "write failed for '" + path + "'");
}

std::vector<tf::AxisBinning> parse_axes(const std::string& spec, const tf::AnalysisConfig& config,
                                        int skill_bin) {
  std::vector<tf::AxisBinning> axes;
  std::stringstream ss(spec);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name == "work_exp") {
      axes.push_back({tf::CohortAxis::kWorkExp, config.group_bin_width_years});
    } else if (name == "job_age") {
      axes.push_back({tf::CohortAxis::kJobAge, config.group_bin_width_years});
    } else if (name == "skill_count") {
      axes.push_back({tf::CohortAxis::kSkillCount, skill_bin});
    } else {
      throw tf::Error(tf::ErrorCode::kUsage, "unknown cohort axis '" + name + "'");
    }
  }
  if (axes.empty() || axes.size() > 2) {
    throw tf::Error(tf::ErrorCode::kUsage, "--axes takes one or two of work_exp,job_age,skill_count");
  }
  return axes;
}

struct GraphSource {
  std::string input;
  std::string graph_csv;
  std::string level = "job";
  bool distinct_users = false;
};

tf::HopGraph load_graph(const GraphSource& src, const tf::AnalysisConfig& config) {
  tf::GraphLevel level = tf::parse_graph_level(src.level);
  if (!src.graph_csv.empty()) return tf::import_edge_list(std::filesystem::path(src.graph_csv), level);
  if (src.input.empty()) throw tf::Error(tf::ErrorCode::kUsage, "one of --input or --graph is required");
  return tf::AnalysisRun::from_file(src.input, config).graph(level, src.distinct_users);
}

void add_graph_source(CLI::App* cmd, GraphSource& src) {
  auto* input = cmd->add_option("--input", src.input, "Profile corpus (JSON lines)");
  auto* graph = cmd->add_option("--graph", src.graph_csv, "Edge list CSV written by `graph build`");
  input->excludes(graph);
  cmd->add_option("--level", src.level, "job or org")->check(CLI::IsMember({"job", "org"}));
  cmd->add_flag("--distinct-users", src.distinct_users, "Count each user once per edge");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Job-hop analytics and talent-flow graphs"};
  app.require_subcommand(1);
  app.fallthrough();

  ConfigFlags flags;
  app.add_option("--config", flags.config_file, "JSON file with analysis settings");
  app.add_option("--min-support", flags.min_support, "Minimum supporting users per job/node (10)");
  app.add_option("--cohort-min-support", flags.cohort_min_support,
                 "Minimum hops per reported cohort cell (100)");
  app.add_option("--curr-date", flags.curr_date, "Analysis date YYYY-MM (2016-06)");
  app.add_option("--teleport", flags.teleport, "PageRank teleportation probability (0.15)");
  app.add_option("--bin-years", flags.bin_years, "Cohort bin width in years (5)");
  app.add_option("--pagerank-tol", flags.pagerank_tol, "PageRank L1 tolerance (1e-8)");
  app.add_option("--pagerank-max-iter", flags.pagerank_max_iter, "PageRank iteration cap (100)");

  std::function<void()> action;

  // ingest
  std::string ingest_input, ingest_out;
  auto* ingest = app.add_subcommand("ingest", "Validate a corpus and print ingestion counts");
  ingest->add_option("--input", ingest_input)->required();
  ingest->add_option("--out", ingest_out, "CSV path (default stdout)");
  ingest->callback([&] {
    action = [&] {
      auto run = tf::AnalysisRun::from_file(ingest_input, resolve_config(flags));
      emit(ingest_out, [&](std::ostream& o) { tf::write_summary_csv(o, run); });
    };
  });

  // hops
  std::string hops_input, hops_out;
  auto* hops = app.add_subcommand("hops", "Extract hops, one CSV row per hop");
  hops->add_option("--input", hops_input)->required();
  hops->add_option("--out", hops_out, "CSV path (default stdout)");
  hops->callback([&] {
    action = [&] {
      auto run = tf::AnalysisRun::from_file(hops_input, resolve_config(flags));
      emit(hops_out, [&](std::ostream& o) { tf::write_hops_csv(o, run.extraction.hops); });
    };
  });

  // metrics
  auto* metrics = app.add_subcommand("metrics", "Cohort, level and promotion tables");
  metrics->require_subcommand(1);
  std::string m_input, m_out, m_axes = "work_exp";
  int m_skill_bin = 10, m_stay_bin = 12;
  auto metric_cmd = [&](const char* name, const char* desc, std::function<void(const tf::AnalysisRun&, std::ostream&)> fn) {
    auto* cmd = metrics->add_subcommand(name, desc);
    cmd->add_option("--input", m_input)->required();
    cmd->add_option("--out", m_out, "CSV path (default stdout)");
    cmd->callback([&, fn] {
      action = [&, fn] {
        auto run = tf::AnalysisRun::from_file(m_input, resolve_config(flags));
        emit(m_out, [&](std::ostream& o) { fn(run, o); });
      };
    });
    return cmd;
  };
  auto* cohorts = metric_cmd("cohorts", "External hop fraction per cohort", [&](const tf::AnalysisRun& run, std::ostream& o) {
    auto axes = parse_axes(m_axes, run.config, m_skill_bin);
    std::string grouping;
    for (const auto& a : axes) grouping += (grouping.empty() ? "" : " x ") + std::string(tf::cohort_axis_name(a.axis));
    tf::write_cohorts_csv(o, run, {{grouping, axes}});
  });
  cohorts->add_option("--axes", m_axes, "Comma list of work_exp, job_age, skill_count");
  cohorts->add_option("--skill-bin", m_skill_bin, "Skill-count bin width (10)");
  metric_cmd("levels", "Job level per (title, organization)",
             [](const tf::AnalysisRun& run, std::ostream& o) { tf::write_job_levels_csv(o, run); });
  metric_cmd("jobs", "Mean work experience and job age per (title, industry)",
             [](const tf::AnalysisRun& run, std::ostream& o) { tf::write_job_metrics_csv(o, run); });
  metric_cmd("promotions", "Promotion/demotion counts by hop kind", [](const tf::AnalysisRun& run, std::ostream& o) {
    tf::write_promotion_table_csv(o, tf::promotion_summary(tf::level_gains(run.extraction.hops, run.index)));
  });
  auto* stay = metric_cmd("stay", "Promotion fraction by duration of stay", [&](const tf::AnalysisRun& run, std::ostream& o) {
    tf::write_stay_csv(o, tf::promotion_by_stay(tf::level_gains(run.extraction.hops, run.index), m_stay_bin,
                                                run.config.cohort_min_support));
  });
  stay->add_option("--bin-months", m_stay_bin, "Stay bin width in months (12)");

  // graph
  auto* graph = app.add_subcommand("graph", "Build and analyze talent-flow graphs");
  graph->require_subcommand(1);

  GraphSource build_src;
  std::string build_out, build_format = "csv";
  auto* build = graph->add_subcommand("build", "Write the job or organization graph");
  build->add_option("--input", build_src.input)->required();
  build->add_option("--level", build_src.level)->check(CLI::IsMember({"job", "org"}));
  build->add_flag("--distinct-users", build_src.distinct_users, "Count each user once per edge");
  build->add_option("--out", build_out)->required();
  build->add_option("--format", build_format)->check(CLI::IsMember({"csv", "dot", "graphml"}));
  build->callback([&] {
    action = [&] {
      auto g = load_graph(build_src, resolve_config(flags));
      tf::export_graph(g, tf::parse_graph_format(build_format), std::filesystem::path(build_out));
    };
  });

  GraphSource analyze_src;
  std::string analyze_metric = "pagerank", analyze_ccdf, analyze_out;
  std::size_t analyze_top = 20;
  auto* analyze = graph->add_subcommand("analyze", "Centrality ranking and CCDF");
  add_graph_source(analyze, analyze_src);
  analyze->add_option("--metric", analyze_metric)->check(CLI::IsMember({"indegree", "outdegree", "pagerank"}));
  analyze->add_option("--top", analyze_top, "Ranking length (20)")->check(CLI::PositiveNumber);
  analyze->add_option("--ccdf", analyze_ccdf, "Also write the CCDF to this CSV");
  analyze->add_option("--out", analyze_out, "Ranking CSV (default stdout)");
  analyze->callback([&] {
    action = [&] {
      auto config = resolve_config(flags);
      auto g = load_graph(analyze_src, config);
      auto table = tf::centrality(g, tf::parse_centrality_metric(analyze_metric), config);
      if (!table.converged) {
        std::cerr << "warning: NOT_CONVERGED after " << table.iterations << " iterations\n";
      }
      emit(analyze_out, [&](std::ostream& o) { tf::write_top_csv(o, tf::top_k(table, analyze_top)); });
      if (!analyze_ccdf.empty()) {
        emit(analyze_ccdf, [&](std::ostream& o) { tf::write_ccdf_csv(o, tf::centrality_ccdf(table)); });
      }
    };
  });

  GraphSource comp_src;
  std::string comp_out, comp_members;
  auto* components = graph->add_subcommand("components", "SCC/WCC summary");
  add_graph_source(components, comp_src);
  components->add_option("--out", comp_out, "Summary CSV (default stdout)");
  components->add_option("--members", comp_members, "Also write per-node component ids");
  components->callback([&] {
    action = [&] {
      auto g = load_graph(comp_src, resolve_config(flags));
      emit(comp_out, [&](std::ostream& o) { tf::write_graph_stats_csv(o, {g}); });
      if (!comp_members.empty()) emit(comp_members, [&](std::ostream& o) { tf::write_components_csv(o, g); });
    };
  });

  GraphSource pl_src;
  std::string pl_metric = "indegree", pl_out;
  auto* powerlaw = graph->add_subcommand("powerlaw", "Discrete power-law fit of a degree distribution");
  add_graph_source(powerlaw, pl_src);
  powerlaw->add_option("--metric", pl_metric)->check(CLI::IsMember({"indegree", "outdegree"}));
  powerlaw->add_option("--out", pl_out, "CSV (default stdout)");
  powerlaw->callback([&] {
    action = [&] {
      auto config = resolve_config(flags);
      auto g = load_graph(pl_src, config);
      auto table = tf::centrality(g, tf::parse_centrality_metric(pl_metric), config);
      std::vector<std::int64_t> values;
      for (double s : table.scores) {
        if (s >= 1.0) values.push_back(static_cast<std::int64_t>(s));
      }
      auto fit = tf::fit_power_law(values);
      emit(pl_out, [&](std::ostream& o) {
        tf::csv::Writer w(o);
        w.row({"metric", "alpha", "xmin", "ks_statistic", "n_tail"});
        w.field(pl_metric).field(fit.alpha).field(fit.xmin).field(fit.ks_statistic)
            .field(static_cast<std::uint64_t>(fit.n_tail)).end_row();
      });
    };
  });

  // synth
  std::string synth_spec, synth_out, synth_truth;
  std::optional<std::uint64_t> synth_seed;
  std::optional<std::size_t> synth_users;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus and ground-truth sidecar");
  synth->add_option("--spec", synth_spec, "Generator spec JSON (defaults if omitted)");
  synth->add_option("--out", synth_out)->required();
  synth->add_option("--truth", synth_truth)->required();
  synth->add_option("--seed", synth_seed, "Override the spec seed");
  synth->add_option("--n-users", synth_users, "Override the spec user count");
  synth->callback([&] {
    action = [&] {
      tf::GeneratorSpec spec = synth_spec.empty() ? tf::GeneratorSpec::from_json_text("{}")
                                                  : tf::GeneratorSpec::from_file(synth_spec);
      if (synth_seed) spec.seed = *synth_seed;
      if (synth_users) spec.n_users = *synth_users;
      tf::generate_to_files(spec, synth_out, synth_truth);
    };
  });

  // report-all
  std::string report_input, report_out_dir;
  auto* report = app.add_subcommand("report-all", "Run the full pipeline and write every report");
  report->add_option("--input", report_input)->required();
  report->add_option("--out-dir", report_out_dir)->envname("TALENTFLOW_OUT_DIR")->required();
  report->callback([&] {
    action = [&] { tf::report_all(report_input, report_out_dir, resolve_config(flags)); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "USAGE_ERROR: " << e.what() << "\n";
    return 2;
  }

  try {
    action();
  } catch (const tf::Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == tf::ErrorCode::kUsage ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "ERROR: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
