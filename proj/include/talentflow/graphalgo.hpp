#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "talentflow/hopgraph.hpp"
#include "talentflow/profile.hpp"

namespace talentflow {

/// Index-based view of a HopGraph: node i is the i-th id in sorted order and
/// each adjacency list is sorted by target.
struct Digraph {
  struct Arc {
    std::size_t target;
    double weight;
  };

  std::vector<std::string> ids;
  std::vector<std::vector<Arc>> out;

  static Digraph from(const HopGraph& g);
  std::size_t size() const { return ids.size(); }
};

enum class CentralityMetric { kInDegree, kOutDegree, kPageRank };

std::string_view centrality_metric_name(CentralityMetric metric);  // indegree/outdegree/pagerank
CentralityMetric parse_centrality_metric(std::string_view text);

struct CentralityTable {
  CentralityMetric metric = CentralityMetric::kInDegree;
  std::vector<std::string> nodes;  // sorted ids
  std::vector<double> scores;      // parallel to nodes
  /// Indices into `nodes`, score descending, ties by id.
  std::vector<std::size_t> ranking;
  // PageRank only
  std::size_t iterations = 0;
  bool converged = true;

  double score(const std::string& id) const;
};

enum class Direction { kIn, kOut };

/// Number of distinct in- (out-) neighbours, ignoring weights.
CentralityTable degree_centrality(const HopGraph& g, Direction direction);

/// Power iteration on the row-normalized weight matrix with uniform
/// teleportation (config.teleport_prob) and uniform redistribution of
/// dangling mass. Stops when the L1 change drops below config.pagerank_tol;
/// `converged` is false if config.pagerank_max_iter is reached first.
CentralityTable weighted_pagerank(const HopGraph& g, const AnalysisConfig& config);

enum class ComponentMode { kStrong, kWeak };

struct ComponentReport {
  ComponentMode mode = ComponentMode::kStrong;
  std::size_t node_count = 0;
  std::size_t component_count = 0;
  std::size_t largest_size = 0;
  std::size_t second_size = 0;
  /// Component id per node, in sorted-id order; ids number components by
  /// their smallest member.
  std::vector<std::size_t> membership;

  double largest_fraction() const;
  double second_fraction() const;
};

ComponentReport connected_components(const HopGraph& g, ComponentMode mode);

struct PowerLawFit {
  double alpha = 0;
  std::int64_t xmin = 1;
  double ks_statistic = 0;
  std::size_t n_tail = 0;
};

/// Hurwitz zeta sum_{k>=0} (q+k)^-s for s > 1, q > 0.
double hurwitz_zeta(double s, double q);

/// Discrete power-law fit: for every candidate xmin with at least 10 tail
/// values (and more than one distinct value), alpha maximizes the discrete
/// likelihood x^-alpha / zeta(alpha, xmin) over the tail; the xmin whose
/// fitted model has the smallest KS distance to the empirical tail wins. Throws Error(kInsufficientTail) when no candidate qualifies and
/// Error(kValidation) on values < 1.
PowerLawFit fit_power_law(const std::vector<std::int64_t>& values);

/// (value, fraction of nodes with score >= value) for each distinct score,
/// ascending. Throws Error(kValidation) on an empty table.
std::vector<std::pair<double, double>> centrality_ccdf(const CentralityTable& table);

/// The first k entries of the ranking as (id, score). k > |V| yields all.
std::vector<std::pair<std::string, double>> top_k(const CentralityTable& table, std::size_t k);

}  // namespace talentflow
