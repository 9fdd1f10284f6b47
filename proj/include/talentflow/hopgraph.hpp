#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "talentflow/hops.hpp"
#include "talentflow/profile.hpp"

namespace talentflow {

enum class GraphLevel { kJob, kOrg };
enum class GraphFormat { kCsvEdgeList, kDot, kGraphMl };

std::string_view graph_level_name(GraphLevel level);  // "job" / "org"
GraphLevel parse_graph_level(std::string_view text);
GraphFormat parse_graph_format(std::string_view text);

/// Weighted directed talent-flow graph. Nodes are job ids ("title|industry")
/// or organization names; ordered containers keep every traversal sorted.
class HopGraph {
 public:
  using Edge = std::pair<std::string, std::string>;

  explicit HopGraph(GraphLevel level = GraphLevel::kJob) : level_(level) {}

  GraphLevel level() const { return level_; }

  void add_node(const std::string& id, std::uint64_t support = 0);
  /// Adds `weight` to edge src->dst, creating missing endpoints.
  void add_edge(const std::string& src, const std::string& dst, std::uint64_t weight = 1);

  bool has_node(const std::string& id) const { return nodes_.count(id) != 0; }
  std::uint64_t weight(const std::string& src, const std::string& dst) const;

  const std::map<std::string, std::uint64_t>& node_support() const { return nodes_; }
  const std::map<Edge, std::uint64_t>& edges() const { return edges_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  /// |E| / |V|^2; 0 for an empty graph.
  double sparsity() const;
  /// Total weight on src == dst edges.
  std::uint64_t self_loop_weight() const;
  std::uint64_t total_weight() const;

  bool operator==(const HopGraph&) const = default;

 private:
  GraphLevel level_;
  std::map<std::string, std::uint64_t> nodes_;
  std::map<Edge, std::uint64_t> edges_;
};

struct GraphBuildOptions {
  int min_support = 10;
  /// Count each user at most once per edge instead of once per hop.
  bool distinct_users = false;
};

/// Builds the job or organization graph. Node support is the number of
/// distinct profiles in `profiles` holding the job/organization; nodes under
/// `min_support` are removed together with their edges, in one pass.
/// Job level: every hop adds to (source JobKey -> dest JobKey), so an
/// external move keeping title and industry is a self-loop. Org level: only
/// external hops, (source org -> dest org).
HopGraph build_graph(const std::vector<Hop>& hops, const std::vector<UserProfile>& profiles,
                     GraphLevel level, const GraphBuildOptions& options);

void export_graph(const HopGraph& g, GraphFormat format, std::ostream& out);
/// Throws Error(kIoError) on open/write failure.
void export_graph(const HopGraph& g, GraphFormat format, const std::filesystem::path& path);

/// Reads the "src,dst,weight" CSV edge list written by export_graph.
/// Throws Error(kMalformed) on a bad row.
HopGraph import_edge_list(std::istream& in, GraphLevel level = GraphLevel::kJob);
HopGraph import_edge_list(const std::filesystem::path& path, GraphLevel level = GraphLevel::kJob);

}  // namespace talentflow
