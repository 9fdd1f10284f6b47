#include "talentflow/hopgraph.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <tuple>

#include "talentflow/csv.hpp"
#include "talentflow/error.hpp"
#include "talentflow/metrics.hpp"

namespace talentflow {

std::string_view graph_level_name(GraphLevel level) {
  return level == GraphLevel::kJob ? "job" : "org";
}

GraphLevel parse_graph_level(std::string_view text) {
  if (text == "job") return GraphLevel::kJob;
  if (text == "org") return GraphLevel::kOrg;
  throw Error(ErrorCode::kUsage, "unknown graph level '" + std::string(text) + "'");
}

GraphFormat parse_graph_format(std::string_view text) {
  if (text == "csv") return GraphFormat::kCsvEdgeList;
  if (text == "dot") return GraphFormat::kDot;
  if (text == "graphml") return GraphFormat::kGraphMl;
  throw Error(ErrorCode::kUsage, "unknown graph format '" + std::string(text) + "'");
}

void HopGraph::add_node(const std::string& id, std::uint64_t support) {
  auto [it, inserted] = nodes_.emplace(id, support);
  if (!inserted && support > it->second) it->second = support;
}

void HopGraph::add_edge(const std::string& src, const std::string& dst, std::uint64_t weight) {
  nodes_.emplace(src, 0);
  nodes_.emplace(dst, 0);
  edges_[{src, dst}] += weight;
}

std::uint64_t HopGraph::weight(const std::string& src, const std::string& dst) const {
  auto it = edges_.find({src, dst});
  return it == edges_.end() ? 0 : it->second;
}

double HopGraph::sparsity() const {
  if (nodes_.empty()) return 0.0;
  const double n = static_cast<double>(nodes_.size());
  return static_cast<double>(edges_.size()) / (n * n);
}

std::uint64_t HopGraph::self_loop_weight() const {
  std::uint64_t total = 0;
  for (const auto& [e, w] : edges_) {
    if (e.first == e.second) total += w;
  }
  return total;
}

std::uint64_t HopGraph::total_weight() const {
  std::uint64_t total = 0;
  for (const auto& [e, w] : edges_) total += w;
  return total;
}

namespace {

std::string node_of(const JobRecord& j, GraphLevel level) {
  return level == GraphLevel::kJob ? JobKey::of(j).node_id() : j.organization;
}

}  // namespace

HopGraph build_graph(const std::vector<Hop>& hops, const std::vector<UserProfile>& profiles,
                     GraphLevel level, const GraphBuildOptions& options) {
  std::map<std::string, std::uint64_t> support;
  for (const auto& p : profiles) {
    std::set<std::string> held;
    for (const auto& j : p.jobs) held.insert(node_of(j, level));
    for (const auto& id : held) ++support[id];
  }

  HopGraph g(level);
  const auto threshold = static_cast<std::uint64_t>(options.min_support);
  for (const auto& [id, count] : support) {
    if (count >= threshold) g.add_node(id, count);
  }

  std::set<std::tuple<std::string, std::string, std::string>> counted;
  for (const auto& h : hops) {
    if (level == GraphLevel::kOrg && h.kind != HopKind::kExternal) continue;
    std::string src = node_of(h.source, level);
    std::string dst = node_of(h.dest, level);
    if (!g.has_node(src) || !g.has_node(dst)) continue;
    if (options.distinct_users && !counted.emplace(src, dst, h.user_id).second) continue;
    g.add_edge(src, dst, 1);
  }
  return g;
}

// ---------------------------------------------------------------------------

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv(const HopGraph& g, std::ostream& out) {
  csv::Writer w(out);
  w.row({"src", "dst", "weight"});
  for (const auto& [e, weight] : g.edges()) {
    w.field(e.first).field(e.second).field(weight).end_row();
  }
}

void write_dot(const HopGraph& g, std::ostream& out) {
  out << "digraph " << graph_level_name(g.level()) << "_graph {\n";
  for (const auto& [id, support] : g.node_support()) {
    out << "  " << dot_quote(id) << " [support=" << support << "];\n";
  }
  for (const auto& [e, weight] : g.edges()) {
    out << "  " << dot_quote(e.first) << " -> " << dot_quote(e.second) << " [weight=" << weight
        << "];\n";
  }
  out << "}\n";
}

void write_graphml(const HopGraph& g, std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"support\" for=\"node\" attr.name=\"support\" attr.type=\"long\"/>\n"
      << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n"
      << "  <graph id=\"" << graph_level_name(g.level()) << "\" edgedefault=\"directed\">\n";
  for (const auto& [id, support] : g.node_support()) {
    out << "    <node id=\"" << xml_escape(id) << "\"><data key=\"support\">" << support
        << "</data></node>\n";
  }
  for (const auto& [e, weight] : g.edges()) {
    out << "    <edge source=\"" << xml_escape(e.first) << "\" target=\"" << xml_escape(e.second)
        << "\"><data key=\"weight\">" << weight << "</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

}  // namespace

void export_graph(const HopGraph& g, GraphFormat format, std::ostream& out) {
  switch (format) {
    case GraphFormat::kCsvEdgeList: write_csv(g, out); break;
    case GraphFormat::kDot: write_dot(g, out); break;
    case GraphFormat::kGraphMl: write_graphml(g, out); break;
  }
}

void export_graph(const HopGraph& g, GraphFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "' for writing");
  export_graph(g, format, out);
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write failed for '" + path.string() + "'");
}

HopGraph import_edge_list(std::istream& in, GraphLevel level) {
  HopGraph g(level);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (csv::split_line(line) != std::vector<std::string>{"src", "dst", "weight"}) {
        throw Error(ErrorCode::kMalformed, "edge list header must be src,dst,weight");
      }
      continue;
    }
    if (line.empty()) continue;
    auto fields = csv::split_line(line);
    std::uint64_t weight = 0;
    if (fields.size() != 3) {
      throw Error(ErrorCode::kMalformed, "line " + std::to_string(line_no) + ": expected 3 fields");
    }
    const std::string& w = fields[2];
    auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), weight);
    if (ec != std::errc{} || ptr != w.data() + w.size() || weight == 0) {
      throw Error(ErrorCode::kMalformed, "line " + std::to_string(line_no) + ": bad weight");
    }
    g.add_edge(fields[0], fields[1], weight);
  }
  if (line_no == 0) throw Error(ErrorCode::kMalformed, "edge list is missing its header");
  return g;
}

HopGraph import_edge_list(const std::filesystem::path& path, GraphLevel level) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  return import_edge_list(in, level);
}

}  // namespace talentflow
