#include <map>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "talentflow/error.hpp"
#include "talentflow/hopgraph.hpp"
#include "talentflow/metrics.hpp"
#include "test_util.hpp"

using namespace talentflow;
using testutil::job;
using testutil::person;

namespace {

const DateMonth kCurr{2016, 6};

GraphBuildOptions opts(int min_support, bool distinct = false) { return {min_support, distinct}; }

std::vector<UserProfile> random_corpus(std::mt19937_64& rng, int users) {
  const char* titles[] = {"analyst", "engineer", "manager", "director"};
  const char* orgs[] = {"acme", "globex", "initech", "hooli", "umbrella"};
  std::uniform_int_distribution<int> nj(1, 5), pt(0, 3), po(0, 4), len(3, 40), gap(0, 4);
  std::vector<UserProfile> ps;
  for (int u = 0; u < users; ++u) {
    UserProfile p = person("u" + std::to_string(u), "2000-01", {});
    int at = DateMonth{2001, 1}.ordinal();
    for (int k = nj(rng); k > 0; --k) {
      const int end = at + len(rng);
      p.jobs.push_back({titles[pt(rng)], orgs[po(rng)], u % 2 ? "tech" : "fin", DateMonth::from_ordinal(at),
                        DateMonth::from_ordinal(end)});
      at = end + gap(rng);
    }
    ps.push_back(p);
  }
  return ps;
}

}  // namespace

TEST(BuildGraph, SelfLoopAndOrgEdge) {
  std::vector<UserProfile> ps = {person("u", "2009-01",
                                        {job("analyst", "acme", "fin", "2010-01", "2012-01"),
                                         job("analyst", "globex", "fin", "2012-01", "2014-01")})};
  auto hops = extract_all_hops(ps, kCurr).hops;
  ASSERT_EQ(hops.size(), 1u);

  auto jg = build_graph(hops, ps, GraphLevel::kJob, opts(1));
  EXPECT_EQ(jg.node_count(), 1u);
  EXPECT_EQ(jg.weight("analyst|fin", "analyst|fin"), 1u);
  EXPECT_EQ(jg.self_loop_weight(), 1u);

  auto og = build_graph(hops, ps, GraphLevel::kOrg, opts(1));
  EXPECT_EQ(og.node_count(), 2u);
  EXPECT_EQ(og.weight("acme", "globex"), 1u);
  EXPECT_EQ(og.edge_count(), 1u);
}

TEST(BuildGraph, NoHopsGivesNoEdges) {
  std::vector<UserProfile> ps = {person("u", "2009-01", {job("analyst", "acme", "fin", "2010-01", "2012-01")})};
  auto g = build_graph({}, ps, GraphLevel::kJob, opts(1));
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_EQ(g.node_count(), 1u);
  EXPECT_DOUBLE_EQ(g.sparsity(), 0.0);
  EXPECT_DOUBLE_EQ(HopGraph{}.sparsity(), 0.0);
}

TEST(BuildGraph, InternalHopsStayOutOfOrgGraph) {
  std::vector<UserProfile> ps = {person("u", "2009-01",
                                        {job("analyst", "acme", "fin", "2010-01", "2012-01"),
                                         job("manager", "acme", "fin", "2012-01", "2014-01")})};
  auto hops = extract_all_hops(ps, kCurr).hops;
  auto og = build_graph(hops, ps, GraphLevel::kOrg, opts(1));
  EXPECT_EQ(og.edge_count(), 0u);
  auto jg = build_graph(hops, ps, GraphLevel::kJob, opts(1));
  EXPECT_EQ(jg.weight("analyst|fin", "manager|fin"), 1u);
}

TEST(BuildGraph, WeightsMatchCountingOracle) {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 20; ++round) {
    auto ps = random_corpus(rng, 150);
    auto hops = extract_all_hops(ps, kCurr).hops;
    const int min_support = round % 2 == 0 ? 1 : 15;

    // support: distinct holders
    std::map<std::string, std::set<std::string>> job_holders, org_holders;
    for (const auto& p : ps) {
      for (const auto& j : p.jobs) {
        job_holders[j.title + "|" + j.industry].insert(p.user_id);
        org_holders[j.organization].insert(p.user_id);
      }
    }
    for (GraphLevel level : {GraphLevel::kJob, GraphLevel::kOrg}) {
      auto& holders = level == GraphLevel::kJob ? job_holders : org_holders;
      std::map<std::pair<std::string, std::string>, std::uint64_t> expected;
      std::map<std::pair<std::string, std::string>, std::set<std::string>> users;
      for (const auto& h : hops) {
        std::string s, d;
        if (level == GraphLevel::kJob) {
          s = h.source.title + "|" + h.source.industry;
          d = h.dest.title + "|" + h.dest.industry;
        } else {
          if (h.source.organization == h.dest.organization) continue;
          s = h.source.organization;
          d = h.dest.organization;
        }
        if (holders[s].size() < static_cast<std::size_t>(min_support) ||
            holders[d].size() < static_cast<std::size_t>(min_support))
          continue;
        ++expected[{s, d}];
        users[{s, d}].insert(h.user_id);
      }
      auto g = build_graph(hops, ps, level, opts(min_support));
      EXPECT_EQ(g.edges(), expected);
      auto gd = build_graph(hops, ps, level, opts(min_support, true));
      for (const auto& [e, w] : gd.edges()) EXPECT_EQ(w, users[e].size());
      for (const auto& [id, support] : g.node_support()) {
        EXPECT_EQ(support, holders[id].size());
        EXPECT_GE(support, static_cast<std::uint64_t>(min_support));
      }
      if (level == GraphLevel::kOrg) EXPECT_EQ(g.self_loop_weight(), 0u);
    }
  }
}

TEST(BuildGraph, RaisingMinSupportNeverGrowsTheGraph) {
  std::mt19937_64 rng(77);
  auto ps = random_corpus(rng, 400);
  auto hops = extract_all_hops(ps, kCurr).hops;
  for (GraphLevel level : {GraphLevel::kJob, GraphLevel::kOrg}) {
    auto prev = build_graph(hops, ps, level, opts(1));
    for (int s = 2; s <= 200; s += 7) {
      auto g = build_graph(hops, ps, level, opts(s));
      EXPECT_LE(g.node_count(), prev.node_count());
      EXPECT_LE(g.edge_count(), prev.edge_count());
      for (const auto& [id, sup] : g.node_support()) EXPECT_TRUE(prev.has_node(id));
      prev = g;
    }
  }
}

TEST(BuildGraph, DistinctUsersCountsEachPersonOnce) {
  std::vector<UserProfile> ps = {person("u", "2009-01",
                                        {job("a", "acme", "t", "2010-01", "2011-01"),
                                         job("a", "globex", "t", "2011-01", "2012-01"),
                                         job("a", "acme", "t", "2012-01", "2013-01"),
                                         job("a", "globex", "t", "2013-01", "2014-01")})};
  auto hops = extract_all_hops(ps, kCurr).hops;
  EXPECT_EQ(build_graph(hops, ps, GraphLevel::kOrg, opts(1)).weight("acme", "globex"), 2u);
  EXPECT_EQ(build_graph(hops, ps, GraphLevel::kOrg, opts(1, true)).weight("acme", "globex"), 1u);
}

TEST(ExportGraph, CsvEdgeList) {
  HopGraph g;
  g.add_edge("b", "a", 2);
  g.add_edge("a", "b", 3);
  g.add_node("c", 4);
  std::ostringstream out;
  export_graph(g, GraphFormat::kCsvEdgeList, out);
  EXPECT_EQ(out.str(), "src,dst,weight\na,b,3\nb,a,2\n");

  std::ostringstream empty;
  export_graph(HopGraph{}, GraphFormat::kCsvEdgeList, empty);
  EXPECT_EQ(empty.str(), "src,dst,weight\n");
}

TEST(ExportGraph, QuotesLabelsWithCommas) {
  HopGraph g;
  g.add_edge("analyst|acme, inc", "x", 1);
  std::ostringstream out;
  export_graph(g, GraphFormat::kCsvEdgeList, out);
  EXPECT_EQ(out.str(), "src,dst,weight\n\"analyst|acme, inc\",x,1\n");
  std::istringstream in(out.str());
  EXPECT_EQ(import_edge_list(in).weight("analyst|acme, inc", "x"), 1u);
}

TEST(ExportGraph, DotAndGraphMl) {
  HopGraph g;
  g.add_node("a", 12);
  g.add_edge("a", "b", 3);
  std::ostringstream dot, gml;
  export_graph(g, GraphFormat::kDot, dot);
  export_graph(g, GraphFormat::kGraphMl, gml);
  EXPECT_EQ(dot.str().rfind("digraph", 0), 0u);
  EXPECT_NE(dot.str().find("\"a\" -> \"b\""), std::string::npos);
  EXPECT_NE(dot.str().find("weight=3"), std::string::npos);
  EXPECT_NE(gml.str().find("<graphml"), std::string::npos);
  EXPECT_NE(gml.str().find("source=\"a\" target=\"b\""), std::string::npos);
}

TEST(ImportEdgeList, RoundTripPreservesEdges) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 30; ++i) {
    auto g = oracle::random_graph(rng, 15, 0.3);
    std::ostringstream out;
    export_graph(g, GraphFormat::kCsvEdgeList, out);
    std::istringstream in(out.str());
    auto back = import_edge_list(in);
    EXPECT_EQ(back.edges(), g.edges());
  }
}

TEST(ImportEdgeList, RejectsBadInput) {
  for (const char* text : {"from,to,w\na,b,1\n", "src,dst,weight\na,b\n", "src,dst,weight\na,b,0\n",
                           "src,dst,weight\na,b,x\n", "src,dst,weight\n\"a,b,1\n"}) {
    std::istringstream in(text);
    try {
      import_edge_list(in);
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kMalformed) << text;
    }
  }
  EXPECT_THROW(import_edge_list(std::filesystem::path("/nonexistent/g.csv")), Error);
}

TEST(GraphOptions, Parsers) {
  EXPECT_EQ(parse_graph_level("job"), GraphLevel::kJob);
  EXPECT_EQ(parse_graph_level("org"), GraphLevel::kOrg);
  EXPECT_EQ(parse_graph_format("graphml"), GraphFormat::kGraphMl);
  EXPECT_THROW(parse_graph_level("team"), Error);
  EXPECT_THROW(parse_graph_format("png"), Error);
}
