#pragma once

// Independent reference implementations used only by tests. None of these
// call into the library code paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "talentflow/hopgraph.hpp"
#include "talentflow/hops.hpp"
#include "talentflow/profile.hpp"

namespace oracle {

using talentflow::DateMonth;
using talentflow::HopGraph;
using talentflow::JobRecord;
using talentflow::UserProfile;

inline int month_index(DateMonth d) { return d.year * 12 + d.month - 1; }

struct OracleHop {
  JobRecord source;
  JobRecord dest;
  bool external;
  int stay;
};

// Sorts with an insertion sort over explicit field comparisons, then checks
// every adjacent pair against the three hop predicates.
inline std::vector<OracleHop> brute_force_hops(const UserProfile& p, DateMonth curr) {
  std::vector<JobRecord> jobs;
  for (JobRecord j : p.jobs) {
    if (!j.end) j.end = curr;
    if (month_index(*j.end) < month_index(j.start)) continue;
    jobs.push_back(j);
  }
  auto before = [](const JobRecord& a, const JobRecord& b) {
    if (month_index(a.start) != month_index(b.start)) return month_index(a.start) < month_index(b.start);
    if (month_index(*a.end) != month_index(*b.end)) return month_index(*a.end) < month_index(*b.end);
    if (a.title != b.title) return a.title < b.title;
    if (a.organization != b.organization) return a.organization < b.organization;
    return a.industry < b.industry;
  };
  for (std::size_t i = 1; i < jobs.size(); ++i) {
    for (std::size_t k = i; k > 0 && before(jobs[k], jobs[k - 1]); --k) std::swap(jobs[k], jobs[k - 1]);
  }
  std::vector<OracleHop> out;
  for (std::size_t i = 0; i + 1 < jobs.size(); ++i) {
    const JobRecord& s = jobs[i];
    const JobRecord& d = jobs[i + 1];
    const bool non_overlapping = month_index(d.start) >= month_index(*s.end);
    const bool external = s.organization != d.organization;
    const bool internal = s.organization == d.organization && s.title != d.title;
    if (non_overlapping && (external || internal)) {
      out.push_back({s, d, external, month_index(*s.end) - month_index(s.start)});
    }
  }
  return out;
}

// Random graph with node ids "n00".."nNN" and weights in [1, max_weight].
inline HopGraph random_graph(std::mt19937_64& rng, int max_nodes, double edge_prob,
                             int max_weight = 5, bool self_loops = true) {
  std::uniform_int_distribution<int> size_dist(1, max_nodes);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> weight_dist(1, max_weight);
  const int n = size_dist(rng);
  HopGraph g;
  auto id = [](int i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "n%02d", i);
    return std::string(buf);
  };
  for (int i = 0; i < n; ++i) g.add_node(id(i), 1);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v && !self_loops) continue;
      if (coin(rng) < edge_prob) g.add_edge(id(u), id(v), static_cast<std::uint64_t>(weight_dist(rng)));
    }
  }
  return g;
}

inline std::vector<std::string> node_ids(const HopGraph& g) {
  std::vector<std::string> ids;
  for (const auto& [id, s] : g.node_support()) ids.push_back(id);
  return ids;
}

// Dense weight matrix in sorted-id order.
inline std::vector<std::vector<double>> dense_weights(const HopGraph& g) {
  auto ids = node_ids(g);
  std::map<std::string, std::size_t> at;
  for (std::size_t i = 0; i < ids.size(); ++i) at[ids[i]] = i;
  std::vector<std::vector<double>> w(ids.size(), std::vector<double>(ids.size(), 0.0));
  for (const auto& [e, weight] : g.edges()) w[at[e.first]][at[e.second]] = static_cast<double>(weight);
  return w;
}

// Solves A x = b with Gaussian elimination and partial pivoting.
inline std::vector<double> solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

// PageRank as the solution of (I - (1-t) S^T) r = (t/n) 1, where S is the
// row-stochastic matrix with dangling rows replaced by the uniform row.
inline std::vector<double> dense_pagerank(const HopGraph& g, double teleport) {
  auto w = dense_weights(g);
  const std::size_t n = w.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (std::size_t u = 0; u < n; ++u) {
    double row = 0.0;
    for (double x : w[u]) row += x;
    for (std::size_t v = 0; v < n; ++v) {
      const double s = row > 0.0 ? w[u][v] / row : 1.0 / static_cast<double>(n);
      a[v][u] -= (1.0 - teleport) * s;  // transpose
    }
  }
  for (std::size_t i = 0; i < n; ++i) a[i][i] += 1.0;
  return solve(a, std::vector<double>(n, teleport / static_cast<double>(n)));
}

// Reachability closure (Floyd-Warshall on booleans), reflexive.
inline std::vector<std::vector<bool>> closure(const HopGraph& g, bool undirected) {
  auto w = dense_weights(g);
  const std::size_t n = w.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t u = 0; u < n; ++u) {
    r[u][u] = true;
    for (std::size_t v = 0; v < n; ++v) {
      if (w[u][v] > 0) {
        r[u][v] = true;
        if (undirected) r[v][u] = true;
      }
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = true;
  return r;
}

// Partition as a set of member sets: u, v share a block iff mutually reachable.
inline std::set<std::set<std::size_t>> closure_partition(const HopGraph& g, bool weak) {
  auto r = closure(g, weak);
  std::set<std::set<std::size_t>> blocks;
  for (std::size_t u = 0; u < r.size(); ++u) {
    std::set<std::size_t> block;
    for (std::size_t v = 0; v < r.size(); ++v) {
      if (r[u][v] && r[v][u]) block.insert(v);
    }
    blocks.insert(block);
  }
  return blocks;
}

inline std::set<std::set<std::size_t>> partition_of(const std::vector<std::size_t>& membership) {
  std::map<std::size_t, std::set<std::size_t>> by;
  for (std::size_t u = 0; u < membership.size(); ++u) by[membership[u]].insert(u);
  std::set<std::set<std::size_t>> blocks;
  for (auto& [k, b] : by) blocks.insert(b);
  return blocks;
}

// Exact discrete power-law sampler: P(x) = x^-alpha / zeta(alpha, xmin).
// The CDF is tabulated by direct summation up to `table_max`; the remaining
// tail mass (< 1e-9 for the parameters used) is drawn from the continuous
// approximation.
class DiscretePowerLaw {
 public:
  DiscretePowerLaw(double alpha, std::int64_t xmin, std::int64_t table_max = 2'000'000)
      : alpha_(alpha), xmin_(xmin) {
    double total = 0.0;
    std::vector<double> mass;
    for (std::int64_t x = xmin; x <= table_max; ++x) {
      mass.push_back(std::pow(static_cast<double>(x), -alpha));
    }
    // tail beyond table_max by the integral approximation
    const double big = static_cast<double>(table_max) + 0.5;
    const double tail = std::pow(big, 1.0 - alpha) / (alpha - 1.0);
    for (auto it = mass.rbegin(); it != mass.rend(); ++it) total += *it;  // small first
    total += tail;
    cdf_.reserve(mass.size());
    double run = 0.0;
    for (double m : mass) {
      run += m;
      cdf_.push_back(run / total);
    }
    table_max_ = table_max;
  }

  std::int64_t operator()(std::mt19937_64& rng) const {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    if (it != cdf_.end()) return xmin_ + (it - cdf_.begin());
    // continuous tail beyond the table
    const double v = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double big = static_cast<double>(table_max_) + 0.5;
    return static_cast<std::int64_t>(std::floor(big * std::pow(1.0 - v, -1.0 / (alpha_ - 1.0)) + 0.5));
  }

 private:
  double alpha_;
  std::int64_t xmin_;
  std::int64_t table_max_ = 0;
  std::vector<double> cdf_;
};

// Directed preferential attachment (Price model): each new node sends
// `out_edges` edges to existing nodes chosen with probability proportional to
// in-degree + 1.
inline HopGraph price_graph(std::mt19937_64& rng, int nodes, int out_edges) {
  HopGraph g;
  std::vector<int> targets_pool;  // node i appears (in-degree + 1) times
  auto id = [](int i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "v%06d", i);
    return std::string(buf);
  };
  for (int i = 0; i < nodes; ++i) {
    g.add_node(id(i), 1);
    if (i > 0) {
      std::set<int> chosen;
      const int want = std::min(out_edges, i);
      while (static_cast<int>(chosen.size()) < want) {
        std::uniform_int_distribution<std::size_t> pick(0, targets_pool.size() - 1);
        chosen.insert(targets_pool[pick(rng)]);
      }
      for (int t : chosen) {
        g.add_edge(id(i), id(t), 1);
        targets_pool.push_back(t);
      }
    }
    targets_pool.push_back(i);
  }
  return g;
}

}  // namespace oracle
