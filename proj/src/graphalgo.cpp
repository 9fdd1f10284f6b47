#include "talentflow/graphalgo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "talentflow/error.hpp"

namespace talentflow {

Digraph Digraph::from(const HopGraph& g) {
  Digraph d;
  d.ids.reserve(g.node_count());
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& [id, support] : g.node_support()) {
    index.emplace(id, d.ids.size());
    d.ids.push_back(id);
  }
  d.out.resize(d.ids.size());
  // edges() is ordered by (src, dst), so each list comes out sorted
  for (const auto& [e, w] : g.edges()) {
    d.out[index.at(e.first)].push_back({index.at(e.second), static_cast<double>(w)});
  }
  return d;
}

std::string_view centrality_metric_name(CentralityMetric metric) {
  switch (metric) {
    case CentralityMetric::kInDegree: return "indegree";
    case CentralityMetric::kOutDegree: return "outdegree";
    case CentralityMetric::kPageRank: return "pagerank";
  }
  return "?";
}

CentralityMetric parse_centrality_metric(std::string_view text) {
  if (text == "indegree") return CentralityMetric::kInDegree;
  if (text == "outdegree") return CentralityMetric::kOutDegree;
  if (text == "pagerank") return CentralityMetric::kPageRank;
  throw Error(ErrorCode::kUsage, "unknown centrality metric '" + std::string(text) + "'");
}

double CentralityTable::score(const std::string& id) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
  if (it == nodes.end() || *it != id) return 0.0;
  return scores[static_cast<std::size_t>(it - nodes.begin())];
}

namespace {

CentralityTable make_table(CentralityMetric metric, std::vector<std::string> nodes,
                           std::vector<double> scores) {
  CentralityTable t;
  t.metric = metric;
  t.nodes = std::move(nodes);
  t.scores = std::move(scores);
  t.ranking.resize(t.nodes.size());
  std::iota(t.ranking.begin(), t.ranking.end(), std::size_t{0});
  // nodes are already sorted by id, so a stable sort on score breaks ties by id
  std::stable_sort(t.ranking.begin(), t.ranking.end(),
                   [&](std::size_t a, std::size_t b) { return t.scores[a] > t.scores[b]; });
  return t;
}

}  // namespace

CentralityTable degree_centrality(const HopGraph& g, Direction direction) {
  Digraph d = Digraph::from(g);
  std::vector<double> deg(d.size(), 0.0);
  for (std::size_t u = 0; u < d.size(); ++u) {
    for (const auto& arc : d.out[u]) {
      if (direction == Direction::kOut) {
        deg[u] += 1.0;
      } else {
        deg[arc.target] += 1.0;
      }
    }
  }
  return make_table(direction == Direction::kIn ? CentralityMetric::kInDegree
                                                : CentralityMetric::kOutDegree,
                    std::move(d.ids), std::move(deg));
}

CentralityTable weighted_pagerank(const HopGraph& g, const AnalysisConfig& config) {
  config.validate();
  Digraph d = Digraph::from(g);
  const std::size_t n = d.size();
  if (n == 0) throw Error(ErrorCode::kValidation, "pagerank needs at least one node");

  const double jump = config.teleport_prob;
  const double follow = 1.0 - jump;
  const double inv_n = 1.0 / static_cast<double>(n);

  std::vector<double> out_weight(n, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    for (const auto& arc : d.out[u]) out_weight[u] += arc.weight;
  }

  std::vector<double> rank(n, inv_n);
  std::vector<double> next(n);
  std::size_t iterations = 0;
  bool converged = false;
  while (iterations < static_cast<std::size_t>(config.pagerank_max_iter)) {
    std::fill(next.begin(), next.end(), 0.0);
    double dangling = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      if (out_weight[u] == 0.0) {
        dangling += rank[u];
        continue;
      }
      const double share = follow * rank[u] / out_weight[u];
      for (const auto& arc : d.out[u]) next[arc.target] += share * arc.weight;
    }
    const double base = (jump + follow * dangling) * inv_n;
    double total = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      next[v] += base;
      total += next[v];
    }
    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      next[v] /= total;
      change += std::abs(next[v] - rank[v]);
    }
    rank.swap(next);
    ++iterations;
    if (change < config.pagerank_tol) {
      converged = true;
      break;
    }
  }

  CentralityTable t = make_table(CentralityMetric::kPageRank, std::move(d.ids), std::move(rank));
  t.iterations = iterations;
  t.converged = converged;
  return t;
}

// ---------------------------------------------------------------------------

double ComponentReport::largest_fraction() const {
  return node_count == 0 ? 0.0
                         : static_cast<double>(largest_size) / static_cast<double>(node_count);
}

double ComponentReport::second_fraction() const {
  return node_count == 0 ? 0.0
                         : static_cast<double>(second_size) / static_cast<double>(node_count);
}

namespace {

// Iterative Tarjan; returns a raw component label per node.
std::vector<std::size_t> strong_labels(const Digraph& d) {
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  const std::size_t n = d.size();
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), label(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // (node, next arc)
  std::size_t counter = 0;
  std::size_t components = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [u, next_arc] = call.back();
      if (next_arc < d.out[u].size()) {
        std::size_t v = d.out[u][next_arc++].target;
        if (index[v] == kUnvisited) {
          index[v] = low[v] = counter++;
          stack.push_back(v);
          on_stack[v] = true;
          call.emplace_back(v, 0);
        } else if (on_stack[v]) {
          low[u] = std::min(low[u], index[v]);
        }
        continue;
      }
      const std::size_t done = u;
      call.pop_back();
      if (!call.empty()) {
        std::size_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          label[w] = components;
        } while (w != done);
        ++components;
      }
    }
  }
  return label;
}

std::vector<std::size_t> weak_labels(const Digraph& d) {
  std::vector<std::size_t> parent(d.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t u = 0; u < d.size(); ++u) {
    for (const auto& arc : d.out[u]) {
      std::size_t a = find(u), b = find(arc.target);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::size_t> label(d.size());
  for (std::size_t u = 0; u < d.size(); ++u) label[u] = find(u);
  return label;
}

}  // namespace

ComponentReport connected_components(const HopGraph& g, ComponentMode mode) {
  Digraph d = Digraph::from(g);
  std::vector<std::size_t> raw = mode == ComponentMode::kStrong ? strong_labels(d) : weak_labels(d);

  ComponentReport r;
  r.mode = mode;
  r.node_count = d.size();
  r.membership.resize(d.size());
  std::unordered_map<std::size_t, std::size_t> renumber;
  std::vector<std::size_t> sizes;
  for (std::size_t u = 0; u < d.size(); ++u) {
    auto [it, inserted] = renumber.emplace(raw[u], sizes.size());
    if (inserted) sizes.push_back(0);
    r.membership[u] = it->second;
    ++sizes[it->second];
  }
  r.component_count = sizes.size();
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  if (!sizes.empty()) r.largest_size = sizes[0];
  if (sizes.size() > 1) r.second_size = sizes[1];
  return r;
}

// ---------------------------------------------------------------------------

double hurwitz_zeta(double s, double q) {
  // Euler-Maclaurin summation with N direct terms and six Bernoulli corrections.
  constexpr int kDirect = 10;
  static constexpr double kBernoulli[] = {1.0 / 6.0,   -1.0 / 30.0, 1.0 / 42.0,
                                          -1.0 / 30.0, 5.0 / 66.0,  -691.0 / 2730.0};
  double sum = 0.0;
  for (int k = 0; k < kDirect; ++k) sum += std::pow(q + k, -s);
  const double a = q + kDirect;
  sum += std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
  double rising = s;         // s (s+1) ... (s+2j-2)
  double factorial = 2.0;    // (2j)!
  double power = std::pow(a, -s - 1.0);
  for (int j = 1; j <= 6; ++j) {
    sum += kBernoulli[j - 1] / factorial * rising * power;
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
    factorial *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    power /= a * a;
  }
  return sum;
}

namespace {

// Maximizes the discrete log-likelihood -alpha * sum(ln x) - n * ln zeta(alpha, xmin),
// which is concave in alpha, by golden-section search.
double discrete_mle(double log_sum, std::size_t n, double xmin) {
  const double count = static_cast<double>(n);
  auto loglik = [&](double a) { return -a * log_sum - count * std::log(hurwitz_zeta(a, xmin)); };
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 1.0 + 1e-9, hi = 20.0;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = loglik(x1), f2 = loglik(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = loglik(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = loglik(x1);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

PowerLawFit fit_power_law(const std::vector<std::int64_t>& values) {
  constexpr std::size_t kMinTail = 10;
  for (auto v : values) {
    if (v < 1) throw Error(ErrorCode::kValidation, "power-law values must be >= 1");
  }
  std::vector<std::int64_t> x = values;
  std::sort(x.begin(), x.end());
  const std::size_t n = x.size();

  // distinct values with their first position and log-sum of the suffix
  std::vector<std::int64_t> distinct;
  std::vector<std::size_t> first_pos;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || x[i] != x[i - 1]) {
      distinct.push_back(x[i]);
      first_pos.push_back(i);
    }
  }
  std::vector<double> log_suffix(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) log_suffix[i] = log_suffix[i + 1] + std::log(double(x[i]));

  bool found = false;
  PowerLawFit best;
  for (std::size_t c = 0; c + 1 < distinct.size(); ++c) {
    const std::size_t tail = n - first_pos[c];
    if (tail < kMinTail) break;
    const double xmin = static_cast<double>(distinct[c]);
    const double alpha = discrete_mle(log_suffix[first_pos[c]], tail, xmin);

    const double norm = hurwitz_zeta(alpha, xmin);
    auto model_cdf = [&](std::int64_t v) {
      return 1.0 - hurwitz_zeta(alpha, static_cast<double>(v) + 1.0) / norm;
    };
    double ks = 0.0;
    for (std::size_t k = c; k < distinct.size(); ++k) {
      const std::size_t below_next = k + 1 < distinct.size() ? first_pos[k + 1] : n;
      const double emp = static_cast<double>(below_next - first_pos[c]) / static_cast<double>(tail);
      ks = std::max(ks, std::abs(emp - model_cdf(distinct[k])));
      if (k + 1 < distinct.size() && distinct[k + 1] - 1 > distinct[k]) {
        ks = std::max(ks, std::abs(emp - model_cdf(distinct[k + 1] - 1)));
      }
    }
    if (!found || ks < best.ks_statistic) {
      best = PowerLawFit{alpha, distinct[c], ks, tail};
      found = true;
    }
  }
  if (!found) {
    throw Error(ErrorCode::kInsufficientTail,
                "no xmin leaves at least 10 tail values with more than one distinct value");
  }
  return best;
}

std::vector<std::pair<double, double>> centrality_ccdf(const CentralityTable& table) {
  if (table.scores.empty()) throw Error(ErrorCode::kValidation, "ccdf of an empty table");
  std::vector<double> s = table.scores;
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i == 0 || s[i] != s[i - 1]) out.emplace_back(s[i], static_cast<double>(s.size() - i) / n);
  }
  return out;
}

std::vector<std::pair<std::string, double>> top_k(const CentralityTable& table, std::size_t k) {
  if (k < 1) throw Error(ErrorCode::kValidation, "top-k needs k >= 1");
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < std::min(k, table.ranking.size()); ++i) {
    std::size_t idx = table.ranking[i];
    out.emplace_back(table.nodes[idx], table.scores[idx]);
  }
  return out;
}

}  // namespace talentflow
