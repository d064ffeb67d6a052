#include "manet/random_graph_mc.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "parallel.hpp"

namespace manet {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  // two rounds: first mixes the stream id into the master, second the index
  return splitmix64(splitmix64(master ^ (0xA24BAED4963EE407ULL * (stream + 1))) +
                    0x9E3779B97F4A7C15ULL * (index + 1));
}

void GraphSequenceParams::validate() const {
  if (n < 2) throw std::invalid_argument("GraphSequenceParams: n must be >= 2");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("GraphSequenceParams: p must be in [0,1]");
  if (!(w > 0.0)) throw std::invalid_argument("GraphSequenceParams: w must be > 0");
  if (epoch_cap < 1) throw std::invalid_argument("GraphSequenceParams: epoch_cap must be >= 1");
}

bool EdgeGraph::has_edge(int i, int j) const {
  const auto& a = adj[i].size() <= adj[j].size() ? adj[i] : adj[j];
  const int other = adj[i].size() <= adj[j].size() ? j : i;
  return std::find(a.begin(), a.end(), other) != a.end();
}

namespace {

inline double u01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

inline void add_edge(EdgeGraph& g, int i, int j) {
  g.adj[i].push_back(j);
  g.adj[j].push_back(i);
  ++g.edge_count;
}

}  // namespace

EdgeGraph sample_epoch(int n, double p, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("sample_epoch: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_epoch: p must be in [0,1]");

  EdgeGraph g;
  g.n = n;
  g.adj.assign(n, {});
  if (p == 0.0) return g;

  if (p == 1.0) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) add_edge(g, i, j);
    return g;
  }

  if (p >= 0.1) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (u01(rng) < p) add_edge(g, i, j);
    return g;
  }

  // sparse case: geometric skips over the C(n,2) pair indices
  const double log1mp = std::log1p(-p);
  const std::size_t total = std::size_t(n) * std::size_t(n - 1) / 2;
  std::size_t k = 0;
  int row = 0;
  std::size_t row_start = 0;          // pair index of (row, row+1)
  std::size_t row_len = std::size_t(n - 1);
  while (true) {
    const double u = 1.0 - u01(rng);  // u in (0, 1]
    k += std::size_t(std::floor(std::log(u) / log1mp));
    if (k >= total) break;
    while (k >= row_start + row_len) {
      row_start += row_len;
      --row_len;
      ++row;
    }
    add_edge(g, row, row + 1 + int(k - row_start));
    ++k;
  }
  return g;
}

EdgeGraph sample_epoch(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_epoch(n, p, rng);
}

std::optional<int> shortest_path_length(const EdgeGraph& g, int s, int t) {
  if (s == t) throw std::invalid_argument("shortest_path_length: s must differ from t");
  if (s < 0 || s >= g.n || t < 0 || t >= g.n)
    throw std::out_of_range("shortest_path_length: node index");

  std::vector<int> dist(g.n, -1);
  std::deque<int> queue{s};
  dist[s] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : g.adj[u]) {
      if (dist[v] >= 0) continue;
      dist[v] = dist[u] + 1;
      if (v == t) return dist[v];
      queue.push_back(v);
    }
  }
  return std::nullopt;
}

namespace {

constexpr std::uint64_t kWaitStream = 0x77616974;   // "wait"
constexpr std::uint64_t kFlashStream = 0x666c6173;  // "flas"
constexpr std::uint64_t kGapStream = 0x676170;      // "gap"

McEstimate estimate_from(const std::vector<double>& xs) {
  McEstimate e;
  e.trials = (long long)xs.size();
  if (xs.empty()) return e;
  double sum = 0.0;
  for (double x : xs) sum += x;
  e.mean = sum / double(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - e.mean) * (x - e.mean);
    e.std_error = std::sqrt(ss / double(xs.size() - 1) / double(xs.size()));
  }
  return e;
}

}  // namespace

std::vector<std::pair<double, double>> WaitResult::cdf() const {
  std::vector<double> xs = elapsed;
  std::sort(xs.begin(), xs.end());
  std::vector<std::pair<double, double>> out;
  const double m = double(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!out.empty() && out.back().first == xs[i])
      out.back().second = double(i + 1) / m;
    else
      out.emplace_back(xs[i], double(i + 1) / m);
  }
  return out;
}

WaitResult mc_wait_for_shorter_route(const GraphSequenceParams& params, int s, int t, int k,
                                     long long trials, int jobs) {
  params.validate();
  if (trials < 100) throw std::invalid_argument("mc_wait_for_shorter_route: trials must be >= 100");
  if (k < 1 || k > params.n) throw std::invalid_argument("mc_wait_for_shorter_route: bad k");

  std::vector<double> elapsed(trials, -1.0);  // -1 marks a capped trial
  std::vector<long long> epochs_used(trials, 0);

  detail::parallel_for_index(jobs, trials, [&](long long trial) {
    std::mt19937_64 rng(derive_seed(params.seed, kWaitStream, std::uint64_t(trial)));
    for (long long e = 0; e < params.epoch_cap; ++e) {
      const EdgeGraph g = sample_epoch(params.n, params.p, rng);
      ++epochs_used[trial];
      const auto dist = shortest_path_length(g, s, t);
      if (dist && *dist < k) {
        elapsed[trial] = double(e) * params.w;  // e failed epochs before this one
        break;
      }
    }
  });

  WaitResult out;
  for (long long i = 0; i < trials; ++i) {
    out.total_epochs += epochs_used[i];
    if (elapsed[i] < 0.0)
      ++out.capped_trials;
    else
      out.elapsed.push_back(elapsed[i]);
  }
  out.wait = estimate_from(out.elapsed);
  return out;
}

namespace {

// All simple s-t paths with exactly n_l edges, as edge lists.
using PathEdges = std::vector<std::pair<int, int>>;

void enumerate_paths(const EdgeGraph& g, int node, int t, int remaining,
                     std::vector<int>& stack, std::vector<char>& visited,
                     std::vector<PathEdges>& out, std::size_t cap) {
  if (out.size() >= cap) return;
  if (remaining == 0) {
    if (node == t) {
      PathEdges path;
      path.reserve(stack.size());
      for (std::size_t i = 0; i + 1 < stack.size(); ++i)
        path.emplace_back(stack[i], stack[i + 1]);
      out.push_back(std::move(path));
    }
    return;
  }
  for (int next : g.adj[node]) {
    if (visited[next]) continue;
    visited[next] = 1;
    stack.push_back(next);
    enumerate_paths(g, next, t, remaining - 1, stack, visited, out, cap);
    stack.pop_back();
    visited[next] = 0;
  }
}

std::vector<PathEdges> exact_length_paths(const EdgeGraph& g, int s, int t, int n_l,
                                          std::size_t cap = 100000) {
  std::vector<PathEdges> out;
  std::vector<int> stack{s};
  std::vector<char> visited(g.n, 0);
  visited[s] = 1;
  enumerate_paths(g, s, t, n_l, stack, visited, out, cap);
  return out;
}

struct AdjMatrix {
  int n = 0;
  std::vector<std::uint8_t> m;
  explicit AdjMatrix(const EdgeGraph& g) : n(g.n), m(std::size_t(g.n) * g.n, 0) {
    for (int i = 0; i < g.n; ++i)
      for (int j : g.adj[i]) m[std::size_t(i) * n + j] = 1;
  }
  bool has(int i, int j) const { return m[std::size_t(i) * n + j] != 0; }
};

bool path_present(const PathEdges& path, const AdjMatrix& adj) {
  for (const auto& [a, b] : path)
    if (!adj.has(a, b)) return false;
  return true;
}

}  // namespace

FlashStats mc_flash_route_stats(const GraphSequenceParams& params, int n_l,
                                double update_bound, long long trials,
                                PersistenceMode mode, int jobs) {
  params.validate();
  if (trials < 100) throw std::invalid_argument("mc_flash_route_stats: trials must be >= 100");
  if (n_l < 1 || n_l >= params.n)
    throw std::invalid_argument("mc_flash_route_stats: need 1 <= n_l < n");
  if (!(update_bound >= 0.0))
    throw std::invalid_argument("mc_flash_route_stats: update_bound must be >= 0");

  constexpr int kSource = 0, kTarget = 1;  // any pair is statistically identical
  std::vector<signed char> outcome(trials, -1);  // -1 capped, 0 formed no flash, 1 flash

  detail::parallel_for_index(jobs, trials, [&](long long trial) {
    std::mt19937_64 rng(derive_seed(params.seed, kFlashStream, std::uint64_t(trial)));
    std::vector<PathEdges> candidates;
    for (long long e = 0; e < params.epoch_cap; ++e) {
      const EdgeGraph g = sample_epoch(params.n, params.p, rng);
      candidates = exact_length_paths(g, kSource, kTarget, n_l);
      if (!candidates.empty()) break;
    }
    if (candidates.empty()) return;  // capped

    if (mode == PersistenceMode::LinkSet) candidates.resize(1);

    // lifetime only matters up to the update bound
    long long lifetime = 1;
    while (double(lifetime) * params.w < update_bound) {
      const EdgeGraph g = sample_epoch(params.n, params.p, rng);
      const AdjMatrix adj(g);
      bool survives = false;
      for (const auto& path : candidates)
        if (path_present(path, adj)) {
          survives = true;
          break;
        }
      if (!survives) break;
      ++lifetime;
    }
    outcome[trial] = double(lifetime) * params.w < update_bound ? 1 : 0;
  });

  FlashStats stats;
  std::vector<double> events;
  for (long long i = 0; i < trials; ++i) {
    if (outcome[i] < 0) {
      ++stats.capped_trials;
      continue;
    }
    ++stats.formed_trials;
    events.push_back(double(outcome[i]));
  }
  stats.probability = estimate_from(events);
  return stats;
}

std::vector<RouteLengthGapRow> route_length_gap_report(const GraphModel& model,
                                                       long long epochs,
                                                       std::uint64_t seed) {
  model.validate();
  if (epochs < 1) throw std::invalid_argument("route_length_gap_report: epochs must be >= 1");

  std::vector<long long> hist(std::size_t(model.n), 0);
  std::mt19937_64 rng(derive_seed(seed, kGapStream, 0));
  for (long long e = 0; e < epochs; ++e) {
    const EdgeGraph g = sample_epoch(int(model.n), model.p, rng);
    const auto dist = shortest_path_length(g, 0, 1);
    if (dist && *dist < model.n) ++hist[std::size_t(*dist)];
  }

  std::vector<RouteLengthGapRow> rows;
  for (int n_l = 1; n_l < model.n; ++n_l) {
    RouteLengthGapRow row;
    row.n_l = n_l;
    row.p_model = route_formation_probability(model, n_l);
    row.p_empirical = double(hist[std::size_t(n_l)]) / double(epochs);
    row.abs_gap = std::abs(row.p_model - row.p_empirical);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace manet
