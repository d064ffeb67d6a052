#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "manet/analytic.hpp"

namespace manet {

std::uint64_t splitmix64(std::uint64_t x);

// Seed-splitting rule shared by every Monte Carlo entry point and the
// experiment runner: results depend only on (master, stream, index), never
// on execution order or worker count.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

struct EdgeGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;
  std::size_t edge_count = 0;

  bool has_edge(int i, int j) const;
};

// One epoch of G(n, p): each unordered pair included independently with
// probability p.
EdgeGraph sample_epoch(int n, double p, std::mt19937_64& rng);
EdgeGraph sample_epoch(int n, double p, std::uint64_t seed);

// BFS hop count; nullopt when t is unreachable from s.
std::optional<int> shortest_path_length(const EdgeGraph& g, int s, int t);

struct GraphSequenceParams {
  int n = 0;
  double p = 0.0;
  double w = 1.0;                 // seconds per epoch
  std::uint64_t seed = 0;
  long long epoch_cap = 100000;   // per trial

  void validate() const;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long long trials = 0;
};

struct WaitResult {
  McEstimate wait;               // seconds until a qualifying epoch, over successful trials
  std::vector<double> elapsed;   // per successful trial, seconds, trial order
  long long capped_trials = 0;   // trials that hit epoch_cap, reported separately
  long long total_epochs = 0;    // epochs drawn across all trials

  // Empirical CDF support: sorted elapsed times and cumulative probability.
  std::vector<std::pair<double, double>> cdf() const;
};

// Per trial, draws epochs until shortest_path_length(s,t) < k. Elapsed time
// counts the failed epochs (first-epoch success is 0 seconds).
WaitResult mc_wait_for_shorter_route(const GraphSequenceParams& params, int s, int t, int k,
                                     long long trials, int jobs = 1);

enum class PersistenceMode {
  PathWise,  // route persists while any formation-epoch path survives
  LinkSet,   // the first formation-epoch path must keep every link
};

struct FlashStats {
  McEstimate probability;     // over trials that formed a route
  long long formed_trials = 0;
  long long capped_trials = 0;
};

// Per trial: wait for an s-t route of exactly n_l hops, then count the
// consecutive epochs it persists; a flash event is lifetime * w < update_bound.
FlashStats mc_flash_route_stats(const GraphSequenceParams& params, int n_l,
                                double update_bound, long long trials,
                                PersistenceMode mode = PersistenceMode::PathWise,
                                int jobs = 1);

struct RouteLengthGapRow {
  int n_l = 0;
  double p_model = 0.0;      // closed-form pmf
  double p_empirical = 0.0;  // fraction of epochs with shortest path == n_l
  double abs_gap = 0.0;
};

// The closed form treats route length as a binomial draw; graphs disagree.
// This quantifies the gap on single epochs (reported, never asserted).
std::vector<RouteLengthGapRow> route_length_gap_report(const GraphModel& model,
                                                       long long epochs,
                                                       std::uint64_t seed);

}  // namespace manet
