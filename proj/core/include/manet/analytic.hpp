#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace manet {

// N nodes in C cluster areas over area A; every pairwise channel has
// capacity W bits/s and guard factor Delta.
struct ClusterModel {
  long long node_total = 0;    // N (also the n of the capacity/distance forms)
  long long cluster_count = 1; // C
  double area = 0.0;           // A, square meters
  double link_capacity = 0.0;  // W, bits/second
  double guard_factor = 1.0;   // Delta

  void validate() const;
};

enum class LinkProbMode { Pairwise, ExpectedDegree };

// Evolving random graph G(n, p, w): n vertices, independent link
// probability p, topology redrawn every w seconds.
struct GraphModel {
  long long n = 0;
  double p = 0.0;
  double w = 1.0;                // seconds per topology change
  double comm_radius = 0.0;      // r, meters
  double area = 0.0;             // A, square meters
  LinkProbMode link_prob_mode = LinkProbMode::Pairwise;

  void validate() const;
};

struct FlowModel {
  double flow_bits = 0.0;  // f_l
  double hop_rate = 0.0;   // b_r, bits/second effective per hop
  int hops = 0;            // h, current hop count
  int hop_reduction = 0;   // h_diff, 1 <= h_diff < h

  void validate() const;
};

// log2 of the exact integer binomial coefficient (no floating-point factorials).
double log2_binomial(long long n, long long k);

// Bits needed to describe one cluster: log2 C(N, ceil(N/C)).
double cluster_info_bits(const ClusterModel& model);

// sqrt(8/pi) * (W/Delta) * sqrt(n), bit-meters/second.
double max_capacity(const ClusterModel& model);

enum class DistanceMode {
  LiteralSum,  // sum of n copies of sqrt(A)/n
  PerHopRoot,  // sum of n copies of sqrt(A/n)
};

double total_update_distance(const ClusterModel& model,
                             DistanceMode mode = DistanceMode::LiteralSum);

// Optimal route-update time bound T_r = C * I_c * d_sum / C_max.
double route_update_time(const ClusterModel& model,
                         DistanceMode mode = DistanceMode::LiteralSum);

struct LinkProbability {
  double value = 0.0;  // clamped to [0,1]
  double raw = 0.0;    // before clamping
  bool clamped = false;
  LinkProbMode mode = LinkProbMode::Pairwise;
};

// Pairwise: pi r^2 / A. ExpectedDegree: (n-1) pi r^2 / A, clamped.
LinkProbability link_probability(const GraphModel& model);

// Binomial pmf: C(n, n_l) p^n_l (1-p)^(n-n_l), evaluated in log space with
// exact binomial coefficients.
double route_formation_probability(const GraphModel& model, long long n_l);

// P(route of fewer than k hops forms) = sum of the pmf over n_l = 1..k-1.
double shorter_route_probability(const GraphModel& model, long long k);

// Geometric waiting across graph changes: w * (1-P) / P. Throws when P = 0
// (unreachable target).
double expected_wait(const GraphModel& model, double success_probability);

// d_f(n_l) = n_l * f_l / b_r, seconds.
double per_hop_flow_delay(const FlowModel& flow, long long n_l);

// G_p = c_current / (dt + c_future); > 1 exactly when waiting wins.
double predictive_gain(double c_current, double dt, double c_future);

// G_dp(h | h_diff) = d_f(h) / (d_f(h - h_diff) + Et[h - h_diff]) where
// Et uses the geometric wait with success probability
// shorter_route_probability(h - h_diff). Returns 0 when that probability is 0.
double differential_gain(const GraphModel& model, const FlowModel& flow);

// Expected time for a continuous route of length n_l to form:
// (1 - p_nl) / p_nl * w. Throws when the formation probability is 0.
double flash_route_formation_wait(const GraphModel& model, long long n_l);

// Best-case update time specialized to a route of n_l hops: every node its
// own cluster (C = n, I_c = log2 n) and per-hop distance sqrt(A)/n.
double flash_update_bound(const ClusterModel& model, long long n_l);

struct FlashRouteAssessment {
  double lifetime_proxy = 0.0;   // p_nl * n_l * (1-p) * w, seconds
  double update_bound = 0.0;     // T_r specialized to the route length, seconds
  bool is_flash = false;
  double probability = 0.0;      // clamped to [0,1]; 0 when not flash
  double raw_probability = 0.0;  // p_nl * n_l * (1-p), unclamped
};

FlashRouteAssessment flash_route_condition(const ClusterModel& cluster,
                                           const GraphModel& graph, long long n_l);

// Named scalar results for one scenario.
struct GainReport {
  std::string scenario;

  struct Entry {
    std::string name;
    double value = 0.0;
    std::string units;
  };
  std::vector<Entry> entries;
  std::vector<std::string> notes;

  void add(std::string name, double value, std::string units);
  void note(std::string text);
  const Entry* find(const std::string& name) const;

  // Columns: quantity,value,units
  void write_csv(std::ostream& os) const;
};

}  // namespace manet
