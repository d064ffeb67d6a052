#include "manet/analytic.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "manet/csv.hpp"

namespace manet {

void ClusterModel::validate() const {
  if (node_total < 1) throw std::invalid_argument("ClusterModel: N must be >= 1");
  if (cluster_count < 1 || cluster_count > node_total)
    throw std::invalid_argument("ClusterModel: need 1 <= C <= N");
  if (!(area > 0.0)) throw std::invalid_argument("ClusterModel: A must be > 0");
  if (!(link_capacity > 0.0)) throw std::invalid_argument("ClusterModel: W must be > 0");
  if (!(guard_factor > 0.0)) throw std::invalid_argument("ClusterModel: Delta must be > 0");
}

void GraphModel::validate() const {
  if (n < 1) throw std::invalid_argument("GraphModel: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("GraphModel: p must be in [0,1]");
  if (!(w > 0.0)) throw std::invalid_argument("GraphModel: w must be > 0");
}

void FlowModel::validate() const {
  if (!(flow_bits > 0.0)) throw std::invalid_argument("FlowModel: f_l must be > 0");
  if (!(hop_rate > 0.0)) throw std::invalid_argument("FlowModel: b_r must be > 0");
  if (hop_reduction < 1 || hop_reduction >= hops)
    throw std::invalid_argument("FlowModel: need 1 <= h_diff < h");
}

double log2_binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("log2_binomial: need 0 <= k <= n");
  mpz_t bin;
  mpz_init(bin);
  mpz_bin_uiui(bin, static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  long exp2;
  const double mant = mpz_get_d_2exp(&exp2, bin);  // bin = mant * 2^exp2, mant in [0.5, 1)
  mpz_clear(bin);
  return std::log2(mant) + double(exp2);
}

double cluster_info_bits(const ClusterModel& model) {
  model.validate();
  const long long members = (model.node_total + model.cluster_count - 1) / model.cluster_count;
  return log2_binomial(model.node_total, members);
}

double max_capacity(const ClusterModel& model) {
  model.validate();
  return std::sqrt(8.0 / std::numbers::pi) * (model.link_capacity / model.guard_factor) *
         std::sqrt(double(model.node_total));
}

double total_update_distance(const ClusterModel& model, DistanceMode mode) {
  model.validate();
  const long long n = model.node_total;
  const double per_hop = mode == DistanceMode::LiteralSum
                             ? std::sqrt(model.area) / double(n)
                             : std::sqrt(model.area / double(n));
  double sum = 0.0;
  for (long long k = 0; k < n; ++k) sum += per_hop;
  return sum;
}

double route_update_time(const ClusterModel& model, DistanceMode mode) {
  return double(model.cluster_count) * cluster_info_bits(model) *
         total_update_distance(model, mode) / max_capacity(model);
}

LinkProbability link_probability(const GraphModel& model) {
  if (model.n < 1) throw std::invalid_argument("link_probability: n must be >= 1");
  if (!(model.comm_radius >= 0.0) || !(model.area > 0.0))
    throw std::invalid_argument("link_probability: need r >= 0 and A > 0");

  const double coverage =
      std::numbers::pi * model.comm_radius * model.comm_radius / model.area;
  LinkProbability out;
  out.mode = model.link_prob_mode;
  out.raw = model.link_prob_mode == LinkProbMode::Pairwise
                ? coverage
                : double(model.n - 1) * coverage;
  out.value = std::clamp(out.raw, 0.0, 1.0);
  out.clamped = out.value != out.raw;
  return out;
}

double route_formation_probability(const GraphModel& model, long long n_l) {
  model.validate();
  if (n_l < 0 || n_l > model.n)
    throw std::invalid_argument("route_formation_probability: need 0 <= n_l <= n");

  const double p = model.p;
  if (p == 0.0) return n_l == 0 ? 1.0 : 0.0;
  if (p == 1.0) return n_l == model.n ? 1.0 : 0.0;

  const double log2_pmf =
      log2_binomial(model.n, n_l) + double(n_l) * std::log2(p) +
      double(model.n - n_l) * std::log2(1.0 - p);
  return std::exp2(log2_pmf);
}

double shorter_route_probability(const GraphModel& model, long long k) {
  model.validate();
  if (k < 1 || k > model.n + 1)
    throw std::invalid_argument("shorter_route_probability: need 1 <= k <= n+1");
  double sum = 0.0;
  for (long long n_l = 1; n_l < k; ++n_l) sum += route_formation_probability(model, n_l);
  return std::min(sum, 1.0);
}

double expected_wait(const GraphModel& model, double success_probability) {
  model.validate();
  if (!(success_probability > 0.0))
    throw std::domain_error("expected_wait: success probability 0 (unreachable target)");
  if (success_probability > 1.0)
    throw std::invalid_argument("expected_wait: probability > 1");
  return model.w * (1.0 - success_probability) / success_probability;
}

double per_hop_flow_delay(const FlowModel& flow, long long n_l) {
  if (!(flow.flow_bits > 0.0) || !(flow.hop_rate > 0.0))
    throw std::invalid_argument("per_hop_flow_delay: need f_l > 0 and b_r > 0");
  if (n_l < 0) throw std::invalid_argument("per_hop_flow_delay: need n_l >= 0");
  return double(n_l) * flow.flow_bits / flow.hop_rate;
}

double predictive_gain(double c_current, double dt, double c_future) {
  if (!(c_current > 0.0) || !(c_future > 0.0))
    throw std::invalid_argument("predictive_gain: costs must be > 0");
  if (!(dt >= 0.0)) throw std::invalid_argument("predictive_gain: dt must be >= 0");
  const double denom = dt + c_future;
  if (denom == 0.0) throw std::invalid_argument("predictive_gain: zero denominator");
  return c_current / denom;
}

double differential_gain(const GraphModel& model, const FlowModel& flow) {
  flow.validate();
  const long long target = flow.hops - flow.hop_reduction;  // >= 1
  const double success = shorter_route_probability(model, target);
  if (success <= 0.0) return 0.0;  // waiting never ends
  const double wait = expected_wait(model, success);
  return per_hop_flow_delay(flow, flow.hops) /
         (per_hop_flow_delay(flow, target) + wait);
}

double flash_route_formation_wait(const GraphModel& model, long long n_l) {
  const double p_nl = route_formation_probability(model, n_l);
  if (!(p_nl > 0.0))
    throw std::domain_error("flash_route_formation_wait: zero formation probability");
  return (1.0 - p_nl) / p_nl * model.w;
}

double flash_update_bound(const ClusterModel& model, long long n_l) {
  model.validate();
  if (n_l < 0) throw std::invalid_argument("flash_update_bound: need n_l >= 0");
  // every node its own cluster: C = n, I_c = log2 n, route distance n_l * sqrt(A)/n
  const double n = double(model.node_total);
  const double distance = double(n_l) * std::sqrt(model.area) / n;
  return n * std::log2(n) * distance / max_capacity(model);
}

FlashRouteAssessment flash_route_condition(const ClusterModel& cluster,
                                           const GraphModel& graph, long long n_l) {
  cluster.validate();
  graph.validate();

  FlashRouteAssessment out;
  const double p_nl = route_formation_probability(graph, n_l);
  out.raw_probability = p_nl * double(n_l) * (1.0 - graph.p);
  out.lifetime_proxy = out.raw_probability * graph.w;
  out.update_bound = flash_update_bound(cluster, n_l);
  // raw_probability == 0 means the route never disappears (or never forms)
  out.is_flash = out.raw_probability > 0.0 && out.lifetime_proxy < out.update_bound;
  out.probability = out.is_flash ? std::clamp(out.raw_probability, 0.0, 1.0) : 0.0;
  return out;
}

void GainReport::add(std::string name, double value, std::string units) {
  entries.push_back({std::move(name), value, std::move(units)});
}

void GainReport::note(std::string text) { notes.push_back(std::move(text)); }

const GainReport::Entry* GainReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

void GainReport::write_csv(std::ostream& os) const {
  os << "quantity,value,units\n";
  for (const auto& e : entries)
    os << e.name << ',' << format_double(e.value) << ',' << e.units << '\n';
}

}  // namespace manet
