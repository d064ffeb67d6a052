#include "manet/motion_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "manet/csv.hpp"

namespace manet {

namespace {

void check_node(const Trajectory& traj, int i, const char* what) {
  if (i < 0 || i >= traj.node_count()) throw std::out_of_range(std::string(what) + ": node index");
}

void check_window(const Trajectory& traj, TickWindow w) {
  if (w.count < 1) throw std::invalid_argument("window must contain at least one tick");
  if (w.first < 0 || w.first + w.count > traj.tick_count())
    throw std::out_of_range("window outside trajectory");
}

}  // namespace

Vec2 relative_velocity(const Trajectory& traj, int m, int n, int tick) {
  check_node(traj, m, "relative_velocity");
  check_node(traj, n, "relative_velocity");
  if (tick < 0 || tick >= traj.tick_count())
    throw std::out_of_range("relative_velocity: tick");
  return traj.velocities[tick][m] - traj.velocities[tick][n];
}

double avg_relative_speed(const Trajectory& traj, int m, int n, TickWindow window) {
  check_node(traj, m, "avg_relative_speed");
  check_node(traj, n, "avg_relative_speed");
  check_window(traj, window);
  double sum = 0.0;
  for (int t = window.first; t < window.first + window.count; ++t)
    sum += (traj.velocities[t][m] - traj.velocities[t][n]).norm();
  return sum / window.count;
}

TickWindow full_window(const Trajectory& traj) {
  return {0, std::max(1, traj.tick_count() - 1)};
}

namespace {

RelativeSpeedTable build_table(const Trajectory& traj, int m, TickWindow window,
                               std::vector<int> interest) {
  RelativeSpeedTable table;
  table.reference = m;
  table.interest = std::move(interest);
  table.sample_count = window.count;
  table.window_seconds = window.count * traj.tick_duration;
  table.avg_speed.reserve(table.interest.size());
  for (int k : table.interest)
    table.avg_speed.push_back(avg_relative_speed(traj, m, k, window));
  return table;
}

}  // namespace

RelativeSpeedTable build_speed_table(const Trajectory& traj, int m, TickWindow window) {
  check_node(traj, m, "build_speed_table");
  check_window(traj, window);
  std::vector<int> interest;
  interest.reserve(traj.node_count() - 1);
  for (int k = 0; k < traj.node_count(); ++k)
    if (k != m) interest.push_back(k);
  return build_table(traj, m, window, std::move(interest));
}

RelativeSpeedTable build_speed_table_knn(const Trajectory& traj, int m, TickWindow window,
                                         int k) {
  check_node(traj, m, "build_speed_table_knn");
  check_window(traj, window);
  if (k < 2 || k >= traj.node_count())
    throw std::invalid_argument("build_speed_table_knn: k must be in [2, node_count)");

  const auto& pos = traj.positions[window.first];
  std::vector<int> others;
  for (int i = 0; i < traj.node_count(); ++i)
    if (i != m) others.push_back(i);
  std::stable_sort(others.begin(), others.end(), [&](int a, int b) {
    return (pos[a] - pos[m]).norm() < (pos[b] - pos[m]).norm();
  });
  others.resize(k);
  std::sort(others.begin(), others.end());
  return build_table(traj, m, window, std::move(others));
}

bool is_degenerate(const RelativeSpeedTable& table) {
  return std::all_of(table.avg_speed.begin(), table.avg_speed.end(),
                     [](double a) { return a == 0.0; });
}

double relative_speed_probability(const RelativeSpeedTable& table, int k_index) {
  if (k_index < 0 || std::size_t(k_index) >= table.avg_speed.size())
    throw std::out_of_range("relative_speed_probability: index");
  const double total =
      std::accumulate(table.avg_speed.begin(), table.avg_speed.end(), 0.0);
  if (!(total > 0.0))
    throw std::domain_error("relative_speed_probability: all relative speeds are zero");
  return table.avg_speed[k_index] / total;
}

double motion_entropy(const RelativeSpeedTable& table) {
  const std::size_t count = table.avg_speed.size();
  if (count < 2)
    throw std::invalid_argument("motion_entropy: interest set needs at least 2 nodes");
  if (is_degenerate(table)) return 0.0;

  const double total =
      std::accumulate(table.avg_speed.begin(), table.avg_speed.end(), 0.0);
  double h = 0.0;
  for (double a : table.avg_speed) {
    if (a == 0.0) continue;  // 0 log 0 = 0
    const double p = a / total;
    h -= p * std::log(p);
  }
  // numerator and denominator share the base, so the base cancels
  return std::clamp(h / std::log(double(count)), 0.0, 1.0);
}

EntropyResult population_entropy(const Trajectory& traj, TickWindow window) {
  EntropyResult result;
  const int n = traj.node_count();
  result.per_node.reserve(n);
  for (int m = 0; m < n; ++m) {
    const RelativeSpeedTable table = build_speed_table(traj, m, window);
    if (is_degenerate(table)) ++result.degenerate_count;
    result.per_node.push_back(motion_entropy(table));
  }
  result.mean = std::accumulate(result.per_node.begin(), result.per_node.end(), 0.0) / n;
  const auto [lo, hi] = std::minmax_element(result.per_node.begin(), result.per_node.end());
  result.min = *lo;
  result.max = *hi;
  return result;
}

void write_entropy_csv(const EntropyResult& result, std::ostream& os) {
  os << "node,H_m\n";
  for (std::size_t i = 0; i < result.per_node.size(); ++i)
    os << i << ',' << format_double(result.per_node[i]) << '\n';
}

CurlMap curl_map(const VelocityField& field, const FieldGeometry& geometry,
                 double grid_spacing) {
  geometry.validate();
  if (!(grid_spacing > 0.0) || grid_spacing >= geometry.side_length / 4.0)
    throw std::invalid_argument("curl_map: grid_spacing must be in (0, side/4)");

  const double g = grid_spacing;
  // interior points (i*g, j*g) whose four neighbors stay inside the field
  const int n_interior = int(geometry.side_length / g) - 1;
  CurlMap map;
  map.spacing = g;
  map.nx = n_interior;
  map.ny = n_interior;
  map.values.resize(std::size_t(n_interior) * n_interior);

  for (int j = 0; j < map.ny; ++j) {
    for (int i = 0; i < map.nx; ++i) {
      const Vec2 p = map.point(i, j);
      const Vec2 xp = field.at({p.x + g, p.y});
      const Vec2 xm = field.at({p.x - g, p.y});
      const Vec2 yp = field.at({p.x, p.y + g});
      const Vec2 ym = field.at({p.x, p.y - g});
      map.values[std::size_t(j) * map.nx + i] =
          (xp.y - xm.y) / (2.0 * g) - (yp.x - ym.x) / (2.0 * g);
    }
  }
  return map;
}

void write_curl_csv(const CurlMap& map, std::ostream& os) {
  os << "x,y,curl\n";
  for (int j = 0; j < map.ny; ++j)
    for (int i = 0; i < map.nx; ++i) {
      const Vec2 p = map.point(i, j);
      os << format_double(p.x) << ',' << format_double(p.y) << ','
         << format_double(map.at(i, j)) << '\n';
    }
}

}  // namespace manet
