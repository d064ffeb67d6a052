#pragma once

#include <iosfwd>
#include <vector>

#include "manet/mobility.hpp"

namespace manet {

// Half-open tick range [first, first + count).
struct TickWindow {
  int first = 0;
  int count = 0;
};

// v(m,t) - v(n,t)
Vec2 relative_velocity(const Trajectory& traj, int m, int n, int tick);

// Mean of |v(m,n,t)| over the window (mean of magnitudes, not magnitude of mean).
double avg_relative_speed(const Trajectory& traj, int m, int n, TickWindow window);

// Average relative speeds between reference node m and its interest set F_m.
struct RelativeSpeedTable {
  int reference = 0;
  std::vector<int> interest;       // F_m, never contains `reference`
  std::vector<double> avg_speed;   // a[m][k], aligned with `interest`
  int sample_count = 0;            // N
  double window_seconds = 0.0;     // Delta_t
};

// Interest set = all other nodes.
RelativeSpeedTable build_speed_table(const Trajectory& traj, int m, TickWindow window);
// Interest set = k nearest nodes by distance at the window's first tick.
RelativeSpeedTable build_speed_table_knn(const Trajectory& traj, int m, TickWindow window,
                                         int k);

// All average relative speeds zero: a motionless (or perfectly co-moving) swarm.
bool is_degenerate(const RelativeSpeedTable& table);

// a[m][k] / sum over F_m; throws on an all-zero table.
double relative_speed_probability(const RelativeSpeedTable& table, int k_index);

// Normalized entropy in [0,1]. Degenerate tables yield 0 (perfectly
// predictable motion) rather than an error.
double motion_entropy(const RelativeSpeedTable& table);

struct EntropyResult {
  std::vector<double> per_node;  // H_m
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  int degenerate_count = 0;
};

EntropyResult population_entropy(const Trajectory& traj, TickWindow window);

// Full-trajectory window over the forward-difference velocities (drops the
// duplicated final tick).
TickWindow full_window(const Trajectory& traj);

// Columns: node,H_m
void write_entropy_csv(const EntropyResult& result, std::ostream& os);

// Central-difference estimates of curl_z = dv_y/dx - dv_x/dy at interior
// grid points (i*g, j*g), 1 <= i <= nx, 1 <= j <= ny.
struct CurlMap {
  double spacing = 0.0;
  int nx = 0, ny = 0;
  std::vector<double> values;  // row-major, values[j * nx + i]

  double at(int ix, int iy) const { return values[std::size_t(iy) * nx + ix]; }
  Vec2 point(int ix, int iy) const {
    return {spacing * (ix + 1), spacing * (iy + 1)};
  }
};

CurlMap curl_map(const VelocityField& field, const FieldGeometry& geometry,
                 double grid_spacing);

// Columns: x,y,curl
void write_curl_csv(const CurlMap& map, std::ostream& os);

}  // namespace manet
