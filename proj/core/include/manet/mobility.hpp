#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "manet/geometry.hpp"
#include "manet/topology_codec.hpp"
#include "manet/velocity_field.hpp"

namespace manet {

// Mixed node population. Nodes [0, n_random) do a random-direction walk
// (heading resampled uniformly on [0, 2pi) each tick, constant speed);
// nodes [n_random, n_random + n_guided) follow `field` rescaled to the
// common speed. Boundary handling reflects nodes back into the field.
struct MobilityConfig {
  int n_random = 0;
  int n_guided = 0;
  double speed = 0.0;    // meters/second, shared scalar speed
  double dt_step = 1.0;  // seconds per tick
  int n_steps = 2;       // recorded ticks
  std::uint64_t seed = 0;
  VelocityField field = VelocityField::uniform_drift({0.0, 0.0});

  int node_count() const { return n_random + n_guided; }
  void validate() const;
};

struct Trajectory {
  // tick-major: positions[t][i] is node i at tick t
  std::vector<std::vector<Vec2>> positions;
  // velocities[t][i] = (positions[t+1][i] - positions[t][i]) / tick_duration
  // for t < tick_count()-1; the last tick repeats the previous velocity.
  std::vector<std::vector<Vec2>> velocities;
  // reflected[t][i] != 0 when the step leaving tick t folded at a boundary
  std::vector<std::vector<std::uint8_t>> reflected;
  double tick_duration = 1.0;

  int tick_count() const { return int(positions.size()); }
  int node_count() const { return positions.empty() ? 0 : int(positions[0].size()); }
};

// Deterministic for a fixed (config, geometry): identical inputs give
// bit-identical trajectories.
Trajectory simulate(const MobilityConfig& config, const FieldGeometry& geometry);

// Bit for pair (i,j), i<j, is 1 iff Euclidean distance <= r.
TopologyBitString snapshot_adjacency(const Trajectory& traj, int tick, double r);

// Columns: tick,node,x,y,vx,vy
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

}  // namespace manet
