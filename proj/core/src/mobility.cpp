#include "manet/mobility.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "manet/csv.hpp"

namespace manet {

void MobilityConfig::validate() const {
  if (n_random < 0 || n_guided < 0 || node_count() < 2)
    throw std::invalid_argument("MobilityConfig: need n_random + n_guided >= 2");
  if (!(speed >= 0.0) || !std::isfinite(speed))
    throw std::invalid_argument("MobilityConfig: speed must be >= 0");
  if (!(dt_step > 0.0) || !std::isfinite(dt_step))
    throw std::invalid_argument("MobilityConfig: dt_step must be > 0");
  if (n_steps < 2) throw std::invalid_argument("MobilityConfig: n_steps must be >= 2");
}

namespace {

inline double u01(std::mt19937_64& rng) {
  // 53 uniform bits; identical across platforms for a given seed
  return double(rng() >> 11) * 0x1.0p-53;
}

// Fold a coordinate back into [0, side]; flips the sign bookkeeping is not
// needed because headings are recomputed every tick.
inline double reflect_into(double x, double side, bool& reflected) {
  while (x < 0.0 || x > side) {
    x = (x < 0.0) ? -x : 2.0 * side - x;
    reflected = true;
  }
  return x;
}

}  // namespace

Trajectory simulate(const MobilityConfig& config, const FieldGeometry& geometry) {
  config.validate();
  geometry.validate();

  const int n = config.node_count();
  const int steps = config.n_steps;
  const double side = geometry.side_length;
  const double dt = config.dt_step;
  const VelocityField guided_field = config.field.normalized_to(config.speed);

  std::mt19937_64 rng(config.seed);

  Trajectory traj;
  traj.tick_duration = dt;
  traj.positions.assign(steps, std::vector<Vec2>(n));
  traj.velocities.assign(steps, std::vector<Vec2>(n));
  traj.reflected.assign(steps, std::vector<std::uint8_t>(n, 0));

  for (int i = 0; i < n; ++i) {
    traj.positions[0][i] = {u01(rng) * side, u01(rng) * side};
  }

  for (int t = 0; t + 1 < steps; ++t) {
    for (int i = 0; i < n; ++i) {
      const Vec2 pos = traj.positions[t][i];
      Vec2 v;
      if (i < config.n_random) {
        const double heading = 2.0 * std::numbers::pi * u01(rng);
        v = {config.speed * std::cos(heading), config.speed * std::sin(heading)};
      } else {
        v = guided_field.at(pos);  // throws on non-finite field values
      }
      bool reflected = false;
      Vec2 next = pos + v * dt;
      next.x = reflect_into(next.x, side, reflected);
      next.y = reflect_into(next.y, side, reflected);
      traj.positions[t + 1][i] = next;
      traj.velocities[t][i] = (next - pos) / dt;
      traj.reflected[t][i] = reflected ? 1 : 0;
    }
  }
  traj.velocities[steps - 1] = traj.velocities[steps - 2];
  return traj;
}

TopologyBitString snapshot_adjacency(const Trajectory& traj, int tick, double r) {
  if (tick < 0 || tick >= traj.tick_count())
    throw std::out_of_range("snapshot_adjacency: tick out of range");
  if (!(r > 0.0)) throw std::invalid_argument("snapshot_adjacency: r must be > 0");

  const auto& pos = traj.positions[tick];
  const int n = int(pos.size());
  TopologyBitString out;
  out.n = n;
  out.bits = BitString(TopologyBitString::bit_count(n));

  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++k) {
      const double dx = pos[i].x - pos[j].x;
      const double dy = pos[i].y - pos[j].y;
      if (dx * dx + dy * dy <= r * r) out.bits.set(k, true);
    }
  }
  return out;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
  os << "tick,node,x,y,vx,vy\n";
  for (int t = 0; t < traj.tick_count(); ++t) {
    for (int i = 0; i < traj.node_count(); ++i) {
      os << t << ',' << i << ',' << format_double(traj.positions[t][i].x) << ','
         << format_double(traj.positions[t][i].y) << ','
         << format_double(traj.velocities[t][i].x) << ','
         << format_double(traj.velocities[t][i].y) << '\n';
    }
  }
}

}  // namespace manet
