#pragma once

#include <vector>

#include "manet/geometry.hpp"

namespace manet {

// Vector field steering coordinated nodes. Three kinds:
//   rotation      v(p) = omega * (-(y-cy), x-cx), rigid rotation about `center`
//   uniform-drift v(p) = constant
//   custom-grid   bilinear interpolation of sampled vectors, clamped at edges
//
// When normalize_speed > 0, every nonzero sample is rescaled to that speed;
// this is the field a guided node actually follows.
class VelocityField {
 public:
  enum class Kind { Rotation, UniformDrift, CustomGrid };

  static VelocityField rotation(Vec2 center, double angular_rate);
  static VelocityField uniform_drift(Vec2 drift);
  // samples are row-major: samples[iy * nx + ix] at origin + (ix, iy) * spacing.
  static VelocityField custom_grid(Vec2 origin, double spacing, int nx, int ny,
                                   std::vector<Vec2> samples);

  // Copy of this field whose output is rescaled to |v| = speed (zero vectors stay zero).
  VelocityField normalized_to(double speed) const;

  Vec2 at(Vec2 p) const;

  Kind kind() const { return kind_; }
  double normalize_speed() const { return normalize_speed_; }

 private:
  VelocityField() = default;

  Kind kind_ = Kind::UniformDrift;
  Vec2 center_{};
  double angular_rate_ = 0.0;
  Vec2 drift_{};
  Vec2 grid_origin_{};
  double grid_spacing_ = 0.0;
  int nx_ = 0, ny_ = 0;
  std::vector<Vec2> samples_;
  double normalize_speed_ = 0.0;
};

}  // namespace manet
