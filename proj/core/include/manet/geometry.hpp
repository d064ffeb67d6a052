#pragma once

#include <cmath>

namespace manet {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

// Square field, side_length x side_length meters.
struct FieldGeometry {
  double side_length = 0.0;
  double comm_radius = 0.0;  // r, meters

  double area() const { return side_length * side_length; }
  Vec2 center() const { return {side_length / 2.0, side_length / 2.0}; }
  bool contains(Vec2 p) const {
    return p.x >= 0.0 && p.x <= side_length && p.y >= 0.0 && p.y <= side_length;
  }
  void validate() const;
};

}  // namespace manet
