#include "manet/velocity_field.hpp"

#include <algorithm>
#include <stdexcept>

namespace manet {

VelocityField VelocityField::rotation(Vec2 center, double angular_rate) {
  VelocityField f;
  f.kind_ = Kind::Rotation;
  f.center_ = center;
  f.angular_rate_ = angular_rate;
  return f;
}

VelocityField VelocityField::uniform_drift(Vec2 drift) {
  VelocityField f;
  f.kind_ = Kind::UniformDrift;
  f.drift_ = drift;
  return f;
}

VelocityField VelocityField::custom_grid(Vec2 origin, double spacing, int nx, int ny,
                                         std::vector<Vec2> samples) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("custom_grid: need at least 2x2 samples");
  if (!(spacing > 0.0)) throw std::invalid_argument("custom_grid: spacing must be positive");
  if (samples.size() != std::size_t(nx) * std::size_t(ny))
    throw std::invalid_argument("custom_grid: sample count does not match nx*ny");
  for (const Vec2& s : samples)
    if (!s.finite()) throw std::invalid_argument("custom_grid: non-finite sample");

  VelocityField f;
  f.kind_ = Kind::CustomGrid;
  f.grid_origin_ = origin;
  f.grid_spacing_ = spacing;
  f.nx_ = nx;
  f.ny_ = ny;
  f.samples_ = std::move(samples);
  return f;
}

VelocityField VelocityField::normalized_to(double speed) const {
  if (!(speed >= 0.0)) throw std::invalid_argument("normalized_to: speed must be >= 0");
  VelocityField f = *this;
  f.normalize_speed_ = speed;
  return f;
}

Vec2 VelocityField::at(Vec2 p) const {
  Vec2 v;
  switch (kind_) {
    case Kind::Rotation:
      v = {-angular_rate_ * (p.y - center_.y), angular_rate_ * (p.x - center_.x)};
      break;
    case Kind::UniformDrift:
      v = drift_;
      break;
    case Kind::CustomGrid: {
      // bilinear interpolation, clamped to the sample rectangle
      double gx = (p.x - grid_origin_.x) / grid_spacing_;
      double gy = (p.y - grid_origin_.y) / grid_spacing_;
      gx = std::clamp(gx, 0.0, double(nx_ - 1));
      gy = std::clamp(gy, 0.0, double(ny_ - 1));
      const int ix = std::min(int(gx), nx_ - 2);
      const int iy = std::min(int(gy), ny_ - 2);
      const double fx = gx - ix, fy = gy - iy;
      const auto s = [&](int i, int j) { return samples_[std::size_t(j) * nx_ + i]; };
      const Vec2 a = s(ix, iy) * (1 - fx) + s(ix + 1, iy) * fx;
      const Vec2 b = s(ix, iy + 1) * (1 - fx) + s(ix + 1, iy + 1) * fx;
      v = a * (1 - fy) + b * fy;
      break;
    }
  }
  if (normalize_speed_ > 0.0) {
    const double m = v.norm();
    if (m > 0.0) v = v * (normalize_speed_ / m);
  }
  if (!v.finite()) throw std::runtime_error("VelocityField: non-finite value");
  return v;
}

}  // namespace manet
