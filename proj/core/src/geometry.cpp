#include "manet/geometry.hpp"

#include <stdexcept>

namespace manet {

void FieldGeometry::validate() const {
  if (!(side_length > 0.0) || !std::isfinite(side_length))
    throw std::invalid_argument("FieldGeometry: side_length must be positive");
  if (!(comm_radius > 0.0) || !std::isfinite(comm_radius))
    throw std::invalid_argument("FieldGeometry: comm_radius must be positive");
}

}  // namespace manet
