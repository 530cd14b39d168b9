#pragma once

#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "motkit/geometry.hpp"

namespace motkit::detail {

inline std::optional<std::size_t> find_point(const std::vector<Point>& pts, std::span<const double> p, double tol) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (distance(pts[i], p) <= tol) return i;
  return std::nullopt;
}

inline std::string fmt_point(std::span<const double> p) {
  std::ostringstream os;
  os.precision(6);
  os << "(";
  for (std::size_t k = 0; k < p.size(); ++k) os << (k ? ", " : "") << p[k];
  os << ")";
  return os.str();
}

}  // namespace motkit::detail
