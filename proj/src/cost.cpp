#include "motkit/cost.hpp"

#include <cmath>

#include "motkit/error.hpp"
#include "motkit/geometry.hpp"

namespace motkit {

double CostSpec::of_distance(double r) const {
  switch (kind) {
    case CostKind::kEuclidean:
      return scale * r;
    case CostKind::kPower:
      return scale * std::pow(r, p);
    case CostKind::kZero:
      return 0.0;
  }
  return 0.0;
}

double CostSpec::operator()(std::span<const double> x, std::span<const double> y) const {
  return of_distance(distance(x, y));
}

void CostSpec::validate() const {
  if (!std::isfinite(scale)) throw argument_error("cost: non-finite scale");
  if (kind == CostKind::kPower && !(p > 0.0 && std::isfinite(p)))
    throw argument_error("cost: power exponent must be positive and finite");
}

std::string CostSpec::describe() const {
  std::string s = to_string(kind);
  if (kind == CostKind::kPower) s += "(p=" + std::to_string(p) + ")";
  if (scale != 1.0 && kind != CostKind::kZero) s += "*" + std::to_string(scale);
  return s + "/" + to_string(sense);
}

const char* to_string(Sense s) { return s == Sense::kMinimize ? "min" : "max"; }

const char* to_string(CostKind k) {
  switch (k) {
    case CostKind::kEuclidean:
      return "euclidean";
    case CostKind::kPower:
      return "power";
    case CostKind::kZero:
      return "zero";
  }
  return "?";
}

Sense parse_sense(const std::string& s) {
  if (s == "min" || s == "minimize") return Sense::kMinimize;
  if (s == "max" || s == "maximize") return Sense::kMaximize;
  throw argument_error("unknown sense '" + s + "' (expected min or max)");
}

CostKind parse_cost_kind(const std::string& s) {
  if (s == "euclidean") return CostKind::kEuclidean;
  if (s == "power") return CostKind::kPower;
  if (s == "zero") return CostKind::kZero;
  throw argument_error("unknown cost kind '" + s + "' (expected euclidean, power or zero)");
}

}  // namespace motkit
