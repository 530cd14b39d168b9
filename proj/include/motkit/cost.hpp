#pragma once

#include <span>
#include <string>

namespace motkit {

enum class Sense { kMinimize, kMaximize };

enum class CostKind {
  kEuclidean,  // |x - y|
  kPower,      // |x - y|^p
  kZero,       // c = 0
};

// c(x, y) = scale * |x - y|^p. `scale` lets callers write -|x - y| without a
// separate kind; it defaults to 1 and is omitted from JSON when it is.
struct CostSpec {
  CostKind kind = CostKind::kEuclidean;
  double p = 1.0;
  double scale = 1.0;
  Sense sense = Sense::kMinimize;

  static CostSpec euclidean(Sense sense = Sense::kMinimize) { return {CostKind::kEuclidean, 1.0, 1.0, sense}; }
  static CostSpec power(double p, Sense sense = Sense::kMinimize) { return {CostKind::kPower, p, 1.0, sense}; }
  static CostSpec zero() { return {CostKind::kZero, 1.0, 0.0, Sense::kMinimize}; }

  double operator()(std::span<const double> x, std::span<const double> y) const;
  double of_distance(double r) const;

  // |x - y|^2 makes every martingale plan optimal; structure checks refuse it.
  bool is_quadratic() const { return kind == CostKind::kPower && p == 2.0; }

  // Throws on p <= 0 or non-finite parameters.
  void validate() const;
  std::string describe() const;
};

const char* to_string(Sense s);
const char* to_string(CostKind k);
Sense parse_sense(const std::string& s);
CostKind parse_cost_kind(const std::string& s);

}  // namespace motkit
