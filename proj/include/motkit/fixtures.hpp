#pragma once

#include <cstdint>
#include <vector>

#include "motkit/cost.hpp"
#include "motkit/measures.hpp"
#include "motkit/mot.hpp"
#include "motkit/structure.hpp"

// Deterministic instances used by the tests, the acceptance suite and `motkit gen`.
namespace motkit::fixtures {

using motkit::Instance;

// delta_0 -> (delta_-1 + delta_1) / 2.
Instance forced1d(Sense sense = Sense::kMinimize);

// mu = (1/4, 1/2, 1/4) on {-1, 0, 1}, nu = (1/2, 1/2) on {-1, 1}.
Instance three_point(Sense sense = Sense::kMinimize);

// mu uniform on a 5x5 grid of [-0.2, 0.2]^2; each atom splits into x +- u_k
// with |u_k| = 1 along its own direction. Maximization of |x - y|.
Instance shell2d();

// mu uniform on 8 unit vectors at angles m pi/4; each atom moves by its own
// rotation of the four diagonal unit vectors, with weights (1/4, 1/4, 1/4, 1/4)
// in plan a and (1/8, 3/8, 1/8, 3/8) in plan b. Both plans have the same nu.
struct Radial4 {
  Instance instance;
  Coupling plan_a, plan_b;
};
Radial4 radial4();

// mu = nu uniform on n points of [0, 1]; maximization of |x - y|.
Instance identity_grid(std::size_t n);

// 1D supports: fibers {-1, 1} at 0 and {4, 6} at 5 (two classes), and fibers
// {-1, 1} at 0 and {0.5, 2.5} at 1.5 (one class).
SupportSet two_class_support();
SupportSet overlap_support();
// mu = (1/2, 1/2) on {0, 5} spread onto {-1, 1, 4, 6}.
Instance two_class_instance();

// 2D support whose three fibers merge in two rounds: the hulls of x1 and x2
// cross, and only their union reaches the fiber of x3.
SupportSet two_round_support();

// 2D support of short segments {x - eps u_x, x + eps u_x} on a grid, with
// pairwise distinct directions, so every paving class is a single x.
SupportSet nikodym_singletons(std::uint64_t seed, std::size_t side = 4, double eps = 0.3);
Instance nikodym_instance(std::uint64_t seed, std::size_t side = 4, double eps = 0.3);

// Random mu on [-1, 1]^d with nu a mean-preserving spread supported on at most
// ny atoms; some atoms keep part of their mass in place.
Instance random_spread(std::uint64_t seed, std::size_t d, std::size_t nx, std::size_t ny, Sense sense);

// mu = n grid points of [0, 1] with jittered weights, nu a spread onto at most
// ny atoms of [-0.5, 1.5].
Instance grid_spread_1d(std::uint64_t seed, std::size_t n, std::size_t ny, Sense sense);

// mu uniform on a side x side grid of [0, 1]^2, nu on 5 atoms of a jittered
// pentagon strictly containing the square.
Instance pentagon_2d(std::uint64_t seed, std::size_t side, Sense sense);

// Tilted graphs w = h + (0.3 + 0.4 h) v, h in [-1, 1], over |v| <= 1.5 with
// queries in |v| <= 1 and angle bound 1.2.
SegmentFamily tilted_family();
// n points on the family: v uniform in [-r, r], h uniform in [h_lo, h_hi].
std::vector<Point> family_queries(const SegmentFamily& family, std::size_t n, std::uint64_t seed);

// n quasi-uniform points on the sphere of radius r in R^3.
std::vector<Point> fibonacci_sphere(std::size_t n, double r = 1.0);

}  // namespace motkit::fixtures
