#pragma once

#include <vector>

#include "motkit/lp.hpp"
#include "motkit/measures.hpp"

namespace motkit::detail {

// Variables pi_ij (index i * |nu| + j) with rows: mu marginals, nu marginals,
// then d barycenter rows per mu atom.
lp::LinearProgram martingale_lp(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                const std::vector<double>& costs, lp::Direction direction);

Coupling coupling_from_primal(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                              const std::vector<double>& primal, double drop = 1e-12);

ConvexWitness witness_from_farkas(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                  const std::vector<double>& farkas);

}  // namespace motkit::detail
