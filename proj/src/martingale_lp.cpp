#include "martingale_lp.hpp"

#include <algorithm>
#include <cmath>

namespace motkit::detail {

lp::LinearProgram martingale_lp(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                const std::vector<double>& costs, lp::Direction direction) {
  const std::size_t n = mu.size(), m = nu.size(), d = mu.dim();
  lp::LinearProgram prog(direction);
  for (std::size_t v = 0; v < n * m; ++v) prog.add_variable(costs.empty() ? 0.0 : costs[v]);
  for (std::size_t i = 0; i < n; ++i) {
    lp::Row r;
    for (std::size_t j = 0; j < m; ++j) r.terms.emplace_back(i * m + j, 1.0);
    r.rhs = mu.weight(i);
    prog.add_row(std::move(r));
  }
  for (std::size_t j = 0; j < m; ++j) {
    lp::Row r;
    for (std::size_t i = 0; i < n; ++i) r.terms.emplace_back(i * m + j, 1.0);
    r.rhs = nu.weight(j);
    prog.add_row(std::move(r));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      lp::Row r;
      for (std::size_t j = 0; j < m; ++j) {
        const double a = nu.atom(j)[k] - mu.atom(i)[k];
        if (a != 0.0) r.terms.emplace_back(i * m + j, a);
      }
      prog.add_row(std::move(r));
    }
  return prog;
}

Coupling coupling_from_primal(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                              const std::vector<double>& primal, double drop) {
  const std::size_t n = mu.size(), m = nu.size();
  std::vector<CouplingEntry> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (primal[i * m + j] > drop) entries.push_back({i, j, primal[i * m + j]});
  return Coupling(mu, nu, std::move(entries));
}

// Farkas multipliers (a on mu rows, v on nu rows, g on barycenter rows) satisfy
// a_i + v_j + g_i.(y_j - x_i) <= 0, so phi = max_i (a_i + g_i.(y - x_i)) has
// phi(y_j) <= -v_j while phi(x_i) >= a_i.
ConvexWitness witness_from_farkas(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                  const std::vector<double>& y) {
  const std::size_t n = mu.size(), m = nu.size(), d = mu.dim();
  ConvexWitness w;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w.anchors.push_back(mu.atom(i));
    w.offsets.push_back(y[i]);
    Point g(d);
    for (std::size_t k = 0; k < d; ++k) g[k] = y[n + m + i * d + k];
    scale = std::max(scale, std::abs(y[i]));
    for (double v : g) scale = std::max(scale, std::abs(v));
    w.slopes.push_back(std::move(g));
  }
  if (scale > 0.0) {
    for (double& a : w.offsets) a /= scale;
    for (auto& g : w.slopes)
      for (double& v : g) v /= scale;
  }
  for (std::size_t i = 0; i < n; ++i) w.mu_integral += mu.weight(i) * w(mu.atom(i));
  for (std::size_t j = 0; j < m; ++j) w.nu_integral += nu.weight(j) * w(nu.atom(j));
  return w;
}

}  // namespace motkit::detail
