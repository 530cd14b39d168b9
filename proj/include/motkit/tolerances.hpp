#pragma once

namespace motkit {

struct Tolerances {
  double geom = 1e-9;     // point membership / coincidence
  double strict = 1e-7;   // strict positivity of convex weights
  double rank = 1e-8;     // relative singular-value cutoff for affine spans
  double feas = 1e-8;     // LP and coupling residuals
  double gap = 1e-6;      // relative duality gap, scaled by (1 + |value|)
};

}  // namespace motkit
