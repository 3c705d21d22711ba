#pragma once

#include <span>
#include <vector>

#include "nasq/nas_distance.hpp"
#include "nasq/qcore.hpp"

namespace nasq {

/// Schatten-family metric d_p = [tr |rho^{1/p} - sigma^{1/p}|^p]^{1/p},
/// with the p = 1 convention (1/2) tr|rho - sigma|.
double dp_metric(const DensityMatrix& rho, const DensityMatrix& sigma,
                 int p);

/// Convex mix x rho + (1-x) sigma.
DensityMatrix mix_states(double x, const DensityMatrix& rho,
                         const DensityMatrix& sigma);

// A point rho_x = x rho + (1-x) rho* on the segment between a state and
// its nearest AS state.
struct SegmentPoint {
  double x = 0.0;
  DensityMatrix state;
};

SegmentPoint segment_point(double x, const DensityMatrix& rho,
                           const DensityMatrix& nearest);

struct SegmentRow {
  SegmentPoint point;
  double d_rho_rhox = 0.0;
  double d_rhox_nearest = 0.0;
  // d(rho, rho*) - d(rho, rho_x) - d(rho_x, rho*); nonpositive by the
  // triangle inequality, zero when the minimizing point is additive along
  // the segment
  double additivity_residual = 0.0;
  // trace distance between rho_x's own minimizer and rho*
  double reminimized_distance = 0.0;
};

struct SegmentReport {
  double d_direct = 0.0;
  DensityMatrix nearest;
  std::vector<SegmentRow> rows;
  double max_abs_residual = 0.0;
  double max_reminimized_distance = 0.0;
};

/// Walks the segment rho_x = x rho + (1-x) rho* between a non-AS state
/// and its d_p minimizer, reporting the additivity residual and the drift
/// of the re-minimized nearest state at each x.
SegmentReport verify_segment_property(const DensityMatrix& rho, int p,
                                      std::span<const double> xs,
                                      const OptimizerConfig& cfg = {});

struct EntanglementBound {
  double x_star = 0.0;   // sup{x : rho_x is PPT}
  double bound = 0.0;    // N(rho) - N(rho_{x*})
  DensityMatrix boundary_state;
  double boundary_pt_min = 0.0;  // PT floor at the crossing, ~0
};

/// Upper bound on the entanglement content of rho from the segment toward
/// its nearest AS state: the PPT crossing point x* is found by scan plus
/// bisection (separability is exactly PPT in 2 x 2 and 2 x 3), and the
/// bound is the measure drop between rho and rho_{x*}.  Throws
/// NotEntangled for PPT inputs.
EntanglementBound entanglement_upper_bound(const DensityMatrix& rho, int p,
                                           const OptimizerConfig& cfg = {});

}  // namespace nasq
