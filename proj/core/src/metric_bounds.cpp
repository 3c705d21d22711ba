#include "nasq/metric_bounds.hpp"

#include <algorithm>
#include <cmath>

namespace nasq {

double dp_metric(const DensityMatrix& rho, const DensityMatrix& sigma,
                 int p) {
  return distance(rho, sigma, DistanceKind::schatten(p));
}

DensityMatrix mix_states(double x, const DensityMatrix& rho,
                         const DensityMatrix& sigma) {
  if (!(rho.dims() == sigma.dims())) {
    throw DimensionMismatch("mix_states: dims differ");
  }
  if (x < 0.0 || x > 1.0) throw ParamOutOfRange("mix_states: x outside [0,1]");
  return DensityMatrix(rho.dims(),
                       x * rho.mat() + (1.0 - x) * sigma.mat());
}

SegmentPoint segment_point(double x, const DensityMatrix& rho,
                           const DensityMatrix& nearest) {
  return SegmentPoint{x, mix_states(x, rho, nearest)};
}

SegmentReport verify_segment_property(const DensityMatrix& rho, int p,
                                      std::span<const double> xs,
                                      const OptimizerConfig& cfg) {
  const DistanceKind kind = DistanceKind::schatten(p);
  const NasResult base = nas_numeric(rho, kind, cfg);

  SegmentReport report{dp_metric(rho, base.nearest_as, p), base.nearest_as,
                       {}, 0.0, 0.0};
  for (double x : xs) {
    SegmentRow row{segment_point(x, rho, base.nearest_as), 0, 0, 0, 0};
    row.d_rho_rhox = dp_metric(rho, row.point.state, p);
    row.d_rhox_nearest = dp_metric(row.point.state, base.nearest_as, p);
    row.additivity_residual =
        report.d_direct - row.d_rho_rhox - row.d_rhox_nearest;
    const NasResult re = nas_numeric(row.point.state, kind, cfg);
    row.reminimized_distance = trace_distance(re.nearest_as, base.nearest_as);
    report.max_abs_residual =
        std::max(report.max_abs_residual, std::abs(row.additivity_residual));
    report.max_reminimized_distance =
        std::max(report.max_reminimized_distance, row.reminimized_distance);
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

double pt_min_on_segment(const DensityMatrix& rho,
                         const DensityMatrix& nearest, double x) {
  const ComplexMatrix m =
      x * rho.mat() + (1.0 - x) * nearest.mat();
  return eigvals_hermitian(partial_transpose(m, rho.dims()), 1e-10)
      .minCoeff();
}

}  // namespace

EntanglementBound entanglement_upper_bound(const DensityMatrix& rho, int p,
                                           const OptimizerConfig& cfg) {
  const Eigen::Index lo = std::min(rho.dims().m, rho.dims().n);
  const Eigen::Index hi = std::max(rho.dims().m, rho.dims().n);
  if (lo != 2 || hi > 3) {
    throw Unsupported(
        "entanglement_upper_bound: PPT decides separability only in 2 x 2 "
        "and 2 x 3");
  }
  if (pt_min_eigenvalue(rho) >= -1e-9) {
    throw NotEntangled("entanglement_upper_bound: state is PPT");
  }

  const DistanceKind kind = DistanceKind::schatten(p);
  const NasResult base = nas_numeric(rho, kind, cfg);
  auto g = [&](double x) { return pt_min_on_segment(rho, base.nearest_as, x); };

  // g(0) >= 0 (AS states are PPT) and g(1) < 0.  A coarse scan guards
  // against multiple crossings before bisecting the top one.
  const int coarse = 101;
  int sign_changes = 0;
  double prev = g(0.0);
  for (int i = 1; i < coarse; ++i) {
    const double cur = g(double(i) / double(coarse - 1));
    if ((prev < 0.0) != (cur < 0.0)) ++sign_changes;
    prev = cur;
  }
  double lo_x = 0.0, hi_x = 1.0;
  if (sign_changes > 1) {
    const int fine = 10000;
    for (int i = fine - 1; i >= 0; --i) {
      const double x = double(i) / double(fine);
      if (g(x) >= 0.0) {
        lo_x = x;
        hi_x = double(i + 1) / double(fine);
        break;
      }
    }
  }
  // bisect sup{x : PPT} on [lo_x, hi_x]; the PT floor moves with slope at
  // most 2 in x, so 5e-9 in x keeps |floor| below 1e-8 at the crossing
  while (hi_x - lo_x > 5e-9) {
    const double mid = 0.5 * (lo_x + hi_x);
    if (g(mid) >= 0.0) {
      lo_x = mid;
    } else {
      hi_x = mid;
    }
  }
  const SegmentPoint crossing = segment_point(lo_x, rho, base.nearest_as);
  const double n_at_boundary = nas_numeric(crossing.state, kind, cfg).value;
  return EntanglementBound{crossing.x, base.value - n_at_boundary,
                           crossing.state, g(crossing.x)};
}

}  // namespace nasq
