#pragma once

#include <cstdint>

#include "nasq/as_geometry.hpp"
#include "nasq/qcore.hpp"
#include "nasq/states.hpp"

namespace nasq {

// Distance flavor used for the measure.  Schatten p = 1 is the trace
// distance (1/2 tr|rho - sigma|); p = 2 is the square-root metric of the
// d_p family, which is distinct from the Hilbert-Schmidt distance.
struct DistanceKind {
  enum class Tag { RelativeEntropy, Bures, HilbertSchmidt, TraceDistance,
                   SchattenP };
  Tag tag = Tag::RelativeEntropy;
  int p = 0;

  static DistanceKind relative_entropy() {
    return {Tag::RelativeEntropy, 0};
  }
  static DistanceKind bures() { return {Tag::Bures, 0}; }
  static DistanceKind hilbert_schmidt() { return {Tag::HilbertSchmidt, 0}; }
  static DistanceKind trace() { return {Tag::TraceDistance, 1}; }
  static DistanceKind schatten(int p);

  bool operator==(const DistanceKind&) const = default;
};

const char* to_string(DistanceKind kind);

/// Distance between two states for the given kind.  Relative entropy is in
/// bits and throws SupportViolation where undefined.
double distance(const DensityMatrix& rho, const DensityMatrix& sigma,
                DistanceKind kind);

/// Same distance for commuting states given their matched sorted spectra.
double aligned_distance(const RealVector& alpha, const RealVector& lambda,
                        DistanceKind kind);

enum class NasMethod { ClosedForm, ConjectureAligned, FullNumeric };
const char* to_string(NasMethod m);

struct OptimizerConfig {
  int max_iters = 2000;
  int restarts = 8;
  double tol = 1e-8;
  std::uint64_t seed = 0;
};

struct NasResult {
  double value = 0.0;          // bits for relative entropy
  DensityMatrix nearest_as;    // certificate: realized minimizer
  NasMethod method = NasMethod::FullNumeric;
  // aligned-minus-full discrepancy when both paths ran; 0 otherwise
  double gap_estimate = 0.0;
};

/// Closed form for the relative-entropy measure of any pure state in
/// 2 x d: log2((2d+2)/3).
double nas_pure_relent(Eigen::Index d);

/// Closed form for the Bures measure of any pure state in 2 x d:
/// 2 - 2 sqrt(3/(2d+2)).
double nas_pure_bures(Eigen::Index d);

/// Closed forms for the modified Werner family (relative entropy and
/// Bures); zero for p <= 1/3 where the state is absolutely separable.
/// The certificate has spectrum (1/2, 1/6, 1/6, 1/6) in the state's own
/// eigenbasis.
NasResult nas_werner(const WernerParams& params, DistanceKind kind);

/// Minimum distance from rho to the absolutely separable set in 2 x d,
/// d <= 4.  ConjectureAligned restricts the candidate to rho's eigenbasis
/// with matched eigenvalue ordering and optimizes the boundary spectrum;
/// FullNumeric additionally optimizes the candidate eigenbasis and probes
/// interior spectra, and is seeded with the aligned optimum so its value
/// never exceeds it.
NasResult nas_numeric(const DensityMatrix& rho, DistanceKind kind,
                      const OptimizerConfig& cfg = {},
                      NasMethod method = NasMethod::FullNumeric);

/// Spectral upper bound on the measure from the flat-tail boundary state
/// aligned with rho's eigenbasis.  Tight (equality) for pure inputs.
double nas_upper_bound(const DensityMatrix& rho, DistanceKind kind);

struct MonotonicityReport {
  double value_before = 0.0;
  double value_after = 0.0;
  double slack = 0.0;  // before - after; nonnegative up to optimizer noise
};

/// Measures the state before and after a mixed-unitary channel.
MonotonicityReport verify_monotonicity(const DensityMatrix& rho,
                                       const MixedUnitaryChannel& ch,
                                       DistanceKind kind,
                                       const OptimizerConfig& cfg = {});

}  // namespace nasq
