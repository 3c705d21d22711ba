#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nasq/qcore.hpp"

namespace nasq {

// In 2 x d, a spectrum belongs to the absolutely separable set iff
//   lambda_1 - lambda_{2d-1} - 2 sqrt(lambda_{2d} lambda_{2d-2}) <= 0,
// with equality exactly on the boundary of the set.
struct AsVerdict {
  bool is_as = false;
  double criterion_value = 0.0;
  bool on_boundary = false;
};

/// The criterion scalar for a 2d-point spectrum.
double as_criterion(const Spectrum& spec, Eigen::Index d);

/// Membership test in spectrum coordinates.  Throws WrongLength unless the
/// spectrum has 2d entries with d >= 2.
AsVerdict is_absolutely_separable(const Spectrum& spec, Eigen::Index d,
                                  double tol = 1e-9);

/// Convenience overload for qubit-qudit states.  Throws Unsupported when
/// min(m, n) >= 3: the spectral test characterizes absolute separability
/// only on 2 x d, and silently falling back to necessary conditions would
/// misclassify.
AsVerdict is_absolutely_separable(const DensityMatrix& rho,
                                  double tol = 1e-9);

// Nested stick-breaking coordinates for an ordered 2d-point spectrum:
//   lambda_k = a_k prod_{i<k} (1 - a_i),  lambda_{2d} = prod (1 - a_i),
// feasible iff 1/(2d) <= a_1 <= 1 and
//   1/(2d-i+1) <= a_i <= min(1, a_{i-1}/(1-a_{i-1})).
struct BoundaryCoords {
  std::vector<double> a;  // 2d-1 entries
};

/// Throws InfeasibleCoords when a coordinate leaves its nested interval.
void validate(const BoundaryCoords& coords, Eigen::Index d);

/// Ordered spectrum from nested coordinates (no boundary constraint).
Spectrum boundary_spectrum(const BoundaryCoords& coords, Eigen::Index d);

/// Same, but rescales a_1 so the criterion is exactly zero for the given
/// tail shape.  Throws InfeasibleCoords when no ordered boundary spectrum
/// with that tail shape exists.
Spectrum boundary_spectrum_projected(const BoundaryCoords& coords,
                                     Eigen::Index d);

/// Boundary spectrum from an arbitrary positive tail shape (2d-1 weights,
/// unordered is fine): the tail is sorted and normalized and lambda_1 is
/// solved from the boundary equality.  Core primitive behind the
/// projected constructor and the boundary samplers.
Spectrum boundary_spectrum_from_tail(RealVector tail, Eigen::Index d);

/// Range of the top eigenvalue on the boundary: (1/(2d), 3/(2(d+1))],
/// exclusive below, inclusive above.
std::pair<double, double> lambda1_bounds(Eigen::Index d);

/// Uniform-ish sample of the boundary manifold: Dirichlet tail shape plus
/// the exact lambda_1 solve.  Deterministic per rng state.
Spectrum sample_boundary_spectrum(Eigen::Index d, std::uint64_t seed);

/// The closest boundary state to a pure state |alpha> in 2 x d:
///   (3/(2d+2)) |alpha><alpha| + (1/(2d+2)) (I - |alpha><alpha|).
/// Shares |alpha>'s eigenbasis and sits exactly on the boundary.
DensityMatrix nearest_as_pure(const PureState& alpha);

// Probabilistic mixture of global unitary conjugations.  Maps the
// absolutely separable set into itself.
struct MixedUnitaryChannel {
  std::vector<double> weights;
  std::vector<ComplexMatrix> unitaries;
};

/// Throws ParamOutOfRange / DimensionMismatch on invalid weights or
/// non-unitary entries.
void validate(const MixedUnitaryChannel& ch);

DensityMatrix apply_channel(const MixedUnitaryChannel& ch,
                            const DensityMatrix& rho);

/// Seeded channel with `count` Haar unitaries and Dirichlet weights.
MixedUnitaryChannel random_channel(Eigen::Index dim, int count,
                                   std::uint64_t seed);

}  // namespace nasq
