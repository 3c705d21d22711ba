#pragma once

#include <optional>

#include "nasq/nas_distance.hpp"
#include "nasq/qcore.hpp"
#include "nasq/states.hpp"

namespace nasq {

// Canonical two-qubit nonlocal unitary
//   U = exp[i (a1 X(x)X + a2 Y(x)Y + a3 Z(x)Z)],
// the three-parameter family sufficient for optimal entanglement
// generation in 2 x 2.  Fundamental domain [0, pi/2]^3.
struct NonlocalUnitaryParams {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
};

/// Throws ParamOutOfRange outside the fundamental domain.
ComplexMatrix canonical_unitary(const NonlocalUnitaryParams& params);

// Hermitian operator with tr(W rho_AS) >= 0 for every absolutely
// separable state and tr(W rho) < 0 for at least one non-AS state.
struct WitnessOperator {
  enum class Provenance { FromPtEigenvector, Explicit };
  ComplexMatrix mat;
  Provenance provenance = Provenance::Explicit;
};

/// Entanglement witness |phi><phi|^{T_B} built from the eigenvector of the
/// smallest partial-transpose eigenvalue.  tr(W rho) equals that
/// eigenvalue.  Throws NotNpt when the state has no negative PT
/// eigenvalue.
WitnessOperator optimal_witness_from_ppt(const DensityMatrix& rho,
                                         double tol = 1e-9);

struct WitnessConfig {
  int grid_points = 40;    // per axis of [0, pi/2]^3
  int refine_starts = 5;   // best grid cells polished by simplex descent
  double refine_tol = 1e-10;
  int threads = 1;
  bool force_grid = false;  // route pure 2x2 inputs through the grid
};

struct WitnessCertificate {
  ComplexMatrix global_unitary;    // U attaining the optimum
  WitnessOperator witness;         // W, entanglement witness for U rho U^dag
  WitnessOperator rotated_witness; // W~ = U^dag W U, non-AS witness for rho
  NonlocalUnitaryParams params;    // canonical parameters (grid path only)
};

struct WitnessResult {
  double value = 0.0;
  double min_pt_eigenvalue = 0.0;  // optimized over the unitary family
  NasMethod method = NasMethod::FullNumeric;
  std::optional<WitnessCertificate> certificate;  // absent when value == 0
};

/// Witness-based measure max[0, -min_{W,U} tr(U^dag W U rho)].
///
/// Pure states in d x d take the analytic route: the optimal unitary maps
/// the state to the maximally entangled one, whose PT eigenvector supplies
/// the witness, giving exactly 1/d.  Arbitrary 2 x 2 states take a
/// grid-plus-refinement search over the canonical unitary family and the
/// inequivalent eigenvalue orderings.  Mixed states outside 2 x 2 are
/// unsupported.
WitnessResult nas_witness_measure(const DensityMatrix& rho,
                                  const WitnessConfig& cfg = {});

/// Closed form max[0, (3p-1)/4] for the modified Werner family.
double nas_witness_werner(const WernerParams& params);

/// max[0, (l1 - l3 - 2 sqrt(l2 l4))/2] for a 4-point spectrum.  An upper
/// bound on the 2 x 2 witness measure (it is the maximal concurrence over
/// the unitary orbit, halved); exact on Werner-type and pure spectra but
/// strictly larger than the measure for generic mixed spectra, which the
/// witness-identity oracle demonstrates.
double witness_spectral_bound(const Spectrum& spec);

}  // namespace nasq
