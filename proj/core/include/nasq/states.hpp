#pragma once

#include <cstdint>

#include "nasq/qcore.hpp"

namespace nasq {

// Parameters of the modified Werner family
//   rho_W = p |xi><xi| + (1-p)/4 I,   |xi> = cos(g)|00> + e^{i phi} sin(g)|11>.
struct WernerParams {
  double p = 0.0;      // noise weight, [0,1]
  double gamma = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi]
};

/// Throws ParamOutOfRange unless all three parameters are in range.
void validate(const WernerParams& params);

/// The modified Werner state as a 2x2-bipartite density matrix.  Its
/// spectrum is ((1+3p)/4, (1-p)/4 x3) independent of gamma and phi.
DensityMatrix werner(const WernerParams& params);

enum class WernerClass { AS, NonAsSeparable, Entangled, Boundary };

/// p <= 1/3: absolutely separable regardless of gamma.  Beyond
/// 1/(1 + 2|sin 2 gamma|) the state is NPT and hence entangled; in between
/// it is separable but some global unitary can entangle it.  Within tol of
/// either threshold the verdict is Boundary.
WernerClass classify_werner(const WernerParams& params, double tol = 1e-9);

/// 1/(1 + 2|sin 2 gamma|); +infinity when |xi> is a product state
/// (the family is then never entangled).
double werner_entanglement_threshold(double gamma);

/// (1/sqrt(d)) sum_i |ii> in d x d.
PureState max_entangled(Eigen::Index d);

/// Ginibre-sampled density matrix G G^dagger / tr with G of width `rank`.
/// Deterministic for a fixed seed.
DensityMatrix random_density(Dims dims, Eigen::Index rank, std::uint64_t seed);

const char* to_string(WernerClass c);

}  // namespace nasq
