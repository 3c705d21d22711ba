#include "nasq/states.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace nasq {

void validate(const WernerParams& params) {
  if (!(params.p >= 0.0 && params.p <= 1.0)) {
    throw ParamOutOfRange("WernerParams: p outside [0,1]");
  }
  if (!(params.gamma >= 0.0 && params.gamma <= std::numbers::pi)) {
    throw ParamOutOfRange("WernerParams: gamma outside [0,pi]");
  }
  if (!(params.phi >= 0.0 && params.phi <= 2.0 * std::numbers::pi)) {
    throw ParamOutOfRange("WernerParams: phi outside [0,2pi]");
  }
}

DensityMatrix werner(const WernerParams& params) {
  validate(params);
  ComplexVector xi = ComplexVector::Zero(4);
  xi[0] = std::cos(params.gamma);
  xi[3] = std::polar(std::sin(params.gamma), params.phi);
  ComplexMatrix mat = params.p * (xi * xi.adjoint());
  mat += (1.0 - params.p) / 4.0 * ComplexMatrix::Identity(4, 4);
  return DensityMatrix({2, 2}, std::move(mat));
}

double werner_entanglement_threshold(double gamma) {
  const double s = std::abs(std::sin(2.0 * gamma));
  if (s <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (1.0 + 2.0 * s);
}

WernerClass classify_werner(const WernerParams& params, double tol) {
  validate(params);
  const double as_threshold = 1.0 / 3.0;
  const double ent_threshold = werner_entanglement_threshold(params.gamma);
  if (std::abs(params.p - as_threshold) <= tol) return WernerClass::Boundary;
  if (std::isfinite(ent_threshold) &&
      std::abs(params.p - ent_threshold) <= tol) {
    return WernerClass::Boundary;
  }
  if (params.p < as_threshold) return WernerClass::AS;
  if (params.p > ent_threshold) return WernerClass::Entangled;
  return WernerClass::NonAsSeparable;
}

PureState max_entangled(Eigen::Index d) {
  if (d < 2) throw BadDimension("max_entangled: d must be >= 2");
  ComplexVector amp = ComplexVector::Zero(d * d);
  const double w = 1.0 / std::sqrt(double(d));
  for (Eigen::Index i = 0; i < d; ++i) amp[i * d + i] = w;
  return PureState({d, d}, std::move(amp));
}

DensityMatrix random_density(Dims dims, Eigen::Index rank,
                             std::uint64_t seed) {
  const Eigen::Index n = dims.total();
  if (rank < 1 || rank > n) {
    throw BadRank("random_density: rank must be in [1, m*n]");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(n, rank);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < rank; ++j) {
      g(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  ComplexMatrix mat = g * g.adjoint();
  mat = 0.5 * (mat + mat.adjoint());
  mat /= mat.trace().real();
  return DensityMatrix(dims, std::move(mat));
}

const char* to_string(WernerClass c) {
  switch (c) {
    case WernerClass::AS: return "AS";
    case WernerClass::NonAsSeparable: return "NonAS-Separable";
    case WernerClass::Entangled: return "Entangled";
    case WernerClass::Boundary: return "Boundary";
  }
  return "unknown";
}

}  // namespace nasq
