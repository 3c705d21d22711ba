#include "nasq/as_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace nasq {

namespace {

void require_spec_len(const Spectrum& spec, Eigen::Index d) {
  if (d < 2) throw BadDimension("as_criterion: d must be >= 2");
  if (spec.size() != 2 * d) {
    throw WrongLength("as_criterion: spectrum must have 2d entries");
  }
}

}  // namespace

double as_criterion(const Spectrum& spec, Eigen::Index d) {
  require_spec_len(spec, d);
  const Eigen::Index k = 2 * d;
  const double l1 = spec[0];
  const double l_2d1 = spec[k - 2];
  const double l_2d = std::max(spec[k - 1], 0.0);
  const double l_2d2 = std::max(spec[k - 3], 0.0);
  return l1 - l_2d1 - 2.0 * std::sqrt(l_2d * l_2d2);
}

AsVerdict is_absolutely_separable(const Spectrum& spec, Eigen::Index d,
                                  double tol) {
  const double c = as_criterion(spec, d);
  return AsVerdict{c <= tol, c, std::abs(c) <= tol};
}

AsVerdict is_absolutely_separable(const DensityMatrix& rho, double tol) {
  const Eigen::Index lo = std::min(rho.dims().m, rho.dims().n);
  const Eigen::Index hi = std::max(rho.dims().m, rho.dims().n);
  if (lo != 2) {
    throw Unsupported(
        "is_absolutely_separable: spectral test requires a 2 x d system");
  }
  return is_absolutely_separable(eig_hermitian(rho.mat()).spectrum, hi, tol);
}

void validate(const BoundaryCoords& coords, Eigen::Index d) {
  if (d < 2) throw BadDimension("BoundaryCoords: d must be >= 2");
  const Eigen::Index k = 2 * d;
  if (Eigen::Index(coords.a.size()) != k - 1) {
    throw InfeasibleCoords("BoundaryCoords: expected 2d-1 coordinates");
  }
  const double slack = 1e-12;
  for (Eigen::Index i = 0; i < k - 1; ++i) {
    const double ai = coords.a[i];
    const double lo = 1.0 / double(k - i);
    double hi = 1.0;
    if (i > 0) {
      const double prev = coords.a[i - 1];
      hi = std::min(1.0, prev / (1.0 - prev));
    }
    if (ai < lo - slack || ai > hi + slack) {
      throw InfeasibleCoords("BoundaryCoords: coordinate " +
                             std::to_string(i) + " outside its interval");
    }
  }
}

Spectrum boundary_spectrum(const BoundaryCoords& coords, Eigen::Index d) {
  validate(coords, d);
  const Eigen::Index k = 2 * d;
  RealVector lam(k);
  double prod = 1.0;
  for (Eigen::Index i = 0; i < k - 1; ++i) {
    lam[i] = coords.a[i] * prod;
    prod *= (1.0 - coords.a[i]);
  }
  lam[k - 1] = prod;
  // Feasible coordinates give an ordered spectrum up to rounding; sort to
  // absorb ties at interval endpoints.
  return Spectrum::from_unsorted(std::move(lam));
}

Spectrum boundary_spectrum_from_tail(RealVector tail, Eigen::Index d) {
  const Eigen::Index k = 2 * d;
  if (tail.size() != k - 1) {
    throw InfeasibleCoords("boundary tail must have 2d-1 weights");
  }
  if (tail.minCoeff() < 0.0) {
    throw InfeasibleCoords("boundary tail weights must be nonnegative");
  }
  std::sort(tail.data(), tail.data() + tail.size(), std::greater<double>());
  const double total = tail.sum();
  if (!(total > 0.0)) {
    throw InfeasibleCoords("boundary tail weights sum to zero");
  }
  tail /= total;
  // With the tail shape t fixed, scaling lambda_{i>1} by s = 1 - lambda_1
  // makes the boundary equality linear in lambda_1:
  //   lambda_1 = s c,  c = t_{2d-2} + 2 sqrt(t_{2d-3} t_{2d-1})  (1-based),
  // giving lambda_1 = c / (1 + c).
  const double c = tail[k - 3] + 2.0 * std::sqrt(tail[k - 4] * tail[k - 2]);
  if (c < tail[0]) {
    throw InfeasibleCoords(
        "no ordered boundary spectrum exists for this tail shape");
  }
  RealVector lam(k);
  lam[0] = c / (1.0 + c);
  for (Eigen::Index i = 0; i < k - 1; ++i) lam[i + 1] = tail[i] / (1.0 + c);
  return Spectrum(std::move(lam));
}

Spectrum boundary_spectrum_projected(const BoundaryCoords& coords,
                                     Eigen::Index d) {
  validate(coords, d);
  const Eigen::Index k = 2 * d;
  // Tail shape implied by a_2 .. a_{2d-1} alone.
  RealVector tail(k - 1);
  double prod = 1.0;
  for (Eigen::Index i = 1; i < k - 1; ++i) {
    tail[i - 1] = coords.a[i] * prod;
    prod *= (1.0 - coords.a[i]);
  }
  tail[k - 2] = prod;
  return boundary_spectrum_from_tail(std::move(tail), d);
}

std::pair<double, double> lambda1_bounds(Eigen::Index d) {
  if (d < 2) throw BadDimension("lambda1_bounds: d must be >= 2");
  return {1.0 / double(2 * d), 3.0 / double(2 * (d + 1))};
}

Spectrum sample_boundary_spectrum(Eigen::Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> gamma1(1.0, 1.0);
  const Eigen::Index k = 2 * d;
  RealVector tail(k - 1);
  while (true) {
    for (Eigen::Index i = 0; i < k - 1; ++i) tail[i] = gamma1(rng);
    try {
      return boundary_spectrum_from_tail(tail, d);
    } catch (const InfeasibleCoords&) {
      // tail shape too top-heavy for an ordered boundary point; redraw
    }
  }
}

DensityMatrix nearest_as_pure(const PureState& alpha) {
  const Eigen::Index lo = std::min(alpha.dims().m, alpha.dims().n);
  const Eigen::Index d = std::max(alpha.dims().m, alpha.dims().n);
  if (lo != 2) {
    throw BadDimension("nearest_as_pure: state must live in 2 x d");
  }
  const Eigen::Index k = 2 * d;
  const ComplexVector& v = alpha.amplitudes();
  ComplexMatrix proj = v * v.adjoint();
  ComplexMatrix mat =
      (3.0 / double(k + 2)) * proj +
      (1.0 / double(k + 2)) * (ComplexMatrix::Identity(k, k) - proj);
  return DensityMatrix(alpha.dims(), std::move(mat));
}

void validate(const MixedUnitaryChannel& ch) {
  if (ch.weights.size() != ch.unitaries.size() || ch.weights.empty()) {
    throw DimensionMismatch("MixedUnitaryChannel: weights/unitaries mismatch");
  }
  double sum = 0.0;
  for (double w : ch.weights) {
    if (w < 0.0) throw ParamOutOfRange("MixedUnitaryChannel: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ParamOutOfRange("MixedUnitaryChannel: weights do not sum to 1");
  }
  const Eigen::Index n = ch.unitaries.front().rows();
  for (const auto& u : ch.unitaries) {
    if (u.rows() != n || u.cols() != n) {
      throw DimensionMismatch("MixedUnitaryChannel: mixed unitary sizes");
    }
    if (!is_unitary(u, 1e-10)) {
      throw ParamOutOfRange("MixedUnitaryChannel: entry is not unitary");
    }
  }
}

DensityMatrix apply_channel(const MixedUnitaryChannel& ch,
                            const DensityMatrix& rho) {
  validate(ch);
  if (ch.unitaries.front().rows() != rho.size()) {
    throw DimensionMismatch("apply_channel: unitary size != state size");
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.size(), rho.size());
  for (std::size_t i = 0; i < ch.weights.size(); ++i) {
    out += ch.weights[i] * ch.unitaries[i] * rho.mat() *
           ch.unitaries[i].adjoint();
  }
  out = 0.5 * (out + out.adjoint());
  return DensityMatrix(rho.dims(), std::move(out));
}

MixedUnitaryChannel random_channel(Eigen::Index dim, int count,
                                   std::uint64_t seed) {
  if (count < 1) throw ParamOutOfRange("random_channel: count must be >= 1");
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> gamma1(1.0, 1.0);
  MixedUnitaryChannel ch;
  double sum = 0.0;
  for (int i = 0; i < count; ++i) {
    ch.weights.push_back(gamma1(rng));
    sum += ch.weights.back();
    ch.unitaries.push_back(haar_random_unitary(dim, rng()));
  }
  for (double& w : ch.weights) w /= sum;
  // Rounding from the normalization can leave the sum a few ulp off 1.
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < ch.weights.size(); ++i) acc += ch.weights[i];
  ch.weights.back() = 1.0 - acc;
  return ch;
}

}  // namespace nasq
