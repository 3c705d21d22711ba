#include <doctest.h>

#include <cmath>
#include <random>

#include "nasq/as_geometry.hpp"
#include "nasq/nas_distance.hpp"
#include "nasq/states.hpp"
#include "test_util.hpp"

using namespace nasq;

namespace {

Spectrum make_spec(std::initializer_list<double> vals) {
  RealVector v(Eigen::Index(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v[i++] = x;
  return Spectrum(std::move(v));
}

}  // namespace

TEST_SUITE("as_geometry") {

TEST_CASE("criterion values on the pinned spectra") {
  const auto flat = make_spec({0.25, 0.25, 0.25, 0.25});
  const auto v1 = is_absolutely_separable(flat, 2);
  CHECK(v1.is_as);
  CHECK(v1.criterion_value == doctest::Approx(-0.5).epsilon(1e-14));

  const auto boundary = make_spec({0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6});
  const auto v2 = is_absolutely_separable(boundary, 2);
  CHECK(v2.is_as);
  CHECK(v2.on_boundary);
  CHECK(std::abs(v2.criterion_value) < 1e-12);

  const auto pure = make_spec({1.0, 0.0, 0.0, 0.0});
  const auto v3 = is_absolutely_separable(pure, 2);
  CHECK(!v3.is_as);
  CHECK(v3.criterion_value == doctest::Approx(1.0));
}

TEST_CASE("criterion needs a 2d-point spectrum and a 2 x d state") {
  CHECK_THROWS_AS(as_criterion(make_spec({0.5, 0.3, 0.2}), 2), WrongLength);
  const DensityMatrix rho = random_density({3, 3}, 9, 5);
  CHECK_THROWS_AS(is_absolutely_separable(rho), Unsupported);
}

TEST_CASE("membership is a function of the spectrum only") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 50; ++t) {
    const DensityMatrix rho = random_density({2, 2}, 4, rng());
    const ComplexMatrix u = haar_random_unitary(4, rng());
    const DensityMatrix rotated({2, 2}, u * rho.mat() * u.adjoint());
    const auto a = is_absolutely_separable(rho);
    const auto b = is_absolutely_separable(rotated);
    CHECK(a.is_as == b.is_as);
    CHECK(std::abs(a.criterion_value - b.criterion_value) < 1e-9);
  }
}

TEST_CASE("flat-tail extremal coordinates reach the boundary exactly") {
  for (Eigen::Index d = 2; d <= 6; ++d) {
    const Eigen::Index k = 2 * d;
    BoundaryCoords coords;
    coords.a.push_back(3.0 / double(k + 2));
    for (Eigen::Index i = 1; i < k - 1; ++i) {
      coords.a.push_back(1.0 / double(k - i));  // lower bounds: flat tail
    }
    const Spectrum spec = boundary_spectrum(coords, d);
    CHECK(spec[0] == doctest::Approx(3.0 / double(k + 2)).epsilon(1e-14));
    CHECK(std::abs(as_criterion(spec, d)) <= 1e-10);
  }
}

TEST_CASE("fully flat spectrum cannot reach the boundary") {
  for (Eigen::Index d : {2, 3, 4}) {
    const Eigen::Index k = 2 * d;
    BoundaryCoords coords;
    for (Eigen::Index i = 0; i < k - 1; ++i) {
      coords.a.push_back(1.0 / double(k - i));
    }
    const Spectrum spec = boundary_spectrum(coords, d);
    for (Eigen::Index i = 0; i < k; ++i) {
      CHECK(spec[i] == doctest::Approx(1.0 / double(k)).epsilon(1e-12));
    }
    CHECK(as_criterion(spec, d) < -1e-3);
  }
}

TEST_CASE("random feasible coordinates give ordered unit-sum spectra") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index d = 3;
    const Eigen::Index k = 2 * d;
    BoundaryCoords coords;
    double prev = 0.0;
    for (Eigen::Index i = 0; i < k - 1; ++i) {
      const double lo = 1.0 / double(k - i);
      const double hi =
          (i == 0) ? 1.0 : std::min(1.0, prev / (1.0 - prev));
      const double a = lo + (hi - lo) * u01(rng);
      coords.a.push_back(a);
      prev = a;
    }
    const Spectrum spec = boundary_spectrum(coords, d);  // ctor validates
    CHECK(spec.size() == k);
  }
  BoundaryCoords bad;
  bad.a = {0.1, 0.5, 0.9};  // a1 below 1/4
  CHECK_THROWS_AS(boundary_spectrum(bad, 2), InfeasibleCoords);
}

TEST_CASE("projection pins the criterion to zero") {
  std::mt19937_64 rng(19);
  for (Eigen::Index d : {2, 3}) {
    for (int t = 0; t < 100; ++t) {
      const Spectrum spec = sample_boundary_spectrum(d, rng());
      CHECK(std::abs(as_criterion(spec, d)) <= 1e-10);
    }
  }

  // the projected constructor keeps the tail shape and rescales lambda_1
  BoundaryCoords coords;
  coords.a = {0.3, 0.42, 0.6};  // feasible, strictly inside the AS set
  const Spectrum raw = boundary_spectrum(coords, 2);
  CHECK(as_criterion(raw, 2) < -1e-3);
  const Spectrum proj = boundary_spectrum_projected(coords, 2);
  CHECK(std::abs(as_criterion(proj, 2)) <= 1e-12);
  for (int i = 1; i < 3; ++i) {
    CHECK(proj[i] / proj[i + 1] ==
          doctest::Approx(raw[i] / raw[i + 1]).epsilon(1e-12));
  }
}

TEST_CASE("lambda1 range on the boundary") {
  CHECK(lambda1_bounds(2).first == doctest::Approx(0.25));
  CHECK(lambda1_bounds(2).second == doctest::Approx(0.5));
  CHECK(lambda1_bounds(3).first == doctest::Approx(1.0 / 6.0));
  CHECK(lambda1_bounds(3).second == doctest::Approx(0.375));

  // independent route: ordered-simplex rejection samples near the
  // boundary stay within the bounds up to the acceptance band
  std::mt19937_64 rng(29);
  std::gamma_distribution<double> g1(1.0, 1.0);
  for (Eigen::Index d : {2, 3}) {
    const auto [lo, hi] = lambda1_bounds(d);
    const Eigen::Index k = 2 * d;
    int kept = 0;
    RealVector v(k);
    while (kept < 200) {
      for (Eigen::Index i = 0; i < k; ++i) v[i] = g1(rng);
      v /= v.sum();
      std::sort(v.data(), v.data() + k, std::greater<double>());
      Spectrum spec(v);
      const double c = as_criterion(spec, d);
      if (std::abs(c) > 1e-2) continue;  // keep a thin band at the boundary
      ++kept;
      CHECK(spec[0] > lo - 1e-2);
      CHECK(spec[0] <= hi + 1e-2);
    }
  }
}

TEST_CASE("nearest boundary state to a pure state") {
  // d = 2: weights (1/2, 1/6, 1/6, 1/6) on the state and its complement
  const PureState bell = test::random_pure({2, 2}, 1);  // any pure works
  const DensityMatrix near2 = nearest_as_pure(bell);
  const RealVector spec2 = eigvals_hermitian(near2.mat());
  CHECK(spec2[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(spec2[3] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(std::abs(as_criterion(Spectrum(spec2), 2)) <= 1e-10);

  // overlap <alpha| rho* |alpha> = 3/(2d+2)
  for (Eigen::Index d : {2, 3, 4}) {
    const PureState alpha = test::random_pure({2, d}, 40 + d);
    const DensityMatrix near = nearest_as_pure(alpha);
    const double overlap = std::real(
        (alpha.amplitudes().adjoint() * near.mat() * alpha.amplitudes())(0,
                                                                         0));
    CHECK(overlap == doctest::Approx(3.0 / double(2 * d + 2)).epsilon(1e-10));
    CHECK(std::abs(as_criterion(eig_hermitian(near.mat()).spectrum, d)) <=
          1e-10);
    // commutes with the projector onto alpha
    const ComplexMatrix proj =
        alpha.amplitudes() * alpha.amplitudes().adjoint();
    const ComplexMatrix comm = near.mat() * proj - proj * near.mat();
    CHECK(comm.cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("nearest_as_pure rejects systems without a qubit side") {
  CHECK_THROWS_AS(nearest_as_pure(test::random_pure({3, 3}, 1)),
                  BadDimension);
}

TEST_CASE("pure-state fidelity against its nearest boundary state is 1/2") {
  const PureState bell_vec = test::random_pure({2, 2}, 3);
  const DensityMatrix rho = DensityMatrix::pure(bell_vec);
  const DensityMatrix near = nearest_as_pure(bell_vec);
  CHECK(fidelity(rho, near) == doctest::Approx(0.5).epsilon(1e-10));
  // one bit of relative entropy
  CHECK(relative_entropy(rho, near) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("channels: conjugation preserves the spectrum, identity fixes") {
  std::mt19937_64 rng(57);
  const DensityMatrix rho = random_density({2, 2}, 4, rng());

  MixedUnitaryChannel single;
  single.weights = {1.0};
  single.unitaries = {haar_random_unitary(4, rng())};
  const DensityMatrix out = apply_channel(single, rho);
  CHECK((eigvals_hermitian(out.mat()) - eigvals_hermitian(rho.mat()))
            .cwiseAbs()
            .maxCoeff() < 1e-10);

  MixedUnitaryChannel ident;
  ident.weights = {1.0};
  ident.unitaries = {ComplexMatrix::Identity(4, 4)};
  CHECK((apply_channel(ident, rho).mat() - rho.mat()).cwiseAbs().maxCoeff() <
        1e-14);

  MixedUnitaryChannel bad;
  bad.weights = {0.5, 0.6};
  bad.unitaries = {ComplexMatrix::Identity(4, 4),
                   ComplexMatrix::Identity(4, 4)};
  CHECK_THROWS_AS(apply_channel(bad, rho), ParamOutOfRange);
}

TEST_CASE("the AS set is closed under sampled mixed-unitary channels") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 500; ++t) {
    const DensityMatrix rho = test::random_as_state(2, rng());
    const MixedUnitaryChannel ch = random_channel(4, 3, rng());
    const DensityMatrix out = apply_channel(ch, rho);
    CHECK(is_absolutely_separable(out, 1e-8).is_as);
  }
}

}  // TEST_SUITE
