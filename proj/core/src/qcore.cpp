#include "nasq/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace nasq {

namespace {

constexpr double kZeroEig = 1e-12;  // eigenvalues below this count as zero

void require_square(const ComplexMatrix& a, const char* who) {
  if (a.rows() != a.cols()) {
    throw DimensionMismatch(std::string(who) + ": matrix is not square");
  }
}

void require_same_dims(const DensityMatrix& a, const DensityMatrix& b,
                       const char* who) {
  if (!(a.dims() == b.dims())) {
    throw DimensionMismatch(std::string(who) + ": operands have different dims");
  }
}

}  // namespace

double hermiticity_defect(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return hermiticity_defect(a) <= tol;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  ComplexMatrix g = u.adjoint() * u;
  g -= ComplexMatrix::Identity(u.rows(), u.cols());
  return g.cwiseAbs().maxCoeff() <= tol;
}

Spectrum::Spectrum(RealVector values) : values_(std::move(values)) {
  if (values_.size() == 0) throw WrongLength("Spectrum: empty");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (v < -1e-10 || v > 1.0 + 1e-10) {
      throw ParamOutOfRange("Spectrum: value outside [0,1]");
    }
    if (i > 0 && values_[i - 1] < v - 1e-12) {
      throw ParamOutOfRange("Spectrum: not sorted non-increasing");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ParamOutOfRange("Spectrum: does not sum to 1");
  }
}

Spectrum Spectrum::from_unsorted(RealVector values) {
  std::sort(values.data(), values.data() + values.size(),
            std::greater<double>());
  return Spectrum(std::move(values));
}

DensityMatrix::DensityMatrix(Dims dims, ComplexMatrix mat)
    : dims_(dims), mat_(std::move(mat)) {
  if (dims_.m < 1 || dims_.n < 1) {
    throw BadDimension("DensityMatrix: dims must be positive");
  }
  if (mat_.rows() != dims_.total() || mat_.cols() != dims_.total()) {
    throw DimensionMismatch("DensityMatrix: matrix size does not match dims");
  }
  if (!is_hermitian(mat_, 1e-12)) {
    throw NotHermitian("DensityMatrix: not Hermitian within 1e-12");
  }
  if (std::abs(mat_.trace().real() - 1.0) > 1e-12 ||
      std::abs(mat_.trace().imag()) > 1e-12) {
    throw ParamOutOfRange("DensityMatrix: trace is not 1 within 1e-12");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mat_,
                                                  Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("DensityMatrix: eigensolver failed");
  }
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw ParamOutOfRange("DensityMatrix: negative eigenvalue beyond -1e-10");
  }
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
  const ComplexVector& a = psi.amplitudes();
  return DensityMatrix(psi.dims(), a * a.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Dims dims) {
  const Eigen::Index n = dims.total();
  return DensityMatrix(dims, ComplexMatrix::Identity(n, n) / double(n));
}

PureState::PureState(Dims dims, ComplexVector amplitudes)
    : dims_(dims), amp_(std::move(amplitudes)) {
  if (amp_.size() != dims_.total()) {
    throw DimensionMismatch("PureState: amplitude length does not match dims");
  }
  if (std::abs(amp_.norm() - 1.0) > 1e-12) {
    throw ParamOutOfRange("PureState: norm is not 1 within 1e-12");
  }
}

std::pair<RealVector, ComplexMatrix> eig_hermitian_raw(const ComplexMatrix& a,
                                                       double herm_tol) {
  require_square(a, "eig_hermitian");
  if (!is_hermitian(a, herm_tol)) {
    throw NotHermitian("eig_hermitian: input not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("eig_hermitian: solver did not converge");
  }
  const Eigen::Index n = a.rows();
  RealVector vals(n);
  ComplexMatrix vecs(n, n);
  // Eigen sorts ascending; flip to non-increasing.
  for (Eigen::Index i = 0; i < n; ++i) {
    vals[i] = es.eigenvalues()[n - 1 - i];
    vecs.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return {std::move(vals), std::move(vecs)};
}

EigResult eig_hermitian(const ComplexMatrix& a, double herm_tol) {
  auto [vals, vecs] = eig_hermitian_raw(a, herm_tol);
  return EigResult{Spectrum(std::move(vals)), std::move(vecs)};
}

RealVector eigvals_hermitian(const ComplexMatrix& a, double herm_tol) {
  require_square(a, "eigvals_hermitian");
  if (!is_hermitian(a, herm_tol)) {
    throw NotHermitian("eigvals_hermitian: input not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("eigvals_hermitian: solver did not converge");
  }
  RealVector v = es.eigenvalues().reverse();
  return v;
}

ComplexMatrix partial_transpose(const ComplexMatrix& mat, Dims dims,
                                Subsystem which) {
  const Eigen::Index m = dims.m, n = dims.n;
  if (mat.rows() != m * n || mat.cols() != m * n) {
    throw DimensionMismatch("partial_transpose: size does not match dims");
  }
  ComplexMatrix out(m * n, m * n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = 0; k < m; ++k) {
        for (Eigen::Index l = 0; l < n; ++l) {
          if (which == Subsystem::B) {
            out(i * n + l, k * n + j) = mat(i * n + j, k * n + l);
          } else {
            out(k * n + j, i * n + l) = mat(i * n + j, k * n + l);
          }
        }
      }
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, Subsystem which) {
  return partial_transpose(rho.mat(), rho.dims(), which);
}

double pt_min_eigenvalue(const DensityMatrix& rho) {
  ComplexMatrix pt = partial_transpose(rho);
  return eigvals_hermitian(pt, 1e-10).minCoeff();
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& a) {
  require_square(a, "matrix_sqrt_psd");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("matrix_sqrt_psd: eigensolver failed");
  }
  RealVector vals = es.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals[i] < -1e-10) {
      throw NumericalFailure("matrix_sqrt_psd: input not PSD");
    }
    // eigenvalues below the zero convention would otherwise surface as
    // sqrt-amplified noise
    vals[i] = (vals[i] < kZeroEig) ? 0.0 : std::sqrt(vals[i]);
  }
  return es.eigenvectors() * vals.asDiagonal() *
         es.eigenvectors().adjoint();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dims(rho, sigma, "fidelity");
  // sqrt(F) is the nuclear norm of sqrt(rho) sqrt(sigma): symmetric in the
  // arguments by construction and free of inner sqrt amplification.
  const ComplexMatrix prod =
      matrix_sqrt_psd(rho.mat()) * matrix_sqrt_psd(sigma.mat());
  Eigen::JacobiSVD<ComplexMatrix> svd(prod);
  const double root_f = svd.singularValues().sum();
  return std::clamp(root_f * root_f, 0.0, 1.0);
}

namespace {

// Shared by the throwing and non-throwing relative-entropy entry points.
// Returns +inf on support violation.
double relative_entropy_impl(const DensityMatrix& rho,
                             const DensityMatrix& sigma) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> er(rho.mat());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sigma.mat());
  if (er.info() != Eigen::Success || es.info() != Eigen::Success) {
    throw NumericalFailure("relative_entropy: eigensolver failed");
  }
  const RealVector& a = er.eigenvalues();
  const RealVector& b = es.eigenvalues();

  // Support check: weight of rho inside sigma's null space.
  double null_weight = 0.0;
  for (Eigen::Index j = 0; j < b.size(); ++j) {
    if (b[j] < kZeroEig) {
      const ComplexVector v = es.eigenvectors().col(j);
      null_weight += std::real((v.adjoint() * rho.mat() * v)(0, 0));
    }
  }
  if (null_weight > 1e-8) return std::numeric_limits<double>::infinity();

  double result = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] >= kZeroEig) result += a[i] * std::log2(a[i]);
  }
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < kZeroEig) continue;
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      if (b[j] < kZeroEig) continue;
      const Complex ov =
          er.eigenvectors().col(i).adjoint() * es.eigenvectors().col(j);
      result -= a[i] * std::norm(ov) * std::log2(b[j]);
    }
  }
  // Klein inequality guarantees nonnegativity; shave rounding noise.
  return std::max(result, 0.0);
}

}  // namespace

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dims(rho, sigma, "relative_entropy");
  const double r = relative_entropy_impl(rho, sigma);
  if (std::isinf(r)) {
    throw SupportViolation(
        "relative_entropy: supp(rho) not contained in supp(sigma)");
  }
  return r;
}

double relative_entropy_or_inf(const DensityMatrix& rho,
                               const DensityMatrix& sigma) noexcept {
  try {
    return relative_entropy_impl(rho, sigma);
  } catch (...) {
    return std::numeric_limits<double>::infinity();
  }
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dims(rho, sigma, "trace_distance");
  return 0.5 * trace_norm_hermitian(rho.mat() - sigma.mat());
}

double trace_norm_hermitian(const ComplexMatrix& a) {
  return eigvals_hermitian(a, 1e-10).cwiseAbs().sum();
}

ComplexMatrix haar_random_unitary(Eigen::Index dim, std::uint64_t seed) {
  if (dim < 1) throw BadDimension("haar_random_unitary: dim must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      g(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is exactly Haar.
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

double entropy_bits(const RealVector& probs) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (probs[i] >= kZeroEig) s -= probs[i] * std::log2(probs[i]);
  }
  return s;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace nasq
