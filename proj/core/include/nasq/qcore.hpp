#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <utility>

#include "nasq/errors.hpp"

namespace nasq {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Bipartite dimension tag (m system A, n system B).
struct Dims {
  Eigen::Index m = 0;
  Eigen::Index n = 0;
  Eigen::Index total() const { return m * n; }
  bool operator==(const Dims&) const = default;
};

enum class Subsystem { A, B };

/// Max elementwise deviation from A = A†.
double hermiticity_defect(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tol = 1e-12);
bool is_unitary(const ComplexMatrix& u, double tol = 1e-10);

// Non-increasing real eigenvalue tuple summing to one.  This is the
// coordinate in which absolute-separability membership is decided.
class Spectrum {
 public:
  // Requires values ordered non-increasing, within [0,1], summing to 1.
  explicit Spectrum(RealVector values);
  static Spectrum from_unsorted(RealVector values);

  const RealVector& values() const { return values_; }
  double operator[](Eigen::Index i) const { return values_[i]; }
  Eigen::Index size() const { return values_.size(); }

 private:
  RealVector values_;
};

class PureState;

// Hermitian, positive-semidefinite, unit-trace operator on C^m ⊗ C^n.
// Validity (hermiticity 1e-12, trace 1e-12, eigenvalues >= -1e-10) is
// enforced at construction.
class DensityMatrix {
 public:
  DensityMatrix(Dims dims, ComplexMatrix mat);
  static DensityMatrix pure(const PureState& psi);
  static DensityMatrix maximally_mixed(Dims dims);

  const ComplexMatrix& mat() const { return mat_; }
  Dims dims() const { return dims_; }
  Eigen::Index size() const { return mat_.rows(); }

 private:
  Dims dims_;
  ComplexMatrix mat_;
};

// Unit vector in C^m ⊗ C^n.
class PureState {
 public:
  PureState(Dims dims, ComplexVector amplitudes);
  const ComplexVector& amplitudes() const { return amp_; }
  Dims dims() const { return dims_; }

 private:
  Dims dims_;
  ComplexVector amp_;
};

struct EigResult {
  Spectrum spectrum;      // non-increasing
  ComplexMatrix vectors;  // columns ordered to match the spectrum
};

/// Eigendecomposition of a Hermitian unit-trace PSD matrix, eigenvalues
/// sorted non-increasing.  Throws NotHermitian when the symmetry tolerance
/// is violated and NumericalFailure when the solver does not converge.
EigResult eig_hermitian(const ComplexMatrix& a, double herm_tol = 1e-12);

/// Sorted (non-increasing) eigendecomposition of any Hermitian matrix,
/// without the Spectrum range constraints.
std::pair<RealVector, ComplexMatrix> eig_hermitian_raw(
    const ComplexMatrix& a, double herm_tol = 1e-12);

/// Eigenvalues only, sorted non-increasing.  No unit-trace requirement.
RealVector eigvals_hermitian(const ComplexMatrix& a, double herm_tol = 1e-12);

/// Transposition of one subsystem.  An involution; preserves trace and
/// hermiticity but not positivity.
ComplexMatrix partial_transpose(const ComplexMatrix& mat, Dims dims,
                                Subsystem which = Subsystem::B);
ComplexMatrix partial_transpose(const DensityMatrix& rho,
                                Subsystem which = Subsystem::B);

/// Smallest eigenvalue of rho^{T_B}; negative iff rho is NPT.
double pt_min_eigenvalue(const DensityMatrix& rho);

/// Uhlmann fidelity F(rho, sigma) = [tr sqrt(sqrt(rho) sigma sqrt(rho))]^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Quantum relative entropy in bits: tr(rho log2 rho - rho log2 sigma).
/// Eigenvalues below 1e-12 are treated as exact zeros with 0 log 0 = 0.
/// Throws SupportViolation when supp(rho) is not contained in supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Same quantity, but returns +infinity instead of throwing; used by
/// minimizers probing near rank-deficient candidates.
double relative_entropy_or_inf(const DensityMatrix& rho,
                               const DensityMatrix& sigma) noexcept;

/// One half the trace norm of rho - sigma.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Haar-distributed unitary via QR of a complex Ginibre matrix with the
/// R-diagonal phase fix.  Deterministic for a fixed seed.
ComplexMatrix haar_random_unitary(Eigen::Index dim, std::uint64_t seed);

/// PSD square root by eigendecomposition; eigenvalues in [-1e-10, 0)
/// are clamped to zero, more negative ones raise NumericalFailure.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& a);

/// Shannon entropy of a spectrum in bits.
double entropy_bits(const RealVector& probs);

/// Sum of |eigenvalue| of a Hermitian matrix.
double trace_norm_hermitian(const ComplexMatrix& a);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace nasq
