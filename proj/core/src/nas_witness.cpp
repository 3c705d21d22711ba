#include "nasq/nas_witness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "nasq/optim.hpp"
#include "nasq/parallel.hpp"

namespace nasq {

namespace {

using Eigen::Matrix4cd;
using Eigen::Vector4d;

// exp[i(a1 XX + a2 YY + a3 ZZ)] in closed form: the generator splits into
// the {00,11} block with mixing angle a1 - a2 and the {01,10} block with
// angle a1 + a2, both dressed by the ZZ phase.
Matrix4cd canonical_unitary_raw(double a1, double a2, double a3) {
  const Complex ei3 = std::polar(1.0, a3);
  const Complex emi3 = std::polar(1.0, -a3);
  const double b = a1 - a2;
  const double c = a1 + a2;
  Matrix4cd u = Matrix4cd::Zero();
  u(0, 0) = ei3 * std::cos(b);
  u(3, 3) = ei3 * std::cos(b);
  u(0, 3) = ei3 * Complex(0.0, std::sin(b));
  u(3, 0) = u(0, 3);
  u(1, 1) = emi3 * std::cos(c);
  u(2, 2) = emi3 * std::cos(c);
  u(1, 2) = emi3 * Complex(0.0, std::sin(c));
  u(2, 1) = u(1, 2);
  return u;
}

Matrix4cd partial_transpose_b_4(const Matrix4cd& m) {
  Matrix4cd out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          out(i * 2 + l, k * 2 + j) = m(i * 2 + j, k * 2 + l);
        }
      }
    }
  }
  return out;
}

double min_pt_eig(const Matrix4cd& u, const Vector4d& diag) {
  const Matrix4cd sigma = u * diag.asDiagonal() * u.adjoint();
  Matrix4cd pt = partial_transpose_b_4(sigma);
  pt = 0.5 * (pt + pt.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4cd> es(pt, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Orderings of the four eigenvalues on the diagonal that are inequivalent
// under the local permutations commuting with the canonical family (the
// Klein four-group); one representative fixes index 0 in place.
const std::array<std::array<int, 4>, 6> kOrderings = {{
    {0, 1, 2, 3},
    {0, 1, 3, 2},
    {0, 2, 1, 3},
    {0, 2, 3, 1},
    {0, 3, 1, 2},
    {0, 3, 2, 1},
}};

ComplexMatrix permutation_matrix(const std::array<int, 4>& perm) {
  ComplexMatrix p = ComplexMatrix::Zero(4, 4);
  // position i carries eigenvalue perm[i]:  P e_{perm[i]} = e_i
  for (int i = 0; i < 4; ++i) p(i, perm[i]) = 1.0;
  return p;
}

// Completes |first> to an orthonormal basis (QR of a seeded full-rank
// extension) and returns the basis matrix with |first> in column 0.
ComplexMatrix basis_starting_with(const ComplexVector& first) {
  const Eigen::Index n = first.size();
  ComplexMatrix m(n, n);
  m.col(0) = first;
  for (Eigen::Index j = 1; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      // deterministic, generic filler
      m(i, j) = Complex(std::cos(double(3 * i + 7 * j)),
                        std::sin(double(5 * i + 2 * j)));
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(m);
  ComplexMatrix q = qr.householderQ();
  // QR may flip the first column's phase; undo so column 0 is exactly first.
  const Complex overlap = (q.col(0).adjoint() * first)(0, 0);
  q.col(0) *= overlap / std::abs(overlap);
  q.col(0) = first;
  return q;
}

WitnessResult analytic_pure_path(const DensityMatrix& rho, Eigen::Index d) {
  const auto [vals, vecs] = eig_hermitian_raw(rho.mat());
  const ComplexVector alpha = vecs.col(0);

  const PureState mes = max_entangled(d);
  const DensityMatrix rho_mes = DensityMatrix::pure(mes);
  const WitnessOperator w = optimal_witness_from_ppt(rho_mes);
  const double min_eig =
      std::real((w.mat * rho_mes.mat()).trace());

  // Any unitary carrying the state onto the maximally entangled one is
  // optimal; build one from completed bases.
  const ComplexMatrix from = basis_starting_with(alpha);
  const ComplexMatrix to = basis_starting_with(mes.amplitudes());
  const ComplexMatrix u = to * from.adjoint();

  WitnessCertificate cert;
  cert.global_unitary = u;
  cert.witness = w;
  cert.rotated_witness =
      WitnessOperator{u.adjoint() * w.mat * u,
                      WitnessOperator::Provenance::FromPtEigenvector};
  cert.params = NonlocalUnitaryParams{};
  return WitnessResult{std::max(0.0, -min_eig), min_eig,
                       NasMethod::ClosedForm, std::move(cert)};
}

WitnessResult grid_path(const DensityMatrix& rho, const WitnessConfig& cfg) {
  const auto [spec, vecs] = eig_hermitian(rho.mat());
  Vector4d alpha;
  for (int i = 0; i < 4; ++i) alpha[i] = std::max(spec[i], 0.0);

  const int g = std::max(cfg.grid_points, 2);
  const double step = (std::numbers::pi / 2.0) / double(g - 1);
  const int cells_per_ordering = g * g * g;

  struct Cell {
    double value;
    int index;
    bool operator<(const Cell& o) const {
      return value != o.value ? value < o.value : index < o.index;
    }
  };

  // One task per (ordering, a1-slab); each scans a g x g sheet.
  const int n_tasks = int(kOrderings.size()) * g;
  std::vector<Cell> best_per_task(n_tasks);
  parallel_for(n_tasks, cfg.threads, [&](int task) {
    const int ord = task / g;
    const int i1 = task % g;
    Vector4d diag;
    for (int i = 0; i < 4; ++i) diag[i] = alpha[kOrderings[ord][i]];
    Cell best{1e100, -1};
    const double a1 = i1 * step;
    for (int i2 = 0; i2 < g; ++i2) {
      for (int i3 = 0; i3 < g; ++i3) {
        const Matrix4cd u =
            canonical_unitary_raw(a1, i2 * step, i3 * step);
        const double v = min_pt_eig(u, diag);
        const int idx =
            ord * cells_per_ordering + (i1 * g + i2) * g + i3;
        if (Cell{v, idx} < best) best = Cell{v, idx};
      }
    }
    best_per_task[task] = best;
  });

  std::vector<Cell> candidates(best_per_task.begin(), best_per_task.end());
  std::sort(candidates.begin(), candidates.end());
  const int refine_n = std::min<int>(std::max(cfg.refine_starts, 1),
                                     int(candidates.size()));

  double best_value = 1e100;
  Eigen::Vector3d best_a = Eigen::Vector3d::Zero();
  int best_ord = 0;
  for (int r = 0; r < refine_n; ++r) {
    const int idx = candidates[r].index;
    const int ord = idx / cells_per_ordering;
    const int rem = idx % cells_per_ordering;
    Vector4d diag;
    for (int i = 0; i < 4; ++i) diag[i] = alpha[kOrderings[ord][i]];
    Eigen::Vector3d a0((rem / (g * g)) * step, ((rem / g) % g) * step,
                       (rem % g) * step);
    auto objective = [&](const Eigen::VectorXd& a) {
      return min_pt_eig(canonical_unitary_raw(a[0], a[1], a[2]), diag);
    };
    NelderMeadOptions opts;
    opts.max_iters = 400;
    opts.ftol = cfg.refine_tol;
    opts.xtol = 1e-9;
    const NelderMeadResult res =
        nelder_mead(objective, a0, 0.75 * step, opts);
    const double v = std::min(res.value, candidates[r].value);
    if (v < best_value) {
      best_value = v;
      best_ord = ord;
      best_a = (res.value <= candidates[r].value)
                   ? Eigen::Vector3d(res.x)
                   : a0;
    }
  }

  WitnessResult out;
  out.min_pt_eigenvalue = best_value;
  out.value = std::max(0.0, -best_value);
  out.method = NasMethod::FullNumeric;
  if (out.value > 0.0) {
    const Matrix4cd uc =
        canonical_unitary_raw(best_a[0], best_a[1], best_a[2]);
    const ComplexMatrix perm = permutation_matrix(kOrderings[best_ord]);
    // sigma = Uc P diag(alpha) P^dag Uc^dag = U rho U^dag with U = Uc P V^dag
    const ComplexMatrix u = ComplexMatrix(uc) * perm * vecs.adjoint();
    ComplexMatrix sigma = u * rho.mat() * u.adjoint();
    sigma = 0.5 * (sigma + sigma.adjoint());
    const DensityMatrix sigma_dm(rho.dims(), std::move(sigma));
    WitnessCertificate cert;
    cert.global_unitary = u;
    cert.witness = optimal_witness_from_ppt(sigma_dm);
    cert.rotated_witness =
        WitnessOperator{u.adjoint() * cert.witness.mat * u,
                        WitnessOperator::Provenance::FromPtEigenvector};
    cert.params = NonlocalUnitaryParams{best_a[0], best_a[1], best_a[2]};
    out.certificate = std::move(cert);
  }
  return out;
}

}  // namespace

ComplexMatrix canonical_unitary(const NonlocalUnitaryParams& params) {
  const double hi = std::numbers::pi / 2.0;
  for (double a : {params.a1, params.a2, params.a3}) {
    if (!(a >= 0.0 && a <= hi)) {
      throw ParamOutOfRange(
          "canonical_unitary: parameters must lie in [0, pi/2]");
    }
  }
  return canonical_unitary_raw(params.a1, params.a2, params.a3);
}

WitnessOperator optimal_witness_from_ppt(const DensityMatrix& rho,
                                         double tol) {
  const ComplexMatrix pt = partial_transpose(rho);
  const auto [vals, vecs] = eig_hermitian_raw(pt, 1e-10);
  const Eigen::Index last = vals.size() - 1;
  if (vals[last] >= -tol) {
    throw NotNpt("optimal_witness_from_ppt: state has no negative PT "
                 "eigenvalue");
  }
  const ComplexVector phi = vecs.col(last);
  ComplexMatrix w = partial_transpose(phi * phi.adjoint(), rho.dims());
  w = 0.5 * (w + w.adjoint());
  return WitnessOperator{std::move(w),
                         WitnessOperator::Provenance::FromPtEigenvector};
}

WitnessResult nas_witness_measure(const DensityMatrix& rho,
                                  const WitnessConfig& cfg) {
  const Eigen::Index m = rho.dims().m;
  const Eigen::Index n = rho.dims().n;
  const RealVector vals = eigvals_hermitian(rho.mat());
  const bool pure = vals[0] >= 1.0 - 1e-10;
  const bool is_2x2 = (m == 2 && n == 2);

  if (pure && m == n && !(cfg.force_grid && is_2x2)) {
    return analytic_pure_path(rho, m);
  }
  if (is_2x2) {
    return grid_path(rho, cfg);
  }
  throw Unsupported(
      "nas_witness_measure: mixed states outside 2 x 2 are not supported");
}

double nas_witness_werner(const WernerParams& params) {
  validate(params);
  return std::max(0.0, (3.0 * params.p - 1.0) / 4.0);
}

double witness_spectral_bound(const Spectrum& spec) {
  if (spec.size() != 4) {
    throw WrongLength("witness_spectral_bound: needs a 4-point spectrum");
  }
  const double v = spec[0] - spec[2] -
                   2.0 * std::sqrt(std::max(spec[1], 0.0) *
                                   std::max(spec[3], 0.0));
  return std::max(0.0, 0.5 * v);
}

}  // namespace nasq
