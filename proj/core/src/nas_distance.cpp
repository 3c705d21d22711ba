#include "nasq/nas_distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "nasq/optim.hpp"

namespace nasq {

namespace {

constexpr double kZero = 1e-12;
constexpr double kInfeasiblePenalty = 10.0;

}  // namespace

DistanceKind DistanceKind::schatten(int p) {
  if (p < 1) throw UnsupportedKind("Schatten order must be >= 1");
  if (p == 1) return trace();
  return {Tag::SchattenP, p};
}

const char* to_string(DistanceKind kind) {
  switch (kind.tag) {
    case DistanceKind::Tag::RelativeEntropy: return "relative-entropy";
    case DistanceKind::Tag::Bures: return "bures";
    case DistanceKind::Tag::HilbertSchmidt: return "hilbert-schmidt";
    case DistanceKind::Tag::TraceDistance: return "trace-distance";
    case DistanceKind::Tag::SchattenP: return "schatten-p";
  }
  return "unknown";
}

const char* to_string(NasMethod m) {
  switch (m) {
    case NasMethod::ClosedForm: return "closed-form";
    case NasMethod::ConjectureAligned: return "conjecture-aligned";
    case NasMethod::FullNumeric: return "full-numeric";
  }
  return "unknown";
}

double distance(const DensityMatrix& rho, const DensityMatrix& sigma,
                DistanceKind kind) {
  switch (kind.tag) {
    case DistanceKind::Tag::RelativeEntropy:
      return relative_entropy(rho, sigma);
    case DistanceKind::Tag::Bures:
      return std::max(0.0, 2.0 - 2.0 * std::sqrt(fidelity(rho, sigma)));
    case DistanceKind::Tag::HilbertSchmidt:
      return (rho.mat() - sigma.mat()).squaredNorm();
    case DistanceKind::Tag::TraceDistance:
      return trace_distance(rho, sigma);
    case DistanceKind::Tag::SchattenP: {
      const double inv = 1.0 / double(kind.p);
      auto root = [&](const ComplexMatrix& m) {
        auto [vals, vecs] = eig_hermitian_raw(m, 1e-10);
        for (Eigen::Index i = 0; i < vals.size(); ++i) {
          vals[i] = std::pow(std::max(vals[i], 0.0), inv);
        }
        return ComplexMatrix(vecs * vals.asDiagonal() * vecs.adjoint());
      };
      const ComplexMatrix diff = root(rho.mat()) - root(sigma.mat());
      const RealVector mu = eigvals_hermitian(diff, 1e-10);
      double acc = 0.0;
      for (Eigen::Index i = 0; i < mu.size(); ++i) {
        acc += std::pow(std::abs(mu[i]), double(kind.p));
      }
      return std::pow(acc, inv);
    }
  }
  throw UnsupportedKind("distance: unknown kind");
}

double aligned_distance(const RealVector& alpha, const RealVector& lambda,
                        DistanceKind kind) {
  if (alpha.size() != lambda.size()) {
    throw DimensionMismatch("aligned_distance: spectra lengths differ");
  }
  const Eigen::Index n = alpha.size();
  switch (kind.tag) {
    case DistanceKind::Tag::RelativeEntropy: {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (alpha[i] < kZero) continue;
        if (lambda[i] < kZero) {
          return std::numeric_limits<double>::infinity();
        }
        acc += alpha[i] * (std::log2(alpha[i]) - std::log2(lambda[i]));
      }
      return std::max(acc, 0.0);
    }
    case DistanceKind::Tag::Bures: {
      double root_f = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        root_f += std::sqrt(std::max(alpha[i], 0.0) *
                            std::max(lambda[i], 0.0));
      }
      return std::max(0.0, 2.0 - 2.0 * root_f);
    }
    case DistanceKind::Tag::HilbertSchmidt:
      return (alpha - lambda).squaredNorm();
    case DistanceKind::Tag::TraceDistance:
      return 0.5 * (alpha - lambda).cwiseAbs().sum();
    case DistanceKind::Tag::SchattenP: {
      const double inv = 1.0 / double(kind.p);
      double acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double da = std::pow(std::max(alpha[i], 0.0), inv) -
                          std::pow(std::max(lambda[i], 0.0), inv);
        acc += std::pow(std::abs(da), double(kind.p));
      }
      return std::pow(acc, inv);
    }
  }
  throw UnsupportedKind("aligned_distance: unknown kind");
}

double nas_pure_relent(Eigen::Index d) {
  if (d < 2) throw BadDimension("nas_pure_relent: d must be >= 2");
  return std::log2(double(2 * d + 2) / 3.0);
}

double nas_pure_bures(Eigen::Index d) {
  if (d < 2) throw BadDimension("nas_pure_bures: d must be >= 2");
  return 2.0 - 2.0 * std::sqrt(3.0 / double(2 * d + 2));
}

NasResult nas_werner(const WernerParams& params, DistanceKind kind) {
  validate(params);
  if (kind.tag != DistanceKind::Tag::RelativeEntropy &&
      kind.tag != DistanceKind::Tag::Bures) {
    throw UnsupportedKind(
        "nas_werner: closed forms exist for relative entropy and Bures only");
  }
  const double p = params.p;
  DensityMatrix rho = werner(params);

  if (p <= 1.0 / 3.0 + 1e-15) {
    return NasResult{0.0, rho, NasMethod::ClosedForm, 0.0};
  }

  RealVector alpha(4);
  alpha << (1.0 + 3.0 * p) / 4.0, (1.0 - p) / 4.0, (1.0 - p) / 4.0,
      (1.0 - p) / 4.0;
  double value = 0.0;
  if (kind.tag == DistanceKind::Tag::RelativeEntropy) {
    value = std::log2(6.0) - alpha[0] * std::log2(3.0) - entropy_bits(alpha);
  } else {
    value = 2.0 - (std::sqrt((1.0 + 3.0 * p) / 2.0) +
                   std::sqrt(1.5 * (1.0 - p)));
  }
  value = std::max(value, 0.0);

  // Minimizing spectrum (1/2, 1/6, 1/6, 1/6) in the state's eigenbasis.
  ComplexVector xi = ComplexVector::Zero(4);
  xi[0] = std::cos(params.gamma);
  xi[3] = std::polar(std::sin(params.gamma), params.phi);
  ComplexMatrix proj = xi * xi.adjoint();
  ComplexMatrix near =
      0.5 * proj + (ComplexMatrix::Identity(4, 4) - proj) / 6.0;
  return NasResult{value, DensityMatrix({2, 2}, std::move(near)),
                   NasMethod::ClosedForm, 0.0};
}

namespace {

// ---- boundary-spectrum parameterization used by the minimizer ----
//
// Free vector v in R^{2d-2} encodes the tail shape through ratios
// r_i = exp(min(0, v_i)) <= 1, so the ordered tail is reachable including
// its fully flat corner (any v >= 0), which carries the pure-state
// optimum.  lambda_1 then follows from the boundary equality.

struct TailCandidate {
  RealVector lambda;   // sorted non-increasing, sums to 1
  double infeasible;   // positive when no ordered boundary point exists
};

TailCandidate tail_candidate(const Eigen::VectorXd& v, Eigen::Index k) {
  RealVector tail(k - 1);
  double cur = 1.0;
  tail[0] = cur;
  for (Eigen::Index i = 1; i < k - 1; ++i) {
    cur *= std::exp(std::min(0.0, v[i - 1]));
    tail[i] = cur;
  }
  tail /= tail.sum();
  const double c = tail[k - 3] + 2.0 * std::sqrt(tail[k - 4] * tail[k - 2]);
  RealVector lam(k);
  lam[0] = c / (1.0 + c);
  for (Eigen::Index i = 0; i < k - 1; ++i) lam[i + 1] = tail[i] / (1.0 + c);
  TailCandidate out{lam, 0.0};
  if (c < tail[0]) {
    // lambda_1 dips below lambda_2: fall back to the sorted spectrum and
    // let the criterion penalty steer the search back to feasibility.
    std::sort(out.lambda.data(), out.lambda.data() + k,
              std::greater<double>());
    const Eigen::Index kk = k;
    const double crit =
        out.lambda[0] - out.lambda[kk - 2] -
        2.0 * std::sqrt(out.lambda[kk - 1] * out.lambda[kk - 3]);
    out.infeasible = std::max(0.0, crit);
  }
  return out;
}

Eigen::VectorXd start_from_tail_shape(const RealVector& alpha,
                                      Eigen::Index k) {
  Eigen::VectorXd v(k - 2);
  for (Eigen::Index i = 0; i < k - 2; ++i) {
    const double num = std::max(alpha[i + 2], 1e-8);
    const double den = std::max(alpha[i + 1], 1e-8);
    v[i] = std::log(std::min(num / den, 1.0));
  }
  return v;
}

struct AlignedOptimum {
  RealVector lambda;
  double value;
};

Eigen::VectorXd v_from_tail_shape(const RealVector& tail) {
  Eigen::VectorXd v(tail.size() - 1);
  for (Eigen::Index i = 0; i + 1 < tail.size(); ++i) {
    const double ratio = std::max(tail[i + 1], 1e-12) /
                         std::max(tail[i], 1e-12);
    v[i] = std::log(std::min(ratio, 1.0));
  }
  return v;
}

AlignedOptimum optimize_aligned(const RealVector& alpha, Eigen::Index k,
                                DistanceKind kind,
                                const OptimizerConfig& cfg) {
  auto objective = [&](const Eigen::VectorXd& v) {
    const TailCandidate c = tail_candidate(v, k);
    const double dist = aligned_distance(alpha, c.lambda, kind);
    if (std::isinf(dist)) return 1e6 + kInfeasiblePenalty * c.infeasible;
    return dist + kInfeasiblePenalty * c.infeasible;
  };

  // The landscape over tail shapes is not unimodal (near-degenerate input
  // spectra split it into basins), so a deterministic Dirichlet scatter
  // ranks starting regions before any local descent.
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::exponential_distribution<double> expo(1.0);
  const int scatter = 400 * int(k - 2) * std::max(cfg.restarts, 1) / 4;
  std::vector<std::pair<double, Eigen::VectorXd>> ranked;
  for (int s = 0; s < scatter; ++s) {
    RealVector t(k - 1);
    for (Eigen::Index i = 0; i < k - 1; ++i) t[i] = expo(rng);
    std::sort(t.data(), t.data() + t.size(), std::greater<double>());
    t /= t.sum();
    const Eigen::VectorXd v = v_from_tail_shape(t);
    ranked.emplace_back(objective(v), v);
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<Eigen::VectorXd> starts;
  starts.push_back(Eigen::VectorXd::Ones(k - 2));  // flat tail
  starts.push_back(start_from_tail_shape(alpha, k));
  const int from_scatter = std::min<int>(std::max(cfg.restarts, 2),
                                         int(ranked.size()));
  for (int i = 0; i < from_scatter; ++i) starts.push_back(ranked[i].second);

  NelderMeadOptions opts;
  opts.max_iters = cfg.max_iters;
  opts.ftol = 1e-13;
  opts.xtol = 1e-11;

  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_v;
  for (const auto& s : starts) {
    const NelderMeadResult r = nelder_mead(objective, s, 0.5, opts);
    if (r.value < best) {
      best = r.value;
      best_v = r.x;
    }
  }
  if (!std::isfinite(best)) {
    throw ConvergenceFailure("aligned boundary search failed to converge",
                             best);
  }
  TailCandidate cand = tail_candidate(best_v, k);
  if (cand.infeasible > 0.0) {
    // Should not survive optimization; retreat to the flat-tail boundary
    // point, which is always feasible.
    cand = tail_candidate(Eigen::VectorXd::Ones(k - 2), k);
  }
  return AlignedOptimum{cand.lambda, aligned_distance(alpha, cand.lambda,
                                                      kind)};
}

// Traceless Hermitian basis of su(k): off-diagonal pairs then diagonal
// generators.
std::vector<ComplexMatrix> hermitian_basis(Eigen::Index k) {
  std::vector<ComplexMatrix> basis;
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i + 1; j < k; ++j) {
      ComplexMatrix s = ComplexMatrix::Zero(k, k);
      s(i, j) = 1.0;
      s(j, i) = 1.0;
      basis.push_back(s);
      ComplexMatrix a = ComplexMatrix::Zero(k, k);
      a(i, j) = Complex(0.0, -1.0);
      a(j, i) = Complex(0.0, 1.0);
      basis.push_back(a);
    }
  }
  for (Eigen::Index l = 1; l < k; ++l) {
    ComplexMatrix d = ComplexMatrix::Zero(k, k);
    const double norm = std::sqrt(2.0 / double(l * (l + 1)));
    for (Eigen::Index i = 0; i < l; ++i) d(i, i) = norm;
    d(l, l) = -norm * double(l);
    basis.push_back(d);
  }
  return basis;
}

ComplexMatrix exp_i_hermitian(const ComplexMatrix& h) {
  auto [vals, vecs] = eig_hermitian_raw(h, 1e-9);
  ComplexVector phases(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    phases[i] = std::polar(1.0, vals[i]);
  }
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

// Distance from rho to B diag(lambda) B^dagger without re-deriving the
// candidate's eigensystem.
struct DistanceEvaluator {
  const DensityMatrix& rho;
  DistanceKind kind;
  ComplexMatrix sqrt_rho;   // for Bures
  ComplexMatrix root_rho;   // rho^{1/p} for Schatten
  RealVector alpha;         // rho's spectrum (sorted)
  double rho_entropy_bits = 0.0;

  DistanceEvaluator(const DensityMatrix& r, DistanceKind kd)
      : rho(r), kind(kd) {
    alpha = eigvals_hermitian(r.mat());
    if (kind.tag == DistanceKind::Tag::RelativeEntropy) {
      rho_entropy_bits = entropy_bits(alpha);
    }
    if (kind.tag == DistanceKind::Tag::Bures) {
      sqrt_rho = matrix_sqrt_psd(r.mat());
    }
    if (kind.tag == DistanceKind::Tag::SchattenP) {
      auto [vals, vecs] = eig_hermitian_raw(r.mat());
      RealVector pw(vals.size());
      const double inv = 1.0 / double(kind.p);
      for (Eigen::Index i = 0; i < vals.size(); ++i) {
        pw[i] = std::pow(std::max(vals[i], 0.0), inv);
      }
      root_rho = vecs * pw.asDiagonal() * vecs.adjoint();
    }
  }

  double eval(const ComplexMatrix& b, const RealVector& lambda) const {
    const Eigen::Index k = lambda.size();
    switch (kind.tag) {
      case DistanceKind::Tag::RelativeEntropy: {
        double cross = 0.0;
        for (Eigen::Index i = 0; i < k; ++i) {
          if (lambda[i] < kZero) {
            return std::numeric_limits<double>::infinity();
          }
          const double pop =
              std::real((b.col(i).adjoint() * rho.mat() * b.col(i))(0, 0));
          cross -= std::max(pop, 0.0) * std::log2(lambda[i]);
        }
        return std::max(0.0, cross - rho_entropy_bits);
      }
      case DistanceKind::Tag::Bures: {
        ComplexMatrix scaled = b * lambda.cwiseSqrt().asDiagonal();
        ComplexMatrix m = sqrt_rho * scaled;
        // F = (sum of singular values of sqrt_rho * sqrt_sigma)^2
        Eigen::JacobiSVD<ComplexMatrix> svd(m);
        const double root_f = svd.singularValues().sum();
        return std::max(0.0, 2.0 - 2.0 * root_f);
      }
      case DistanceKind::Tag::HilbertSchmidt: {
        ComplexMatrix sigma = b * lambda.asDiagonal() * b.adjoint();
        return (rho.mat() - sigma).squaredNorm();
      }
      case DistanceKind::Tag::TraceDistance: {
        ComplexMatrix sigma = b * lambda.asDiagonal() * b.adjoint();
        ComplexMatrix diff = rho.mat() - sigma;
        diff = 0.5 * (diff + diff.adjoint());
        return 0.5 * eigvals_hermitian(diff, 1e-8).cwiseAbs().sum();
      }
      case DistanceKind::Tag::SchattenP: {
        const double inv = 1.0 / double(kind.p);
        RealVector pw(k);
        for (Eigen::Index i = 0; i < k; ++i) {
          pw[i] = std::pow(std::max(lambda[i], 0.0), inv);
        }
        ComplexMatrix diff = root_rho - b * pw.asDiagonal() * b.adjoint();
        diff = 0.5 * (diff + diff.adjoint());
        const RealVector mu = eigvals_hermitian(diff, 1e-8);
        double acc = 0.0;
        for (Eigen::Index i = 0; i < k; ++i) {
          acc += std::pow(std::abs(mu[i]), double(kind.p));
        }
        return std::pow(acc, inv);
      }
    }
    throw UnsupportedKind("DistanceEvaluator: unknown kind");
  }
};

}  // namespace

NasResult nas_numeric(const DensityMatrix& rho, DistanceKind kind,
                      const OptimizerConfig& cfg, NasMethod method) {
  const Eigen::Index lo = std::min(rho.dims().m, rho.dims().n);
  const Eigen::Index d = std::max(rho.dims().m, rho.dims().n);
  if (lo != 2) {
    throw Unsupported("nas_numeric: supported systems are 2 x d");
  }
  if (d > 4) {
    throw Unsupported("nas_numeric: d <= 4 only");
  }
  if (method == NasMethod::ClosedForm) {
    throw Unsupported("nas_numeric: method must be aligned or full");
  }
  const Eigen::Index k = 2 * d;

  auto [spec, vecs] = eig_hermitian(rho.mat());
  const RealVector alpha = spec.values();
  if (is_absolutely_separable(spec, d, 1e-9).is_as) {
    return NasResult{0.0, rho, method, 0.0};
  }

  const AlignedOptimum aligned = optimize_aligned(alpha, k, kind, cfg);
  ComplexMatrix basis = vecs;
  RealVector lambda = aligned.lambda;
  double value = aligned.value;

  if (method == NasMethod::FullNumeric) {
    const DistanceEvaluator evaluator(rho, kind);
    const std::vector<ComplexMatrix> generators = hermitian_basis(k);
    std::mt19937_64 rng(cfg.seed ^ 0xc2b2ae3d27d4eb4fULL);

    const int rounds = 3;
    const int max_dirs = 15;
    for (int round = 0; round < rounds; ++round) {
      std::vector<int> dirs(generators.size());
      for (std::size_t i = 0; i < generators.size(); ++i) dirs[i] = int(i);
      if (int(dirs.size()) > max_dirs) {
        std::shuffle(dirs.begin(), dirs.end(), rng);
        dirs.resize(max_dirs);
      }
      const int nv = int(k - 2);
      const int nt = int(dirs.size());

      auto objective = [&](const Eigen::VectorXd& z) {
        const TailCandidate cand = tail_candidate(z.head(nv), k);
        if (cand.infeasible > 0.0) {
          return aligned_distance(alpha, cand.lambda, kind) +
                 kInfeasiblePenalty * cand.infeasible;
        }
        ComplexMatrix h = ComplexMatrix::Zero(k, k);
        for (int t = 0; t < nt; ++t) {
          h += z[nv + t] * generators[dirs[t]];
        }
        ComplexMatrix b = basis * exp_i_hermitian(h);
        const double dist = evaluator.eval(b, cand.lambda);
        return std::isinf(dist) ? 1e6 : dist;
      };

      Eigen::VectorXd z0 = Eigen::VectorXd::Zero(nv + nt);
      z0.head(nv) = start_from_tail_shape(lambda, k);
      NelderMeadOptions opts;
      opts.max_iters = cfg.max_iters;
      opts.ftol = 1e-13;
      opts.xtol = 1e-11;
      const NelderMeadResult r = nelder_mead(objective, z0, 0.08, opts);
      const TailCandidate cand = tail_candidate(r.x.head(nv), k);
      if (r.value < value - 1e-14 && cand.infeasible == 0.0) {
        value = r.value;
        lambda = cand.lambda;
        ComplexMatrix h = ComplexMatrix::Zero(k, k);
        for (int t = 0; t < nt; ++t) {
          h += r.x[nv + t] * generators[dirs[t]];
        }
        basis = basis * exp_i_hermitian(h);
      } else if (round > 0) {
        break;  // no further improvement from fresh directions
      }
    }

    // Interior safety net: the minimizer is expected on the boundary, but
    // strictly interior spectra are probed so a violation would surface as
    // a smaller value rather than stay invisible.
    const RealVector uniform = RealVector::Constant(k, 1.0 / double(k));
    for (double w : {0.25, 0.5, 0.75}) {
      const RealVector inner = (1.0 - w) * lambda + w * uniform;
      for (const ComplexMatrix* b : {&basis, &vecs}) {
        const double dist = evaluator.eval(*b, inner);
        if (dist < value) {
          value = dist;
          lambda = inner;
          basis = *b;
        }
      }
    }
  }

  ComplexMatrix near = basis * lambda.asDiagonal() * basis.adjoint();
  near = 0.5 * (near + near.adjoint());
  const double gap =
      (method == NasMethod::FullNumeric) ? aligned.value - value : 0.0;
  return NasResult{std::max(value, 0.0),
                   DensityMatrix(rho.dims(), std::move(near)), method, gap};
}

double nas_upper_bound(const DensityMatrix& rho, DistanceKind kind) {
  const Eigen::Index lo = std::min(rho.dims().m, rho.dims().n);
  const Eigen::Index d = std::max(rho.dims().m, rho.dims().n);
  if (lo != 2) {
    throw Unsupported("nas_upper_bound: supported systems are 2 x d");
  }
  const RealVector alpha = eigvals_hermitian(rho.mat());
  const double a1 = alpha[0];
  const double k2 = double(2 * d + 2);
  switch (kind.tag) {
    case DistanceKind::Tag::RelativeEntropy:
      return std::log2(k2) - a1 * std::log2(3.0) - entropy_bits(alpha);
    case DistanceKind::Tag::Bures: {
      double tr_sqrt = 0.0;
      for (Eigen::Index i = 0; i < alpha.size(); ++i) {
        tr_sqrt += std::sqrt(std::max(alpha[i], 0.0));
      }
      return 2.0 - 2.0 * (tr_sqrt + (std::sqrt(3.0) - 1.0) * std::sqrt(a1)) /
                       std::sqrt(k2);
    }
    default:
      throw UnsupportedKind(
          "nas_upper_bound: bounds exist for relative entropy and Bures");
  }
}

MonotonicityReport verify_monotonicity(const DensityMatrix& rho,
                                       const MixedUnitaryChannel& ch,
                                       DistanceKind kind,
                                       const OptimizerConfig& cfg) {
  const double before = nas_numeric(rho, kind, cfg).value;
  const double after = nas_numeric(apply_channel(ch, rho), kind, cfg).value;
  return MonotonicityReport{before, after, before - after};
}

}  // namespace nasq
