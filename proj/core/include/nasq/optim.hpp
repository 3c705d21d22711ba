#pragma once

#include <Eigen/Dense>
#include <functional>

namespace nasq {

struct NelderMeadOptions {
  int max_iters = 2000;
  double ftol = 1e-12;  // simplex spread in function value
  double xtol = 1e-10;  // simplex spread in parameter space
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Downhill simplex minimization of an unconstrained objective.
/// `step` sets the initial simplex edge length per coordinate.
NelderMeadResult nelder_mead(
    const std::function<double(const Eigen::VectorXd&)>& f,
    Eigen::VectorXd x0, double step, const NelderMeadOptions& opts = {});

}  // namespace nasq
