#include "nasq/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace nasq {

NelderMeadResult nelder_mead(
    const std::function<double(const Eigen::VectorXd&)>& f,
    Eigen::VectorXd x0, double step, const NelderMeadOptions& opts) {
  const int n = int(x0.size());
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

  std::vector<Eigen::VectorXd> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (int i = 0; i < n; ++i) pts[i + 1][i] += step;
  for (int i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  std::vector<int> order(n + 1);
  NelderMeadResult res;
  for (res.iterations = 0; res.iterations < opts.max_iters;
       ++res.iterations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = order[0], worst = order[n], second = order[n - 1];

    double spread_x = 0.0;
    for (int i = 1; i <= n; ++i) {
      spread_x = std::max(spread_x,
                          (pts[order[i]] - pts[best]).cwiseAbs().maxCoeff());
    }
    if (std::abs(vals[worst] - vals[best]) <= opts.ftol &&
        spread_x <= opts.xtol) {
      res.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i) {
      if (i != worst) centroid += pts[i];
    }
    centroid /= double(n);

    Eigen::VectorXd xr = centroid + alpha * (centroid - pts[worst]);
    const double fr = f(xr);
    if (fr < vals[best]) {
      Eigen::VectorXd xe = centroid + gamma * (centroid - pts[worst]);
      const double fe = f(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
    } else if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
    } else {
      Eigen::VectorXd xc = centroid + rho * (pts[worst] - centroid);
      const double fc = f(xc);
      if (fc < vals[worst]) {
        pts[worst] = xc;
        vals[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          pts[i] = pts[best] + sigma * (pts[i] - pts[best]);
          vals[i] = f(pts[i]);
        }
      }
    }
  }

  int best = 0;
  for (int i = 1; i <= n; ++i) {
    if (vals[i] < vals[best]) best = i;
  }
  res.x = pts[best];
  res.value = vals[best];
  return res;
}

}  // namespace nasq
