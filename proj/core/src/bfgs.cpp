#include "skymason/bfgs.hpp"

#include <cmath>

namespace skymason {

BfgsResult minimize_bfgs(const BfgsObjective& objective, Eigen::VectorXd x0,
                         const BfgsOptions& opts) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;

  const auto n = x0.size();
  VectorXd x = std::move(x0);
  VectorXd g(n);
  double f = objective(x, &g);

  MatrixXd h_inv = MatrixXd::Identity(n, n);

  BfgsResult res;
  res.converged = g.norm() < opts.grad_tol;

  for (int it = 0; it < opts.max_iters && !res.converged; ++it) {
    VectorXd dir = -(h_inv * g);
    double slope = g.dot(dir);
    if (slope >= 0.0) {  // not a descent direction; reset curvature
      h_inv.setIdentity();
      dir = -g;
      slope = g.dot(dir);
    }

    double step = 1.0;
    VectorXd x_new;
    double f_new = f;
    bool accepted = false;
    for (int ls = 0; ls < opts.max_line_search; ++ls) {
      x_new = x + step * dir;
      f_new = objective(x_new, nullptr);
      if (std::isfinite(f_new) && f_new <= f + opts.armijo_c1 * step * slope) {
        accepted = true;
        break;
      }
      step *= opts.step_shrink;
    }
    res.iterations = it + 1;
    if (!accepted) break;  // line search stalled; caller treats as no convergence

    VectorXd g_new(n);
    objective(x_new, &g_new);

    const VectorXd s = x_new - x;
    const VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      const double rho = 1.0 / sy;
      const MatrixXd i_mat = MatrixXd::Identity(n, n);
      h_inv = (i_mat - rho * s * y.transpose()) * h_inv *
                  (i_mat - rho * y * s.transpose()) +
              rho * s * s.transpose();
    }

    x = std::move(x_new);
    f = f_new;
    g = std::move(g_new);
    res.converged = g.norm() < opts.grad_tol;
  }

  res.x = std::move(x);
  res.f = f;
  res.grad_norm = g.norm();
  return res;
}

}  // namespace skymason
