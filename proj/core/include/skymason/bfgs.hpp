#pragma once

#include <Eigen/Core>

#include <functional>

namespace skymason {

/// Objective callback: returns f(x) and fills the gradient when `grad` is
/// non-null. Must be consistent between the two.
using BfgsObjective =
    std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)>;

struct BfgsOptions {
  int max_iters = 100;
  double grad_tol = 1e-8;
  double armijo_c1 = 1e-4;
  double step_shrink = 0.5;
  int max_line_search = 40;
};

struct BfgsResult {
  Eigen::VectorXd x;
  double f = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Quasi-Newton minimization with an inverse-Hessian BFGS update and Armijo
/// backtracking. Intended for small dense problems (a handful of variables).
BfgsResult minimize_bfgs(const BfgsObjective& objective, Eigen::VectorXd x0,
                         const BfgsOptions& opts = {});

}  // namespace skymason
