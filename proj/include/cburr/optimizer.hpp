#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace cburr {

/// Objective to minimize. Returns f(x) and writes the gradient into `grad`.
/// A non-finite return value marks x as infeasible; the line search backs off.
using Objective = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct OptimOptions {
  int max_iter = 500;
  /// Converged when the projected-gradient infinity norm is at most
  /// grad_tol * (1 + |f|).
  double grad_tol = 1e-6;
  double armijo_c1 = 1e-4;
  int max_backtracks = 60;
};

struct OptimResult {
  std::vector<double> x;
  double f = 0.0;
  std::vector<double> grad;
  double projected_grad_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  /// Coordinates sitting on a bound where the gradient pushes outward.
  std::vector<int> active_bounds;
  std::string message;
  /// f at the start point and after every accepted iteration.
  std::vector<double> history;
};

/// Bound-constrained quasi-Newton minimization: BFGS inverse-Hessian updates on
/// the free variables, projection onto the box, and a backtracking Armijo
/// search along the projected path. Every evaluated point lies inside the box.
OptimResult minimize_box_bfgs(const Objective& objective, std::vector<double> x0,
                              const Box& box, const OptimOptions& options = {});

/// Central-difference gradient of a scalar function, with relative step h.
std::vector<double> central_gradient(const std::function<double(std::span<const double>)>& f,
                                     std::span<const double> x, double h = 1e-6);

}  // namespace cburr
