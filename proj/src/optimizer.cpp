#include "cburr/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cburr/error.hpp"

namespace cburr {

namespace {

using Matrix = std::vector<std::vector<double>>;

Matrix identity(std::size_t n, double scale = 1.0) {
  Matrix m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = scale;
  return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void project(std::vector<double>& x, const Box& box) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], box.lower[i], box.upper[i]);
}

double projected_gradient_norm(const std::vector<double>& x, const std::vector<double>& g,
                               const Box& box) {
  double norm = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double moved = std::clamp(x[i] - g[i], box.lower[i], box.upper[i]);
    norm = std::max(norm, std::abs(moved - x[i]));
  }
  return norm;
}

// Variables held at a bound because the descent direction points outside.
std::vector<bool> active_set(const std::vector<double>& x, const std::vector<double>& g,
                             const Box& box) {
  std::vector<bool> active(x.size(), false);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const bool at_lower = x[i] <= box.lower[i] && g[i] > 0.0;
    const bool at_upper = x[i] >= box.upper[i] && g[i] < 0.0;
    active[i] = at_lower || at_upper;
  }
  return active;
}

}  // namespace

OptimResult minimize_box_bfgs(const Objective& objective, std::vector<double> x0,
                              const Box& box, const OptimOptions& options) {
  const std::size_t n = x0.size();
  if (box.lower.size() != n || box.upper.size() != n) {
    throw DomainError("minimize_box_bfgs: box dimension mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(box.lower[i] <= box.upper[i])) throw DomainError("minimize_box_bfgs: empty box");
  }

  OptimResult res;
  std::vector<double> x = std::move(x0);
  project(x, box);
  std::vector<double> g(n, 0.0);
  double f = objective(x, g);
  ++res.evaluations;
  if (!std::isfinite(f)) {
    res.x = x;
    res.f = f;
    res.grad = g;
    res.message = "objective not finite at start point";
    return res;
  }
  res.history.push_back(f);

  Matrix h = identity(n);
  bool scaled = false;
  std::vector<double> x_new(n), g_new(n), d(n), s(n), yv(n);
  int stall = 0;

  for (res.iterations = 0; res.iterations < options.max_iter; ++res.iterations) {
    const double pg = projected_gradient_norm(x, g, box);
    if (pg <= options.grad_tol * (1.0 + std::abs(f))) {
      res.converged = true;
      res.message = "projected gradient below tolerance";
      break;
    }

    const std::vector<bool> active = active_set(x, g, box);
    for (std::size_t i = 0; i < n; ++i) {
      double di = 0.0;
      if (!active[i]) {
        for (std::size_t j = 0; j < n; ++j) {
          if (!active[j]) di -= h[i][j] * g[j];
        }
      }
      d[i] = di;
    }
    double slope = dot(d, g);
    if (!(slope < 0.0)) {
      h = identity(n);
      scaled = false;
      for (std::size_t i = 0; i < n; ++i) d[i] = active[i] ? 0.0 : -g[i];
      slope = dot(d, g);
    }

    double step = 1.0;
    if (!scaled) {
      double dmax = 0.0;
      for (double v : d) dmax = std::max(dmax, std::abs(v));
      if (dmax > 1.0) step = 1.0 / dmax;
    }

    bool accepted = false;
    double f_new = f;
    for (int bt = 0; bt < options.max_backtracks; ++bt) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + step * d[i];
      project(x_new, box);
      for (std::size_t i = 0; i < n; ++i) s[i] = x_new[i] - x[i];
      const double decrease = dot(g, s);
      f_new = objective(x_new, g_new);
      ++res.evaluations;
      if (std::isfinite(f_new) && f_new <= f + options.armijo_c1 * decrease) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }

    if (!accepted) {
      // One retry along steepest descent before giving up.
      if (scaled) {
        h = identity(n);
        scaled = false;
        continue;
      }
      res.message = "line search failed";
      break;
    }

    for (std::size_t i = 0; i < n; ++i) yv[i] = g_new[i] - g[i];
    const double sy = dot(s, yv);
    const double rel_change = (f - f_new) / (1.0 + std::abs(f));
    x = x_new;
    g = g_new;
    f = f_new;
    res.history.push_back(f);

    if (sy > 1e-12 * std::sqrt(dot(s, s) * dot(yv, yv))) {
      if (!scaled) {
        h = identity(n, sy / dot(yv, yv));
        scaled = true;
      }
      // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
      const double rho = 1.0 / sy;
      std::vector<double> hy(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) hy[i] += h[i][j] * yv[j];
      }
      const double yhy = dot(yv, hy);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          h[i][j] += -rho * (hy[i] * s[j] + s[i] * hy[j]) + (rho * rho * yhy + rho) * s[i] * s[j];
        }
      }
    }

    if (rel_change < 1e-15) {
      if (++stall >= 5) {
        res.message = "no further progress";
        ++res.iterations;
        break;
      }
    } else {
      stall = 0;
    }
  }
  if (res.message.empty()) res.message = "iteration limit reached";

  res.x = x;
  res.f = f;
  res.grad = g;
  res.projected_grad_norm = projected_gradient_norm(x, g, box);
  if (!res.converged && res.projected_grad_norm <= options.grad_tol * (1.0 + std::abs(f))) {
    res.converged = true;
  }
  const std::vector<bool> active = active_set(x, g, box);
  for (std::size_t i = 0; i < n; ++i) {
    if (active[i]) res.active_bounds.push_back(static_cast<int>(i));
  }
  return res;
}

std::vector<double> central_gradient(const std::function<double(std::span<const double>)>& f,
                                     std::span<const double> x, double h) {
  std::vector<double> xp(x.begin(), x.end());
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double step = h * std::max(1.0, std::abs(x[i]));
    const double orig = xp[i];
    xp[i] = orig + step;
    const double fp = f(xp);
    xp[i] = orig - step;
    const double fm = f(xp);
    xp[i] = orig;
    grad[i] = (fp - fm) / (2.0 * step);
  }
  return grad;
}

}  // namespace cburr
