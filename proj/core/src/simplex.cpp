#include "twc/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "twc/errors.hpp"

namespace twc::simplex {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

constexpr int kBisectionSteps = 200;
constexpr double kArmijo = 1e-4;

}  // namespace

std::vector<Halfspace> cuts_from(const InputConstraint& c) {
  if (!c.active()) return {};
  return {Halfspace{c.cost, c.budget}};
}

std::vector<double> project_simplex(std::span<const double> v) {
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double running = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    running += sorted[k];
    const double candidate = (running - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) theta = candidate;
  }
  std::vector<double> p(v.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    p[i] = std::max(v[i] - theta, 0.0);
    sum += p[i];
  }
  // absorb rounding so the result lies on the simplex to machine precision
  if (sum > 0.0)
    for (double& x : p) x /= sum;
  return p;
}

std::vector<double> project(std::span<const double> v, std::span<const Halfspace> cuts) {
  if (cuts.empty()) return project_simplex(v);

  const Halfspace& cut = cuts.back();
  const auto rest = cuts.first(cuts.size() - 1);
  if (cut.normal.size() != v.size()) throw ValidationError("halfspace dimension mismatch");

  auto p = project(v, rest);
  if (dot(cut.normal, p) <= cut.bound) return p;

  // Shift v against the cut normal until the projection becomes feasible;
  // a . P(v - eta a) is nonincreasing in eta.
  std::vector<double> shifted(v.size());
  auto at = [&](double eta) {
    for (std::size_t i = 0; i < v.size(); ++i) shifted[i] = v[i] - eta * cut.normal[i];
    return project(shifted, rest);
  };

  // the cheapest vertex must satisfy the cut for the intersection to be nonempty
  if (rest.empty() && *std::min_element(cut.normal.begin(), cut.normal.end()) > cut.bound)
    throw ConstraintError("cost constraint cannot be satisfied: every symbol costs more than the budget");

  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> hi_point = at(hi);
  int expansions = 0;
  while (dot(cut.normal, hi_point) > cut.bound) {
    lo = hi;
    hi *= 2.0;
    if (++expansions > 1100 || !std::isfinite(hi))
      throw ConstraintError("cost constraint cannot be satisfied");
    hi_point = at(hi);
    if (std::any_of(hi_point.begin(), hi_point.end(), [](double x) { return !std::isfinite(x); }))
      throw ConstraintError("cost constraint cannot be satisfied");
  }
  for (int i = 0; i < kBisectionSteps && hi - lo > 1e-16 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    auto mid_point = at(mid);
    if (dot(cut.normal, mid_point) > cut.bound) {
      lo = mid;
    } else {
      hi = mid;
      hi_point = std::move(mid_point);
    }
  }
  return hi_point;
}

AscentResult maximize(const Objective& f, std::span<const double> start,
                      std::span<const Halfspace> cuts, const AscentOptions& options) {
  const std::size_t n = start.size();
  AscentResult result;
  result.point = project(start, cuts);
  std::vector<double> grad(n), trial_grad(n), trial(n), moved(n);
  result.value = f(result.point, grad);

  double step = 1.0;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    result.iterations = it + 1;
    bool accepted = false;
    double gain = 0.0;
    double step_norm = 0.0;
    while (step > 1e-30) {
      for (std::size_t i = 0; i < n; ++i) moved[i] = result.point[i] + step * grad[i];
      trial = project(moved, cuts);
      double lin = 0.0;
      step_norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = trial[i] - result.point[i];
        lin += grad[i] * d;
        step_norm = std::max(step_norm, std::abs(d));
      }
      if (step_norm == 0.0) break;
      const double value = f(trial, trial_grad);
      // Armijo test along the projection arc
      if (std::isfinite(value) &&
          value >= result.value + kArmijo * lin - 1e-15 * std::abs(result.value)) {
        gain = value - result.value;
        result.value = value;
        result.point.swap(trial);
        grad.swap(trial_grad);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      result.converged = true;
      break;
    }
    if (gain < options.tolerance || step_norm < options.step_tolerance) {
      result.converged = true;
      break;
    }
    step = std::min(step * 2.0, 1e8);
  }
  return result;
}

}  // namespace twc::simplex
