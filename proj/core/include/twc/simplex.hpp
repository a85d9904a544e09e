#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "twc/channel.hpp"

// Euclidean projection onto (cut) probability simplices and a projected
// gradient ascent driver for concave objectives over them.
namespace twc::simplex {

/// normal . p <= bound
struct Halfspace {
  std::vector<double> normal;
  double bound = 0.0;
};

/// Active constraint as a halfspace list (empty when unconstrained).
std::vector<Halfspace> cuts_from(const InputConstraint& c);

/// Projection onto {p >= 0, sum p = 1} by the sort-and-threshold rule.
std::vector<double> project_simplex(std::span<const double> v);

/// Projection onto the simplex intersected with every halfspace in `cuts`.
/// Each halfspace is handled by bisection on its dual variable (nested for
/// several cuts). The result satisfies every cut exactly, never by tolerance.
/// Throws ConstraintError when the feasible set is empty.
std::vector<double> project(std::span<const double> v, std::span<const Halfspace> cuts);

struct AscentOptions {
  std::size_t max_iterations = 10000;
  double tolerance = 1e-10;       ///< stop once an accepted step gains less than this
  double step_tolerance = 1e-12;  ///< stop once the step's sup-norm drops below this
};

struct AscentResult {
  std::vector<double> point;
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Objective value at p; writes the gradient into `grad` (same length as p).
using Objective = std::function<double(std::span<const double> p, std::span<double> grad)>;

/// Projected gradient ascent with backtracking on the step size. `start` is
/// projected onto the feasible set first.
AscentResult maximize(const Objective& f, std::span<const double> start,
                      std::span<const Halfspace> cuts, const AscentOptions& options);

}  // namespace twc::simplex
