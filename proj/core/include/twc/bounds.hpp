#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "twc/channel.hpp"
#include "twc/region.hpp"

// Shannon's inner bound (independent inputs) and outer bound (arbitrarily
// correlated inputs) for finite two-way channels, traced by weighted-sum
// scalarization over a uniform grid of weights.
namespace twc::bounds {

struct OptimizerConfig {
  std::size_t weights = 33;
  std::size_t restarts = 8;
  std::uint64_t seed = 1;
  std::size_t max_iterations = 10000;
  double tolerance = 1e-10;
  double step_tolerance = 1e-12;
  /// Worker threads for the weight sweep; 1 runs inline.
  std::size_t threads = 1;

  /// Throws ValidationError unless all counts are >= 1 and tolerances > 0.
  void validate() const;
};

/// Uniform grid over [0, 1]; {0.5} when n == 1.
std::vector<double> weight_grid(std::size_t n);

/// Best point found for one scalarization weight mu (objective
/// mu*R1 + (1-mu)*R2), with the input law that attains it.
struct WeightedOptimum {
  double weight = 0.0;
  double value = 0.0;
  RatePair rates;
  std::vector<double> joint;  ///< p(x1,x2), x1 major
};

struct Sweep {
  RateRegion region;
  std::vector<WeightedOptimum> optima;  ///< one per weight, in grid order
};

/// Inner bound over product inputs p1 x p2 satisfying c1, c2. Each weight
/// runs block-coordinate ascent (each block is concave) from `restarts`
/// seeded starting points; the first is uniform.
Sweep inner_sweep(const TwcChannel& ch, const InputConstraint& c1, const InputConstraint& c2,
                  const OptimizerConfig& cfg);
RateRegion inner_bound(const TwcChannel& ch, const InputConstraint& c1,
                       const InputConstraint& c2, const OptimizerConfig& cfg);

/// Outer bound over joint inputs p(x1,x2); each constraint's cost vector
/// covers the joint alphabet (see lift_to_joint). The objective is concave
/// in the joint pmf. The result is the convex hull of the outer-bound union,
/// which is recorded in the region notes.
Sweep outer_sweep(const TwcChannel& ch, std::span<const InputConstraint> joint_constraints,
                  const OptimizerConfig& cfg);
RateRegion outer_bound(const TwcChannel& ch, std::span<const InputConstraint> joint_constraints,
                       const OptimizerConfig& cfg);

/// Convenience overload lifting per-terminal constraints to the joint.
RateRegion outer_bound(const TwcChannel& ch, const InputConstraint& c1, const InputConstraint& c2,
                       const OptimizerConfig& cfg);

/// mu*I(X1;Y2|X2) + (1-mu)*I(X2;Y1|X1) at a joint pmf, with its gradient with
/// respect to the joint entries when `grad` is nonempty.
double weighted_rate(std::span<const double> joint, const TwcChannel& ch, double mu,
                     std::span<double> grad);

/// (I(X1;Y2|X2), I(X2;Y1|X1)) at a joint pmf.
RatePair rates_at(std::span<const double> joint, const TwcChannel& ch);

}  // namespace twc::bounds
