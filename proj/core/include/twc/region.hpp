#pragma once

#include <span>
#include <string>
#include <vector>

namespace twc {

/// (R1, R2) in nats per channel use (nats per second for the Poisson model).
struct RatePair {
  double r1 = 0.0;
  double r2 = 0.0;

  bool operator==(const RatePair&) const = default;
};

/// Convex, downward-closed region of R^2_+ containing the origin, represented
/// by its upper-right boundary. Vertices run from the R2 axis to the R1 axis:
/// r1 nondecreasing, r2 nonincreasing, boundary slopes nonincreasing.
struct RateRegion {
  std::vector<RatePair> vertices;
  /// Free-form provenance notes carried into CLI output.
  std::vector<std::string> notes;

  double max_r1() const noexcept;
  double max_r2() const noexcept;

  /// max over the region of r1*cos(theta) + r2*sin(theta), theta in radians.
  double support(double theta) const noexcept;

  /// max over the region of mu*r1 + (1-mu)*r2.
  double weighted_support(double mu) const noexcept;

  /// Point membership with slack `tol` on the boundary.
  bool contains(RatePair p, double tol = 0.0) const noexcept;

  bool operator==(const RateRegion&) const = default;
};

/// Upper-right convex hull of the points together with the origin and their
/// axis projections. Throws ValidationError on empty input or negative or
/// non-finite coordinates.
RateRegion region_hull(std::span<const RatePair> points);

/// Rectangle [0,r1] x [0,r2].
RateRegion rectangle(double r1, double r2);

/// max over theta in {0, 1, ..., 90} degrees of support(b) - support(a).
double region_gap(const RateRegion& a, const RateRegion& b);

/// Every vertex of `inner` lies in `outer` up to `tol`.
bool is_subset(const RateRegion& inner, const RateRegion& outer, double tol = 0.0);

}  // namespace twc
