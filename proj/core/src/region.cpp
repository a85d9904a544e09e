#include "twc/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "twc/errors.hpp"

namespace twc {

namespace {

// z-component of (b - a) x (c - a)
double cross(const RatePair& a, const RatePair& b, const RatePair& c) {
  return (b.r1 - a.r1) * (c.r2 - a.r2) - (b.r2 - a.r2) * (c.r1 - a.r1);
}

}  // namespace

double RateRegion::max_r1() const noexcept {
  double m = 0.0;
  for (const auto& v : vertices) m = std::max(m, v.r1);
  return m;
}

double RateRegion::max_r2() const noexcept {
  double m = 0.0;
  for (const auto& v : vertices) m = std::max(m, v.r2);
  return m;
}

double RateRegion::support(double theta) const noexcept {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  double best = 0.0;
  for (const auto& v : vertices) best = std::max(best, v.r1 * c + v.r2 * s);
  return best;
}

double RateRegion::weighted_support(double mu) const noexcept {
  double best = 0.0;
  for (const auto& v : vertices) best = std::max(best, mu * v.r1 + (1.0 - mu) * v.r2);
  return best;
}

bool RateRegion::contains(RatePair p, double tol) const noexcept {
  if (p.r1 < -tol || p.r2 < -tol) return false;
  if (vertices.empty()) return p.r1 <= tol && p.r2 <= tol;
  if (p.r1 > max_r1() + tol || p.r2 > max_r2() + tol) return false;
  // Above-chain test against every boundary edge (the chain is concave).
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const RatePair& a = vertices[i];
    const RatePair& b = vertices[i + 1];
    const double len = std::hypot(b.r1 - a.r1, b.r2 - a.r2);
    if (len == 0.0) continue;
    // the chain runs clockwise, so the interior is where the cross product is negative
    if (cross(a, b, p) / len > tol) return false;
  }
  return true;
}

RateRegion region_hull(std::span<const RatePair> points) {
  if (points.empty()) throw ValidationError("region_hull: empty point set");
  double xmax = 0.0;
  double ymax = 0.0;
  for (const auto& p : points) {
    if (!std::isfinite(p.r1) || !std::isfinite(p.r2) || p.r1 < 0.0 || p.r2 < 0.0)
      throw ValidationError("region_hull: rate pairs must be finite and nonnegative");
    xmax = std::max(xmax, p.r1);
    ymax = std::max(ymax, p.r2);
  }

  std::vector<RatePair> pts(points.begin(), points.end());
  pts.push_back({0.0, ymax});
  pts.push_back({xmax, 0.0});
  std::sort(pts.begin(), pts.end(), [](const RatePair& a, const RatePair& b) {
    return a.r1 < b.r1 || (a.r1 == b.r1 && a.r2 > b.r2);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  // Upper hull by the monotone chain; starts at (0, ymax), the highest point
  // on the left edge, so the chain is nonincreasing in r2.
  std::vector<RatePair> hull;
  for (const auto& p : pts) {
    if (!hull.empty() && hull.back().r1 == p.r1) continue;  // lower point at same r1
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) >= 0.0)
      hull.pop_back();
    hull.push_back(p);
  }
  if (hull.back().r2 > 0.0) hull.push_back({xmax, 0.0});

  RateRegion region;
  region.vertices = std::move(hull);
  return region;
}

RateRegion rectangle(double r1, double r2) {
  const RatePair corner{r1, r2};
  return region_hull(std::span<const RatePair>(&corner, 1));
}

double region_gap(const RateRegion& a, const RateRegion& b) {
  double gap = -std::numeric_limits<double>::infinity();
  for (int deg = 0; deg <= 90; ++deg) {
    const double theta = deg * std::numbers::pi / 180.0;
    gap = std::max(gap, b.support(theta) - a.support(theta));
  }
  return gap;
}

bool is_subset(const RateRegion& inner, const RateRegion& outer, double tol) {
  return std::all_of(inner.vertices.begin(), inner.vertices.end(),
                     [&](const RatePair& v) { return outer.contains(v, tol); });
}

}  // namespace twc
