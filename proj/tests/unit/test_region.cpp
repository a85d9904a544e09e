#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "twc/errors.hpp"
#include "twc/region.hpp"

using namespace twc;
using doctest::Approx;

namespace {

bool valid_region(const RateRegion& r) {
  if (r.vertices.empty()) return false;
  if (r.vertices.front().r1 != 0.0 || r.vertices.back().r2 != 0.0) return false;
  for (std::size_t i = 1; i < r.vertices.size(); ++i) {
    if (r.vertices[i].r1 < r.vertices[i - 1].r1) return false;
    if (r.vertices[i].r2 > r.vertices[i - 1].r2) return false;
  }
  // slopes nonincreasing
  for (std::size_t i = 2; i < r.vertices.size(); ++i) {
    const auto& a = r.vertices[i - 2];
    const auto& b = r.vertices[i - 1];
    const auto& c = r.vertices[i];
    const double cross = (b.r1 - a.r1) * (c.r2 - a.r2) - (b.r2 - a.r2) * (c.r1 - a.r1);
    if (cross > 1e-12) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("hull of the two unit points is the diagonal segment") {
  const std::vector<RatePair> pts{{1, 0}, {0, 1}};
  const auto r = region_hull(pts);
  REQUIRE(r.vertices.size() == 2);
  CHECK(r.vertices[0] == RatePair{0, 1});
  CHECK(r.vertices[1] == RatePair{1, 0});
  CHECK(r.contains({0.5, 0.5}, 1e-12));
  CHECK_FALSE(r.contains({0.6, 0.6}, 1e-12));
}

TEST_CASE("a dominating point makes a rectangle") {
  const std::vector<RatePair> pts{{1, 1}, {0.5, 0.5}};
  const auto r = region_hull(pts);
  CHECK(r == rectangle(1, 1));
  CHECK(r.vertices.size() == 3);
  CHECK(r.max_r1() == 1.0);
  CHECK(r.max_r2() == 1.0);
}

TEST_CASE("hull input validation") {
  CHECK_THROWS_AS(region_hull(std::vector<RatePair>{}), ValidationError);
  CHECK_THROWS_AS(region_hull(std::vector<RatePair>{{-0.1, 0.2}}), ValidationError);
  CHECK_THROWS_AS(region_hull(std::vector<RatePair>{{NAN, 0.2}}), ValidationError);
  const auto origin = region_hull(std::vector<RatePair>{{0, 0}});
  CHECK(origin.contains({0, 0}));
}

TEST_CASE("property: hull is idempotent and valid on random clouds") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RatePair> pts(100);
    for (auto& p : pts) p = {u(gen), u(gen) * u(gen)};
    const auto once = region_hull(pts);
    const auto twice = region_hull(once.vertices);
    CHECK(once.vertices == twice.vertices);
    CHECK(valid_region(once));
    for (const auto& p : pts) CHECK(once.contains(p, 1e-12));
    // weighted support dominates every input point
    for (double mu = 0.0; mu <= 1.0; mu += 0.125)
      for (const auto& p : pts) CHECK(once.weighted_support(mu) >= mu * p.r1 + (1 - mu) * p.r2 - 1e-15);
  }
}

TEST_CASE("region gap") {
  CHECK(region_gap(rectangle(1, 1), rectangle(1, 1)) == 0.0);
  CHECK(region_gap(rectangle(1, 1), rectangle(2, 1)) == Approx(1.0));
  CHECK(rectangle(1, 1).support(std::numbers::pi / 4) == Approx(std::sqrt(2.0)));
  CHECK(is_subset(rectangle(1, 1), rectangle(2, 1)));
  CHECK_FALSE(is_subset(rectangle(2, 1), rectangle(1, 1)));
}
