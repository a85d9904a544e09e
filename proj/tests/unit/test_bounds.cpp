#include <doctest.h>

#include <cmath>
#include <random>

#include "twc/bounds.hpp"
#include "twc/errors.hpp"
#include "twc/info.hpp"

using namespace twc;
using doctest::Approx;

namespace {

double h2(double p) { return (p <= 0.0 || p >= 1.0) ? 0.0 : -p * std::log(p) - (1 - p) * std::log(1 - p); }

// Binary multiplier under joint p(x1,x2) = {a,b,c,d}: Y = X1 X2 at both ends.
// I(X1;Y2|X2) = p(x2=1) H2(p(x1=1|x2=1)), and symmetrically.
double multiplier_weighted(double a, double b, double c, double d, double mu) {
  const double p2 = b + d, p1 = c + d;
  const double r1 = p2 > 0 ? p2 * h2(d / p2) : 0.0;
  const double r2 = p1 > 0 ? p1 * h2(d / p1) : 0.0;
  (void)a;
  return mu * r1 + (1 - mu) * r2;
}

bounds::OptimizerConfig fast_config() {
  bounds::OptimizerConfig cfg;
  cfg.weights = 9;
  cfg.restarts = 3;
  return cfg;
}

}  // namespace

TEST_CASE("noiseless modulo-2 adder gives the (ln 2, ln 2) square") {
  const auto ch = examples::mod2_adder(0.0, 0.0);
  const auto inner = bounds::inner_bound(ch, InputConstraint::none(), InputConstraint::none(), fast_config());
  CHECK(inner.max_r1() == Approx(std::log(2.0)).epsilon(1e-7));
  CHECK(inner.max_r2() == Approx(std::log(2.0)).epsilon(1e-7));
  CHECK(inner.weighted_support(0.5) == Approx(std::log(2.0)).epsilon(1e-7));
}

TEST_CASE("noisy modulo-2 adder: inner and outer meet at the rectangle corner") {
  const auto ch = examples::mod2_adder(0.1, 0.1);
  const double corner = std::log(2.0) - h2(0.1);
  CHECK(corner == Approx(0.368064207).epsilon(1e-9));
  const auto cfg = fast_config();
  const auto inner = bounds::inner_bound(ch, InputConstraint::none(), InputConstraint::none(), cfg);
  const auto outer = bounds::outer_bound(ch, InputConstraint::none(), InputConstraint::none(), cfg);
  CHECK(inner.max_r1() == Approx(corner).epsilon(1e-7));
  CHECK(inner.weighted_support(0.5) == Approx(corner).epsilon(1e-7));
  CHECK(outer.max_r2() == Approx(corner).epsilon(1e-7));
  CHECK(region_gap(inner, outer) < 1e-6);
  CHECK(region_gap(inner, outer) > -1e-9);
  CHECK(outer.notes.size() == 1);
}

TEST_CASE("binary multiplier inner bound matches a duty-cycle grid oracle") {
  const auto ch = examples::binary_multiplier();
  const auto inner = bounds::inner_bound(ch, InputConstraint::none(), InputConstraint::none(), fast_config());
  double best = 0.0;
  for (int i = 0; i <= 1000; ++i)
    for (int j = 0; j <= 1000; ++j) {
      const double p1 = i / 1000.0, p2 = j / 1000.0;
      best = std::max(best, 0.5 * (p2 * h2(p1) + p1 * h2(p2)));
    }
  CHECK(inner.weighted_support(0.5) >= best - 1e-9);
  CHECK(inner.weighted_support(0.5) - best < 1e-5);
  double sym = 0.0;
  for (int i = 0; i <= 100000; ++i) sym = std::max(sym, (i / 1e5) * h2(i / 1e5));
  CHECK(inner.weighted_support(0.5) == Approx(sym).epsilon(1e-6));
}

TEST_CASE("binary multiplier outer bound strictly exceeds the inner bound") {
  const auto ch = examples::binary_multiplier();
  const auto cfg = fast_config();
  const auto inner = bounds::inner_bound(ch, InputConstraint::none(), InputConstraint::none(), cfg);
  const auto outer = bounds::outer_bound(ch, InputConstraint::none(), InputConstraint::none(), cfg);
  double grid = 0.0;
  const int n = 100;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j)
      for (int k = 0; i + j + k <= n; ++k)
        grid = std::max(grid, multiplier_weighted(i / double(n), j / double(n), k / double(n),
                                                  (n - i - j - k) / double(n), 0.5));
  CHECK(outer.weighted_support(0.5) >= grid - 1e-9);
  CHECK(outer.weighted_support(0.5) - grid < 1e-3);
  CHECK(outer.weighted_support(0.5) - inner.weighted_support(0.5) > 1e-3);
}

TEST_CASE("Shannon table II: bounds agree at every weight") {
  const auto ch = examples::shannon_table2();
  bounds::OptimizerConfig cfg;
  cfg.weights = 17;
  cfg.restarts = 3;
  const auto inner = bounds::inner_sweep(ch, InputConstraint::none(), InputConstraint::none(), cfg);
  const auto outer = bounds::outer_sweep(ch, std::vector<InputConstraint>{}, cfg);
  for (std::size_t w = 0; w < inner.optima.size(); ++w)
    CHECK(inner.optima[w].value == Approx(outer.optima[w].value).epsilon(1e-6));
}

TEST_CASE("cost constraints are enforced exactly") {
  const auto ch = examples::mod2_adder(0.0, 0.0);
  const auto c1 = InputConstraint::mean_upper({0.0, 1.0}, 0.1);
  const auto sweep = bounds::inner_sweep(ch, c1, InputConstraint::none(), fast_config());
  for (const auto& opt : sweep.optima) {
    const double p1 = opt.joint[2] + opt.joint[3];
    CHECK(p1 <= 0.1 + 1e-12);
  }
  // R1 <= H2(0.1) with X1 on at most 10% of the time
  CHECK(sweep.region.max_r1() == Approx(h2(0.1)).epsilon(1e-7));
  CHECK_THROWS_AS(bounds::inner_bound(ch, InputConstraint::mean_upper({1.0, 2.0}, 0.5),
                                      InputConstraint::none(), fast_config()),
                  ConstraintError);
  CHECK_THROWS_AS(bounds::outer_bound(ch, InputConstraint::none(),
                                      InputConstraint::mean_upper({1.0, 2.0}, 0.5), fast_config()),
                  ConstraintError);
}

TEST_CASE("config validation") {
  bounds::OptimizerConfig cfg;
  cfg.weights = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = {};
  cfg.tolerance = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  CHECK(bounds::weight_grid(1) == std::vector<double>{0.5});
  CHECK(bounds::weight_grid(3) == std::vector<double>{0.0, 0.5, 1.0});
}

TEST_CASE("property: random channels keep inner inside outer, deterministically") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto cfg = fast_config();
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<double> w1(8), w2(8);
    for (std::size_t r = 0; r < 4; ++r) {
      const double a = u(gen), b = u(gen);
      w1[2 * r] = a;
      w1[2 * r + 1] = 1 - a;
      w2[2 * r] = b;
      w2[2 * r + 1] = 1 - b;
    }
    const auto ch = make_channel({2, 2, 2, 2}, w1, w2);
    const auto inner = bounds::inner_sweep(ch, InputConstraint::none(), InputConstraint::none(), cfg);
    const auto outer = bounds::outer_bound(ch, InputConstraint::none(), InputConstraint::none(), cfg);
    CHECK(region_gap(inner.region, outer) >= -1e-9);
    for (const auto& opt : inner.optima)
      CHECK(inner.region.weighted_support(opt.weight) >= opt.value - 1e-12);
    const auto again = bounds::inner_sweep(ch, InputConstraint::none(), InputConstraint::none(), cfg);
    CHECK(again.region.vertices == inner.region.vertices);
    auto threaded = cfg;
    threaded.threads = 3;
    CHECK(bounds::inner_bound(ch, InputConstraint::none(), InputConstraint::none(), threaded).vertices ==
          inner.region.vertices);
  }
}
