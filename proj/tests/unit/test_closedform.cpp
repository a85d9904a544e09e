#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "twc/closedform.hpp"
#include "twc/errors.hpp"

using namespace twc;
using namespace twc::closedform;
using doctest::Approx;

namespace {

// h(mixture of N(x_k, v)) - 0.5 ln(2 pi e v) by a plain trapezoid sum; the
// Gaussian tails make the rule converge spectrally on a wide window.
double awgn_oracle(const std::vector<double>& xs, const std::vector<double>& ps, double v) {
  const double sd = std::sqrt(v);
  const double lo = xs.front() - 14 * sd;
  const double hi = xs.back() + 14 * sd;
  const int n = 40000;
  const double h = (hi - lo) / n;
  double ent = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double y = lo + i * h;
    double f = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k)
      f += ps[k] * std::exp(-(y - xs[k]) * (y - xs[k]) / (2 * v)) / std::sqrt(2 * std::numbers::pi * v);
    const double term = f > 0 ? -f * std::log(f) : 0.0;
    ent += (i == 0 || i == n) ? 0.5 * term : term;
  }
  return ent * h - 0.5 * std::log(2 * std::numbers::pi * std::numbers::e * v);
}

bounds::OptimizerConfig cfg() { return bounds::OptimizerConfig{}; }

InputDepGaussianParams awgn_params(std::vector<double> support) {
  InputDepGaussianParams p;
  p.sigma_hat_sq_1 = p.sigma_hat_sq_2 = 1.0;
  p.sigma_tilde_sq_1 = p.sigma_tilde_sq_2 = 0.0;
  p.support = std::move(support);
  return p;
}

}  // namespace

TEST_CASE("exponential rectangle corners") {
  ExpTwcParams p;
  p.a1 = 1.0;
  p.m2 = 1.0;
  p.a2 = 3.0;
  p.m1 = 1.0;
  const auto r = exp_capacity(p);
  CHECK(r.max_r1() == Approx(0.693147).epsilon(1e-6));
  CHECK(r.max_r2() == Approx(1.386294).epsilon(1e-6));
  p.a1 = 1e-9;
  CHECK(exp_capacity(p).max_r1() < 1e-8);
  p.m2 = -1.0;
  CHECK_THROWS_AS(exp_capacity(p), ValidationError);
}

TEST_CASE("exponential saddle input") {
  const auto law = exp_saddle_input(1.0, 1.0);
  CHECK(law.atom == Approx(0.5));
  CHECK(law.atom + law.continuous_mass == Approx(1.0));
  for (double a : {1.0, 3.0})
    for (double m : {0.5, 1.0, 2.0}) {
      const auto l = exp_saddle_input(a, m);
      CHECK(l.mean() <= a + 1e-12);
      const double s = a + m;
      for (double y : {0.0, 0.3, 1.0, 4.0, 12.0})
        CHECK(std::abs(exp_output_density(l, m, y) - std::exp(-y / s) / s) < 1e-8);
    }
}

TEST_CASE("exponential saddle input attains ln(1 + a/m)") {
  for (double a : {1.0, 3.0})
    for (double m : {0.5, 1.0, 2.0}) {
      CAPTURE(a);
      CAPTURE(m);
      CHECK(std::abs(exp_mi_quadrature(exp_saddle_input(a, m), m) - std::log1p(a / m)) < 1e-4);
    }
}

TEST_CASE("Cauchy entropy") {
  CHECK(cauchy_entropy(1.0) == Approx(2.531024).epsilon(1e-6));
  CHECK(cauchy_entropy(2.0) == Approx(3.224171).epsilon(1e-6));
  for (double g : {0.5, 1.0, 2.0}) CHECK(std::abs(cauchy_entropy_quadrature(g) - cauchy_entropy(g)) < 1e-6);
  CHECK(std::abs(cauchy_entropy_quadrature(0.5) - (2.531024 - std::log(2.0))) < 1e-6);
}

TEST_CASE("Cauchy rectangle and its constraint") {
  CauchyTwcParams p;
  p.a1 = 2.0;
  p.gamma2 = 1.0;
  p.a2 = 1.0;
  p.gamma1 = 1.0;
  const auto r = cauchy_capacity(p);
  CHECK(r.max_r1() == Approx(std::log(2.0)));
  CHECK(r.max_r2() == Approx(0.0));
  p.a1 = 0.5;
  CHECK_THROWS_AS(cauchy_capacity(p), ConstraintError);

  CHECK(cauchy_input_dispersion(2.0, 1.0) == Approx(1.0));
  CHECK(std::abs(cauchy_constraint_value(1.0, 2.0, 1.0) - std::log(4.0)) < 1e-6);
  for (double a : {1.5, 3.0, 7.0})
    for (double g : {0.5, 1.0})
      CHECK(std::abs(cauchy_constraint_value(cauchy_input_dispersion(a, g), a, g) - std::log(4.0)) < 1e-6);
  CHECK(cauchy_constraint_value(0.0, 2.0, 1.0) == Approx(2 * std::log(1.5)));
  CHECK_THROWS_AS(cauchy_constraint_value(-1.0, 2.0, 1.0), DomainError);
}

TEST_CASE("Cauchy capacity is increasing in a and decreasing in gamma") {
  double prev = -1.0;
  for (double a = 1.0; a < 10.0; a += 0.5) {
    CauchyTwcParams p;
    p.a1 = a;
    const double r1 = cauchy_capacity(p).max_r1();
    CHECK(r1 > prev);
    prev = r1;
  }
  prev = 1e9;
  for (double g = 0.25; g <= 4.0; g += 0.25) {
    CauchyTwcParams p;
    p.a1 = 4.0;
    p.gamma2 = g;
    const double r1 = cauchy_capacity(p).max_r1();
    CHECK(r1 < prev);
    prev = r1;
  }
}

TEST_CASE("input-dependent Gaussian rate") {
  const auto p = awgn_params({0.0, 1.0});
  CHECK(input_dep_gaussian_rate(p, info::Pmf({1.0, 0.0}), info::Direction::one_to_two) == Approx(0.0));
  for (double amp : {1.0, 2.0, 4.0}) {
    const auto q = awgn_params({0.0, amp});
    const double oracle = awgn_oracle({0.0, amp}, {0.5, 0.5}, 1.0);
    CHECK(std::abs(input_dep_gaussian_rate(q, info::Pmf({0.5, 0.5}), info::Direction::one_to_two) - oracle) <
          1e-6);
    CHECK(std::abs(input_dep_gaussian_rate(q, info::Pmf({0.5, 0.5}), info::Direction::two_to_one) - oracle) <
          1e-6);
  }
  CHECK_THROWS_AS(input_dep_gaussian_rate(p, info::Pmf({0.2, 0.3, 0.5}), info::Direction::one_to_two),
                  ValidationError);
}

TEST_CASE("input-proportional noise lowers the rate") {
  auto p = awgn_params({0.0, 2.0});
  const double clean = input_dep_gaussian_rate(p, info::Pmf({0.5, 0.5}), info::Direction::one_to_two);
  p.sigma_tilde_sq_2 = 0.5;
  const double noisy = input_dep_gaussian_rate(p, info::Pmf({0.5, 0.5}), info::Direction::one_to_two);
  CHECK(noisy < clean);
  CHECK(noisy > 0.0);
  // receiver 1 is untouched by the change
  CHECK(input_dep_gaussian_rate(p, info::Pmf({0.5, 0.5}), info::Direction::two_to_one) == Approx(clean));
}

TEST_CASE("Cbar on {0, 1} matches a Bernoulli grid oracle") {
  const auto p = awgn_params({0.0, 1.0});
  double best = 0.0;
  for (int k = 1; k < 1000; ++k) {
    const double q = k / 1000.0;
    best = std::max(best, awgn_oracle({0.0, 1.0}, {1 - q, q}, 1.0));
  }
  const auto c = input_dep_gaussian_cbar(p, info::Direction::one_to_two, cfg());
  CHECK(std::abs(c.value - best) < 1e-5);
  CHECK(c.lower_bound);
  CHECK(c.input[0] == Approx(0.5).epsilon(1e-3));
  // no pmf beats the maximum
  for (double q : {0.1, 0.3, 0.7})
    CHECK(input_dep_gaussian_rate(p, info::Pmf({1 - q, q}), info::Direction::one_to_two) <= c.value + 1e-9);
}

TEST_CASE("Cbar degenerate and constrained cases") {
  CHECK(input_dep_gaussian_cbar(awgn_params({0.0}), info::Direction::one_to_two, cfg()).value == 0.0);
  auto p = awgn_params({0.0, 1.0});
  p.cost = {0.0, 1.0};
  p.budget = 0.1;
  const auto c = input_dep_gaussian_cbar(p, info::Direction::one_to_two, cfg());
  CHECK(c.input[1] <= 0.1 + 1e-9);
  CHECK(std::abs(c.value - awgn_oracle({0.0, 1.0}, {0.9, 0.1}, 1.0)) < 1e-6);
  p.cost = {1.0, 2.0};
  p.budget = 0.5;
  CHECK_THROWS_AS(input_dep_gaussian_cbar(p, info::Direction::one_to_two, cfg()), ConstraintError);
}

TEST_CASE("Cbar never decreases when the support grows") {
  const std::vector<std::vector<double>> supports{
      {0.0, 1.0}, {0.0, 0.5, 1.0}, {0.0, 0.5, 1.0, 1.5}, {0.0, 0.5, 1.0, 1.5, 2.0}};
  double prev = 0.0;
  for (const auto& s : supports) {
    auto p = awgn_params(s);
    p.sigma_tilde_sq_2 = 0.3;
    const double v = input_dep_gaussian_cbar(p, info::Direction::one_to_two, cfg()).value;
    CHECK(v >= prev - 1e-9);
    prev = v;
  }
}

TEST_CASE("input-dependent Gaussian region is a rectangle of the two maxima") {
  auto p = awgn_params({0.0, 1.0, 2.0});
  p.sigma_hat_sq_1 = 2.0;
  const auto r = input_dep_gaussian_region(p, cfg());
  CHECK(r.max_r1() == Approx(input_dep_gaussian_cbar(p, info::Direction::one_to_two, cfg()).value));
  CHECK(r.max_r2() == Approx(input_dep_gaussian_cbar(p, info::Direction::two_to_one, cfg()).value));
  CHECK(r.max_r2() < r.max_r1());
}
