#include "twc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "parallel.hpp"
#include "random.hpp"
#include "twc/errors.hpp"
#include "twc/info.hpp"
#include "twc/simplex.hpp"

namespace twc::bounds {

namespace {

constexpr double kLogFloor = 1e-300;

// Gradient of I(X_other; Y | X_own) with respect to p(x1, x2) is the
// divergence D(W(.|x1,x2) || q(.|x_own)); accumulates weight * D into grad
// and returns the mutual information.
double directional_rate(std::span<const double> joint, const TwcChannel& ch, bool forward,
                        double weight, std::span<double> grad) {
  const std::size_t nx2 = ch.nx2();
  const std::size_t n_own = forward ? nx2 : ch.nx1();
  const std::size_t n_other = forward ? ch.nx1() : nx2;
  const std::size_t ny = forward ? ch.ny2() : ch.ny1();
  std::vector<double> q(ny);
  double rate = 0.0;
  for (std::size_t own = 0; own < n_own; ++own) {
    std::fill(q.begin(), q.end(), 0.0);
    double p_own = 0.0;
    for (std::size_t other = 0; other < n_other; ++other) {
      const std::size_t x1 = forward ? other : own;
      const std::size_t x2 = forward ? own : other;
      const double p = joint[x1 * nx2 + x2];
      if (p <= 0.0) continue;
      p_own += p;
      const auto row = forward ? ch.w2_row(x1, x2) : ch.w1_row(x1, x2);
      for (std::size_t y = 0; y < ny; ++y) q[y] += p * row[y];
    }
    if (p_own <= 0.0) continue;  // divergence term is zero on an empty slice
    for (double& v : q) v /= p_own;
    for (std::size_t other = 0; other < n_other; ++other) {
      const std::size_t x1 = forward ? other : own;
      const std::size_t x2 = forward ? own : other;
      const auto row = forward ? ch.w2_row(x1, x2) : ch.w1_row(x1, x2);
      double d = 0.0;
      for (std::size_t y = 0; y < ny; ++y)
        if (row[y] > 0.0) d += row[y] * std::log(row[y] / std::max(q[y], kLogFloor));
      const std::size_t idx = x1 * nx2 + x2;
      rate += joint[idx] * d;
      if (!grad.empty()) grad[idx] += weight * d;
    }
  }
  return std::max(0.0, rate);
}

std::vector<double> outer_product(std::span<const double> p1, std::span<const double> p2) {
  std::vector<double> joint(p1.size() * p2.size());
  for (std::size_t i = 0; i < p1.size(); ++i)
    for (std::size_t j = 0; j < p2.size(); ++j) joint[i * p2.size() + j] = p1[i] * p2[j];
  return joint;
}

simplex::AscentOptions ascent_options(const OptimizerConfig& cfg) {
  return {cfg.max_iterations, cfg.tolerance, cfg.step_tolerance};
}

struct Attempt {
  double value;
  RatePair rates;
  std::vector<double> joint;
};

Attempt inner_attempt(const TwcChannel& ch, double mu, std::vector<double> p1,
                      std::vector<double> p2, std::span<const simplex::Halfspace> cuts1,
                      std::span<const simplex::Halfspace> cuts2, const OptimizerConfig& cfg) {
  const std::size_t nx1 = ch.nx1();
  const std::size_t nx2 = ch.nx2();
  const auto opts = ascent_options(cfg);
  std::vector<double> joint_grad(nx1 * nx2);

  // block objective in p1 with p2 held fixed
  const simplex::Objective block1 = [&](std::span<const double> p, std::span<double> g) {
    const auto joint = outer_product(p, p2);
    std::fill(joint_grad.begin(), joint_grad.end(), 0.0);
    const double v = weighted_rate(joint, ch, mu, joint_grad);
    for (std::size_t x1 = 0; x1 < nx1; ++x1) {
      g[x1] = 0.0;
      for (std::size_t x2 = 0; x2 < nx2; ++x2) g[x1] += p2[x2] * joint_grad[x1 * nx2 + x2];
    }
    return v;
  };
  const simplex::Objective block2 = [&](std::span<const double> p, std::span<double> g) {
    const auto joint = outer_product(p1, p);
    std::fill(joint_grad.begin(), joint_grad.end(), 0.0);
    const double v = weighted_rate(joint, ch, mu, joint_grad);
    for (std::size_t x2 = 0; x2 < nx2; ++x2) {
      g[x2] = 0.0;
      for (std::size_t x1 = 0; x1 < nx1; ++x1) g[x2] += p1[x1] * joint_grad[x1 * nx2 + x2];
    }
    return v;
  };

  p1 = simplex::project(p1, cuts1);
  p2 = simplex::project(p2, cuts2);
  double value = weighted_rate(outer_product(p1, p2), ch, mu, {});
  for (std::size_t round = 0; round < cfg.max_iterations; ++round) {
    p1 = simplex::maximize(block1, p1, cuts1, opts).point;
    p2 = simplex::maximize(block2, p2, cuts2, opts).point;
    const double next = weighted_rate(outer_product(p1, p2), ch, mu, {});
    const bool done = next - value < cfg.tolerance;
    value = std::max(value, next);
    if (done) break;
  }
  auto joint = outer_product(p1, p2);
  const RatePair rates = rates_at(joint, ch);
  return {mu * rates.r1 + (1.0 - mu) * rates.r2, rates, std::move(joint)};
}

template <class RunOne>
Sweep run_sweep(const OptimizerConfig& cfg, RunOne&& run_one) {
  const auto weights = weight_grid(cfg.weights);
  std::vector<std::vector<Attempt>> attempts(weights.size());
  detail::parallel_for(weights.size(), cfg.threads, [&](std::size_t w) {
    attempts[w].reserve(cfg.restarts);
    for (std::size_t r = 0; r < cfg.restarts; ++r) {
      detail::Rng rng(detail::stream_seed(cfg.seed, w, r));
      attempts[w].push_back(run_one(weights[w], r, rng));
    }
  });

  Sweep sweep;
  std::vector<RatePair> points;
  for (std::size_t w = 0; w < weights.size(); ++w) {
    const Attempt* best = nullptr;
    for (const auto& a : attempts[w]) {
      points.push_back(a.rates);
      if (best == nullptr || a.value > best->value) best = &a;  // first wins ties
    }
    sweep.optima.push_back({weights[w], best->value, best->rates, best->joint});
  }
  sweep.region = region_hull(points);
  return sweep;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (weights < 1 || restarts < 1 || max_iterations < 1 || threads < 1)
    throw ValidationError("optimizer counts must be at least 1");
  if (!(tolerance > 0.0) || !(step_tolerance > 0.0))
    throw ValidationError("optimizer tolerances must be positive");
}

std::vector<double> weight_grid(std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {0.5};
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  return w;
}

double weighted_rate(std::span<const double> joint, const TwcChannel& ch, double mu,
                     std::span<double> grad) {
  const double i12 = directional_rate(joint, ch, true, mu, grad);
  const double i21 = directional_rate(joint, ch, false, 1.0 - mu, grad);
  return mu * i12 + (1.0 - mu) * i21;
}

RatePair rates_at(std::span<const double> joint, const TwcChannel& ch) {
  return {info::conditional_mi(joint, ch, info::Direction::one_to_two),
          info::conditional_mi(joint, ch, info::Direction::two_to_one)};
}

Sweep inner_sweep(const TwcChannel& ch, const InputConstraint& c1, const InputConstraint& c2,
                  const OptimizerConfig& cfg) {
  cfg.validate();
  c1.validate(ch.nx1());
  c2.validate(ch.nx2());
  const auto cuts1 = simplex::cuts_from(c1);
  const auto cuts2 = simplex::cuts_from(c2);
  return run_sweep(cfg, [&](double mu, std::size_t restart, detail::Rng& rng) {
    std::vector<double> p1(ch.nx1(), 1.0 / static_cast<double>(ch.nx1()));
    std::vector<double> p2(ch.nx2(), 1.0 / static_cast<double>(ch.nx2()));
    if (restart > 0) {
      p1 = rng.dirichlet(ch.nx1());
      p2 = rng.dirichlet(ch.nx2());
    }
    return inner_attempt(ch, mu, std::move(p1), std::move(p2), cuts1, cuts2, cfg);
  });
}

RateRegion inner_bound(const TwcChannel& ch, const InputConstraint& c1, const InputConstraint& c2,
                       const OptimizerConfig& cfg) {
  return inner_sweep(ch, c1, c2, cfg).region;
}

Sweep outer_sweep(const TwcChannel& ch, std::span<const InputConstraint> joint_constraints,
                  const OptimizerConfig& cfg) {
  cfg.validate();
  const std::size_t n = ch.nx1() * ch.nx2();
  std::vector<simplex::Halfspace> cuts;
  for (const auto& c : joint_constraints) {
    c.validate(n);
    if (c.active()) cuts.push_back({c.cost, c.budget});
  }
  const auto opts = ascent_options(cfg);
  auto sweep = run_sweep(cfg, [&](double mu, std::size_t restart, detail::Rng& rng) {
    std::vector<double> start(n, 1.0 / static_cast<double>(n));
    if (restart > 0) start = rng.dirichlet(n);
    const simplex::Objective objective = [&](std::span<const double> p, std::span<double> g) {
      std::fill(g.begin(), g.end(), 0.0);
      return weighted_rate(p, ch, mu, g);
    };
    auto result = simplex::maximize(objective, start, cuts, opts);
    const RatePair rates = rates_at(result.point, ch);
    return Attempt{mu * rates.r1 + (1.0 - mu) * rates.r2, rates, std::move(result.point)};
  });
  sweep.region.notes.push_back("outer bound reported as the convex hull of its union");
  return sweep;
}

RateRegion outer_bound(const TwcChannel& ch, std::span<const InputConstraint> joint_constraints,
                       const OptimizerConfig& cfg) {
  return outer_sweep(ch, joint_constraints, cfg).region;
}

RateRegion outer_bound(const TwcChannel& ch, const InputConstraint& c1, const InputConstraint& c2,
                       const OptimizerConfig& cfg) {
  const std::vector<InputConstraint> lifted{lift_to_joint(c1, Terminal::one, ch.nx1(), ch.nx2()),
                                            lift_to_joint(c2, Terminal::two, ch.nx1(), ch.nx2())};
  return outer_bound(ch, lifted, cfg);
}

}  // namespace twc::bounds
