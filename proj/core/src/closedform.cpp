#include "twc/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "twc/errors.hpp"
#include "twc/quadrature.hpp"
#include "twc/simplex.hpp"

namespace twc::closedform {

namespace {

// noise means past which the exponential kernel is below e^-60
constexpr double kExpTail = 60.0;

using std::numbers::pi;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << name << " must be positive and finite, got " << v;
    throw ValidationError(os.str());
  }
}

double exp_density(double mean, double z) { return z < 0.0 ? 0.0 : std::exp(-z / mean) / mean; }

double neg_p_log_p(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

}  // namespace

void ExpTwcParams::validate() const {
  require_positive(a1, "a1");
  require_positive(a2, "a2");
  require_positive(m1, "m1");
  require_positive(m2, "m2");
}

RateRegion exp_capacity(const ExpTwcParams& p) {
  p.validate();
  auto region = rectangle(std::log1p(p.a1 / p.m2), std::log1p(p.a2 / p.m1));
  region.notes.push_back(
      "index assignment: R1 = ln(1 + a1/m2), R2 = ln(1 + a2/m1) (sender budget over the "
      "opposite receiver's noise mean)");
  return region;
}

double MixedLaw::density(double x) const noexcept {
  return x < 0.0 ? 0.0 : continuous_mass * std::exp(-x / scale) / scale;
}

MixedLaw exp_saddle_input(double a, double m) {
  require_positive(a, "a");
  require_positive(m, "m");
  return {m / (a + m), a / (a + m), a + m};
}

double exp_output_density(const MixedLaw& law, double m, double y) {
  if (y < 0.0) return 0.0;
  double value = law.atom * exp_density(m, y);
  if (y > 0.0 && law.continuous_mass > 0.0) {
    // t = y - x; the noise factor decays on the scale m, so that stretch gets its own panel
    const auto integrand = [&](double t) { return law.density(y - t) * exp_density(m, t); };
    const double knee = std::min(y, kExpTail * m);
    const double tol = 1e-12 * std::max(1.0, 1.0 / m);  // the density peaks at 1/m
    value += quad::integrate(integrand, 0.0, knee, tol).value;
    if (knee < y) value += quad::integrate(integrand, knee, y, tol).value;
  }
  return value;
}

double exp_mi_quadrature(const MixedLaw& law, double m) {
  require_positive(m, "m");
  const double inf = std::numeric_limits<double>::infinity();
  // the output mixes the noise scale m with the input scale; each gets a panel in its own units
  const double scale = std::max(law.scale, m);
  if (law.continuous_mass > 0.0 && scale / m > 1e15)
    throw NumericError("input and noise scales differ by more than 1e15; quadrature cannot resolve both");
  const double knee = kExpTail * m;
  const auto output = [&](double y) { return neg_p_log_p(exp_output_density(law, m, y)); };
  const double h_y =
      quad::integrate(output, 0.0, knee).value +
      scale * quad::integrate([&](double u) { return output(knee + scale * u); }, 0.0, inf).value;
  const double h_z =
      m * quad::integrate([&](double u) { return neg_p_log_p(exp_density(m, m * u)); }, 0.0, inf)
              .value;
  return h_y - h_z;
}

void CauchyTwcParams::validate() const {
  require_positive(a1, "a1");
  require_positive(a2, "a2");
  require_positive(gamma1, "gamma1");
  require_positive(gamma2, "gamma2");
}

double cauchy_entropy(double gamma) {
  require_positive(gamma, "gamma");
  return std::log(4.0 * pi * gamma);
}

double cauchy_entropy_quadrature(double gamma) {
  require_positive(gamma, "gamma");
  // x = gamma tan(u) turns p dx into du/pi and ln p into ln(cos^2 u/(pi gamma));
  // with v = pi/2 - u the log singularity sits at v = 0.
  const double log_sin =
      quad::integrate_endpoints([](double v) { return std::log(std::sin(v)); }, 0.0, pi / 2.0)
          .value;
  return std::log(pi * gamma) - (4.0 / pi) * log_sin;
}

RateRegion cauchy_capacity(const CauchyTwcParams& p) {
  p.validate();
  auto check = [](double a, double gamma, const char* a_name, const char* g_name) {
    if (a < gamma) {
      std::ostringstream os;
      os << a_name << " = " << a << " is below " << g_name << " = " << gamma
         << "; the logarithmic constraint needs a >= gamma";
      throw ConstraintError(os.str());
    }
  };
  check(p.a1, p.gamma2, "a1", "gamma2");
  check(p.a2, p.gamma1, "a2", "gamma1");
  auto region = rectangle(std::log(p.k1() / p.gamma2), std::log(p.k2() / p.gamma1));
  region.notes.push_back(
      "corner uses dispersion parameters: R1 = ln(a1/gamma2), R2 = ln(a2/gamma1)");
  return region;
}

double cauchy_input_dispersion(double a, double gamma) {
  require_positive(a, "a");
  require_positive(gamma, "gamma");
  if (a < gamma) throw ConstraintError("constraint level is below the noise dispersion");
  return a - gamma;
}

double cauchy_constraint_value(double mu, double a, double gamma) {
  require_positive(a, "a");
  require_positive(gamma, "gamma");
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw DomainError("input dispersion must be >= 0");
  const double b = a + gamma;
  if (mu == 0.0) return 2.0 * std::log(b / a);
  // x = mu tan(u), v = pi/2 - u:  ln(b^2 sin^2 v + mu^2 cos^2 v) - 2 ln a - 2 ln sin v
  const auto integral = quad::integrate_endpoints(
      [&](double v) {
        const double s = std::sin(v), c = std::cos(v);
        return std::log(b * b * s * s + mu * mu * c * c) - 2.0 * std::log(s);
      },
      0.0, pi / 2.0);
  return (2.0 / pi) * integral.value - 2.0 * std::log(a);
}

void InputDepGaussianParams::validate() const {
  require_positive(sigma_hat_sq_1, "sigma_hat_sq_1");
  require_positive(sigma_hat_sq_2, "sigma_hat_sq_2");
  if (!(sigma_tilde_sq_1 >= 0.0) || !(sigma_tilde_sq_2 >= 0.0))
    throw ValidationError("input-proportional noise variances must be >= 0");
  if (support.empty()) throw ValidationError("support must be nonempty");
  for (double x : support)
    if (!(x >= 0.0) || !std::isfinite(x)) throw ValidationError("support points must be >= 0");
  if (!cost.empty() && cost.size() != support.size())
    throw ValidationError("cost vector length does not match the support");
}

namespace {

struct Mixture {
  std::vector<double> weight, mean, var;

  double log_density(double y) const {
    double top = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(mean.size());
    for (std::size_t k = 0; k < mean.size(); ++k) {
      const double d = y - mean[k];
      terms[k] = weight[k] > 0.0 ? std::log(weight[k]) - 0.5 * std::log(2.0 * pi * var[k]) -
                                       d * d / (2.0 * var[k])
                                 : -std::numeric_limits<double>::infinity();
      top = std::max(top, terms[k]);
    }
    if (!std::isfinite(top)) return top;
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - top);
    return top + std::log(sum);
  }

  static double normal_log_density(double y, double mean, double var) {
    const double d = y - mean;
    return -0.5 * std::log(2.0 * pi * var) - d * d / (2.0 * var);
  }

  // integral of g over [lo, hi] split at the component means
  double integrate(const quad::Integrand& g, double lo, double hi) const {
    std::vector<double> cuts{lo, hi};
    for (double m : mean)
      if (m > lo && m < hi) cuts.push_back(m);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      total += quad::integrate(g, cuts[i], cuts[i + 1], 1e-9).value;
    return total;
  }

  // D(N_k || mixture) over mean_k +- 10 sd_k
  double divergence(std::size_t k) const {
    const double sd = std::sqrt(var[k]);
    return integrate(
        [&](double y) {
          const double lp = normal_log_density(y, mean[k], var[k]);
          return std::exp(lp) * (lp - log_density(y));
        },
        mean[k] - 10.0 * sd, mean[k] + 10.0 * sd);
  }
};

Mixture make_mixture(const InputDepGaussianParams& p, std::span<const double> probs,
                     info::Direction direction) {
  const bool to_two = direction == info::Direction::one_to_two;
  const double st = to_two ? p.sigma_tilde_sq_2 : p.sigma_tilde_sq_1;
  const double sh = to_two ? p.sigma_hat_sq_2 : p.sigma_hat_sq_1;
  Mixture mix;
  for (std::size_t k = 0; k < p.support.size(); ++k) {
    mix.weight.push_back(probs[k]);
    mix.mean.push_back(p.support[k]);
    mix.var.push_back(p.support[k] * st + sh);
  }
  return mix;
}

double mixture_rate(const Mixture& mix) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double conditional = 0.0;
  for (std::size_t k = 0; k < mix.mean.size(); ++k) {
    if (mix.weight[k] <= 0.0) continue;
    const double sd = std::sqrt(mix.var[k]);
    lo = std::min(lo, mix.mean[k] - 10.0 * sd);
    hi = std::max(hi, mix.mean[k] + 10.0 * sd);
    conditional += mix.weight[k] * 0.5 * std::log(2.0 * pi * std::numbers::e * mix.var[k]);
  }
  const double h = mix.integrate(
      [&](double y) {
        const double lp = mix.log_density(y);
        return std::isfinite(lp) ? -std::exp(lp) * lp : 0.0;
      },
      lo, hi);
  return std::max(0.0, h - conditional);
}

InputConstraint cost_constraint(const InputDepGaussianParams& p) {
  if (p.cost.empty()) return InputConstraint::none();
  return InputConstraint::mean_upper(p.cost, p.budget);
}

}  // namespace

double input_dep_gaussian_rate(const InputDepGaussianParams& p, const info::Pmf& input,
                               info::Direction direction) {
  p.validate();
  if (input.size() != p.support.size())
    throw ValidationError("input pmf length does not match the support");
  const auto c = cost_constraint(p);
  c.validate(p.support.size());
  if (!c.satisfied_by(input.probs(), 1e-9))
    throw ConstraintError("input pmf violates the cost budget");
  return mixture_rate(make_mixture(p, input.probs(), direction));
}

CbarResult input_dep_gaussian_cbar(const InputDepGaussianParams& p, info::Direction direction,
                                   const bounds::OptimizerConfig& cfg) {
  p.validate();
  cfg.validate();
  const auto c = cost_constraint(p);
  c.validate(p.support.size());
  const std::size_t n = p.support.size();
  CbarResult result;
  if (n == 1) {
    result.input = info::Pmf({1.0});
    return result;
  }
  // I(p) = sum_k p_k D(N_k || mix); its gradient is D(N_k || mix) up to a constant.
  const simplex::Objective f = [&](std::span<const double> probs, std::span<double> grad) {
    const auto mix = make_mixture(p, probs, direction);
    double value = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      grad[k] = mix.divergence(k);
      value += probs[k] * grad[k];
    }
    return value;
  };
  const std::vector<double> start(n, 1.0 / static_cast<double>(n));
  const auto cuts = simplex::cuts_from(c);
  const auto r = simplex::maximize(
      f, start, cuts, {cfg.max_iterations, cfg.tolerance, cfg.step_tolerance});
  result.input = info::Pmf(r.point);
  result.value = mixture_rate(make_mixture(p, result.input.probs(), direction));
  return result;
}

RateRegion input_dep_gaussian_region(const InputDepGaussianParams& p,
                                     const bounds::OptimizerConfig& cfg) {
  const auto c1 = input_dep_gaussian_cbar(p, info::Direction::one_to_two, cfg);
  const auto c2 = input_dep_gaussian_cbar(p, info::Direction::two_to_one, cfg);
  auto region = rectangle(c1.value, c2.value);
  region.notes.push_back(
      "restricted to the declared finite support: each side is a lower bound on the "
      "unrestricted maximum");
  return region;
}

}  // namespace twc::closedform
