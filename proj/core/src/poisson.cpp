#include "twc/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "twc/errors.hpp"
#include "twc/info.hpp"

namespace twc::poisson {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

double hit(double rate, double delta, Mode mode) {
  const double x = rate * delta;
  return mode == Mode::exact ? x * std::exp(-x) : x;
}

}  // namespace

void PoissonParams::validate() const {
  require(a > 0.0 && std::isfinite(a), "peak power a must be positive");
  require(sigma1 >= 0.0 && sigma1 <= 1.0, "sigma1 must lie in [0, 1]");
  require(sigma2 >= 0.0 && sigma2 <= 1.0, "sigma2 must lie in [0, 1]");
  require(lambda0 >= 0.0 && std::isfinite(lambda0), "lambda0 must be >= 0");
  require(delta > 0.0 && std::isfinite(delta), "delta must be positive");
  if (!((2.0 * a + lambda0) * delta < 1.0)) {
    std::ostringstream os;
    os << "slot width " << delta << " too large: (2a + lambda0) delta = "
       << (2.0 * a + lambda0) * delta << " must stay below 1";
    throw DomainError(os.str());
  }
}

const char* to_string(Mode mode) { return mode == Mode::exact ? "exact" : "taylor"; }

Mode parse_mode(const std::string& text) {
  if (text == "exact") return Mode::exact;
  if (text == "taylor") return Mode::taylor;
  throw ValidationError("mode must be exact or taylor, got '" + text + "'");
}

TwcChannel DiscretizedChannel::to_channel() const {
  std::vector<double> flat;
  for (const auto& row : rows) flat.insert(flat.end(), row.begin(), row.end());
  return make_channel({2, 2, 2, 2}, flat, flat);
}

DiscretizedChannel discretize(const PoissonParams& p, Mode mode) {
  p.validate();
  DiscretizedChannel d;
  d.mode = mode;
  d.alpha = hit(p.lambda0, p.delta, mode);
  d.beta = hit(p.a + p.lambda0, p.delta, mode);
  d.gamma = hit(2.0 * p.a + p.lambda0, p.delta, mode);
  for (double q : {d.alpha, d.beta, d.beta, d.gamma}) d.rows.push_back({1.0 - q, q});
  return d;
}

double pi0(double s) {
  if (!(s >= 0.0)) throw DomainError("pi0 needs s >= 0");
  if (s == 0.0) return std::exp(-1.0);
  // pi0 = (1+s) e^t - s with t = s ln(1 + 1/s) - 1, written as 1 + (1+s) expm1(t)
  double t;
  if (s > 1e3) {
    const double u = 1.0 / s;
    t = 0.0;
    double power = u;
    for (int k = 2; k <= 10; ++k) {
      t += ((k % 2 == 0) ? -1.0 : 1.0) * power / k;
      power *= u;
    }
  } else {
    t = s * std::log1p(1.0 / s) - 1.0;
  }
  return 1.0 + (1.0 + s) * std::expm1(t);
}

double owc_rate(double a, double pi, double lambda0) {
  if (!(a > 0.0)) throw ValidationError("peak power a must be positive");
  if (!(pi >= 0.0 && pi <= 1.0)) throw DomainError("duty cycle must lie in [0, 1]");
  if (!(lambda0 >= 0.0)) throw ValidationError("lambda0 must be >= 0");
  if (pi == 0.0) return 0.0;
  const double s = lambda0 / a;
  if (s == 0.0) return -a * pi * std::log(pi);
  // the ln s terms cancel exactly
  return a * (pi * (1.0 + s) * std::log1p(1.0 / s) - (pi + s) * std::log1p(pi / s));
}

double owc_capacity(double a, double sigma, double lambda0) {
  if (!(a > 0.0)) throw ValidationError("peak power a must be positive");
  if (!(sigma >= 0.0 && sigma <= 1.0)) throw ValidationError("sigma must lie in [0, 1]");
  return owc_rate(a, std::min(sigma, pi0(lambda0 / a)), lambda0);
}

RatePair inner_rates(const PoissonParams& p, double pi1, double pi2, Mode mode) {
  p.validate();
  auto check = [](double pi, double sigma, const char* name) {
    if (!(pi >= 0.0 && pi <= sigma)) {
      std::ostringstream os;
      os << name << " = " << pi << " is outside the duty budget [0, " << sigma << "]";
      throw ConstraintError(os.str());
    }
  };
  check(pi1, p.sigma1, "pi1");
  check(pi2, p.sigma2, "pi2");
  const auto ch = discretize(p, mode).to_channel();
  const std::vector<double> joint{(1.0 - pi1) * (1.0 - pi2), (1.0 - pi1) * pi2,
                                  pi1 * (1.0 - pi2), pi1 * pi2};
  return {info::conditional_mi(joint, ch, info::Direction::one_to_two) / p.delta,
          info::conditional_mi(joint, ch, info::Direction::two_to_one) / p.delta};
}

RatePair inner_rates_extrapolated(const PoissonParams& p, double pi1, double pi2, Mode mode) {
  const auto coarse = inner_rates(p, pi1, pi2, mode);
  auto half = p;
  half.delta = p.delta / 2.0;
  const auto fine = inner_rates(half, pi1, pi2, mode);
  return {2.0 * fine.r1 - coarse.r1, 2.0 * fine.r2 - coarse.r2};
}

RateRegion inner_region(const PoissonParams& p, std::size_t grid, Mode mode) {
  p.validate();
  if (grid < 2) throw ValidationError("grid needs at least 2 points");
  std::vector<RatePair> points;
  points.reserve(grid * grid);
  const double n = static_cast<double>(grid - 1);
  for (std::size_t i = 0; i < grid; ++i) {
    const double pi1 = i + 1 == grid ? p.sigma1 : p.sigma1 * static_cast<double>(i) / n;
    for (std::size_t j = 0; j < grid; ++j) {
      const double pi2 = j + 1 == grid ? p.sigma2 : p.sigma2 * static_cast<double>(j) / n;
      points.push_back(inner_rates(p, pi1, pi2, mode));
    }
  }
  auto region = region_hull(points);
  region.notes.push_back(std::string("inner region from independent on-off inputs, ") +
                         to_string(mode) + " slot probabilities");
  return region;
}

RateRegion outer_region(const PoissonParams& p) {
  p.validate();
  auto region =
      rectangle(owc_capacity(p.a, p.sigma1, p.lambda0), owc_capacity(p.a, p.sigma2, p.lambda0));
  region.notes.push_back("outer rectangle from one-way capacities");
  return region;
}

RatePair corner_inputs(const PoissonParams& p) {
  return {std::min(p.sigma1, 0.5), std::min(p.sigma2, 0.5)};
}

CornerGap corner_gap(const PoissonParams& p, Mode mode) {
  p.validate();
  const auto pis = corner_inputs(p);
  CornerGap g;
  g.pi1 = pis.r1;
  g.pi2 = pis.r2;
  g.corner = inner_rates(p, g.pi1, g.pi2, mode);
  g.corner_extrapolated = inner_rates_extrapolated(p, g.pi1, g.pi2, mode);
  const double c1 = owc_capacity(p.a, p.sigma1, p.lambda0);
  const double c2 = owc_capacity(p.a, p.sigma2, p.lambda0);
  g.gap1 = c1 - g.corner.r1;
  g.gap2 = c2 - g.corner.r2;
  g.gap1_extrapolated = c1 - g.corner_extrapolated.r1;
  g.gap2_extrapolated = c2 - g.corner_extrapolated.r2;
  return g;
}

RatePair gap_asymptote(const PoissonParams& p) {
  p.validate();
  if (p.lambda0 == 0.0) throw DomainError("gap asymptote is undefined at lambda0 = 0");
  const auto pis = corner_inputs(p);
  const double s = p.s();
  return {p.a * pis.r1 * (1.0 - pis.r1) * pis.r2 / (2.0 * s * s),
          p.a * pis.r2 * (1.0 - pis.r2) * pis.r1 / (2.0 * s * s)};
}

double f_of_s(double s, double pi) {
  if (!(s > 0.0)) throw DomainError("f(s) needs s > 0");
  if (!(pi > 0.0 && pi < 1.0)) throw DomainError("f(s) needs pi in (0, 1)");
  return -(s + pi) * std::log1p(pi / s) + (1.0 + s + pi) * std::log1p((1.0 + pi) / s) -
         (1.0 - 2.0 * pi) * (1.0 + s) * std::log1p(1.0 / s) -
         pi * (2.0 + s) * std::log1p(2.0 / s);
}

std::vector<Fig3Group> fig3_dataset(const Fig3Options& options) {
  std::vector<Fig3Group> groups;
  for (double lambda0 : options.lambda0) {
    const PoissonParams p{options.a, options.sigma1, options.sigma2, lambda0, options.delta};
    groups.push_back({lambda0, inner_region(p, options.grid, options.mode), outer_region(p),
                      corner_gap(p, options.mode)});
  }
  return groups;
}

}  // namespace twc::poisson
