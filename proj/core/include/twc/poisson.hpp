#pragma once

#include <string>
#include <vector>

#include "twc/channel.hpp"
#include "twc/region.hpp"

// Two-way Poisson channel with on-off inputs, peak power A and dark current
// lambda0, reduced to a binary-input binary-output channel on slots of
// width delta. Rates are in nats per second.
namespace twc::poisson {

struct PoissonParams {
  double a = 1.0;        ///< peak power
  double sigma1 = 0.3;   ///< duty-cycle budgets
  double sigma2 = 0.2;
  double lambda0 = 2.0;  ///< dark current intensity
  double delta = 1e-4;   ///< slot width

  double s() const noexcept { return lambda0 / a; }

  /// ValidationError for out-of-range fields, DomainError when
  /// (2a + lambda0) delta >= 1.
  void validate() const;
};

enum class Mode { exact, taylor };

const char* to_string(Mode mode);
Mode parse_mode(const std::string& text);

/// Probability of output 1 in one slot: alpha with no input on, beta with
/// one, gamma with both. Both receivers see the same law.
struct DiscretizedChannel {
  Mode mode = Mode::exact;
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  /// Rows indexed by x1x2 in {00, 01, 10, 11}, columns {P(Y=0), P(Y=1)}.
  std::vector<std::vector<double>> rows;

  TwcChannel to_channel() const;
};

DiscretizedChannel discretize(const PoissonParams& p, Mode mode = Mode::exact);

/// Unconstrained optimal duty cycle of the one-way channel; 1/e at s = 0,
/// increasing toward 1/2.
double pi0(double s);

/// Per-second rate of the one-way channel at duty cycle pi, before
/// maximization: A[pi(1+s)ln(1+s) + (1-pi)s ln s - (pi+s)ln(pi+s)].
double owc_rate(double a, double pi, double lambda0);

/// owc_rate at pi* = min(sigma, pi0(s)).
double owc_capacity(double a, double sigma, double lambda0);

/// (I(X1;Y2|X2), I(X2;Y1|X1)) / delta for independent Bernoulli(pi1),
/// Bernoulli(pi2) inputs. ConstraintError when pi_i > sigma_i.
RatePair inner_rates(const PoissonParams& p, double pi1, double pi2, Mode mode = Mode::exact);

/// 2 R(delta/2) - R(delta): removes the first-order slot-width bias.
RatePair inner_rates_extrapolated(const PoissonParams& p, double pi1, double pi2,
                                  Mode mode = Mode::exact);

/// Hull of inner_rates over a grid x grid sweep of pi_i in [0, sigma_i].
RateRegion inner_region(const PoissonParams& p, std::size_t grid, Mode mode = Mode::exact);

/// Rectangle with corner (owc_capacity(sigma1), owc_capacity(sigma2)).
RateRegion outer_region(const PoissonParams& p);

/// min(sigma_i, 1/2) for i = 1, 2.
RatePair corner_inputs(const PoissonParams& p);

struct CornerGap {
  double pi1 = 0.0, pi2 = 0.0;
  RatePair corner;               ///< inner rates at (pi1, pi2), slot width delta
  RatePair corner_extrapolated;  ///< same, extrapolated to delta -> 0
  double gap1 = 0.0, gap2 = 0.0;  ///< outer corner minus `corner`
  double gap1_extrapolated = 0.0, gap2_extrapolated = 0.0;
};

CornerGap corner_gap(const PoissonParams& p, Mode mode = Mode::exact);

/// A pi_i*(1 - pi_i*) pi_j* / (2 s^2). DomainError when lambda0 = 0.
RatePair gap_asymptote(const PoissonParams& p);

/// The corner gap per unit A delta at dark level s, with its ln s terms
/// cancelled analytically.
double f_of_s(double s, double pi1star);

struct Fig3Options {
  double a = 1.0;
  double sigma1 = 0.3;
  double sigma2 = 0.2;
  double delta = 1e-4;
  std::vector<double> lambda0{2.0, 4.0, 8.0};
  std::size_t grid = 31;
  Mode mode = Mode::exact;
};

struct Fig3Group {
  double lambda0 = 0.0;
  RateRegion inner;
  RateRegion outer;
  CornerGap gap;
};

std::vector<Fig3Group> fig3_dataset(const Fig3Options& options = {});

}  // namespace twc::poisson
