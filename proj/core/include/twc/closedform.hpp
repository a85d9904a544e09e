#pragma once

#include <vector>

#include "twc/bounds.hpp"
#include "twc/info.hpp"
#include "twc/region.hpp"

// Continuous-alphabet examples whose capacity regions are rectangles.
namespace twc::closedform {

// ---- additive exponential noise, expected amplitude constraints ----

struct ExpTwcParams {
  double a1 = 1.0, a2 = 1.0;  ///< amplitude budgets E[X_i] <= a_i
  double m1 = 1.0, m2 = 1.0;  ///< noise means at receivers 1 and 2
  void validate() const;
};

/// Corner (ln(1 + a1/m2), ln(1 + a2/m1)): R1 is limited by sender 1's
/// budget and the noise at receiver 2.
RateRegion exp_capacity(const ExpTwcParams& p);

/// Atom at zero plus an exponential component of total mass `continuous_mass`.
struct MixedLaw {
  double atom = 0.0;
  double continuous_mass = 0.0;
  double scale = 1.0;

  double mean() const noexcept { return continuous_mass * scale; }
  /// Density of the continuous part (integrates to continuous_mass).
  double density(double x) const noexcept;
};

/// Input that makes X + Z exponential with mean a + m when Z ~ Exp(mean m).
MixedLaw exp_saddle_input(double a, double m);

/// Density of X + Z at y by numeric convolution, Z exponential with mean m.
double exp_output_density(const MixedLaw& law, double m, double y);

/// h(X + Z) - h(Z) under `law`, every term by quadrature.
double exp_mi_quadrature(const MixedLaw& law, double m);

// ---- additive Cauchy noise, logarithmic constraint ----

struct CauchyTwcParams {
  double a1 = 1.0, a2 = 1.0;          ///< constraint levels
  double gamma1 = 1.0, gamma2 = 1.0;  ///< noise dispersion at receivers 1 and 2
  void validate() const;
  /// Effective output dispersions at the optimum.
  double k1() const noexcept { return a1; }
  double k2() const noexcept { return a2; }
};

/// ln(4 pi gamma).
double cauchy_entropy(double gamma);

/// Same entropy by quadrature after x = gamma tan(u).
double cauchy_entropy_quadrature(double gamma);

/// Corner (ln(a1/gamma2), ln(a2/gamma1)). ConstraintError when a1 < gamma2
/// or a2 < gamma1.
RateRegion cauchy_capacity(const CauchyTwcParams& p);

/// Dispersion of the optimal Cauchy input for level a over noise gamma.
double cauchy_input_dispersion(double a, double gamma);

/// E ln(((a + gamma)/a)^2 + (X/a)^2) for X ~ Cauchy(0, mu), by quadrature.
/// mu = 0 is the point mass at zero.
double cauchy_constraint_value(double mu, double a, double gamma);

// ---- additive noise with an input-proportional Gaussian component ----

// Y_i = a_i X_i + X_j + sqrt(X_j) Zt_i + Zh_i with X_j on a finite support.
struct InputDepGaussianParams {
  double a1 = 1.0, a2 = 1.0;
  double sigma_hat_sq_1 = 1.0, sigma_hat_sq_2 = 1.0;
  double sigma_tilde_sq_1 = 0.0, sigma_tilde_sq_2 = 0.0;
  std::vector<double> support{0.0, 1.0};
  std::vector<double> cost;  ///< empty means no cost constraint
  double budget = 0.0;
  void validate() const;
};

/// I(X_i; Y_j | X_j) for the pmf over `support`: the differential entropy
/// of the Gaussian mixture sum_k p_k N(x_k, x_k st^2 + sh^2) minus
/// E[0.5 ln(2 pi e (X st^2 + sh^2))]. Direction one_to_two uses the noise
/// at receiver 2.
double input_dep_gaussian_rate(const InputDepGaussianParams& p, const info::Pmf& input,
                               info::Direction direction);

struct CbarResult {
  double value = 0.0;
  info::Pmf input{std::vector<double>{1.0}};
  /// Always true: restricting to a finite support can only lose rate.
  bool lower_bound = true;
};

/// Maximum of input_dep_gaussian_rate over pmfs on `support` that meet the
/// cost budget.
CbarResult input_dep_gaussian_cbar(const InputDepGaussianParams& p, info::Direction direction,
                                   const bounds::OptimizerConfig& cfg);

/// Rectangle with corner (Cbar_1, Cbar_2) from the restricted maximization.
RateRegion input_dep_gaussian_region(const InputDepGaussianParams& p,
                                     const bounds::OptimizerConfig& cfg);

}  // namespace twc::closedform
