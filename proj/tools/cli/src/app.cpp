#include "twc/cli/app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <span>
#include <sstream>

#include "twc/bounds.hpp"
#include "twc/cli/io.hpp"
#include "twc/closedform.hpp"
#include "twc/errors.hpp"
#include "twc/isd.hpp"
#include "twc/poisson.hpp"

namespace twc::cli {

namespace {

struct Outputs {
  std::string out;
  std::string scalars;
  std::string svg;
  bool bits = false;
};

struct OptimizerFlags {
  std::size_t weights = 33;
  std::size_t restarts = 8;
  std::uint64_t seed = 1;
  double tolerance = 1e-10;
  std::size_t max_iterations = 10000;

  bounds::OptimizerConfig config() const {
    bounds::OptimizerConfig cfg;
    cfg.weights = weights;
    cfg.restarts = restarts;
    cfg.seed = seed;
    cfg.tolerance = tolerance;
    cfg.max_iterations = max_iterations;
    if (const char* env = std::getenv("TWC_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end == env || *end != '\0' || v < 1)
        throw ValidationError(std::string("TWC_THREADS must be a positive integer, got '") +
                              env + "'");
      cfg.threads = static_cast<std::size_t>(v);
    }
    cfg.validate();
    return cfg;
  }
};

struct ConstraintFlags {
  std::vector<double> cost1, cost2;
  std::optional<double> budget1, budget2;

  static InputConstraint make(const std::vector<double>& cost, const std::optional<double>& budget,
                              const char* which) {
    if (cost.empty() && !budget) return InputConstraint::none();
    if (cost.empty() || !budget)
      throw ValidationError(std::string("--cost") + which + " and --budget" + which +
                            " go together");
    return InputConstraint::mean_upper(cost, *budget);
  }
  InputConstraint c1() const { return make(cost1, budget1, "1"); }
  InputConstraint c2() const { return make(cost2, budget2, "2"); }
};

void add_outputs(CLI::App* sub, Outputs& o) {
  sub->add_option("--out", o.out, "Write region vertices as CSV");
  sub->add_option("--scalars", o.scalars, "Write scalar results as CSV");
  sub->add_option("--svg", o.svg, "Write an 800x600 SVG plot");
  sub->add_flag("--bits", o.bits, "Show rates in bits on stdout (files stay in nats)");
}

void add_optimizer(CLI::App* sub, OptimizerFlags& f) {
  sub->add_option("--weights", f.weights, "Scalarization weights")->check(CLI::PositiveNumber);
  sub->add_option("--restarts", f.restarts, "Seeded restarts per weight")->check(CLI::PositiveNumber);
  sub->add_option("--seed", f.seed, "Random seed");
  sub->add_option("--tol", f.tolerance, "Ascent tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--max-iter", f.max_iterations, "Ascent iteration cap")->check(CLI::PositiveNumber);
}

void add_constraints(CLI::App* sub, ConstraintFlags& c) {
  sub->add_option("--cost1", c.cost1, "Cost per X1 symbol (comma separated)")->delimiter(',');
  sub->add_option("--budget1", c.budget1, "Budget on E[cost1(X1)]");
  sub->add_option("--cost2", c.cost2, "Cost per X2 symbol (comma separated)")->delimiter(',');
  sub->add_option("--budget2", c.budget2, "Budget on E[cost2(X2)]");
}

void emit(const Report& report, const Outputs& o, const SvgOptions& svg, std::ostream& out) {
  if (!o.out.empty()) write_file_atomic(o.out, to_csv(report.regions()));
  if (!o.scalars.empty()) write_file_atomic(o.scalars, to_csv(report.scalars()));
  if (!o.svg.empty()) write_file_atomic(o.svg, render_svg(report, svg));
  out << report.text(o.bits);
}

std::string yes_no(bool v) { return v ? "true" : "false"; }

std::string pmf_text(std::span<const double> p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + format_number(p[i]);
  return s;
}

// ---- subcommands ----

void cmd_bounds(const std::string& path, const OptimizerFlags& of, const ConstraintFlags& cf,
                const Outputs& o, std::ostream& out) {
  const auto model = parse_model(read_file(path));
  const auto cfg = of.config();
  const auto c1 = cf.c1(), c2 = cf.c2();
  const auto inner = bounds::inner_bound(model.channel, c1, c2, cfg);
  const auto outer = bounds::outer_bound(model.channel, c1, c2, cfg);
  const double gap = region_gap(inner, outer);
  const bool coincide = gap <= 1e-6;
  Report r;
  r.add_region("bounds", "inner", inner);
  r.add_region("bounds", "outer", outer);
  r.add_rate("inner_max_r1", inner.max_r1());
  r.add_rate("inner_max_r2", inner.max_r2());
  r.add_rate("outer_max_r1", outer.max_r1());
  r.add_rate("outer_max_r2", outer.max_r2());
  r.add_rate("max_support_gap", gap);
  r.add_scalar("bounds_coincide", yes_no(coincide));
  if (!coincide) r.add_note("inner and outer bounds differ: the capacity region lies between them");
  emit(r, o, {"inner and outer bounds", "nats"}, out);
}

void cmd_isd_check(const std::string& path, const std::string& structure_path,
                   const OptimizerFlags& of, std::size_t samples, double c2_tol, double c1_tol,
                   const Outputs& o, std::ostream& out) {
  auto model = parse_model(read_file(path));
  if (!structure_path.empty()) model.structure = parse_isd(read_file(structure_path));
  const auto cfg = of.config();
  Report r;
  if (model.structure) {
    const auto inj = isd::check_injectivity(*model.structure);
    r.add_scalar("injective", yes_no(inj.injective));
    if (inj.witness) {
      const auto& w = *inj.witness;
      r.add_scalar("injectivity_witness", w.map + " fixed=" + std::to_string(w.fixed_input) + " " +
                                              std::to_string(w.first) + "~" +
                                              std::to_string(w.second));
    }
  }
  const auto report = isd::check_conditions(model.channel, cfg,
                                            model.structure ? &*model.structure : nullptr,
                                            {samples, c2_tol}, c1_tol);
  auto c1_witness = [&](const char* name, const isd::C1Report& c) {
    r.add_scalar(name, yes_no(c.holds));
    if (c.witness) {
      const auto& w = *c.witness;
      std::ostringstream os;
      os << "Y" << w.output << " fixed=" << w.fixed << " H(" << w.first
         << ")=" << format_number(w.entropy_first) << " H(" << w.second
         << ")=" << format_number(w.entropy_second);
      r.add_scalar(std::string(name) + "_witness", os.str());
    }
  };
  c1_witness("c1", report.c1);
  c1_witness("c1_symmetric", report.c1_symmetric);
  r.add_note("c1_symmetric is informational: the mirrored invariance is not required");
  r.add_scalar("c2", isd::to_string(report.c2.status));
  r.add_scalar("c2_samples", std::to_string(report.c2.samples_tested));
  if (report.c2.witness) {
    r.add_scalar("c2_witness_joint", pmf_text(report.c2.witness->probs()));
    r.add_rate("c2_witness_slack", report.c2.witness_slack);
  }
  emit(r, o, {"condition check", "nats"}, out);
}

void cmd_rectangle(const std::string& path, const OptimizerFlags& of, const ConstraintFlags& cf,
                   const Outputs& o, std::ostream& out) {
  const auto s = parse_isd(read_file(path));
  const auto region = isd::rectangle_capacity(s, cf.c1(), cf.c2(), of.config());
  Report r;
  r.add_region("isd", "rectangle", region);
  r.add_rate("r1", region.max_r1());
  r.add_rate("r2", region.max_r2());
  emit(r, o, {"capacity rectangle", "nats"}, out);
}

void cmd_exp(const closedform::ExpTwcParams& p, const Outputs& o, std::ostream& out) {
  const auto region = closedform::exp_capacity(p);
  const auto law1 = closedform::exp_saddle_input(p.a1, p.m2);
  const auto law2 = closedform::exp_saddle_input(p.a2, p.m1);
  Report r;
  r.add_region("exp", "capacity", region);
  r.add_rate("r1", region.max_r1());
  r.add_rate("r2", region.max_r2());
  r.add_rate("r1_quadrature", closedform::exp_mi_quadrature(law1, p.m2));
  r.add_rate("r2_quadrature", closedform::exp_mi_quadrature(law2, p.m1));
  r.add_scalar("input1_atom", law1.atom);
  r.add_scalar("input1_scale", law1.scale);
  r.add_scalar("input2_atom", law2.atom);
  r.add_scalar("input2_scale", law2.scale);
  emit(r, o, {"exponential noise", "nats"}, out);
}

void cmd_cauchy(const closedform::CauchyTwcParams& p, const Outputs& o, std::ostream& out) {
  const auto region = closedform::cauchy_capacity(p);
  Report r;
  r.add_region("cauchy", "capacity", region);
  r.add_rate("r1", region.max_r1());
  r.add_rate("r2", region.max_r2());
  r.add_rate("noise1_entropy", closedform::cauchy_entropy(p.gamma1));
  r.add_rate("noise1_entropy_quadrature", closedform::cauchy_entropy_quadrature(p.gamma1));
  r.add_rate("noise2_entropy", closedform::cauchy_entropy(p.gamma2));
  r.add_rate("noise2_entropy_quadrature", closedform::cauchy_entropy_quadrature(p.gamma2));
  const double mu1 = closedform::cauchy_input_dispersion(p.a1, p.gamma2);
  const double mu2 = closedform::cauchy_input_dispersion(p.a2, p.gamma1);
  r.add_scalar("input1_dispersion", mu1);
  r.add_scalar("input2_dispersion", mu2);
  r.add_scalar("input1_constraint", closedform::cauchy_constraint_value(mu1, p.a1, p.gamma2));
  r.add_scalar("input2_constraint", closedform::cauchy_constraint_value(mu2, p.a2, p.gamma1));
  r.add_scalar("constraint_level", std::log(4.0));
  emit(r, o, {"Cauchy noise", "nats"}, out);
}

void cmd_idg(const closedform::InputDepGaussianParams& p, const OptimizerFlags& of,
             const Outputs& o, std::ostream& out) {
  const auto cfg = of.config();
  const auto c1 = closedform::input_dep_gaussian_cbar(p, info::Direction::one_to_two, cfg);
  const auto c2 = closedform::input_dep_gaussian_cbar(p, info::Direction::two_to_one, cfg);
  auto region = rectangle(c1.value, c2.value);
  region.notes.push_back(
      "restricted to the declared finite support: each side is a lower bound on the "
      "unrestricted maximum");
  Report r;
  r.add_region("idg", "rectangle", region);
  r.add_rate("cbar1", c1.value);
  r.add_rate("cbar2", c2.value);
  r.add_scalar("input1_pmf", pmf_text(c1.input.probs()));
  r.add_scalar("input2_pmf", pmf_text(c2.input.probs()));
  emit(r, o, {"input-dependent Gaussian noise", "nats"}, out);
}

struct PoissonFlags {
  double a = 1.0, sigma = 0.3, sigma1 = 0.3, sigma2 = 0.2, delta = 1e-4;
  std::vector<double> lambda0{2.0, 4.0, 8.0};
  std::size_t grid = 31;
  std::string mode = "exact";

  poisson::PoissonParams params(double l0) const { return {a, sigma1, sigma2, l0, delta}; }
  double single_lambda0() const {
    if (lambda0.size() != 1) throw ValidationError("this command takes a single --lambda0");
    return lambda0.front();
  }
};

std::string group_name(double lambda0) { return "lambda0=" + format_number(lambda0); }

void add_gap_scalars(Report& r, const std::string& prefix, const poisson::PoissonParams& p,
                     const poisson::CornerGap& g) {
  r.add_scalar(prefix + "pi1_star", g.pi1);
  r.add_scalar(prefix + "pi2_star", g.pi2);
  r.add_rate(prefix + "corner_r1", g.corner.r1);
  r.add_rate(prefix + "corner_r2", g.corner.r2);
  r.add_rate(prefix + "gap1", g.gap1);
  r.add_rate(prefix + "gap2", g.gap2);
  r.add_rate(prefix + "gap1_extrapolated", g.gap1_extrapolated);
  r.add_rate(prefix + "gap2_extrapolated", g.gap2_extrapolated);
  if (p.lambda0 > 0.0) {
    const auto as = poisson::gap_asymptote(p);
    r.add_rate(prefix + "gap1_asymptote", as.r1);
    r.add_rate(prefix + "gap2_asymptote", as.r2);
  }
}

void cmd_poisson_owc(const PoissonFlags& f, const Outputs& o, std::ostream& out) {
  const double l0 = f.single_lambda0();
  const double s = l0 / f.a;
  Report r;
  r.add_scalar("s", s);
  r.add_scalar("pi0", poisson::pi0(s));
  r.add_scalar("pi_star", std::min(f.sigma, poisson::pi0(s)));
  r.add_rate("capacity", poisson::owc_capacity(f.a, f.sigma, l0));
  emit(r, o, {"one-way Poisson channel", "nats/s"}, out);
}

void cmd_poisson_region(const PoissonFlags& f, const Outputs& o, std::ostream& out) {
  const auto p = f.params(f.single_lambda0());
  const auto mode = poisson::parse_mode(f.mode);
  const auto g = poisson::corner_gap(p, mode);
  Report r;
  const auto name = group_name(p.lambda0);
  r.add_region(name, "inner", poisson::inner_region(p, f.grid, mode));
  r.add_region(name, "outer", poisson::outer_region(p));
  r.add_point(name, "corner", g.corner);
  add_gap_scalars(r, "", p, g);
  emit(r, o, {"Poisson two-way channel", "nats/s"}, out);
}

void cmd_poisson_gap(const PoissonFlags& f, const Outputs& o, std::ostream& out) {
  const auto mode = poisson::parse_mode(f.mode);
  Report r;
  for (double l0 : f.lambda0) {
    const auto p = f.params(l0);
    add_gap_scalars(r, group_name(l0) + ".", p, poisson::corner_gap(p, mode));
  }
  emit(r, o, {"Poisson corner gaps", "nats/s"}, out);
}

void cmd_poisson_fig3(const PoissonFlags& f, const Outputs& o, std::ostream& out) {
  poisson::Fig3Options opts;
  opts.a = f.a;
  opts.sigma1 = f.sigma1;
  opts.sigma2 = f.sigma2;
  opts.delta = f.delta;
  opts.lambda0 = f.lambda0;
  opts.grid = f.grid;
  opts.mode = poisson::parse_mode(f.mode);
  Report r;
  for (const auto& g : poisson::fig3_dataset(opts)) {
    const auto name = group_name(g.lambda0);
    r.add_region(name, "inner", g.inner);
    r.add_region(name, "outer", g.outer);
    r.add_point(name, "corner", g.gap.corner);
    r.add_scalar(name + ".inner_inside_outer", yes_no(is_subset(g.inner, g.outer, 1e-12)));
    add_gap_scalars(r, name + ".", {opts.a, opts.sigma1, opts.sigma2, g.lambda0, opts.delta},
                    g.gap);
  }
  emit(r, o, {"Poisson two-way channel", "nats/s"}, out);
}

void add_poisson_common(CLI::App* sub, PoissonFlags& f, bool pair) {
  sub->add_option("--a", f.a, "Peak power A")->check(CLI::PositiveNumber);
  if (pair) {
    sub->add_option("--sigma1", f.sigma1, "Duty budget of terminal 1")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--sigma2", f.sigma2, "Duty budget of terminal 2")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--delta", f.delta, "Slot width")->check(CLI::PositiveNumber);
    sub->add_option("--mode", f.mode, "Slot probabilities")
        ->check(CLI::IsMember({"exact", "taylor"}));
  } else {
    sub->add_option("--sigma", f.sigma, "Duty budget")->check(CLI::Range(0.0, 1.0));
  }
  sub->add_option("--lambda0", f.lambda0, "Dark current intensities (comma separated)")
      ->delimiter(',');
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-way channel capacity bounds and closed forms", "twc"};
  app.require_subcommand(1);

  Outputs outputs;
  OptimizerFlags optimizer;
  ConstraintFlags constraints;
  std::string model_path, structure_path;
  std::size_t samples = 10000;
  double c2_tol = 1e-7, c1_tol = 1e-9;
  closedform::ExpTwcParams exp_params;
  closedform::CauchyTwcParams cauchy_params{2.0, 2.0, 1.0, 1.0};
  closedform::InputDepGaussianParams idg_params;
  idg_params.support = {0.0, 0.5, 1.0, 1.5, 2.0};
  PoissonFlags pf;

  auto* bounds_cmd = app.add_subcommand("bounds", "Inner and outer bounds of a channel file");
  bounds_cmd->add_option("channel", model_path, "Channel or ISD file")->required();
  add_optimizer(bounds_cmd, optimizer);
  add_constraints(bounds_cmd, constraints);
  add_outputs(bounds_cmd, outputs);

  auto* isd_cmd = app.add_subcommand("isd-check", "Check the conditions for coinciding bounds");
  isd_cmd->add_option("channel", model_path, "Channel or ISD file")->required();
  isd_cmd->add_option("--structure", structure_path, "ISD structure claimed for the channel");
  isd_cmd->add_option("--samples", samples, "Joint pmfs sampled by the falsifier");
  isd_cmd->add_option("--c2-tol", c2_tol, "Counterexample margin (nats)")->check(CLI::PositiveNumber);
  isd_cmd->add_option("--c1-tol", c1_tol, "Row entropy tolerance (nats)")->check(CLI::PositiveNumber);
  add_optimizer(isd_cmd, optimizer);
  add_outputs(isd_cmd, outputs);

  auto* rect_cmd = app.add_subcommand("rectangle", "Capacity rectangle of an ISD structure");
  rect_cmd->add_option("structure", model_path, "ISD file")->required();
  add_optimizer(rect_cmd, optimizer);
  add_constraints(rect_cmd, constraints);
  add_outputs(rect_cmd, outputs);

  auto* cf_cmd = app.add_subcommand("closedform", "Continuous-alphabet closed forms");
  cf_cmd->require_subcommand(1);
  auto* exp_cmd = cf_cmd->add_subcommand("exp", "Additive exponential noise");
  exp_cmd->add_option("--a1", exp_params.a1)->check(CLI::PositiveNumber);
  exp_cmd->add_option("--a2", exp_params.a2)->check(CLI::PositiveNumber);
  exp_cmd->add_option("--m1", exp_params.m1)->check(CLI::PositiveNumber);
  exp_cmd->add_option("--m2", exp_params.m2)->check(CLI::PositiveNumber);
  add_outputs(exp_cmd, outputs);
  auto* cauchy_cmd = cf_cmd->add_subcommand("cauchy", "Additive Cauchy noise");
  cauchy_cmd->add_option("--a1", cauchy_params.a1)->check(CLI::PositiveNumber);
  cauchy_cmd->add_option("--a2", cauchy_params.a2)->check(CLI::PositiveNumber);
  cauchy_cmd->add_option("--gamma1", cauchy_params.gamma1)->check(CLI::PositiveNumber);
  cauchy_cmd->add_option("--gamma2", cauchy_params.gamma2)->check(CLI::PositiveNumber);
  add_outputs(cauchy_cmd, outputs);
  auto* idg_cmd = cf_cmd->add_subcommand("idg", "Input-dependent Gaussian noise");
  idg_cmd->add_option("--support", idg_params.support, "Input points")->delimiter(',');
  idg_cmd->add_option("--sh1", idg_params.sigma_hat_sq_1, "Additive noise variance at 1");
  idg_cmd->add_option("--sh2", idg_params.sigma_hat_sq_2, "Additive noise variance at 2");
  idg_cmd->add_option("--st1", idg_params.sigma_tilde_sq_1, "Input-proportional variance at 1");
  idg_cmd->add_option("--st2", idg_params.sigma_tilde_sq_2, "Input-proportional variance at 2");
  idg_cmd->add_option("--cost", idg_params.cost, "Cost per support point")->delimiter(',');
  idg_cmd->add_option("--budget", idg_params.budget, "Budget on the expected cost");
  add_optimizer(idg_cmd, optimizer);
  add_outputs(idg_cmd, outputs);

  auto* po_cmd = app.add_subcommand("poisson", "Poisson two-way channel");
  po_cmd->require_subcommand(1);
  auto* owc_cmd = po_cmd->add_subcommand("owc", "One-way capacity");
  add_poisson_common(owc_cmd, pf, false);
  add_outputs(owc_cmd, outputs);
  auto* region_cmd = po_cmd->add_subcommand("region", "Inner and outer regions");
  add_poisson_common(region_cmd, pf, true);
  region_cmd->add_option("--grid", pf.grid, "Duty-cycle grid per input")->check(CLI::Range(2, 100000));
  add_outputs(region_cmd, outputs);
  auto* gap_cmd = po_cmd->add_subcommand("gap", "Corner gaps and their asymptote");
  add_poisson_common(gap_cmd, pf, true);
  add_outputs(gap_cmd, outputs);
  auto* fig3_cmd = po_cmd->add_subcommand("fig3", "Regions over a dark-current sweep");
  add_poisson_common(fig3_cmd, pf, true);
  fig3_cmd->add_option("--grid", pf.grid, "Duty-cycle grid per input")->check(CLI::Range(2, 100000));
  add_outputs(fig3_cmd, outputs);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }

  // the owc and region commands default to the first dark level only
  if ((owc_cmd->parsed() || region_cmd->parsed()) && owc_cmd->count("--lambda0") == 0 &&
      region_cmd->count("--lambda0") == 0)
    pf.lambda0 = {2.0};

  try {
    if (bounds_cmd->parsed()) cmd_bounds(model_path, optimizer, constraints, outputs, out);
    else if (isd_cmd->parsed())
      cmd_isd_check(model_path, structure_path, optimizer, samples, c2_tol, c1_tol, outputs, out);
    else if (rect_cmd->parsed()) cmd_rectangle(model_path, optimizer, constraints, outputs, out);
    else if (exp_cmd->parsed()) cmd_exp(exp_params, outputs, out);
    else if (cauchy_cmd->parsed()) cmd_cauchy(cauchy_params, outputs, out);
    else if (idg_cmd->parsed()) cmd_idg(idg_params, optimizer, outputs, out);
    else if (owc_cmd->parsed()) cmd_poisson_owc(pf, outputs, out);
    else if (region_cmd->parsed()) cmd_poisson_region(pf, outputs, out);
    else if (gap_cmd->parsed()) cmd_poisson_gap(pf, outputs, out);
    else if (fig3_cmd->parsed()) cmd_poisson_fig3(pf, outputs, out);
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kOk;
}

}  // namespace twc::cli
