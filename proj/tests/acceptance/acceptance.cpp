// Acceptance suite: one PASS/FAIL line per criterion. `--only N` runs one.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "twc/bounds.hpp"
#include "twc/channel.hpp"
#include "twc/cli/app.hpp"
#include "twc/cli/io.hpp"
#include "twc/closedform.hpp"
#include "twc/isd.hpp"
#include "twc/poisson.hpp"

using namespace twc;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

namespace fs = std::filesystem;

fs::path workdir() {
  const fs::path dir = fs::temp_directory_path() / "twc_acceptance";
  fs::create_directories(dir);
  return dir;
}

int cli(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  if (out) *out = o.str();
  return code;
}

std::map<std::string, std::string> scalar_map(const cli::CsvTable& t) {
  std::map<std::string, std::string> m;
  for (const auto& row : t.rows) m[row[0]] = row[1];
  return m;
}

// ---- 1: figure reproduction through the CLI -------------------------------
Verdict fig3_reproduction() {
  Verdict v;
  const auto csv = workdir() / "c1_fig3.csv";
  const auto scalars = workdir() / "c1_fig3_scalars.csv";
  const int code = cli({"poisson", "fig3", "--a", "1", "--sigma1", "0.3", "--sigma2", "0.2", "--delta", "1e-4",
                        "--lambda0", "2,4,8", "--out", csv.string(), "--scalars", scalars.string()});
  v.require(code == 0, "fig3 exit code " + std::to_string(code));
  if (code != 0) return v;
  const auto table = cli::parse_csv(cli::read_file(csv.string()));
  const auto sc = scalar_map(cli::parse_csv(cli::read_file(scalars.string())));

  std::vector<std::string> groups;
  std::map<std::string, std::vector<RatePair>> inner, outer;
  for (const auto& row : table.rows) {
    if (std::find(groups.begin(), groups.end(), row[0]) == groups.end()) groups.push_back(row[0]);
    const RatePair p{std::stod(row[3]), std::stod(row[4])};
    if (row[1] == "inner") inner[row[0]].push_back(p);
    if (row[1] == "outer") outer[row[0]].push_back(p);
  }
  v.require(groups.size() == 3, std::to_string(groups.size()) + " region groups");
  if (groups.size() != 3) return v;

  bool contained = true;
  std::vector<RatePair> corner;
  std::vector<RatePair> gap, gap_ex;
  for (const auto& g : groups) {
    RatePair oc{0, 0};
    for (const auto& p : outer[g]) oc = {std::max(oc.r1, p.r1), std::max(oc.r2, p.r2)};
    for (const auto& p : inner[g]) contained = contained && p.r1 <= oc.r1 + 1e-12 && p.r2 <= oc.r2 + 1e-12;
    corner.push_back(oc);
    gap.push_back({std::stod(sc.at(g + ".gap1")), std::stod(sc.at(g + ".gap2"))});
    gap_ex.push_back({std::stod(sc.at(g + ".gap1_extrapolated")), std::stod(sc.at(g + ".gap2_extrapolated"))});
  }
  v.require(contained, "inner regions inside outer rectangles");

  std::string corner_ratios, gap_ratios, ex_ratios;
  bool corners_ok = true, gaps_ok = true;
  for (std::size_t i = 0; i + 1 < groups.size(); ++i) {
    for (const double r : {corner[i + 1].r1 / corner[i].r1, corner[i + 1].r2 / corner[i].r2}) {
      corners_ok = corners_ok && within(r, 0.45, 0.55);
      corner_ratios += (corner_ratios.empty() ? "" : ",") + fmt(r, 4);
    }
    for (const double r : {gap[i + 1].r1 / gap[i].r1, gap[i + 1].r2 / gap[i].r2}) {
      gaps_ok = gaps_ok && within(r, 0.20, 0.30);
      gap_ratios += (gap_ratios.empty() ? "" : ",") + fmt(r, 4);
    }
    for (const double r : {gap_ex[i + 1].r1 / gap_ex[i].r1, gap_ex[i + 1].r2 / gap_ex[i].r2})
      ex_ratios += (ex_ratios.empty() ? "" : ",") + fmt(r, 4);
  }
  v.require(corners_ok, "outer corner ratios {" + corner_ratios + "} in [0.45,0.55]");
  v.require(gaps_ok, "corner gap ratios {" + gap_ratios + "} in [0.20,0.30] (extrapolated {" + ex_ratios + "})");
  return v;
}

// ---- 2: gap against its asymptote -----------------------------------------
Verdict gap_asymptote() {
  Verdict v;
  poisson::PoissonParams p;
  p.delta = 1e-6;
  for (double s : {100.0, 200.0}) {
    p.lambda0 = s * p.a;
    const auto g = poisson::corner_gap(p);
    const double asym = poisson::gap_asymptote(p).r1;
    const double ratio = g.gap1_extrapolated / asym;
    const std::string what = "s=" + fmt(s) + " gap1/asymptote " + fmt(ratio, 5) + " (single-Delta " +
                             fmt(g.gap1 / asym, 4) + ")";
    if (s == 200.0)
      v.require(within(ratio, 0.9, 1.1), what + " in [0.9,1.1]");
    else
      v.detail += (v.detail.empty() ? "" : "; ") + what;
  }
  return v;
}

// ---- 3: limit J ------------------------------------------------------------
Verdict limit_j() {
  Verdict v;
  const double s = 1e4;
  const double value = s * s * poisson::f_of_s(s, 0.3);
  v.require(std::abs(value - 0.105) <= 1e-3, "s^2 f(s) = " + fmt(value, 6) + " vs 0.105 within 1e-3");
  return v;
}

// ---- 4: one-way capacity self-consistency --------------------------------
double owc_bracket(double a, double pi, double lambda0) {
  const double s = lambda0 / a;
  const double sls = s > 0 ? s * std::log(s) : 0.0;
  return a * (pi * (1 + s) * std::log(1 + s) + (1 - pi) * sls - (pi + s > 0 ? (pi + s) * std::log(pi + s) : 0.0));
}

Verdict owc_consistency() {
  Verdict v;
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> ua(0.5, 3.0), us(0.01, 1.0), ul(0.0, 20.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double a = ua(gen), sigma = us(gen), lambda0 = ul(gen);
    double best = owc_bracket(a, sigma, lambda0);
    for (long k = 0; k * 1e-5 <= sigma; ++k) best = std::max(best, owc_bracket(a, k * 1e-5, lambda0));
    worst = std::max(worst, std::abs(poisson::owc_capacity(a, sigma, lambda0) - best));
  }
  v.require(worst <= 1e-6, "max |closed form - grid| over 20 triples " + fmt(worst, 3) + " <= 1e-6");
  const double lo = std::abs(poisson::pi0(1e-8) - std::exp(-1.0));
  const double hi = std::abs(poisson::pi0(1e4) - 0.5);
  v.require(lo < 1e-6, "|pi0(1e-8) - 1/e| = " + fmt(lo, 3));
  v.require(hi < 1e-3, "|pi0(1e4) - 1/2| = " + fmt(hi, 3));
  return v;
}

// ---- 5: ISD rectangle equivalence -----------------------------------------
Verdict isd_rectangle() {
  Verdict v;
  const bounds::OptimizerConfig cfg;
  const auto none = InputConstraint::none();
  for (double c : {0.0, 0.1, 0.25}) {
    const auto ch = examples::mod2_adder(c, c);
    const auto rect = isd::rectangle_capacity(isd::mod2_structure(c, c), none, none, cfg);
    const auto inner = bounds::inner_bound(ch, none, none, cfg);
    const auto outer = bounds::outer_bound(ch, none, none, cfg);
    const double d_rect = std::max(std::abs(inner.max_r1() - rect.max_r1()), std::abs(inner.max_r2() - rect.max_r2()));
    const double d_outer =
        std::max(std::abs(inner.max_r1() - outer.max_r1()), std::abs(inner.max_r2() - outer.max_r2()));
    v.require(d_rect <= 1e-6 && d_outer <= 1e-6, "crossover " + fmt(c) + ": |inner-rect| " + fmt(d_rect, 2) +
                                                     ", |inner-outer| " + fmt(d_outer, 2));
  }
  return v;
}

// ---- 6: non-ISD witness ---------------------------------------------------
Verdict non_isd_witness() {
  Verdict v;
  const auto m = isd::multiplicative_structure({0.0, 1.0}, {1.0}, info::Pmf::uniform(1), info::Pmf::uniform(1));
  const auto report = isd::check_injectivity(m.structure);
  const bool witness_zero = !report.injective && report.witness && m.x_values[report.witness->fixed_input] == 0.0;
  v.require(witness_zero, report.witness ? "injectivity fails in " + report.witness->map + " at x=" +
                                               fmt(m.x_values[report.witness->fixed_input])
                                         : "injectivity unexpectedly holds");

  const bounds::OptimizerConfig cfg;
  const auto ch = examples::binary_multiplier();
  const auto none = InputConstraint::none();
  const std::vector<InputConstraint> joint_none;
  const auto inner = bounds::inner_sweep(ch, none, none, cfg);
  const auto outer = bounds::outer_sweep(ch, joint_none, cfg);
  double diff = -1.0;
  for (std::size_t w = 0; w < inner.optima.size(); ++w)
    if (inner.optima[w].weight == 0.5) diff = outer.optima[w].value - inner.optima[w].value;
  v.require(diff > 1e-3, "outer - inner at weight 1/2 = " + fmt(diff, 5) + " > 1e-3");
  return v;
}

// ---- 7: Shannon table II ----------------------------------------------------
Verdict shannon_table2() {
  Verdict v;
  const auto ch = examples::shannon_table2();
  v.require(isd::check_c1(ch).holds, "C1 holds");
  const bounds::OptimizerConfig cfg;
  isd::C2Options opts;
  opts.samples = 10000;
  const auto c2 = isd::probe_c2(ch, cfg, nullptr, opts);
  v.require(c2.status != isd::C2Status::counterexample_found,
            std::string("C2 ") + isd::to_string(c2.status) + " after " + std::to_string(c2.samples_tested) + " samples");
  const auto none = InputConstraint::none();
  const std::vector<InputConstraint> joint_none;
  const auto inner = bounds::inner_sweep(ch, none, none, cfg);
  const auto outer = bounds::outer_sweep(ch, joint_none, cfg);
  double worst = 0.0;
  for (std::size_t w = 0; w < inner.optima.size(); ++w)
    worst = std::max(worst, std::abs(outer.optima[w].value - inner.optima[w].value));
  v.require(worst <= 1e-5, "max |outer - inner| over " + std::to_string(inner.optima.size()) + " weights " +
                               fmt(worst, 3) + " <= 1e-5");
  return v;
}

// ---- 8: closed-form cross-checks --------------------------------------------
Verdict closed_form() {
  Verdict v;
  double worst_exp = 0.0;
  for (double a : {1.0, 3.0})
    for (double m : {1.0, 2.0})
      worst_exp = std::max(worst_exp, std::abs(closedform::exp_mi_quadrature(closedform::exp_saddle_input(a, m), m) -
                                               std::log1p(a / m)));
  v.require(worst_exp <= 1e-4, "exponential max |MI - ln(1+A/m)| " + fmt(worst_exp, 3) + " <= 1e-4");
  double worst_h = 0.0;
  for (double g : {0.5, 1.0, 2.0})
    worst_h = std::max(worst_h, std::abs(closedform::cauchy_entropy_quadrature(g) -
                                         std::log(4 * std::numbers::pi * g)));
  v.require(worst_h <= 1e-6, "Cauchy max |h - ln(4 pi gamma)| " + fmt(worst_h, 3) + " <= 1e-6");
  double worst_c = 0.0;
  for (const auto& [a, g] : std::vector<std::pair<double, double>>{{2.0, 1.0}, {3.0, 0.5}, {5.0, 2.0}})
    worst_c = std::max(worst_c, std::abs(closedform::cauchy_constraint_value(a - g, a, g) - std::log(4.0)));
  v.require(worst_c <= 1e-6, "Cauchy constraint max |E - ln 4| " + fmt(worst_c, 3) + " <= 1e-6");
  return v;
}

// ---- 9: determinism and format -----------------------------------------------
Verdict determinism() {
  Verdict v;
  const std::string data = TWC_TEST_DATA;
  const std::vector<std::vector<std::string>> commands{
      {"poisson", "fig3"},
      {"poisson", "region", "--lambda0", "4"},
      {"bounds", data + "/binary_multiplier.twc", "--weights", "9", "--restarts", "3"},
      {"isd-check", data + "/binary_multiplier.twc", "--samples", "200"},
      {"closedform", "exp"},
      {"closedform", "idg"},
      {"rectangle", data + "/mod2_01.isd"},
  };
  std::size_t compared = 0, parsed = 0;
  for (const auto& base : commands) {
    std::vector<std::string> outputs[2];
    for (int run = 0; run < 2; ++run) {
      const auto stem = workdir() / ("c9_" + std::to_string(run));
      const std::string csv = stem.string() + ".csv", sc = stem.string() + "_scalars.csv",
                        svg = stem.string() + ".svg";
      auto args = base;
      args.insert(args.end(), {"--out", csv, "--scalars", sc, "--svg", svg});
      if (base[0] == "isd-check") args.resize(base.size() + 4);  // no region output
      std::string stdout_text;
      const int code = cli(args, &stdout_text);
      if (code != 0) {
        v.require(false, base[0] + " " + base[1] + " exit " + std::to_string(code));
        return v;
      }
      outputs[run].push_back(stdout_text);
      for (const auto& path : {csv, sc, svg}) {
        if (!fs::exists(path)) continue;
        outputs[run].push_back(cli::read_file(path));
        if (path != svg) {
          try {
            const auto t = cli::parse_csv(outputs[run].back());
            const bool known = t.header == cli::kRegionHeader || t.header == cli::kScalarHeader;
            if (!known) v.require(false, path + " has an unknown header");
            ++parsed;
          } catch (const std::exception& e) {
            v.require(false, "CSV from " + base[0] + " does not re-parse: " + e.what());
          }
        }
        fs::remove(path);
      }
    }
    compared += outputs[0].size();
    if (outputs[0] != outputs[1]) v.require(false, base[0] + " " + base[1] + " output differs between runs");
  }
  v.require(true, std::to_string(compared) + " outputs byte-identical across runs, " + std::to_string(parsed) +
                      " CSV files re-parsed");
  return v;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Verdict()> check;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--only", only, "Run a single criterion (1-9)")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "Poisson figure reproduction", 10.0, fig3_reproduction},
      {2, "corner gap asymptote", 5.0, gap_asymptote},
      {3, "limit J", 1.0, limit_j},
      {4, "one-way capacity self-consistency", 30.0, owc_consistency},
      {5, "ISD rectangle equivalence", 60.0, isd_rectangle},
      {6, "non-ISD witness", 60.0, non_isd_witness},
      {7, "Shannon table II", 120.0, shannon_table2},
      {8, "closed-form cross-checks", 30.0, closed_form},
      {9, "determinism and format", 0.0, determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0.0) v.require(secs < c.budget_seconds, "runtime < " + fmt(c.budget_seconds) + " s");
    std::printf("criterion %d %s: %s [%.2f s] %s\n", c.id, c.name, v.pass ? "PASS" : "FAIL", secs,
                v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
