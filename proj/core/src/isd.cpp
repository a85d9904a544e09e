#include "twc/isd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "random.hpp"
#include "twc/errors.hpp"
#include "twc/simplex.hpp"

namespace twc::isd {

namespace {

void check_table(const std::vector<std::size_t>& table, std::size_t rows, std::size_t cols,
                 std::size_t range, const char* name) {
  if (table.size() != rows * cols) {
    std::ostringstream os;
    os << name << " table has " << table.size() << " entries, expected " << rows * cols;
    throw StructureError(os.str());
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] >= range) {
      std::ostringstream os;
      os << name << "(" << i / cols << ", " << i % cols << ") = " << table[i]
         << " is outside its codomain of size " << range;
      throw StructureError(os.str());
    }
  }
}

std::optional<InjectivityWitness> find_collision(const std::vector<std::size_t>& table,
                                                 std::size_t rows, std::size_t cols,
                                                 const char* name) {
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t a = 0; a < cols; ++a) {
      for (std::size_t b = a + 1; b < cols; ++b) {
        if (table[r * cols + a] == table[r * cols + b]) return InjectivityWitness{name, r, a, b};
      }
    }
  }
  return std::nullopt;
}

// Distribution of g(x, Z) for x ~ p, Z ~ pz.
std::vector<double> image_law(std::span<const double> p, const std::vector<std::size_t>& g,
                              std::span<const double> pz, std::size_t n_out) {
  std::vector<double> law(n_out, 0.0);
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t z = 0; z < pz.size(); ++z) law[g[x * pz.size() + z]] += p[x] * pz[z];
  return law;
}

C1Report c1_scan(const TwcChannel& ch, double tol, bool vary_x1) {
  C1Report report;
  for (int output = 1; output <= 2; ++output) {
    const auto h = info::row_entropies(ch, output == 1 ? Terminal::one : Terminal::two);
    const std::size_t n_fixed = vary_x1 ? ch.nx2() : ch.nx1();
    const std::size_t n_vary = vary_x1 ? ch.nx1() : ch.nx2();
    for (std::size_t fixed = 0; fixed < n_fixed; ++fixed) {
      auto at = [&](std::size_t v) {
        return vary_x1 ? h[v * ch.nx2() + fixed] : h[fixed * ch.nx2() + v];
      };
      for (std::size_t v = 1; v < n_vary; ++v) {
        if (std::abs(at(v) - at(0)) > tol) {
          report.holds = false;
          report.witness = C1Witness{output, fixed, 0, v, at(0), at(v)};
          return report;
        }
      }
    }
  }
  return report;
}

// Per-joint quantities for the C2 slack at candidate p1-bar:
//   slack1 = sum_x1 pbar(x1) a(x1) - h1       (linear)
//   slack2 = sum_x2 p2(x2) H(sum_x1 pbar(x1) W2(.|x1,x2)) - h2   (concave)
struct SlackModel {
  const TwcChannel& ch;
  std::vector<double> p2;
  std::vector<double> a;
  double h1 = 0.0;
  double h2 = 0.0;

  SlackModel(const TwcChannel& channel, const info::JointPmf& joint) : ch(channel) {
    const std::size_t nx1 = ch.nx1(), nx2 = ch.nx2();
    const auto m2 = joint.marginal_x2();
    p2.assign(m2.probs().begin(), m2.probs().end());
    a.assign(nx1, 0.0);
    std::vector<double> mix1(ch.ny1());
    for (std::size_t x1 = 0; x1 < nx1; ++x1) {
      std::fill(mix1.begin(), mix1.end(), 0.0);
      double px1 = 0.0;
      for (std::size_t x2 = 0; x2 < nx2; ++x2) {
        const auto row = ch.w1_row(x1, x2);
        for (std::size_t y = 0; y < ch.ny1(); ++y) mix1[y] += p2[x2] * row[y];
        px1 += joint(x1, x2);
      }
      a[x1] = info::entropy_of(mix1);
      // H(Y1 | X1 = x1) under the joint
      if (px1 > 0.0) {
        std::vector<double> cond(ch.ny1(), 0.0);
        for (std::size_t x2 = 0; x2 < nx2; ++x2) {
          const auto row = ch.w1_row(x1, x2);
          for (std::size_t y = 0; y < ch.ny1(); ++y) cond[y] += joint(x1, x2) / px1 * row[y];
        }
        h1 += px1 * info::entropy_of(cond);
      }
    }
    std::vector<double> cond(ch.ny2());
    for (std::size_t x2 = 0; x2 < nx2; ++x2) {
      if (p2[x2] <= 0.0) continue;
      std::fill(cond.begin(), cond.end(), 0.0);
      for (std::size_t x1 = 0; x1 < nx1; ++x1) {
        const auto row = ch.w2_row(x1, x2);
        for (std::size_t y = 0; y < ch.ny2(); ++y) cond[y] += joint(x1, x2) / p2[x2] * row[y];
      }
      h2 += p2[x2] * info::entropy_of(cond);
    }
  }

  double slack1(std::span<const double> pbar) const {
    double s = -h1;
    for (std::size_t x1 = 0; x1 < pbar.size(); ++x1) s += pbar[x1] * a[x1];
    return s;
  }

  // slack2 and, optionally, its gradient in pbar
  double slack2(std::span<const double> pbar, std::span<double> grad) const {
    const std::size_t nx1 = ch.nx1();
    if (!grad.empty()) std::fill(grad.begin(), grad.end(), 0.0);
    std::vector<double> q(ch.ny2());
    double s = -h2;
    for (std::size_t x2 = 0; x2 < ch.nx2(); ++x2) {
      if (p2[x2] <= 0.0) continue;
      std::fill(q.begin(), q.end(), 0.0);
      for (std::size_t x1 = 0; x1 < nx1; ++x1) {
        const auto row = ch.w2_row(x1, x2);
        for (std::size_t y = 0; y < ch.ny2(); ++y) q[y] += pbar[x1] * row[y];
      }
      s += p2[x2] * info::entropy_of(q);
      if (grad.empty()) continue;
      for (std::size_t x1 = 0; x1 < nx1; ++x1) {
        const auto row = ch.w2_row(x1, x2);
        double d = 0.0;
        for (std::size_t y = 0; y < ch.ny2(); ++y)
          if (row[y] > 0.0) d -= row[y] * (std::log(std::max(q[y], 1e-300)) + 1.0);
        grad[x1] += p2[x2] * d;
      }
    }
    return s;
  }

  double min_slack(std::span<const double> pbar) const {
    return std::min(slack1(pbar), slack2(pbar, {}));
  }
};

}  // namespace

void IsdStructure::validate() const {
  if (nx1 == 0 || nx2 == 0 || nz1 == 0 || nz2 == 0 || nt1 == 0 || nt2 == 0 || ny1 == 0 ||
      ny2 == 0)
    throw StructureError("ISD alphabets must be nonempty");
  check_table(g1, nx2, nz1, nt1, "g1");
  check_table(f1, nx1, nt1, ny1, "f1");
  check_table(g2, nx1, nz2, nt2, "g2");
  check_table(f2, nx2, nt2, ny2, "f2");
  if (pz1.size() != nz1) throw StructureError("pz1 does not match the Z1 alphabet");
  if (pz2.size() != nz2) throw StructureError("pz2 does not match the Z2 alphabet");
}

InjectivityReport check_injectivity(const IsdStructure& s) {
  s.validate();
  InjectivityReport report;
  for (auto witness : {find_collision(s.g1, s.nx2, s.nz1, "g1"),
                       find_collision(s.f1, s.nx1, s.nt1, "f1"),
                       find_collision(s.g2, s.nx1, s.nz2, "g2"),
                       find_collision(s.f2, s.nx2, s.nt2, "f2")}) {
    if (witness) {
      report.injective = false;
      report.witness = std::move(witness);
      break;
    }
  }
  return report;
}

namespace {

void require_injective(const IsdStructure& s) {
  const auto report = check_injectivity(s);
  if (report.injective) return;
  const auto& w = *report.witness;
  std::ostringstream os;
  os << w.map << " is not injective with its first argument fixed at " << w.fixed_input
     << ": arguments " << w.first << " and " << w.second << " collide";
  throw StructureError(os.str());
}

}  // namespace

TwcChannel to_channel(const IsdStructure& s) {
  require_injective(s);
  return induced_channel(s);
}

TwcChannel induced_channel(const IsdStructure& s) {
  s.validate();
  ChannelShape shape{s.nx1, s.nx2, s.ny1, s.ny2};
  std::vector<double> w1(s.nx1 * s.nx2 * s.ny1, 0.0);
  std::vector<double> w2(s.nx1 * s.nx2 * s.ny2, 0.0);
  for (std::size_t x1 = 0; x1 < s.nx1; ++x1) {
    for (std::size_t x2 = 0; x2 < s.nx2; ++x2) {
      const std::size_t row = x1 * s.nx2 + x2;
      for (std::size_t z = 0; z < s.nz1; ++z)
        w1[row * s.ny1 + s.f1_at(x1, s.g1_at(x2, z))] += s.pz1[z];
      for (std::size_t z = 0; z < s.nz2; ++z)
        w2[row * s.ny2 + s.f2_at(x2, s.g2_at(x1, z))] += s.pz2[z];
    }
  }
  return make_channel(shape, std::move(w1), std::move(w2));
}

C1Report check_c1(const TwcChannel& ch, double tol) { return c1_scan(ch, tol, true); }

C1Report check_c1_symmetric(const TwcChannel& ch, double tol) { return c1_scan(ch, tol, false); }

const char* to_string(C2Status status) {
  switch (status) {
    case C2Status::verified_by_structure: return "verified-by-structure";
    case C2Status::counterexample_found: return "counterexample-found";
    case C2Status::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

double c2_best_slack(const TwcChannel& ch, const info::JointPmf& joint,
                     const bounds::OptimizerConfig& cfg) {
  const SlackModel model(ch, joint);
  const std::size_t nx1 = ch.nx1();
  const simplex::AscentOptions opts{cfg.max_iterations, cfg.tolerance, cfg.step_tolerance};

  // max_p min(s1, s2) = min_w max_p [w s1 + (1-w) s2]; the inner value is
  // convex in w, so a golden-section search over w finds the saddle.
  std::vector<double> warm(nx1, 1.0 / static_cast<double>(nx1));
  double best_primal = model.min_slack(warm);
  auto dual = [&](double w) {
    const simplex::Objective f = [&](std::span<const double> p, std::span<double> g) {
      const double s2 = model.slack2(p, g);
      for (std::size_t x1 = 0; x1 < nx1; ++x1) g[x1] = w * model.a[x1] + (1.0 - w) * g[x1];
      return w * model.slack1(p) + (1.0 - w) * s2;
    };
    auto r = simplex::maximize(f, warm, {}, opts);
    best_primal = std::max(best_primal, model.min_slack(r.point));
    warm = r.point;
    return r.value;
  };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = 1.0;
  double m1 = hi - inv_phi * (hi - lo), m2 = lo + inv_phi * (hi - lo);
  double f1 = dual(m1), f2 = dual(m2);
  double best_dual = std::min({dual(0.0), dual(1.0), f1, f2});
  for (int it = 0; it < 60 && hi - lo > 1e-9; ++it) {
    if (f1 < f2) {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - inv_phi * (hi - lo);
      f1 = dual(m1);
    } else {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + inv_phi * (hi - lo);
      f2 = dual(m2);
    }
    best_dual = std::min({best_dual, f1, f2});
    if (best_primal >= best_dual - 1e-12) break;  // duality gap closed
  }
  return std::max(best_primal, best_dual);
}

C2Report probe_c2(const TwcChannel& ch, const bounds::OptimizerConfig& cfg,
                  const IsdStructure* structure, const C2Options& options) {
  cfg.validate();
  C2Report report;
  if (structure != nullptr && check_injectivity(*structure).injective) {
    const auto built = to_channel(*structure);
    bool same = built.shape() == ch.shape();
    for (std::size_t i = 0; same && i < built.w1_data().size(); ++i)
      same = std::abs(built.w1_data()[i] - ch.w1_data()[i]) <= 1e-12;
    for (std::size_t i = 0; same && i < built.w2_data().size(); ++i)
      same = std::abs(built.w2_data()[i] - ch.w2_data()[i]) <= 1e-12;
    if (same) {
      report.status = C2Status::verified_by_structure;
      return report;
    }
  }

  const std::size_t nx1 = ch.nx1(), nx2 = ch.nx2();
  detail::Rng rng(detail::stream_seed(cfg.seed, 0xC2, 0));
  for (std::size_t k = 0; k < options.samples; ++k) {
    auto p = rng.dirichlet(nx1 * nx2);
    if (k % 2 == 1) {
      // sharpen every other sample toward faces of the simplex
      double sum = 0.0;
      for (double& v : p) sum += (v = v * v * v);
      for (double& v : p) v /= sum;
    }
    const info::JointPmf joint(nx1, nx2, std::move(p));
    report.samples_tested = k + 1;

    // cheap candidates first: the joint's own X1 marginal, and p(x1 | x2)
    const SlackModel model(ch, joint);
    const auto m1 = joint.marginal_x1();
    double screen = model.min_slack(m1.probs());
    std::vector<double> cond(nx1);
    for (std::size_t x2 = 0; x2 < nx2 && screen < -options.tolerance; ++x2) {
      if (model.p2[x2] <= 0.0) continue;
      for (std::size_t x1 = 0; x1 < nx1; ++x1) cond[x1] = joint(x1, x2) / model.p2[x2];
      screen = std::max(screen, model.min_slack(cond));
    }
    if (screen >= -options.tolerance) continue;

    const double best = c2_best_slack(ch, joint, cfg);
    if (best < -options.tolerance) {
      report.status = C2Status::counterexample_found;
      report.witness = joint;
      report.witness_slack = best;
      return report;
    }
  }
  report.status = C2Status::inconclusive;
  return report;
}

ConditionReport check_conditions(const TwcChannel& ch, const bounds::OptimizerConfig& cfg,
                                 const IsdStructure* structure, const C2Options& options,
                                 double c1_tol) {
  ConditionReport report;
  report.c1 = check_c1(ch, c1_tol);
  report.c1_symmetric = check_c1_symmetric(ch, c1_tol);
  report.c2 = probe_c2(ch, cfg, structure, options);
  return report;
}

RateRegion rectangle_capacity(const IsdStructure& s, const InputConstraint& c1,
                              const InputConstraint& c2, const bounds::OptimizerConfig& cfg) {
  cfg.validate();
  require_injective(s);
  c1.validate(s.nx1);
  c2.validate(s.nx2);
  const simplex::AscentOptions opts{cfg.max_iterations, cfg.tolerance, cfg.step_tolerance};

  // max over p of H(g(X, Z)) - H(Z); the entropy of a linear image is concave
  auto solve = [&](const std::vector<std::size_t>& g, std::size_t nx, const info::Pmf& pz,
                   std::size_t nt, const InputConstraint& c) {
    const auto pzv = pz.probs();
    const simplex::Objective f = [&](std::span<const double> p, std::span<double> grad) {
      const auto law = image_law(p, g, pzv, nt);
      for (std::size_t x = 0; x < nx; ++x) {
        grad[x] = 0.0;
        for (std::size_t z = 0; z < pzv.size(); ++z)
          grad[x] -= pzv[z] * (std::log(std::max(law[g[x * pzv.size() + z]], 1e-300)) + 1.0);
      }
      return info::entropy_of(law);
    };
    const std::vector<double> start(nx, 1.0 / static_cast<double>(nx));
    const auto cuts = simplex::cuts_from(c);
    const auto r = simplex::maximize(f, start, cuts, opts);
    return std::max(0.0, info::entropy_of(image_law(r.point, g, pzv, nt)) - info::entropy(pz));
  };

  const double r1 = solve(s.g2, s.nx1, s.pz2, s.nt2, c1);
  const double r2 = solve(s.g1, s.nx2, s.pz1, s.nt1, c2);
  return rectangle(r1, r2);
}

IsdStructure mod2_structure(double crossover1, double crossover2) {
  for (double c : {crossover1, crossover2})
    if (!(c >= 0.0 && c <= 0.5)) throw DomainError("crossover probability must lie in [0, 1/2]");
  const std::vector<std::size_t> xor_table{0, 1, 1, 0};
  IsdStructure s;
  s.nx1 = s.nx2 = s.nz1 = s.nz2 = s.nt1 = s.nt2 = s.ny1 = s.ny2 = 2;
  s.g1 = s.f1 = s.g2 = s.f2 = xor_table;
  s.pz1 = info::Pmf({1.0 - crossover1, crossover1});
  s.pz2 = info::Pmf({1.0 - crossover2, crossover2});
  return s;
}

MultiplicativeStructure multiplicative_structure(std::vector<double> x_values,
                                                 std::vector<double> z_values, info::Pmf pz1,
                                                 info::Pmf pz2) {
  if (x_values.empty() || z_values.empty())
    throw StructureError("multiplicative structure needs nonempty alphabets");
  MultiplicativeStructure m;
  auto distinct = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  auto index_of = [](const std::vector<double>& values, double v) {
    return static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), v) -
                                    values.begin());
  };
  std::vector<double> ts, ys;
  for (double x : x_values)
    for (double z : z_values) ts.push_back(x * z);
  m.t_values = distinct(ts);
  for (double x : x_values)
    for (double t : m.t_values) ys.push_back(x * t);
  m.y_values = distinct(ys);

  auto& s = m.structure;
  const std::size_t nx = x_values.size(), nz = z_values.size();
  s.nx1 = s.nx2 = nx;
  s.nz1 = s.nz2 = nz;
  s.nt1 = s.nt2 = m.t_values.size();
  s.ny1 = s.ny2 = m.y_values.size();
  std::vector<std::size_t> g(nx * nz), f(nx * m.t_values.size());
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t z = 0; z < nz; ++z) g[x * nz + z] = index_of(m.t_values, x_values[x] * z_values[z]);
    for (std::size_t t = 0; t < m.t_values.size(); ++t)
      f[x * m.t_values.size() + t] = index_of(m.y_values, x_values[x] * m.t_values[t]);
  }
  s.g1 = s.g2 = g;
  s.f1 = s.f2 = f;
  s.pz1 = std::move(pz1);
  s.pz2 = std::move(pz2);
  m.x_values = std::move(x_values);
  m.z_values = std::move(z_values);
  s.validate();
  return m;
}

}  // namespace twc::isd
