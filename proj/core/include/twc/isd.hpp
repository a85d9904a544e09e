#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "twc/bounds.hpp"
#include "twc/channel.hpp"
#include "twc/info.hpp"
#include "twc/region.hpp"

// Injective semi-deterministic two-way channels:
//   Y_i = f_i(X_i, T_i),  T_i = g_i(X_j, Z_i),
// with f_i(x_i, .) and g_i(x_j, .) one-to-one and Z_i independent of the
// inputs. For this class the inner and outer bounds coincide and the
// capacity region is a rectangle.
namespace twc::isd {

/// Symbol maps stored as index tables over alphabets 0..n-1.
struct IsdStructure {
  std::size_t nx1 = 0, nx2 = 0;
  std::size_t nz1 = 0, nz2 = 0;
  std::size_t nt1 = 0, nt2 = 0;
  std::size_t ny1 = 0, ny2 = 0;
  std::vector<std::size_t> g1;  ///< [x2 * nz1 + z1] -> t1
  std::vector<std::size_t> f1;  ///< [x1 * nt1 + t1] -> y1
  std::vector<std::size_t> g2;  ///< [x1 * nz2 + z2] -> t2
  std::vector<std::size_t> f2;  ///< [x2 * nt2 + t2] -> y2
  info::Pmf pz1{std::vector<double>{1.0}};
  info::Pmf pz2{std::vector<double>{1.0}};

  std::size_t g1_at(std::size_t x2, std::size_t z1) const { return g1[x2 * nz1 + z1]; }
  std::size_t f1_at(std::size_t x1, std::size_t t1) const { return f1[x1 * nt1 + t1]; }
  std::size_t g2_at(std::size_t x1, std::size_t z2) const { return g2[x1 * nz2 + z2]; }
  std::size_t f2_at(std::size_t x2, std::size_t t2) const { return f2[x2 * nt2 + t2]; }

  /// Tables are total and in range, noise pmfs match their alphabets.
  /// Throws StructureError otherwise. Injectivity is not checked here.
  void validate() const;
};

/// Two second-argument values that one map sends to the same output.
struct InjectivityWitness {
  std::string map;          ///< "g1", "f1", "g2" or "f2"
  std::size_t fixed_input;  ///< the first argument held fixed
  std::size_t first;
  std::size_t second;
};

struct InjectivityReport {
  bool injective = true;
  std::optional<InjectivityWitness> witness;
};

/// Checks g1, f1, g2, f2 in that order and reports the first collision.
InjectivityReport check_injectivity(const IsdStructure& s);

/// W_i(y_i|x1,x2) = sum of pz_i(z) over z with f_i(x_i, g_i(x_j, z)) = y_i.
/// Throws StructureError if any map is not injective.
TwcChannel to_channel(const IsdStructure& s);

/// The same law without the injectivity requirement.
TwcChannel induced_channel(const IsdStructure& s);

/// (i, x_fixed, a, b): at output Y_i with the fixed input held at x_fixed, the
/// row entropies at the varying input values a and b differ.
struct C1Witness {
  int output = 0;
  std::size_t fixed = 0;
  std::size_t first = 0;
  std::size_t second = 0;
  double entropy_first = 0.0;
  double entropy_second = 0.0;
};

struct C1Report {
  bool holds = true;
  std::optional<C1Witness> witness;
};

/// Invariance of H(Y_i | X1, X2) under every p(x1|x2): for both outputs and
/// every x2, H(Y_i | x1, x2) must be constant in x1 within `tol` nats.
C1Report check_c1(const TwcChannel& ch, double tol = 1e-9);

/// The mirrored check (constant in x2 for each x1). Informational only.
C1Report check_c1_symmetric(const TwcChannel& ch, double tol = 1e-9);

enum class C2Status { verified_by_structure, counterexample_found, inconclusive };

const char* to_string(C2Status status);

struct C2Options {
  std::size_t samples = 10000;
  /// A joint counts as a counterexample only if every product candidate
  /// falls short by more than this (nats).
  double tolerance = 1e-7;
};

struct C2Report {
  C2Status status = C2Status::inconclusive;
  std::optional<info::JointPmf> witness;
  /// max over product candidates of min_i slack_i at the witness (negative)
  double witness_slack = 0.0;
  std::size_t samples_tested = 0;
};

/// Randomized falsification of the entropy-domination condition. When a
/// structure is supplied, passes injectivity and reproduces `ch`, the
/// condition holds by construction and no sampling is done.
C2Report probe_c2(const TwcChannel& ch, const bounds::OptimizerConfig& cfg,
                  const IsdStructure* structure = nullptr, const C2Options& options = {});

/// max over p1-bar of min(slack1, slack2) for one joint; used by probe_c2.
double c2_best_slack(const TwcChannel& ch, const info::JointPmf& joint,
                     const bounds::OptimizerConfig& cfg);

struct ConditionReport {
  C1Report c1;
  C1Report c1_symmetric;
  C2Report c2;
};

ConditionReport check_conditions(const TwcChannel& ch, const bounds::OptimizerConfig& cfg,
                                 const IsdStructure* structure = nullptr,
                                 const C2Options& options = {}, double c1_tol = 1e-9);

/// Rectangle with corner (max_p1 H(g2(X1,Z2)) - H(Z2), max_p2 H(g1(X2,Z1)) - H(Z1)),
/// each maximized by concave ascent under its constraint.
RateRegion rectangle_capacity(const IsdStructure& s, const InputConstraint& c1,
                              const InputConstraint& c2, const bounds::OptimizerConfig& cfg);

/// Modulo-2 adder: g_i(x, z) = x xor z, f_i(x, t) = x xor t, Z_i ~ Bern(c_i).
IsdStructure mod2_structure(double crossover1, double crossover2);

/// Y_i = X_i * X_j * Z_i over real-valued symbol sets. Both inputs share
/// `x_values`; T and Y alphabets are the distinct products, sorted.
struct MultiplicativeStructure {
  IsdStructure structure;
  std::vector<double> x_values;
  std::vector<double> z_values;
  std::vector<double> t_values;
  std::vector<double> y_values;
};

MultiplicativeStructure multiplicative_structure(std::vector<double> x_values,
                                                 std::vector<double> z_values, info::Pmf pz1,
                                                 info::Pmf pz2);

}  // namespace twc::isd
