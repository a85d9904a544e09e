#include "twc/info.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "twc/errors.hpp"

namespace twc::info {

namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

inline double plogp(double p) noexcept { return p > 0.0 ? p * std::log(p) : 0.0; }

}  // namespace

void validate_simplex(std::vector<double>& probs, const char* what) {
  if (probs.empty()) throw ValidationError(std::string(what) + " is empty");
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!std::isfinite(probs[i]) || probs[i] < 0.0) {
      std::ostringstream os;
      os << what << " entry " << i << " = " << probs[i] << " is not a probability";
      throw ValidationError(os.str());
    }
  }
  const double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    std::ostringstream os;
    os.precision(15);
    os << what << " sums to " << sum;
    throw ValidationError(os.str());
  }
  for (double& p : probs) p /= sum;
}

Pmf::Pmf(std::vector<double> probs) : probs_(std::move(probs)) {
  labels_ = default_labels(probs_.size());
  validate_simplex(probs_, "pmf");
}

Pmf::Pmf(std::vector<std::string> labels, std::vector<double> probs)
    : labels_(std::move(labels)), probs_(std::move(probs)) {
  if (labels_.size() != probs_.size())
    throw ValidationError("pmf label count does not match probability count");
  std::unordered_set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw ValidationError("pmf labels must be distinct");
  validate_simplex(probs_, "pmf");
}

Pmf Pmf::uniform(std::size_t n) {
  if (n == 0) throw ValidationError("pmf is empty");
  return Pmf(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Pmf Pmf::point_mass(std::size_t n, std::size_t at) {
  if (at >= n) throw ValidationError("point mass outside alphabet");
  std::vector<double> p(n, 0.0);
  p[at] = 1.0;
  return Pmf(std::move(p));
}

JointPmf::JointPmf(std::size_t rows, std::size_t cols, std::vector<double> probs)
    : rows_(rows), cols_(cols), probs_(std::move(probs)) {
  if (rows_ * cols_ != probs_.size() || probs_.empty())
    throw ValidationError("joint pmf dimensions do not match its entries");
  validate_simplex(probs_, "joint pmf");
}

JointPmf JointPmf::product(const Pmf& p1, const Pmf& p2) {
  std::vector<double> joint(p1.size() * p2.size());
  for (std::size_t i = 0; i < p1.size(); ++i)
    for (std::size_t j = 0; j < p2.size(); ++j) joint[i * p2.size() + j] = p1[i] * p2[j];
  return JointPmf(p1.size(), p2.size(), std::move(joint));
}

Pmf JointPmf::marginal_x1() const {
  std::vector<double> m(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m[i] += probs_[i * cols_ + j];
  return Pmf(std::move(m));
}

Pmf JointPmf::marginal_x2() const {
  std::vector<double> m(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m[j] += probs_[i * cols_ + j];
  return Pmf(std::move(m));
}

double entropy_of(std::span<const double> p) noexcept {
  double h = 0.0;
  for (double v : p) h -= plogp(v);
  return h;
}

double entropy(const Pmf& p) { return std::max(0.0, entropy_of(p.probs())); }

double binary_entropy(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("binary_entropy: argument outside [0,1]");
  if (q == 0.0 || q == 1.0) return 0.0;
  return -q * std::log(q) - (1.0 - q) * std::log1p(-q);
}

double conditional_mi(std::span<const double> joint, const TwcChannel& ch,
                      Direction direction) noexcept {
  const std::size_t nx1 = ch.nx1();
  const std::size_t nx2 = ch.nx2();
  const bool forward = direction == Direction::one_to_two;
  // The conditioning input is the receiver's own symbol: X2 for Y2, X1 for Y1.
  const std::size_t n_own = forward ? nx2 : nx1;
  const std::size_t n_other = forward ? nx1 : nx2;
  const std::size_t ny = forward ? ch.ny2() : ch.ny1();

  std::vector<double> mix(ny);
  double h_given_own = 0.0;
  double h_given_both = 0.0;
  for (std::size_t own = 0; own < n_own; ++own) {
    std::fill(mix.begin(), mix.end(), 0.0);
    double p_own = 0.0;
    double h_both_slice = 0.0;
    std::size_t active = 0;
    for (std::size_t other = 0; other < n_other; ++other) {
      const std::size_t x1 = forward ? other : own;
      const std::size_t x2 = forward ? own : other;
      const double p = joint[x1 * nx2 + x2];
      if (p <= 0.0) continue;
      ++active;
      p_own += p;
      const auto row = forward ? ch.w2_row(x1, x2) : ch.w1_row(x1, x2);
      h_both_slice += p * entropy_of(row);
      for (std::size_t y = 0; y < ny; ++y) mix[y] += p * row[y];
    }
    // a single active input carries no information
    if (active < 2) continue;
    h_given_both += h_both_slice;
    // p_own * H(mix / p_own) = -sum mix ln mix + p_own ln p_own
    double h = 0.0;
    for (double m : mix) h -= plogp(m);
    h_given_own += h + plogp(p_own);
  }
  return std::max(0.0, h_given_own - h_given_both);
}

double conditional_mutual_information(const JointPmf& joint, const TwcChannel& channel,
                                      Direction direction) {
  if (joint.rows() != channel.nx1() || joint.cols() != channel.nx2()) {
    std::ostringstream os;
    os << "joint pmf is " << joint.rows() << "x" << joint.cols() << " but channel inputs are "
       << channel.nx1() << "x" << channel.nx2();
    throw ValidationError(os.str());
  }
  return conditional_mi(joint.probs(), channel, direction);
}

std::vector<double> row_entropies(const TwcChannel& ch, Terminal output) {
  std::vector<double> h(ch.nx1() * ch.nx2());
  for (std::size_t x1 = 0; x1 < ch.nx1(); ++x1)
    for (std::size_t x2 = 0; x2 < ch.nx2(); ++x2)
      h[x1 * ch.nx2() + x2] =
          entropy_of(output == Terminal::one ? ch.w1_row(x1, x2) : ch.w2_row(x1, x2));
  return h;
}

}  // namespace twc::info
