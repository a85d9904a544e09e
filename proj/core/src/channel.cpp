#include "twc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "twc/errors.hpp"

namespace twc {

namespace {

constexpr double kRowTolerance = 1e-12;

void check_rows(std::vector<double>& w, const ChannelShape& shape, std::size_t ny,
                const char* name) {
  const std::size_t rows = shape.nx1 * shape.nx2;
  if (w.size() != rows * ny) {
    std::ostringstream os;
    os << name << " has " << w.size() << " entries, expected " << rows * ny;
    throw ValidationError(os.str());
  }
  for (std::size_t r = 0; r < rows; ++r) {
    const auto begin = w.begin() + static_cast<std::ptrdiff_t>(r * ny);
    const auto end = begin + static_cast<std::ptrdiff_t>(ny);
    const std::size_t x1 = r / shape.nx2;
    const std::size_t x2 = r % shape.nx2;
    for (auto it = begin; it != end; ++it) {
      if (!std::isfinite(*it) || *it < 0.0 || *it > 1.0) {
        std::ostringstream os;
        os << name << " row (x1=" << x1 << ", x2=" << x2 << ") has entry " << *it
           << " outside [0,1]";
        throw ValidationError(os.str());
      }
    }
    const double sum = std::accumulate(begin, end, 0.0);
    if (std::abs(sum - 1.0) > kRowTolerance) {
      std::ostringstream os;
      os.precision(15);
      os << name << " row (x1=" << x1 << ", x2=" << x2 << ") sums to " << sum;
      throw ValidationError(os.str());
    }
    std::for_each(begin, end, [sum](double& v) { v /= sum; });
  }
}

std::vector<double> flatten(const Tensor3& t, std::size_t nx1, std::size_t nx2, std::size_t ny,
                            const char* name) {
  std::vector<double> out;
  out.reserve(nx1 * nx2 * ny);
  if (t.size() != nx1) throw ValidationError(std::string(name) + ": inconsistent x1 dimension");
  for (const auto& plane : t) {
    if (plane.size() != nx2) throw ValidationError(std::string(name) + ": inconsistent x2 dimension");
    for (const auto& row : plane) {
      if (row.size() != ny) throw ValidationError(std::string(name) + ": inconsistent output dimension");
      out.insert(out.end(), row.begin(), row.end());
    }
  }
  return out;
}

}  // namespace

TwcChannel make_channel(ChannelShape shape, std::vector<double> w1, std::vector<double> w2) {
  if (shape.nx1 == 0 || shape.nx2 == 0 || shape.ny1 == 0 || shape.ny2 == 0)
    throw ValidationError("channel alphabets must be nonempty");
  check_rows(w1, shape, shape.ny1, "W1");
  check_rows(w2, shape, shape.ny2, "W2");
  return TwcChannel(shape, std::move(w1), std::move(w2));
}

TwcChannel make_channel(const Tensor3& w1, const Tensor3& w2) {
  if (w1.empty() || w1.front().empty() || w1.front().front().empty() || w2.empty() ||
      w2.front().empty() || w2.front().front().empty())
    throw ValidationError("channel tensors must be nonempty");
  ChannelShape shape{w1.size(), w1.front().size(), w1.front().front().size(),
                     w2.front().front().size()};
  auto f1 = flatten(w1, shape.nx1, shape.nx2, shape.ny1, "W1");
  auto f2 = flatten(w2, shape.nx1, shape.nx2, shape.ny2, "W2");
  return make_channel(shape, std::move(f1), std::move(f2));
}

void InputConstraint::validate(std::size_t alphabet_size) const {
  if (!active()) return;
  if (cost.size() != alphabet_size) {
    std::ostringstream os;
    os << "cost vector has length " << cost.size() << ", alphabet has " << alphabet_size;
    throw ValidationError(os.str());
  }
  if (!std::isfinite(budget) ||
      std::any_of(cost.begin(), cost.end(), [](double c) { return !std::isfinite(c); }))
    throw ValidationError("cost constraint must be finite");
  const double cheapest = *std::min_element(cost.begin(), cost.end());
  if (budget < cheapest) {
    std::ostringstream os;
    os << "budget " << budget << " is below the minimum symbol cost " << cheapest;
    throw ConstraintError(os.str());
  }
}

bool InputConstraint::satisfied_by(std::span<const double> pmf, double tol) const noexcept {
  if (!active()) return true;
  double mean = 0.0;
  for (std::size_t i = 0; i < pmf.size() && i < cost.size(); ++i) mean += pmf[i] * cost[i];
  return mean <= budget + tol;
}

InputConstraint lift_to_joint(const InputConstraint& c, Terminal which, std::size_t nx1,
                              std::size_t nx2) {
  if (!c.active()) return c;
  c.validate(which == Terminal::one ? nx1 : nx2);
  std::vector<double> cost(nx1 * nx2);
  for (std::size_t x1 = 0; x1 < nx1; ++x1)
    for (std::size_t x2 = 0; x2 < nx2; ++x2)
      cost[x1 * nx2 + x2] = which == Terminal::one ? c.cost[x1] : c.cost[x2];
  return InputConstraint::mean_upper(std::move(cost), c.budget);
}

namespace examples {

TwcChannel mod2_adder(double crossover1, double crossover2) {
  for (double c : {crossover1, crossover2})
    if (!(c >= 0.0 && c <= 0.5)) throw DomainError("crossover probability must lie in [0, 1/2]");
  ChannelShape shape{2, 2, 2, 2};
  std::vector<double> w1(8), w2(8);
  for (std::size_t x1 = 0; x1 < 2; ++x1) {
    for (std::size_t x2 = 0; x2 < 2; ++x2) {
      const std::size_t clean = x1 ^ x2;
      const std::size_t row = (x1 * 2 + x2) * 2;
      w1[row + clean] = 1.0 - crossover1;
      w1[row + (1 - clean)] = crossover1;
      w2[row + clean] = 1.0 - crossover2;
      w2[row + (1 - clean)] = crossover2;
    }
  }
  return make_channel(shape, std::move(w1), std::move(w2));
}

TwcChannel binary_multiplier() {
  ChannelShape shape{2, 2, 2, 2};
  std::vector<double> w(8);
  for (std::size_t x1 = 0; x1 < 2; ++x1)
    for (std::size_t x2 = 0; x2 < 2; ++x2) w[(x1 * 2 + x2) * 2 + (x1 & x2)] = 1.0;
  return make_channel(shape, w, w);
}

TwcChannel shannon_table2() {
  ChannelShape shape{2, 2, 2, 2};
  std::vector<double> w1(8), w2(8);
  for (std::size_t x1 = 0; x1 < 2; ++x1) {
    for (std::size_t x2 = 0; x2 < 2; ++x2) {
      const std::size_t row = (x1 * 2 + x2) * 2;
      w1[row + x2] = 1.0;
      if (x2 == 0) {
        w2[row + x1] = 1.0;
      } else {
        w2[row] = 0.5;
        w2[row + 1] = 0.5;
      }
    }
  }
  return make_channel(shape, std::move(w1), std::move(w2));
}

}  // namespace examples

}  // namespace twc
