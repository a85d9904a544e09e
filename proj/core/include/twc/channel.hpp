#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace twc {

/// Alphabet sizes of a finite two-way channel.
struct ChannelShape {
  std::size_t nx1 = 0;
  std::size_t nx2 = 0;
  std::size_t ny1 = 0;
  std::size_t ny2 = 0;

  bool operator==(const ChannelShape&) const = default;
};

/// Nested tensor indexed [x1][x2][y].
using Tensor3 = std::vector<std::vector<std::vector<double>>>;

/// Finite-alphabet memoryless two-way channel, stored as its two marginal
/// transition laws W1(y1|x1,x2) and W2(y2|x1,x2). Both Shannon bounds depend
/// only on these marginals, so the joint coupling of (Y1,Y2) is not kept.
///
/// Rows are laid out (x1 major, x2 minor) with the output index fastest.
/// Instances are immutable and only obtainable through make_channel().
class TwcChannel {
 public:
  const ChannelShape& shape() const noexcept { return shape_; }
  std::size_t nx1() const noexcept { return shape_.nx1; }
  std::size_t nx2() const noexcept { return shape_.nx2; }
  std::size_t ny1() const noexcept { return shape_.ny1; }
  std::size_t ny2() const noexcept { return shape_.ny2; }

  double w1(std::size_t x1, std::size_t x2, std::size_t y1) const noexcept {
    return w1_[(x1 * shape_.nx2 + x2) * shape_.ny1 + y1];
  }
  double w2(std::size_t x1, std::size_t x2, std::size_t y2) const noexcept {
    return w2_[(x1 * shape_.nx2 + x2) * shape_.ny2 + y2];
  }
  std::span<const double> w1_row(std::size_t x1, std::size_t x2) const noexcept {
    return {w1_.data() + (x1 * shape_.nx2 + x2) * shape_.ny1, shape_.ny1};
  }
  std::span<const double> w2_row(std::size_t x1, std::size_t x2) const noexcept {
    return {w2_.data() + (x1 * shape_.nx2 + x2) * shape_.ny2, shape_.ny2};
  }
  std::span<const double> w1_data() const noexcept { return w1_; }
  std::span<const double> w2_data() const noexcept { return w2_; }

  bool operator==(const TwcChannel&) const = default;

 private:
  friend TwcChannel make_channel(ChannelShape, std::vector<double>, std::vector<double>);
  TwcChannel(ChannelShape shape, std::vector<double> w1, std::vector<double> w2)
      : shape_(shape), w1_(std::move(w1)), w2_(std::move(w2)) {}

  ChannelShape shape_;
  std::vector<double> w1_;
  std::vector<double> w2_;
};

/// Validates and builds a channel from flat row-major tensors. Rows whose sum
/// is within 1e-12 of one are renormalized; anything else throws
/// ValidationError naming the offending (x1, x2) row.
TwcChannel make_channel(ChannelShape shape, std::vector<double> w1, std::vector<double> w2);
TwcChannel make_channel(const Tensor3& w1, const Tensor3& w2);

/// Expected-cost constraint E[c(X)] <= budget on one input distribution.
struct InputConstraint {
  enum class Kind { none, mean_upper };

  Kind kind = Kind::none;
  std::vector<double> cost;
  double budget = 0.0;

  static InputConstraint none() { return {}; }
  static InputConstraint mean_upper(std::vector<double> cost, double budget) {
    return {Kind::mean_upper, std::move(cost), budget};
  }

  bool active() const noexcept { return kind == Kind::mean_upper; }

  /// Throws ValidationError on a length mismatch and ConstraintError when the
  /// budget is below the cheapest symbol.
  void validate(std::size_t alphabet_size) const;

  bool satisfied_by(std::span<const double> pmf, double tol = 1e-12) const noexcept;
};

enum class Terminal { one, two };

/// Lifts a constraint on one marginal to the joint alphabet of size nx1*nx2
/// (x1 major), so it can be imposed on a joint pmf.
InputConstraint lift_to_joint(const InputConstraint& c, Terminal which, std::size_t nx1,
                              std::size_t nx2);

namespace examples {

/// Y_i = X1 xor X2 xor Z_i with Z_i ~ Bern(crossover_i).
TwcChannel mod2_adder(double crossover1, double crossover2);

/// Y1 = Y2 = X1 * X2 over binary alphabets.
TwcChannel binary_multiplier();

/// Y1 = X2; Y2 = X1 when X2 = 0, otherwise a fair coin.
TwcChannel shannon_table2();

}  // namespace examples

}  // namespace twc
