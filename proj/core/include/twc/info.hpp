#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "twc/channel.hpp"

// Finite-alphabet information measures. Everything is in nats.
namespace twc::info {

/// Tolerance on simplex membership. Vectors within it are renormalized,
/// anything further off is rejected.
inline constexpr double kSimplexTolerance = 1e-12;

class Pmf {
 public:
  /// Labels default to "0", "1", ...
  explicit Pmf(std::vector<double> probs);
  explicit Pmf(std::initializer_list<double> probs) : Pmf(std::vector<double>(probs)) {}
  Pmf(std::vector<std::string> labels, std::vector<double> probs);

  static Pmf uniform(std::size_t n);
  static Pmf point_mass(std::size_t n, std::size_t at);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const noexcept { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  bool operator==(const Pmf&) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<double> probs_;
};

/// p(x1, x2) stored row-major with x1 as the row index.
class JointPmf {
 public:
  JointPmf(std::size_t rows, std::size_t cols, std::vector<double> probs);

  static JointPmf product(const Pmf& p1, const Pmf& p2);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t x1, std::size_t x2) const noexcept { return probs_[x1 * cols_ + x2]; }
  std::span<const double> probs() const noexcept { return probs_; }

  Pmf marginal_x1() const;
  Pmf marginal_x2() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> probs_;
};

/// Checks nonnegativity and unit sum, renormalizing drift below
/// kSimplexTolerance. Throws ValidationError otherwise.
void validate_simplex(std::vector<double>& probs, const char* what);

double entropy(const Pmf& p);

/// -sum p ln p with 0 ln 0 = 0. No validation.
double entropy_of(std::span<const double> p) noexcept;

/// H2(q) = -q ln q - (1-q) ln(1-q). Throws DomainError outside [0,1].
double binary_entropy(double q);

enum class Direction {
  one_to_two,  ///< I(X1; Y2 | X2)
  two_to_one,  ///< I(X2; Y1 | X1)
};

/// I(X1;Y2|X2) or I(X2;Y1|X1) as H(Y|X_other) - H(Y|X1,X2), by finite sums.
double conditional_mutual_information(const JointPmf& joint, const TwcChannel& channel,
                                      Direction direction);

/// Same computation on a raw joint (x1 major, length nx1*nx2). The caller
/// guarantees a valid pmf of matching size.
double conditional_mi(std::span<const double> joint, const TwcChannel& channel,
                      Direction direction) noexcept;

/// H(Y_i | X_1, X_2) row entropies, indexed x1 * nx2 + x2. `output` selects
/// Y1 (Terminal::one) or Y2 (Terminal::two).
std::vector<double> row_entropies(const TwcChannel& channel, Terminal output);

}  // namespace twc::info
