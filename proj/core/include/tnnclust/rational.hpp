#ifndef TNNCLUST_RATIONAL_HPP
#define TNNCLUST_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace tnn {

/// Exact non-negative-denominator rational, always stored in lowest terms.
/// Probabilities and the receptive-field scale are kept exact so that the
/// Bernoulli draws reduce to integer comparisons.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Parses "a/b", an integer, or a finite decimal like "0.125" (converted
  /// exactly, so "0.1" becomes 1/10).
  static Rational parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace tnn

#endif  // TNNCLUST_RATIONAL_HPP
