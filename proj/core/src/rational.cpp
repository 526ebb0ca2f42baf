#include "tnnclust/rational.hpp"

#include <charconv>
#include <numeric>

#include "tnnclust/errors.hpp"
#include "tnnclust/rng.hpp"

namespace tnn {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InputError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  num_ = g == 0 ? 0 : num / g;
  den_ = g == 0 ? 1 : den / g;
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<int128>(a.num_) * b.den_ < static_cast<int128>(b.num_) * a.den_;
}

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw InputError("not a rational number: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const std::string_view whole = text;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(text.substr(0, slash), whole),
                    parse_int(text.substr(slash + 1), whole));
  }
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return Rational(parse_int(text, whole), 1);

  std::string digits(text.substr(0, dot));
  const std::string_view frac = text.substr(dot + 1);
  if (frac.size() > 15) throw InputError("too many decimals: '" + std::string(whole) + "'");
  digits += frac;
  const bool negative = !digits.empty() && digits.front() == '-';
  if (digits == "-" || digits.empty()) throw InputError("not a rational number: '" + std::string(whole) + "'");
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  std::int64_t num = parse_int(negative ? std::string_view(digits).substr(1) : std::string_view(digits), whole);
  return Rational(negative ? -num : num, den);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace tnn
