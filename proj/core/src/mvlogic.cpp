#include "metastab/mvlogic.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

#include "metastab/error.hpp"

namespace metastab::mvlogic {

TruthValue::TruthValue(double v) : v_(v) {
  if (!(v >= 0.0 && v <= 1.0)) throw precondition_error("truth value " + std::to_string(v) + " is outside [0, 1]");
}

TruthValue implication(TruthValue x, TruthValue y) {
  if (x.value() <= y.value()) return TruthValue(1.0);
  // Round down so the result stays strictly below 1 whenever x > y.
  const double v = 1.0 - (x.value() - y.value());
  return TruthValue(std::min(v, std::nextafter(1.0, 0.0)));
}

TruthValue neg(TruthValue x) { return TruthValue(1.0 - x.value()); }

TruthValue lor(TruthValue x, TruthValue y) { return TruthValue(std::max(x.value(), y.value())); }

TruthValue land(TruthValue x, TruthValue y) { return TruthValue(std::min(x.value(), y.value())); }

TruthValue truncated_sum(TruthValue x, TruthValue y) { return TruthValue(std::min(x.value() + y.value(), 1.0)); }

TruthValue truncated_difference(TruthValue x, TruthValue y) {
  return TruthValue(std::max(x.value() - y.value(), 0.0));
}

TruthValue approx_half(TruthValue x, std::uint64_t n) {
  if (n == 0) throw precondition_error("approx_half needs n >= 1");
  const double nn = static_cast<double>(n);
  double best = 0.0;
  for (std::uint64_t i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i) / nn;
    best = std::max(best, std::min(t, std::max(x.value() - t, 0.0)));
  }
  return TruthValue(best);
}

Dyadic Dyadic::from_fraction(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw precondition_error("dyadic denominator is zero");
  if (num > den) throw precondition_error("dyadic scale must lie in [0, 1]");
  if (num == 0) return Dyadic{0, 0};
  const std::uint64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  if (!std::has_single_bit(den)) throw precondition_error("scale " + std::to_string(num) + "/" + std::to_string(den) +
                                                          " is not a dyadic rational");
  return Dyadic{num, static_cast<unsigned>(std::countr_zero(den))};
}

Dyadic Dyadic::parse(std::string_view text) {
  const auto slash = text.find('/');
  auto number = [&](std::string_view s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
      throw precondition_error("malformed dyadic rational '" + std::string(text) + "'");
    return v;
  };
  if (slash == std::string_view::npos) return from_fraction(number(text), 1);
  return from_fraction(number(text.substr(0, slash)), number(text.substr(slash + 1)));
}

double Dyadic::value() const { return std::ldexp(static_cast<double>(numerator), -static_cast<int>(exponent)); }

TruthValue approx_scaled(Dyadic r, TruthValue x, std::uint64_t n) {
  if (n == 0) throw precondition_error("approx_scaled needs n >= 1");
  if (r.exponent == 0) return r.numerator == 0 ? TruthValue(0.0) : x;
  if (r.exponent >= 64 || r.numerator >= (std::uint64_t{1} << r.exponent) || r.numerator % 2 == 0)
    throw precondition_error("dyadic scale must be m/2^k in lowest terms with m < 2^k");

  const TruthValue zero(0.0);
  TruthValue z = zero;
  for (unsigned j = r.exponent; j >= 1; --j) {
    const bool digit = ((r.numerator >> (r.exponent - j)) & 1u) != 0;
    const TruthValue a = digit ? x : zero;
    const TruthValue gap = lor(truncated_difference(a, z), truncated_difference(z, a));
    z = truncated_sum(land(a, z), approx_half(gap, n));
  }
  return z;
}

}  // namespace metastab::mvlogic
