#pragma once

// Lukasiewicz connectives on [0,1] and the lattice approximation of scaling
// by dyadic rationals.

#include <cstdint>
#include <string_view>

namespace metastab::mvlogic {

class TruthValue {
 public:
  // Throws precondition_error outside [0, 1].
  explicit TruthValue(double v);
  double value() const { return v_; }
  friend auto operator<=>(const TruthValue&, const TruthValue&) = default;

 private:
  double v_;
};

// min(1 - x + y, 1); equals 1 exactly when x <= y.
TruthValue implication(TruthValue x, TruthValue y);
TruthValue neg(TruthValue x);                    // 1 - x, i.e. x -> 0
TruthValue lor(TruthValue x, TruthValue y);      // max, i.e. (x -> y) -> y
TruthValue land(TruthValue x, TruthValue y);     // min, i.e. neg(lor(neg x, neg y))
TruthValue truncated_sum(TruthValue x, TruthValue y);  // min(x + y, 1)
// max(x - y, 0), i.e. neg(x -> y)
TruthValue truncated_difference(TruthValue x, TruthValue y);

// max_{i=1..n} min(i/n, max(x - i/n, 0)).
//
// With t = i/n the term is min(t, x - t) (clipped at 0), which is maximized at
// t = x/2 with value x/2 and is 1-Lipschitz in t. The grid {1/n, ..., 1} has a
// point within 1/(2n) of x/2 (or x/2 < 1/(2n) and the value 0 is already that
// close), so x/2 - 1/(2n) <= approx_half(x, n) <= x/2. Throws for n = 0.
TruthValue approx_half(TruthValue x, std::uint64_t n);

// m / 2^k in lowest terms with 0 <= m <= 2^k.
struct Dyadic {
  std::uint64_t numerator = 0;
  unsigned exponent = 0;

  // Reduces num/den; throws precondition_error when the reduced denominator
  // is not a power of two or the value exceeds 1.
  static Dyadic from_fraction(std::uint64_t num, std::uint64_t den);
  // "m/q" or an integer.
  static Dyadic parse(std::string_view text);
  double value() const;
};

// Approximates r * x by Horner's scheme over the binary digits of r:
// z <- avg(b_j x, z) for j = k..1, where
//   avg(a, b) = min(a, b) (+) approx_half(|a - b|, n)
// and |a - b| = max(a -o b, b -o a). Each of the k stages is 1-Lipschitz in
// its inner argument and adds at most 1/(2n), so the total error is at most
// k/(2n); no stage ever truncates because every intermediate is <= x.
TruthValue approx_scaled(Dyadic r, TruthValue x, std::uint64_t n);

}  // namespace metastab::mvlogic
