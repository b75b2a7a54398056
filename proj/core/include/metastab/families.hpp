#pragma once

// The canonical families of {0,1}-valued nets, the uniform rate of the
// non-increasing family, closed-form refuters for the eventually-zero and
// parity families, and the discrete instantiation of the paracompactness
// counterexample.
//
// Finite-window conventions:
//   * "eventually zero" means zero from some window index on, which on a
//     finite directed window is the same as a_top = 0;
//   * parity is that of the integer index, with 0 even.

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "metastab/meta.hpp"
#include "metastab/net.hpp"
#include "metastab/order.hpp"

namespace metastab {

enum class FamilyTag { B, B0, C, D, paracompact };

std::string_view to_string(FamilyTag tag);
FamilyTag family_tag_from_string(std::string_view name);

struct FamilySpec {
  FamilyTag tag = FamilyTag::B;
  DirectedWindow window = DirectedWindow::omega(1);
  // D: inclusive alpha range; defaults to every element of the chain.
  std::optional<std::pair<Index, Index>> alpha_range;
  // paracompact: number of points (the window is the time horizon).
  std::size_t points = 0;
  // B / B0 on non-chain windows: stop enumerating down-sets past this count.
  std::size_t enumeration_cap = 1u << 16;

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

// Members in a fixed order. Every family declares targets: the tail value for
// B, B0 and C, 1 for D and for the paracompact nets. Closed-form refuters are
// attached for B0, C, D and paracompact.
NetGenerator enumerate_family(const FamilySpec& spec);

// True iff net satisfies the family's defining property on its window.
bool is_family_member(const FamilySpec& spec, const Net& net);

// {k, l}: k is the first window element and l the join of eta_k. Works for
// every eps because the non-increasing family has diameter 1.
IndexSet rate_B(const Sampling& eta, const DirectedWindow& d);

// k is the first element strictly above join(s), l the first element strictly
// above k; eta_i = {k, l} on s and {i} elsewhere; the member is 1 at k and 0
// everywhere else. Throws precondition_error when k or l does not exist or
// eps is outside (0, 1).
RefutationCertificate refute_C(const IndexSet& s, const DirectedWindow& d, double eps = 0.5);

// Chain windows only. alpha is the smallest index above max(s) with alpha + 1
// in the window; the sampling is eta_b = {b, b+1} clipped at the top and the
// member is a^(alpha), refuted near the target 1.
RefutationCertificate refute_D_pointed(const IndexSet& s, const DirectedWindow& d, double eps = 0.5);

// a^(alpha)_i = 0 if i <= alpha and i is even, 1 otherwise.
Net parity_net(const DirectedWindow& chain, Index alpha);

// Discrete instantiation of the paracompactness counterexample: X has points
// x_0..x_{m-1}, W_n = {x_n}, g_n the indicator of x_n, h_n = sum_{j<n} g_j,
// h = sum_j g_j and f_i = h_i for odd i, h for even i.
class ParacompactConstruction {
 public:
  ParacompactConstruction(std::size_t points, std::size_t horizon);

  std::size_t points() const { return points_; }
  std::size_t horizon() const { return horizon_; }

  double g(std::size_t n, std::size_t x) const;
  double h_partial(std::size_t n, std::size_t x) const;
  double h(std::size_t x) const;
  double f(std::size_t i, std::size_t x) const;

  // The net (f_i(x) : i < horizon) in the unit interval.
  Net net_at(std::size_t x) const;

 private:
  std::size_t points_;
  std::size_t horizon_;
};

// One unit-interval net per point, each declaring target h(x) = 1.
NetGenerator paracompact_nets(std::size_t n_points, std::size_t horizon);

}  // namespace metastab
