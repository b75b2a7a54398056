#pragma once

// Directed sets presented as finite windows, their products, samplings and
// the majorization calculus (induced samplings, projected pair sets).
//
// A window is a finite truncation of a directed set. Finite directed sets
// always have a largest element, so every statement here is window-relative:
// "Cauchy" means "Cauchy on the window tail", and quantifiers over samplings
// range over samplings of the window. Witness soundness survives truncation
// verbatim; statements about the infinite tail do not.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace metastab {

// Window elements are canonical small integers in enumeration order.
using Index = std::uint32_t;

// A finite set of window elements, kept sorted and duplicate-free.
using IndexSet = std::vector<Index>;

IndexSet normalized(IndexSet s);

enum class WindowKind { omega, ordinal, product, custom };

std::string_view to_string(WindowKind kind);

class DirectedWindow {
 public:
  // The chain 0 < 1 < ... < n-1 with join = max. Rejects n = 0.
  static DirectedWindow omega(std::size_t n);
  // An initial segment of ordinals below n; order-isomorphic to omega(n).
  static DirectedWindow ordinal(std::size_t n);
  // Componentwise order and componentwise join. The pair (i, j) is encoded
  // as i * e.size() + j.
  static DirectedWindow product(const DirectedWindow& d, const DirectedWindow& e);
  // order[i][j] is true iff i <= j. When no join table is given, join(i, j)
  // is the least upper bound if one exists, otherwise the smallest-index
  // common upper bound. Throws precondition_error unless the relation is a
  // partial order and the join is a majorization.
  static DirectedWindow custom(std::vector<std::vector<bool>> order,
                               std::optional<std::vector<std::vector<Index>>> join = std::nullopt);

  std::size_t size() const;
  WindowKind kind() const;
  // True for omega and ordinal windows.
  bool is_chain() const;

  bool contains(Index i) const { return i < size(); }
  bool leq(Index i, Index j) const;
  Index join(Index i, Index j) const;
  // The largest element; it exists in every finite directed set.
  Index top() const;
  // Elements j with i <= j, in enumeration order.
  IndexSet up_set(Index i) const;

  // Product windows only.
  const DirectedWindow& left() const;
  const DirectedWindow& right() const;
  Index encode_pair(Index i, Index j) const;
  std::pair<Index, Index> decode_pair(Index p) const;

  friend bool operator==(const DirectedWindow& a, const DirectedWindow& b);

 private:
  struct Impl;
  explicit DirectedWindow(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

// Brute-force check of the order and majorization invariants. Returns a
// description of every violation found (empty when the window is sound).
std::vector<std::string> check_window_invariants(const DirectedWindow& w);

// A sampling assigns to every window element i a nonempty finite set of
// elements above i. Construction normalizes each set but does not validate;
// use validate_sampling.
class Sampling {
 public:
  Sampling(DirectedWindow window, std::vector<IndexSet> assign, std::string id = {});

  const DirectedWindow& window() const { return window_; }
  const std::vector<IndexSet>& assign() const { return assign_; }
  const IndexSet& operator[](Index i) const { return assign_.at(i); }
  const std::string& id() const { return id_; }

  // Equality ignores the id.
  friend bool operator==(const Sampling& a, const Sampling& b) {
    return a.window_ == b.window_ && a.assign_ == b.assign_;
  }

 private:
  DirectedWindow window_;
  std::vector<IndexSet> assign_;
  std::string id_;
};

struct SamplingViolation {
  enum class Reason { empty, outside_window, not_above };
  Index element;
  std::optional<Index> offending;
  Reason reason;

  friend bool operator==(const SamplingViolation&, const SamplingViolation&) = default;
};

struct SamplingReport {
  std::vector<SamplingViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Throws precondition_error when the assignment does not cover exactly the
// window's elements.
SamplingReport validate_sampling(const Sampling& s);

// Throws precondition_error unless validate_sampling(s) is ok.
void require_valid(const Sampling& s);

// eta-check on product(d, d): the pair (i, j) samples eta_{i v j} x eta_{i v j}.
Sampling induced_sampling(const Sampling& eta, const DirectedWindow& d);

// {i v j : (i, j) in pairs}. Throws precondition_error for pairs outside d x d.
IndexSet project_set(std::span<const std::pair<Index, Index>> pairs, const DirectedWindow& d);
// Same, with pairs given as encoded elements of a product window d x d.
IndexSet project_set(const IndexSet& encoded_pairs, const DirectedWindow& product_window);

// Join of a nonempty set (left fold in enumeration order).
Index join_all(const DirectedWindow& w, const IndexSet& s);

}  // namespace metastab
