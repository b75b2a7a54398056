#pragma once

// Witness search, rates of metastability, rate verification, the rate
// transformation calculus and adversarial refutation of candidate uniform
// rates.
//
// All distance-vs-eps comparisons are exact <= on binary64 values: a reported
// witness is a certificate, not an approximation.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "metastab/net.hpp"
#include "metastab/order.hpp"

namespace metastab {

using Witness = std::optional<Index>;

// True iff d(a_j, a_k) <= eps for all j, k in eta_i.
bool is_witness(const Net& a, double eps, const Sampling& eta, Index i);
// True iff d(a_j, b) <= eps for all j in eta_i.
bool is_pointed_witness(const Net& a, const Point& b, double eps, const Sampling& eta, Index i);

// Smallest witness in enumeration order, or nullopt when no window element
// witnesses. Throws precondition_error for eps <= 0, an invalid sampling or a
// sampling over a different window.
Witness find_witness(const Net& a, double eps, const Sampling& eta);
Witness find_pointed_witness(const Net& a, const Point& b, double eps, const Sampling& eta);

// Smallest witness drawn from candidates (pointed when target is given).
Witness find_witness_among(const Net& a, double eps, const Sampling& eta, const IndexSet& candidates,
                           const Point* target = nullptr);

// A rate over a finite descending threshold grid. The entry at threshold t
// for sampling eta is a nonempty candidate set E_{t,eta}; an entry may also be
// sampling-independent. Since the witness inequality is monotone in eps, an
// entry valid at t is valid for every eps >= t, and lookup(eps, eta) returns
// the entry at the largest listed threshold <= eps that has one.
class Rate {
 public:
  static constexpr std::size_t kAnySampling = static_cast<std::size_t>(-1);

  // thresholds must be nonempty, positive and strictly descending.
  Rate(DirectedWindow window, std::vector<double> thresholds, bool pointed = false);

  // {1, 1/2, 1/4, ..., 2^-10}
  static std::vector<double> default_grid();

  const DirectedWindow& window() const { return window_; }
  const std::vector<double>& thresholds() const { return thresholds_; }
  bool pointed() const { return pointed_; }
  const std::vector<Sampling>& samplings() const { return samplings_; }
  // Keyed by (threshold slot, sampling slot or kAnySampling).
  const std::map<std::pair<std::size_t, std::size_t>, IndexSet>& entries() const { return entries_; }

  // Registers eta (validated) and returns its slot; equal samplings share one.
  std::size_t add_sampling(const Sampling& eta);
  void set(double threshold, const Sampling& eta, IndexSet candidates);
  void set_uniform(double threshold, IndexSet candidates);
  // Slot-level setter for deserialization and transforms.
  void set_slot(std::size_t threshold_slot, std::size_t sampling_slot, IndexSet candidates);

  std::optional<std::size_t> threshold_slot(double threshold) const;
  std::optional<std::size_t> sampling_slot(const Sampling& eta) const;

  // nullptr when no threshold <= eps carries an entry for eta.
  const IndexSet* lookup(double eps, const Sampling& eta) const;

  friend bool operator==(const Rate&, const Rate&) = default;

 private:
  DirectedWindow window_;
  std::vector<double> thresholds_;
  bool pointed_;
  std::vector<Sampling> samplings_;
  std::map<std::pair<std::size_t, std::size_t>, IndexSet> entries_;
};

struct WitnessReport {
  double eps = 0.0;
  std::string sampling_id;
  std::size_t window_size = 0;
  bool pointed = false;
  IndexSet candidates;
  std::vector<Witness> outcomes;
  bool overall = false;
};

// Checks every net of the family against the rate's candidate set at
// (eps, eta). Pointed rates need one target per net. Throws
// precondition_error for a missing rate entry, mismatched windows or a
// missing target list.
WitnessReport verify_rate(std::span<const Net> family, const Rate& rate, double eps, const Sampling& eta,
                          std::span<const Point> targets = {});

// E~_{t} = E_{t/2}: each input entry at threshold t becomes an entry at 2t.
// Throws for plain or empty-entry inputs.
Rate pointed_to_plain(const Rate& rate);
// Same transform onto a caller-chosen grid; throws when some eps/2 falls below
// every input threshold carrying an entry.
Rate pointed_to_plain(const Rate& rate, std::vector<double> grid);

// Turns a pointed rate for self-distance nets near 0 (registered over
// induced samplings of d) into a plain rate on d: E_{eps,eta} = (E_{eps,eta-check})^v.
Rate selfdist_rate_to_net_rate(const Rate& rate, const DirectedWindow& d);

struct ThresholdBound {
  double threshold;
  Index bound;
  friend bool operator==(const ThresholdBound&, const ThresholdBound&) = default;
};

// For a rate whose candidate sets do not depend on the sampling, the join
// i_eps of each E_eps; every family the rate verifies then has
// d(a_j, a_k) <= eps for all j, k >= i_eps on the window. With
// assert_independent set, sampling-dependent sets throw precondition_error;
// otherwise the union over samplings is joined.
std::vector<ThresholdBound> sampling_independent_bound(const Rate& rate, bool assert_independent = true);

// A sampling and a family member that jointly defeat every candidate at eps.
struct RefutationCertificate {
  double eps = 0.0;
  Sampling sampling;
  Net member;
  IndexSet candidates;
  std::optional<Point> pointed_target;
  std::string family_tag;
  std::optional<std::uint64_t> member_index;
  std::string method;
};

// True iff no candidate witnesses (pointed, when a target is present) the
// [eps, eta]-metastability of the member. A malformed certificate replays false.
bool replay(const RefutationCertificate& cert);

// A finite family of nets on one window, produced on demand. Closed-form
// refuters let families that have a known adversarial construction supply it.
class NetGenerator {
 public:
  using Maker = std::function<Net(std::uint64_t)>;
  using TargetFn = std::function<Point(std::uint64_t)>;
  using ClosedFormRefuter =
      std::function<std::optional<RefutationCertificate>(const IndexSet& candidates, double eps, bool pointed)>;

  NetGenerator(std::string tag, DirectedWindow window, std::uint64_t count, Maker make, TargetFn target = {},
               ClosedFormRefuter refuter = {});

  const std::string& tag() const { return tag_; }
  const DirectedWindow& window() const { return window_; }
  std::uint64_t size() const { return count_; }
  Net member(std::uint64_t k) const;
  bool has_targets() const { return static_cast<bool>(target_); }
  Point target(std::uint64_t k) const;
  const ClosedFormRefuter& closed_form() const { return refuter_; }

  // Set when enumeration stopped at a cap before covering the whole family.
  bool truncated() const { return truncated_; }
  void mark_truncated() { truncated_ = true; }

  // Materializes every member; throws precondition_error above max_members.
  std::vector<Net> members(std::uint64_t max_members = 1u << 20) const;
  std::vector<Point> targets(std::uint64_t max_members = 1u << 20) const;

 private:
  std::string tag_;
  DirectedWindow window_;
  std::uint64_t count_;
  Maker make_;
  TargetFn target_;
  ClosedFormRefuter refuter_;
  bool truncated_ = false;
};

struct RefuteOptions {
  std::uint64_t budget = 10000;
  std::uint64_t seed = 0;
  bool pointed = false;
};

// Searches for one certificate defeating every listed candidate set (their
// union) at eps. A closed-form construction is tried first when the generator
// has one; then members are probed (all of them in order when the family fits
// in the budget, otherwise budget members drawn with the seed) against the
// worst-case sampling for that member. nullopt means the budget was exhausted,
// not that no refutation exists.
std::optional<RefutationCertificate> refute_uniform(const NetGenerator& family,
                                                    std::span<const IndexSet> candidate_sets, double eps,
                                                    const RefuteOptions& options = {});

}  // namespace metastab
