#include "metastab/meta.hpp"

#include <algorithm>
#include <cmath>

#include "metastab/error.hpp"
#include "metastab/rng.hpp"

namespace metastab {

namespace {

void require_eps(double eps) {
  if (!(eps > 0.0)) throw precondition_error("eps must be positive");
}

void require_same_window(const Net& a, const Sampling& eta) {
  if (!(a.window() == eta.window())) throw precondition_error("sampling and net are over different windows");
}

void require_candidates(const DirectedWindow& w, const IndexSet& candidates) {
  if (candidates.empty()) throw precondition_error("candidate set is empty");
  for (Index i : candidates)
    if (!w.contains(i)) throw precondition_error("candidate " + std::to_string(i) + " lies outside the window");
}

}  // namespace

bool is_witness(const Net& a, double eps, const Sampling& eta, Index i) {
  const IndexSet& s = eta[i];
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = x + 1; y < s.size(); ++y)
      if (!(a.distance(s[x], s[y]) <= eps)) return false;
  return true;
}

bool is_pointed_witness(const Net& a, const Point& b, double eps, const Sampling& eta, Index i) {
  for (Index j : eta[i])
    if (!(a.space().distance(a[j], b) <= eps)) return false;
  return true;
}

Witness find_witness(const Net& a, double eps, const Sampling& eta) {
  require_eps(eps);
  require_same_window(a, eta);
  require_valid(eta);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (is_witness(a, eps, eta, static_cast<Index>(i))) return static_cast<Index>(i);
  return std::nullopt;
}

Witness find_pointed_witness(const Net& a, const Point& b, double eps, const Sampling& eta) {
  require_eps(eps);
  require_same_window(a, eta);
  require_valid(eta);
  if (!a.space().contains(b)) throw precondition_error("target point is not in the net's space");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (is_pointed_witness(a, b, eps, eta, static_cast<Index>(i))) return static_cast<Index>(i);
  return std::nullopt;
}

Witness find_witness_among(const Net& a, double eps, const Sampling& eta, const IndexSet& candidates,
                           const Point* target) {
  require_eps(eps);
  require_same_window(a, eta);
  require_valid(eta);
  require_candidates(a.window(), candidates);
  if (target != nullptr && !a.space().contains(*target))
    throw precondition_error("target point is not in the net's space");
  for (Index i : candidates) {
    const bool ok = target != nullptr ? is_pointed_witness(a, *target, eps, eta, i) : is_witness(a, eps, eta, i);
    if (ok) return i;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rate

Rate::Rate(DirectedWindow window, std::vector<double> thresholds, bool pointed)
    : window_(std::move(window)), thresholds_(std::move(thresholds)), pointed_(pointed) {
  if (thresholds_.empty()) throw precondition_error("rate needs at least one threshold");
  for (std::size_t k = 0; k < thresholds_.size(); ++k) {
    if (!(thresholds_[k] > 0.0) || !std::isfinite(thresholds_[k]))
      throw precondition_error("rate thresholds must be positive and finite");
    if (k > 0 && !(thresholds_[k] < thresholds_[k - 1]))
      throw precondition_error("rate thresholds must be strictly descending");
  }
}

std::vector<double> Rate::default_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 10; ++k) grid.push_back(std::ldexp(1.0, -k));
  return grid;
}

std::size_t Rate::add_sampling(const Sampling& eta) {
  if (!(eta.window() == window_)) throw precondition_error("sampling is over a different window than the rate");
  require_valid(eta);
  if (auto slot = sampling_slot(eta)) return *slot;
  samplings_.push_back(eta);
  return samplings_.size() - 1;
}

std::optional<std::size_t> Rate::threshold_slot(double threshold) const {
  for (std::size_t k = 0; k < thresholds_.size(); ++k)
    if (thresholds_[k] == threshold) return k;
  return std::nullopt;
}

std::optional<std::size_t> Rate::sampling_slot(const Sampling& eta) const {
  for (std::size_t k = 0; k < samplings_.size(); ++k)
    if (samplings_[k] == eta) return k;
  return std::nullopt;
}

void Rate::set_slot(std::size_t threshold_slot, std::size_t sampling_slot, IndexSet candidates) {
  if (threshold_slot >= thresholds_.size()) throw precondition_error("threshold slot out of range");
  if (sampling_slot != kAnySampling && sampling_slot >= samplings_.size())
    throw precondition_error("sampling slot out of range");
  candidates = normalized(std::move(candidates));
  require_candidates(window_, candidates);
  entries_[{threshold_slot, sampling_slot}] = std::move(candidates);
}

void Rate::set(double threshold, const Sampling& eta, IndexSet candidates) {
  const auto t = threshold_slot(threshold);
  if (!t) throw precondition_error("threshold is not on the rate's grid");
  set_slot(*t, add_sampling(eta), std::move(candidates));
}

void Rate::set_uniform(double threshold, IndexSet candidates) {
  const auto t = threshold_slot(threshold);
  if (!t) throw precondition_error("threshold is not on the rate's grid");
  set_slot(*t, kAnySampling, std::move(candidates));
}

const IndexSet* Rate::lookup(double eps, const Sampling& eta) const {
  const auto slot = sampling_slot(eta);
  for (std::size_t k = 0; k < thresholds_.size(); ++k) {
    if (!(thresholds_[k] <= eps)) continue;
    if (slot) {
      if (auto it = entries_.find({k, *slot}); it != entries_.end()) return &it->second;
    }
    if (auto it = entries_.find({k, kAnySampling}); it != entries_.end()) return &it->second;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Verification and transforms

WitnessReport verify_rate(std::span<const Net> family, const Rate& rate, double eps, const Sampling& eta,
                          std::span<const Point> targets) {
  require_eps(eps);
  if (!(eta.window() == rate.window())) throw precondition_error("sampling and rate are over different windows");
  require_valid(eta);
  if (rate.pointed() && targets.size() != family.size())
    throw precondition_error("pointed verification needs one declared target per net");
  const IndexSet* candidates = rate.lookup(eps, eta);
  if (candidates == nullptr)
    throw precondition_error("missing rate entry for eps and sampling '" + eta.id() + "'");

  WitnessReport report;
  report.eps = eps;
  report.sampling_id = eta.id();
  report.window_size = rate.window().size();
  report.pointed = rate.pointed();
  report.candidates = *candidates;
  report.overall = true;
  report.outcomes.reserve(family.size());
  for (std::size_t k = 0; k < family.size(); ++k) {
    const Net& a = family[k];
    if (!(a.window() == rate.window())) throw precondition_error("net and rate are over different windows");
    const Point* target = rate.pointed() ? &targets[k] : nullptr;
    Witness w = find_witness_among(a, eps, eta, *candidates, target);
    report.overall = report.overall && w.has_value();
    report.outcomes.push_back(w);
  }
  return report;
}

Rate pointed_to_plain(const Rate& rate) {
  if (!rate.pointed()) throw precondition_error("pointed_to_plain needs a pointed rate");
  if (rate.entries().empty()) throw precondition_error("pointed_to_plain needs at least one rate entry");
  std::vector<double> doubled;
  doubled.reserve(rate.thresholds().size());
  for (double t : rate.thresholds()) doubled.push_back(2.0 * t);
  Rate out(rate.window(), std::move(doubled), false);
  for (const Sampling& s : rate.samplings()) out.add_sampling(s);
  for (const auto& [key, set] : rate.entries()) out.set_slot(key.first, key.second, set);
  return out;
}

Rate pointed_to_plain(const Rate& rate, std::vector<double> grid) {
  if (!rate.pointed()) throw precondition_error("pointed_to_plain needs a pointed rate");
  if (rate.entries().empty()) throw precondition_error("pointed_to_plain needs at least one rate entry");
  Rate out(rate.window(), std::move(grid), false);
  for (const Sampling& s : rate.samplings()) out.add_sampling(s);

  std::vector<std::size_t> slots;
  for (const auto& [key, set] : rate.entries())
    if (std::find(slots.begin(), slots.end(), key.second) == slots.end()) slots.push_back(key.second);

  for (std::size_t g = 0; g < out.thresholds().size(); ++g) {
    const double half = out.thresholds()[g] / 2.0;
    for (std::size_t slot : slots) {
      const IndexSet* found = nullptr;
      for (std::size_t k = 0; k < rate.thresholds().size() && found == nullptr; ++k) {
        if (!(rate.thresholds()[k] <= half)) continue;
        if (auto it = rate.entries().find({k, slot}); it != rate.entries().end()) found = &it->second;
      }
      if (found == nullptr)
        throw precondition_error("no input entry at eps/2 for target threshold " +
                                 std::to_string(out.thresholds()[g]));
      out.set_slot(g, slot, *found);
    }
  }
  return out;
}

namespace {

// Recovers eta from eta-check, or nullopt when zeta is not an induced sampling.
std::optional<Sampling> recover_base_sampling(const Sampling& zeta, const DirectedWindow& d) {
  const DirectedWindow& dd = zeta.window();
  const auto n = static_cast<Index>(d.size());
  std::vector<IndexSet> assign(n);
  std::vector<bool> seen(n, false);
  auto take = [&](Index i, Index j) {
    const Index k = d.join(i, j);
    if (seen[k]) return;
    IndexSet firsts;
    for (Index p : zeta[dd.encode_pair(i, j)]) firsts.push_back(dd.decode_pair(p).first);
    assign[k] = normalized(std::move(firsts));
    seen[k] = true;
  };
  for (Index k = 0; k < n; ++k) take(k, k);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) take(i, j);
  for (Index k = 0; k < n; ++k)
    if (!seen[k]) assign[k] = {k};
  Sampling eta(d, std::move(assign), zeta.id());
  if (!validate_sampling(eta).ok()) return std::nullopt;
  if (!(induced_sampling(eta, d) == zeta)) return std::nullopt;
  return eta;
}

}  // namespace

Rate selfdist_rate_to_net_rate(const Rate& rate, const DirectedWindow& d) {
  if (!rate.pointed()) throw precondition_error("self-distance rate must be pointed (near 0)");
  const DirectedWindow dd = DirectedWindow::product(d, d);
  if (!(rate.window() == dd)) throw precondition_error("rate is not over product(d, d)");

  Rate out(d, rate.thresholds(), false);
  std::vector<std::size_t> slot_map(rate.samplings().size());
  for (std::size_t k = 0; k < rate.samplings().size(); ++k) {
    const auto eta = recover_base_sampling(rate.samplings()[k], d);
    if (!eta)
      throw precondition_error("rate sampling '" + rate.samplings()[k].id() + "' is not induced from a sampling of d");
    slot_map[k] = out.add_sampling(*eta);
  }
  for (const auto& [key, set] : rate.entries()) {
    const std::size_t slot = key.second == Rate::kAnySampling ? Rate::kAnySampling : slot_map[key.second];
    out.set_slot(key.first, slot, project_set(set, dd));
  }
  return out;
}

std::vector<ThresholdBound> sampling_independent_bound(const Rate& rate, bool assert_independent) {
  std::vector<ThresholdBound> bounds;
  for (std::size_t k = 0; k < rate.thresholds().size(); ++k) {
    std::vector<const IndexSet*> sets;
    for (const auto& [key, set] : rate.entries())
      if (key.first == k) sets.push_back(&set);
    if (sets.empty()) continue;
    IndexSet merged;
    for (const IndexSet* s : sets) {
      if (assert_independent && *s != *sets.front())
        throw precondition_error("candidate sets differ across samplings at threshold " +
                                 std::to_string(rate.thresholds()[k]));
      merged.insert(merged.end(), s->begin(), s->end());
    }
    bounds.push_back({rate.thresholds()[k], join_all(rate.window(), normalized(std::move(merged)))});
  }
  return bounds;
}

// ---------------------------------------------------------------------------
// Refutation

bool replay(const RefutationCertificate& cert) {
  if (!(cert.eps > 0.0) || cert.candidates.empty()) return false;
  if (!(cert.sampling.window() == cert.member.window())) return false;
  if (cert.sampling.assign().size() != cert.sampling.window().size()) return false;
  if (!validate_sampling(cert.sampling).ok()) return false;
  if (cert.pointed_target && !cert.member.space().contains(*cert.pointed_target)) return false;
  for (Index i : cert.candidates) {
    if (!cert.member.window().contains(i)) return false;
    const bool witnessed = cert.pointed_target
                               ? is_pointed_witness(cert.member, *cert.pointed_target, cert.eps, cert.sampling, i)
                               : is_witness(cert.member, cert.eps, cert.sampling, i);
    if (witnessed) return false;
  }
  return true;
}

NetGenerator::NetGenerator(std::string tag, DirectedWindow window, std::uint64_t count, Maker make, TargetFn target,
                           ClosedFormRefuter refuter)
    : tag_(std::move(tag)),
      window_(std::move(window)),
      count_(count),
      make_(std::move(make)),
      target_(std::move(target)),
      refuter_(std::move(refuter)) {
  if (!make_) throw precondition_error("net generator needs a member function");
}

Net NetGenerator::member(std::uint64_t k) const {
  if (k >= count_) throw precondition_error("member index out of range");
  return make_(k);
}

Point NetGenerator::target(std::uint64_t k) const {
  if (!target_) throw precondition_error("family '" + tag_ + "' declares no targets");
  if (k >= count_) throw precondition_error("member index out of range");
  return target_(k);
}

std::vector<Net> NetGenerator::members(std::uint64_t max_members) const {
  if (count_ > max_members) throw precondition_error("family '" + tag_ + "' is too large to materialize");
  std::vector<Net> out;
  out.reserve(count_);
  for (std::uint64_t k = 0; k < count_; ++k) out.push_back(make_(k));
  return out;
}

std::vector<Point> NetGenerator::targets(std::uint64_t max_members) const {
  if (count_ > max_members) throw precondition_error("family '" + tag_ + "' is too large to materialize");
  std::vector<Point> out;
  out.reserve(count_);
  for (std::uint64_t k = 0; k < count_; ++k) out.push_back(target(k));
  return out;
}

namespace {

// The sampling that is worst for this member: for each candidate i, eta_i is
// a pair (or single point when pointed) above i realizing the largest
// distance; other elements sample themselves. nullopt when some candidate has
// no tail pair farther apart than eps, in which case no sampling works.
std::optional<Sampling> worst_case_sampling(const Net& a, const IndexSet& candidates, double eps,
                                            const Point* target) {
  const DirectedWindow& w = a.window();
  std::vector<IndexSet> assign(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) assign[i] = {static_cast<Index>(i)};
  for (Index i : candidates) {
    const IndexSet up = w.up_set(i);
    double best = -1.0;
    IndexSet pick;
    if (target != nullptr) {
      for (Index j : up) {
        const double d = a.space().distance(a[j], *target);
        if (d > best) {
          best = d;
          pick = {j};
        }
      }
    } else {
      for (std::size_t x = 0; x < up.size(); ++x)
        for (std::size_t y = x + 1; y < up.size(); ++y) {
          const double d = a.distance(up[x], up[y]);
          if (d > best) {
            best = d;
            pick = {up[x], up[y]};
          }
        }
    }
    if (!(best > eps)) return std::nullopt;
    assign[i] = std::move(pick);
  }
  return Sampling(w, std::move(assign), "adversarial");
}

}  // namespace

std::optional<RefutationCertificate> refute_uniform(const NetGenerator& family,
                                                    std::span<const IndexSet> candidate_sets, double eps,
                                                    const RefuteOptions& options) {
  require_eps(eps);
  if (candidate_sets.empty()) throw precondition_error("refute_uniform needs at least one candidate set");
  IndexSet candidates;
  for (const IndexSet& s : candidate_sets) candidates.insert(candidates.end(), s.begin(), s.end());
  candidates = normalized(std::move(candidates));
  require_candidates(family.window(), candidates);
  if (options.pointed && !family.has_targets())
    throw precondition_error("pointed refutation needs a family with declared targets");

  if (const auto& closed = family.closed_form()) {
    if (auto cert = closed(candidates, eps, options.pointed)) {
      if (replay(*cert) && std::includes(cert->candidates.begin(), cert->candidates.end(), candidates.begin(),
                                         candidates.end()))
        return cert;
    }
  }

  auto probe = [&](std::uint64_t k) -> std::optional<RefutationCertificate> {
    Net a = family.member(k);
    std::optional<Point> target;
    if (options.pointed) target = family.target(k);
    auto eta = worst_case_sampling(a, candidates, eps, target ? &*target : nullptr);
    if (!eta) return std::nullopt;
    RefutationCertificate cert{eps, std::move(*eta), std::move(a), candidates, target, family.tag(), k, "search"};
    if (!replay(cert)) return std::nullopt;
    return cert;
  };

  if (family.size() <= options.budget) {
    for (std::uint64_t k = 0; k < family.size(); ++k)
      if (auto cert = probe(k)) return cert;
    return std::nullopt;
  }
  SeededRng rng(options.seed);
  for (std::uint64_t step = 0; step < options.budget; ++step)
    if (auto cert = probe(rng.below(family.size()))) return cert;
  return std::nullopt;
}

}  // namespace metastab
