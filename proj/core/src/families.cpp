#include "metastab/families.hpp"

#include <algorithm>
#include <memory>

#include "metastab/error.hpp"

namespace metastab {

std::string_view to_string(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::B: return "B";
    case FamilyTag::B0: return "B0";
    case FamilyTag::C: return "C";
    case FamilyTag::D: return "D";
    case FamilyTag::paracompact: return "paracompact";
  }
  return "unknown";
}

FamilyTag family_tag_from_string(std::string_view name) {
  if (name == "B") return FamilyTag::B;
  if (name == "B0") return FamilyTag::B0;
  if (name == "C") return FamilyTag::C;
  if (name == "D") return FamilyTag::D;
  if (name == "paracompact") return FamilyTag::paracompact;
  throw precondition_error("unknown family tag '" + std::string(name) + "'");
}

namespace {

using Bits = std::vector<std::uint8_t>;

Net bits_net(const DirectedWindow& w, const Bits& bits) {
  std::vector<Point> values;
  values.reserve(bits.size());
  for (auto b : bits) values.emplace_back(Bit{b});
  return Net(w, MetricSpace::binary(), std::move(values));
}

// Down-set indicators of a finite poset, including each element before
// excluding it, along a linear extension. The full window comes first.
std::vector<Bits> enumerate_down_sets(const DirectedWindow& w, std::size_t cap, bool& truncated) {
  const std::size_t n = w.size();
  std::vector<Index> order(n);
  std::vector<std::size_t> below(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    order[i] = static_cast<Index>(i);
    for (std::size_t j = 0; j < n; ++j)
      if (w.leq(static_cast<Index>(j), static_cast<Index>(i))) ++below[i];
  }
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return below[a] < below[b]; });

  std::vector<Bits> out;
  Bits current(n, 0);
  truncated = false;
  auto recurse = [&](auto&& self, std::size_t pos) -> void {
    if (out.size() >= cap) {
      truncated = true;
      return;
    }
    if (pos == n) {
      out.push_back(current);
      return;
    }
    const Index e = order[pos];
    bool can_include = true;
    for (std::size_t j = 0; j < n && can_include; ++j)
      if (j != e && w.leq(static_cast<Index>(j), e) && current[j] == 0) can_include = false;
    if (can_include) {
      current[e] = 1;
      self(self, pos + 1);
      current[e] = 0;
    }
    self(self, pos + 1);
  };
  recurse(recurse, 0);
  return out;
}

bool is_non_increasing(const Net& net) {
  const DirectedWindow& w = net.window();
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j)
      if (w.leq(static_cast<Index>(i), static_cast<Index>(j)) &&
          std::get<Bit>(net[static_cast<Index>(i)]).value < std::get<Bit>(net[static_cast<Index>(j)]).value)
        return false;
  return true;
}

void require_subset(const IndexSet& s, const DirectedWindow& d) {
  if (s.empty()) throw precondition_error("candidate set is empty");
  for (Index i : s)
    if (!d.contains(i)) throw precondition_error("element " + std::to_string(i) + " lies outside the window");
}

// Members of B that are 1 exactly on the down-closure of s; in B0 when the
// top is not in s. Refutes pointed metastability near 0 under eta_i = {i}.
std::optional<RefutationCertificate> refute_down_closure(const IndexSet& s, const DirectedWindow& w, double eps,
                                                         std::string tag) {
  if (!(eps < 1.0)) return std::nullopt;
  if (std::find(s.begin(), s.end(), w.top()) != s.end()) return std::nullopt;
  Bits bits(w.size(), 0);
  for (std::size_t j = 0; j < w.size(); ++j)
    for (Index i : s)
      if (w.leq(static_cast<Index>(j), i)) bits[j] = 1;
  std::vector<IndexSet> assign(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) assign[i] = {static_cast<Index>(i)};
  std::optional<std::uint64_t> index;
  if (w.is_chain()) {
    const std::uint64_t t = s.back() + 1;  // ones on [0, t)
    index = w.size() - t - (tag == "B0" ? 1 : 0);
  }
  return RefutationCertificate{eps,      Sampling(w, std::move(assign), "identity"), bits_net(w, bits), s,
                               Bit{0},   std::move(tag),                             index,             "closed-form"};
}

std::optional<std::uint64_t> c_member_index(const DirectedWindow& w, Index k) {
  std::uint64_t pos = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (static_cast<Index>(i) == w.top()) continue;
    if (static_cast<Index>(i) == k) return pos < 63 ? std::optional<std::uint64_t>(std::uint64_t{1} << pos) : std::nullopt;
    ++pos;
  }
  return std::nullopt;
}

NetGenerator make_B(const FamilySpec& spec, bool drop_constant_one) {
  const DirectedWindow w = spec.window;
  const std::string tag(to_string(spec.tag));
  auto refuter = [w, tag](const IndexSet& s, double eps, bool pointed) -> std::optional<RefutationCertificate> {
    if (!pointed) return std::nullopt;
    return refute_down_closure(s, w, eps, tag);
  };
  const std::uint64_t skip = drop_constant_one ? 1 : 0;

  if (w.is_chain()) {
    const std::uint64_t n = w.size();
    auto make = [w, n, skip](std::uint64_t k) {
      const std::uint64_t t = n - (k + skip);  // ones on [0, t)
      Bits bits(n, 0);
      for (std::uint64_t i = 0; i < t; ++i) bits[i] = 1;
      return bits_net(w, bits);
    };
    auto target = [skip](std::uint64_t k) { return Point(Bit{static_cast<std::uint8_t>(k + skip == 0 ? 1 : 0)}); };
    return NetGenerator(tag, w, n + 1 - skip, make, target, refuter);
  }

  bool truncated = false;
  auto sets = std::make_shared<std::vector<Bits>>(enumerate_down_sets(w, spec.enumeration_cap, truncated));
  if (drop_constant_one && !sets->empty()) sets->erase(sets->begin());
  const Index top = w.top();
  auto make = [w, sets](std::uint64_t k) { return bits_net(w, (*sets)[k]); };
  auto target = [sets, top](std::uint64_t k) { return Point(Bit{(*sets)[k][top]}); };
  NetGenerator gen(tag, w, sets->size(), make, target, refuter);
  if (truncated) gen.mark_truncated();
  return gen;
}

NetGenerator make_C(const FamilySpec& spec) {
  const DirectedWindow w = spec.window;
  std::vector<Index> free;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (static_cast<Index>(i) != w.top()) free.push_back(static_cast<Index>(i));
  const std::size_t bits_used = std::min<std::size_t>(free.size(), 63);
  auto make = [w, free, bits_used](std::uint64_t k) {
    Bits bits(w.size(), 0);
    for (std::size_t b = 0; b < bits_used; ++b) bits[free[b]] = static_cast<std::uint8_t>((k >> b) & 1u);
    return bits_net(w, bits);
  };
  auto target = [](std::uint64_t) { return Point(Bit{0}); };
  auto refuter = [w](const IndexSet& s, double eps, bool pointed) -> std::optional<RefutationCertificate> {
    try {
      auto cert = refute_C(s, w, eps);
      if (pointed) cert.pointed_target = Bit{0};
      return cert;
    } catch (const precondition_error&) {
      return std::nullopt;
    }
  };
  NetGenerator gen("C", w, std::uint64_t{1} << bits_used, make, target, refuter);
  if (free.size() > bits_used) gen.mark_truncated();
  return gen;
}

NetGenerator make_D(const FamilySpec& spec) {
  const DirectedWindow w = spec.window;
  if (!w.is_chain()) throw precondition_error("family D needs a chain window");
  const auto [lo, hi] = spec.alpha_range.value_or(std::pair<Index, Index>{0, static_cast<Index>(w.size() - 1)});
  if (lo > hi || !w.contains(hi)) throw precondition_error("family D alpha range is outside the window");
  auto make = [w, lo = lo](std::uint64_t k) { return parity_net(w, static_cast<Index>(lo + k)); };
  auto target = [](std::uint64_t) { return Point(Bit{1}); };
  auto refuter = [w, lo = lo, hi = hi](const IndexSet& s, double eps,
                                       bool pointed) -> std::optional<RefutationCertificate> {
    try {
      auto cert = refute_D_pointed(s, w, eps);
      const Index alpha = static_cast<Index>(*cert.member_index);
      if (alpha < lo || alpha > hi) return std::nullopt;
      cert.member_index = alpha - lo;
      if (!pointed) cert.pointed_target.reset();
      return cert;
    } catch (const precondition_error&) {
      return std::nullopt;
    }
  };
  return NetGenerator("D", w, static_cast<std::uint64_t>(hi - lo) + 1, make, target, refuter);
}

}  // namespace

NetGenerator enumerate_family(const FamilySpec& spec) {
  switch (spec.tag) {
    case FamilyTag::B: return make_B(spec, false);
    case FamilyTag::B0: return make_B(spec, true);
    case FamilyTag::C: return make_C(spec);
    case FamilyTag::D: return make_D(spec);
    case FamilyTag::paracompact:
      if (!spec.window.is_chain()) throw precondition_error("paracompact nets live on a chain window");
      return paracompact_nets(spec.points, spec.window.size());
  }
  throw precondition_error("unknown family tag");
}

bool is_family_member(const FamilySpec& spec, const Net& net) {
  if (!(net.window() == spec.window)) return false;
  if (spec.tag == FamilyTag::paracompact) {
    const ParacompactConstruction pc(spec.points, spec.window.size());
    for (std::size_t x = 0; x < pc.points(); ++x)
      if (net == pc.net_at(x)) return true;
    return false;
  }
  if (net.space().kind() != SpaceKind::binary) return false;
  const auto at = [&](Index i) { return std::get<Bit>(net[i]).value; };
  const Index top = spec.window.top();
  switch (spec.tag) {
    case FamilyTag::B: return is_non_increasing(net);
    case FamilyTag::B0: return is_non_increasing(net) && at(top) == 0;
    case FamilyTag::C: return at(top) == 0;
    case FamilyTag::D: {
      if (!spec.window.is_chain()) return false;
      const auto [lo, hi] =
          spec.alpha_range.value_or(std::pair<Index, Index>{0, static_cast<Index>(spec.window.size() - 1)});
      for (Index alpha = lo; alpha <= hi; ++alpha)
        if (net == parity_net(spec.window, alpha)) return true;
      return false;
    }
    case FamilyTag::paracompact: break;
  }
  return false;
}

IndexSet rate_B(const Sampling& eta, const DirectedWindow& d) {
  if (!(eta.window() == d)) throw precondition_error("sampling is not over the given window");
  require_valid(eta);
  const Index k = 0;
  const Index l = join_all(d, eta[k]);
  return normalized({k, l});
}

RefutationCertificate refute_C(const IndexSet& s_in, const DirectedWindow& d, double eps) {
  const IndexSet s = normalized(s_in);
  require_subset(s, d);
  if (!(eps > 0.0 && eps < 1.0)) throw precondition_error("refute_C needs eps in (0, 1)");
  const Index upper = join_all(d, s);
  auto strictly_above = [&](Index base) -> std::optional<Index> {
    for (std::size_t j = 0; j < d.size(); ++j) {
      const auto e = static_cast<Index>(j);
      if (e != base && d.leq(base, e)) return e;
    }
    return std::nullopt;
  };
  const auto k = strictly_above(upper);
  const auto l = k ? strictly_above(*k) : std::nullopt;
  if (!k || !l) throw precondition_error("window has no room for two elements above the candidate set");

  std::vector<IndexSet> assign(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) assign[i] = {static_cast<Index>(i)};
  for (Index i : s) assign[i] = {*k, *l};
  Bits bits(d.size(), 0);
  bits[*k] = 1;
  return RefutationCertificate{eps, Sampling(d, std::move(assign), "refute-C"), bits_net(d, bits), s, std::nullopt,
                               "C", c_member_index(d, *k), "closed-form"};
}

Net parity_net(const DirectedWindow& chain, Index alpha) {
  if (!chain.is_chain()) throw precondition_error("parity nets need a chain window");
  Bits bits(chain.size(), 1);
  for (std::size_t i = 0; i < chain.size(); ++i)
    if (i <= alpha && i % 2 == 0) bits[i] = 0;
  return bits_net(chain, bits);
}

RefutationCertificate refute_D_pointed(const IndexSet& s_in, const DirectedWindow& d, double eps) {
  const IndexSet s = normalized(s_in);
  require_subset(s, d);
  if (!d.is_chain()) throw precondition_error("refute_D_pointed needs a chain window");
  if (!(eps > 0.0 && eps < 1.0)) throw precondition_error("refute_D_pointed needs eps in (0, 1)");
  const std::size_t alpha = static_cast<std::size_t>(s.back()) + 1;
  if (alpha + 1 >= d.size()) throw precondition_error("window too small to place alpha and alpha + 1 above the set");

  std::vector<IndexSet> assign(d.size());
  for (std::size_t b = 0; b < d.size(); ++b)
    assign[b] = {static_cast<Index>(b), static_cast<Index>(std::min(b + 1, d.size() - 1))};
  return RefutationCertificate{eps,    Sampling(d, std::move(assign), "successor"),
                               parity_net(d, static_cast<Index>(alpha)),
                               s,      Bit{1},
                               "D",    alpha,
                               "closed-form"};
}

ParacompactConstruction::ParacompactConstruction(std::size_t points, std::size_t horizon)
    : points_(points), horizon_(horizon) {
  if (points == 0 || horizon == 0) throw precondition_error("paracompact construction needs positive counts");
}

double ParacompactConstruction::g(std::size_t n, std::size_t x) const { return n == x ? 1.0 : 0.0; }

double ParacompactConstruction::h_partial(std::size_t n, std::size_t x) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) sum += g(j, x);
  return sum;
}

double ParacompactConstruction::h(std::size_t x) const { return h_partial(points_, x); }

double ParacompactConstruction::f(std::size_t i, std::size_t x) const {
  return i % 2 == 1 ? h_partial(i, x) : h(x);
}

Net ParacompactConstruction::net_at(std::size_t x) const {
  if (x >= points_) throw precondition_error("point index out of range");
  std::vector<Point> values(horizon_);
  for (std::size_t i = 0; i < horizon_; ++i) values[i] = f(i, x);
  return Net(DirectedWindow::omega(horizon_), MetricSpace::unit_interval(), std::move(values));
}

NetGenerator paracompact_nets(std::size_t n_points, std::size_t horizon) {
  auto pc = std::make_shared<const ParacompactConstruction>(n_points, horizon);
  const DirectedWindow w = DirectedWindow::omega(horizon);
  auto make = [pc](std::uint64_t k) { return pc->net_at(k); };
  auto target = [pc](std::uint64_t k) { return Point(pc->h(k)); };
  // At x_n with n > max(s), the successor sampling pairs every i in s with an
  // odd index <= n where f vanishes.
  auto refuter = [pc, w](const IndexSet& s, double eps, bool pointed) -> std::optional<RefutationCertificate> {
    if (!(eps < 1.0)) return std::nullopt;
    const std::size_t n = static_cast<std::size_t>(s.back()) + 1;
    if (n >= pc->points() || n >= pc->horizon()) return std::nullopt;
    std::vector<IndexSet> assign(w.size());
    for (std::size_t b = 0; b < w.size(); ++b)
      assign[b] = {static_cast<Index>(b), static_cast<Index>(std::min(b + 1, w.size() - 1))};
    std::optional<Point> target;
    if (pointed) target = Point(pc->h(n));
    return RefutationCertificate{eps, Sampling(w, std::move(assign), "successor"), pc->net_at(n), s, target,
                                 "paracompact", n, "closed-form"};
  };
  return NetGenerator("paracompact", w, n_points, make, target, refuter);
}

}  // namespace metastab
