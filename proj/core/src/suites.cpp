#include <charconv>

#include "metastab/analyze.hpp"
#include "metastab/error.hpp"
#include "metastab/rng.hpp"

namespace metastab {

Sampling identity_sampling(const DirectedWindow& w) {
  std::vector<IndexSet> assign(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) assign[i] = {static_cast<Index>(i)};
  return Sampling(w, std::move(assign), "identity");
}

Sampling successor_sampling(const DirectedWindow& w) {
  std::vector<IndexSet> assign(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto e = static_cast<Index>(i);
    assign[i] = {e};
    if (w.is_chain()) {
      if (i + 1 < w.size()) assign[i].push_back(e + 1);
      continue;
    }
    for (Index j : w.up_set(e))
      if (j != e) {
        assign[i].push_back(j);
        break;
      }
  }
  return Sampling(w, std::move(assign), "successor");
}

Sampling doubling_sampling(const DirectedWindow& w) {
  if (!w.is_chain()) throw precondition_error("the doubling sampling needs a chain window");
  std::vector<IndexSet> assign(w.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    assign[i] = {static_cast<Index>(i), static_cast<Index>(std::min(2 * i, w.size() - 1))};
  return Sampling(w, std::move(assign), "doubling");
}

Sampling random_sampling(const DirectedWindow& w, std::size_t k, std::uint64_t seed) {
  if (k == 0) throw precondition_error("random sampling needs k >= 1");
  SeededRng rng(seed);
  std::vector<IndexSet> assign(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const IndexSet up = w.up_set(static_cast<Index>(i));
    for (std::size_t draw = 0; draw < k; ++draw) assign[i].push_back(up[rng.below(up.size())]);
  }
  return Sampling(w, std::move(assign), "random-" + std::to_string(k) + "@" + std::to_string(seed));
}

std::vector<Sampling> make_suite(std::string_view name, const DirectedWindow& w, std::optional<std::uint64_t> seed,
                                 std::size_t count) {
  if (name == "identity") return {identity_sampling(w)};
  if (name == "successor") return {successor_sampling(w)};
  if (name == "doubling") return {doubling_sampling(w)};
  if (name == "builtin") {
    std::vector<Sampling> suite{identity_sampling(w), successor_sampling(w)};
    if (w.is_chain()) suite.push_back(doubling_sampling(w));
    return suite;
  }
  if (name.starts_with("random-")) {
    const std::string_view digits = name.substr(7);
    std::size_t k = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || k == 0)
      throw precondition_error("malformed random suite name '" + std::string(name) + "'");
    if (!seed) throw precondition_error("random sampling suites require a seed");
    SeededRng master(*seed);
    std::vector<Sampling> suite;
    suite.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
      Sampling s = random_sampling(w, k, master.next());
      suite.emplace_back(s.window(), s.assign(), std::string(name) + "#" + std::to_string(j));
    }
    return suite;
  }
  throw precondition_error("unknown sampling suite '" + std::string(name) + "'");
}

}  // namespace metastab
