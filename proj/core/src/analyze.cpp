#include "metastab/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "metastab/error.hpp"

namespace metastab {

namespace {

// cos and sin of a fraction of a full turn, exact at quarter turns.
std::pair<double, double> turn_vector(double turns) {
  double frac = turns - std::floor(turns);
  if (frac >= 1.0) frac = 0.0;
  const double quarters = 4.0 * frac;
  const int q = static_cast<int>(std::floor(quarters)) & 3;
  const double angle = (quarters - std::floor(quarters)) * (std::numbers::pi / 2.0);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  switch (q) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

double turns_of(double theta) { return theta / (2.0 * std::numbers::pi); }

}  // namespace

Coordinates cesaro_average(double theta, std::size_t n) {
  if (n == 0) throw precondition_error("Cesaro averages start at n = 1");
  const double t = turns_of(theta);
  double x = 0.0;
  double y = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto [c, s] = turn_vector(static_cast<double>(k) * t);
    x += c;
    y += s;
  }
  return {x / static_cast<double>(n), y / static_cast<double>(n)};
}

std::vector<Net> cesaro_rotation_nets(std::span<const double> angles, std::size_t horizon) {
  if (horizon == 0) throw precondition_error("horizon must be at least 1");
  const DirectedWindow w = DirectedWindow::omega(horizon);
  std::vector<Net> nets;
  nets.reserve(angles.size());
  for (double theta : angles) {
    const double t = turns_of(theta);
    std::vector<Point> values(horizon);
    double x = 0.0;
    double y = 0.0;
    for (std::size_t k = 0; k < horizon; ++k) {
      const auto [c, s] = turn_vector(static_cast<double>(k) * t);
      x += c;
      y += s;
      const auto n = static_cast<double>(k + 1);
      values[k] = Coordinates{x / n, y / n};
    }
    nets.emplace_back(w, MetricSpace::euclidean(2), std::move(values));
  }
  return nets;
}

double cesaro_envelope(double theta, std::size_t n) {
  const auto [c, s] = turn_vector(turns_of(theta));
  const double gap = std::hypot(1.0 - c, s);
  if (gap == 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 / (static_cast<double>(n) * gap);
}

CoverResult greedy_cover(const std::vector<IndexSet>& witness_sets) {
  CoverResult result;
  std::vector<bool> covered(witness_sets.size(), false);
  std::size_t remaining = 0;
  for (std::size_t k = 0; k < witness_sets.size(); ++k) {
    if (witness_sets[k].empty()) {
      result.uncovered.push_back(k);
      covered[k] = true;
    } else {
      ++remaining;
    }
  }
  while (remaining > 0) {
    std::map<Index, std::size_t> counts;
    for (std::size_t k = 0; k < witness_sets.size(); ++k)
      if (!covered[k])
        for (Index i : witness_sets[k]) ++counts[i];
    Index best = 0;
    std::size_t best_count = 0;
    for (const auto& [i, c] : counts)
      if (c > best_count) {
        best = i;
        best_count = c;
      }
    result.candidates.push_back(best);
    for (std::size_t k = 0; k < witness_sets.size(); ++k)
      if (!covered[k] && std::binary_search(witness_sets[k].begin(), witness_sets[k].end(), best)) {
        covered[k] = true;
        --remaining;
      }
  }
  result.candidates = normalized(std::move(result.candidates));
  return result;
}

bool AnalysisReport::refutation_found() const {
  return std::any_of(cells.begin(), cells.end(), [](const AnalysisCell& c) { return c.refuted(); });
}

AnalysisReport empirical_rate(std::span<const Net> family, std::span<const double> eps_grid,
                              std::span<const Sampling> suite) {
  if (family.empty()) throw precondition_error("empirical_rate needs a nonempty family");
  if (suite.empty()) throw precondition_error("empirical_rate needs a nonempty sampling suite");
  if (eps_grid.empty()) throw precondition_error("empirical_rate needs a nonempty eps grid");
  const DirectedWindow& w = family.front().window();
  for (const Net& a : family)
    if (!(a.window() == w)) throw precondition_error("family members are over different windows");
  for (const Sampling& s : suite) {
    if (!(s.window() == w)) throw precondition_error("sampling '" + s.id() + "' is over a different window");
    require_valid(s);
  }
  for (double eps : eps_grid)
    if (!(eps > 0.0)) throw precondition_error("eps must be positive");

  AnalysisReport report;
  report.window_size = w.size();
  report.family_size = family.size();
  report.eps_grid.assign(eps_grid.begin(), eps_grid.end());
  for (const Sampling& s : suite) report.sampling_ids.push_back(s.id());

  for (double eps : eps_grid) {
    std::vector<Witness> cauchy;
    cauchy.reserve(family.size());
    for (const Net& a : family) cauchy.push_back(window_cauchy_index(a, eps));
    report.cauchy_index.push_back(std::move(cauchy));

    for (const Sampling& eta : suite) {
      AnalysisCell cell;
      cell.eps = eps;
      cell.sampling_id = eta.id();
      std::vector<IndexSet> witness_sets(family.size());
      for (std::size_t k = 0; k < family.size(); ++k) {
        for (std::size_t i = 0; i < w.size(); ++i)
          if (is_witness(family[k], eps, eta, static_cast<Index>(i))) witness_sets[k].push_back(static_cast<Index>(i));
        cell.first_witness.push_back(witness_sets[k].empty() ? Witness{} : Witness{witness_sets[k].front()});
      }
      CoverResult cover = greedy_cover(witness_sets);
      cell.candidates = std::move(cover.candidates);
      cell.uncovered = std::move(cover.uncovered);
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

UmpVerdict finite_space_ump_check(std::span<const Net> nets_by_point, std::span<const double> eps_grid,
                                  std::span<const Sampling> suite) {
  if (nets_by_point.empty()) throw precondition_error("finite_space_ump_check needs at least one point");
  if (eps_grid.empty()) throw precondition_error("finite_space_ump_check needs a nonempty eps grid");
  const double finest = *std::min_element(eps_grid.begin(), eps_grid.end());

  UmpVerdict verdict;
  for (std::size_t x = 0; x < nets_by_point.size(); ++x)
    if (!window_cauchy_index(nets_by_point[x], finest)) verdict.non_cauchy_points.push_back(x);
  if (!verdict.non_cauchy_points.empty()) return verdict;

  AnalysisReport report = empirical_rate(nets_by_point, eps_grid, suite);
  verdict.uniform = true;
  for (std::size_t c = 0; c < report.cells.size(); ++c) {
    const AnalysisCell& cell = report.cells[c];
    const Sampling& eta = suite[c % suite.size()];
    bool ok = !cell.refuted() && !cell.candidates.empty();
    for (std::size_t x = 0; x < nets_by_point.size() && ok; ++x)
      ok = find_witness_among(nets_by_point[x], cell.eps, eta, cell.candidates).has_value();
    verdict.uniform = verdict.uniform && ok;
  }
  verdict.cells = std::move(report.cells);
  return verdict;
}

}  // namespace metastab
