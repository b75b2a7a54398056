#pragma once

// Application layer: sampling suites, numeric iterate generators, empirical
// rate extraction, the finite-space uniform metastability check and CSV
// ingestion.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "metastab/meta.hpp"
#include "metastab/net.hpp"
#include "metastab/order.hpp"

namespace metastab {

// ---------------------------------------------------------------------------
// Sampling suites

// eta_i = {i}
Sampling identity_sampling(const DirectedWindow& w);
// eta_i = {i, next element strictly above i} ({i} at the top).
Sampling successor_sampling(const DirectedWindow& w);
// Chains only: eta_i = {i, min(2i, top)}.
Sampling doubling_sampling(const DirectedWindow& w);
// Each eta_i holds up to k elements drawn uniformly from the up-set of i.
Sampling random_sampling(const DirectedWindow& w, std::size_t k, std::uint64_t seed);

// Named suites: "identity", "successor", "doubling", "random-K" (K elements
// per set, `count` samplings, seeded), and "builtin" (identity, successor and
// doubling when the window is a chain). Random suites throw
// precondition_error without a seed.
std::vector<Sampling> make_suite(std::string_view name, const DirectedWindow& w,
                                 std::optional<std::uint64_t> seed = std::nullopt, std::size_t count = 8);

// ---------------------------------------------------------------------------
// Cesaro averages of planar rotations

// (1/n) * sum_{k<n} R_theta^k (1, 0), for n >= 1. Phases are reduced in
// turns so quarter-turn rotations are exact.
Coordinates cesaro_average(double theta, std::size_t n);

// One R^2 net per angle on omega(horizon); element i carries the average with
// n = i + 1 terms.
std::vector<Net> cesaro_rotation_nets(std::span<const double> angles, std::size_t horizon);

// 2 / (n |1 - e^{i theta}|); +inf for theta a multiple of 2 pi.
double cesaro_envelope(double theta, std::size_t n);

// ---------------------------------------------------------------------------
// Empirical rates

struct CoverResult {
  IndexSet candidates;
  std::vector<std::size_t> uncovered;
};

// Greedy set cover: repeatedly takes the index witnessing the most uncovered
// nets (smallest index on ties). Nets with no witness stay uncovered.
CoverResult greedy_cover(const std::vector<IndexSet>& witness_sets);

struct AnalysisCell {
  double eps = 0.0;
  std::string sampling_id;
  std::vector<Witness> first_witness;
  IndexSet candidates;
  std::vector<std::size_t> uncovered;

  bool refuted() const { return !uncovered.empty(); }
};

struct AnalysisReport {
  std::size_t window_size = 0;
  std::size_t family_size = 0;
  std::vector<double> eps_grid;
  std::vector<std::string> sampling_ids;
  // cells[e * sampling_ids.size() + s]
  std::vector<AnalysisCell> cells;
  // cauchy_index[e][net]
  std::vector<std::vector<Witness>> cauchy_index;

  bool refutation_found() const;
};

// Throws precondition_error for an empty family or suite, or nets and
// samplings over different windows.
AnalysisReport empirical_rate(std::span<const Net> family, std::span<const double> eps_grid,
                              std::span<const Sampling> suite);

struct UmpVerdict {
  bool uniform = false;
  std::vector<std::size_t> non_cauchy_points;
  std::vector<AnalysisCell> cells;
};

// Over a finite point set every family of window-Cauchy nets has a uniform
// candidate set for each (eps, eta). Points whose net is not window-Cauchy at
// the finest eps are listed and no sets are returned.
UmpVerdict finite_space_ump_check(std::span<const Net> nets_by_point, std::span<const double> eps_grid,
                                  std::span<const Sampling> suite);

// ---------------------------------------------------------------------------
// CSV ingestion

struct CsvOptions {
  // Round every value to the nearest multiple of this grid before use.
  std::optional<double> rounding_grid;
};

// One row per index; columns are grouped by the space's dimension, one net
// per group, all on omega(rows). Throws schema_error naming the row for
// ragged rows, non-numeric cells, values outside the space, or a column
// count that is not a multiple of the dimension.
std::vector<Net> ingest_csv_text(std::string_view text, const MetricSpace& space, const CsvOptions& options = {});
std::vector<Net> ingest_csv(const std::filesystem::path& path, const MetricSpace& space,
                            const CsvOptions& options = {});

}  // namespace metastab
