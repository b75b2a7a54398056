#pragma once

// Hand-rolled generators for property tests. Everything is driven by an
// explicit std::mt19937_64 so failures reproduce from the printed seed.

#include <cstdint>
#include <random>
#include <vector>

#include "metastab/net.hpp"
#include "metastab/order.hpp"
#include "oracle.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Random partial order on n elements with a largest element (index n - 1):
// a random DAG along the enumeration order, transitively closed.
inline metastab::DirectedWindow poset(Rng& rng, std::size_t n, double density = 0.3) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  std::bernoulli_distribution edge(density);
  for (std::size_t i = 0; i < n; ++i) {
    leq[i][i] = true;
    leq[i][n - 1] = true;
    for (std::size_t j = i + 1; j + 1 < n; ++j)
      if (edge(rng)) leq[i][j] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (leq[i][k] && leq[k][j]) leq[i][j] = true;
  return metastab::DirectedWindow::custom(leq);
}

// Chains, custom posets and small products, sizes up to max_size.
inline metastab::DirectedWindow window(Rng& rng, std::size_t max_size) {
  switch (uniform(rng, 0, 3)) {
    case 0:
    case 1: return metastab::DirectedWindow::omega(uniform(rng, 1, max_size));
    case 2: return poset(rng, uniform(rng, 1, std::min<std::size_t>(max_size, 24)));
    default: {
      const std::size_t a = uniform(rng, 1, 4);
      const std::size_t b = uniform(rng, 1, std::max<std::size_t>(1, std::min<std::size_t>(4, max_size / a)));
      return metastab::DirectedWindow::product(metastab::DirectedWindow::omega(a), metastab::DirectedWindow::omega(b));
    }
  }
}

inline metastab::Sampling sampling(Rng& rng, const metastab::DirectedWindow& w, std::size_t max_k = 3) {
  std::vector<metastab::IndexSet> assign(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto up = w.up_set(static_cast<metastab::Index>(i));
    const std::size_t k = uniform(rng, 1, max_k);
    for (std::size_t d = 0; d < k; ++d) assign[i].push_back(up[uniform(rng, 0, up.size() - 1)]);
  }
  return metastab::Sampling(w, std::move(assign), "gen");
}

// Values on a coarse grid of [0, 1] so that distances tie and hit eps exactly.
inline std::vector<double> values(Rng& rng, std::size_t n, std::size_t levels = 8) {
  std::vector<double> v(n);
  for (auto& x : v) x = static_cast<double>(uniform(rng, 0, levels)) / static_cast<double>(levels);
  return v;
}

inline double eps(Rng& rng, std::size_t levels = 8) {
  return static_cast<double>(uniform(rng, 1, levels)) / static_cast<double>(levels);
}

inline oracle::Matrix matrix(const metastab::DirectedWindow& w) {
  oracle::Matrix m(w.size(), std::vector<bool>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j)
      m[i][j] = w.leq(static_cast<metastab::Index>(i), static_cast<metastab::Index>(j));
  return m;
}

inline oracle::Sets sets(const metastab::Sampling& s) {
  oracle::Sets out;
  for (const auto& e : s.assign()) out.emplace_back(e.begin(), e.end());
  return out;
}

inline metastab::Sampling from_sets(const metastab::DirectedWindow& w, const oracle::Sets& s) {
  std::vector<metastab::IndexSet> assign;
  for (const auto& e : s) assign.emplace_back(e.begin(), e.end());
  return metastab::Sampling(w, std::move(assign));
}

}  // namespace gen
