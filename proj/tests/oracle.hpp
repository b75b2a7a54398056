#pragma once

// Brute-force reference implementations on raw arrays. They share no code
// with the library: windows are plain order matrices, nets are vectors of
// doubles under |x - y| and samplings are vectors of index vectors.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<bool>>;
using Sets = std::vector<std::vector<std::size_t>>;

inline double max_pair(const std::vector<double>& a, const std::vector<std::size_t>& s) {
  double m = 0.0;
  for (std::size_t j : s)
    for (std::size_t k : s) m = std::max(m, std::fabs(a[j] - a[k]));
  return m;
}

inline std::optional<std::size_t> witness(const std::vector<double>& a, double eps, const Sets& eta) {
  for (std::size_t i = 0; i < eta.size(); ++i)
    if (max_pair(a, eta[i]) <= eps) return i;
  return std::nullopt;
}

inline std::optional<std::size_t> pointed_witness(const std::vector<double>& a, double b, double eps,
                                                  const Sets& eta) {
  for (std::size_t i = 0; i < eta.size(); ++i) {
    bool ok = true;
    for (std::size_t j : eta[i]) ok = ok && std::fabs(a[j] - b) <= eps;
    if (ok) return i;
  }
  return std::nullopt;
}

// Smallest i such that every pair above i is within eps.
inline std::optional<std::size_t> cauchy_index(const std::vector<double>& a, const Matrix& leq, double eps) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j)
      for (std::size_t k = 0; k < n && ok; ++k)
        if (leq[i][j] && leq[i][k] && std::fabs(a[j] - a[k]) > eps) ok = false;
    if (ok) return i;
  }
  return std::nullopt;
}

inline Matrix chain(std::size_t n) {
  Matrix m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m[i][j] = true;
  return m;
}

// Non-increasing {0,1} nets on a chain of length n: n + 1 threshold nets.
inline std::vector<std::vector<double>> threshold_nets(std::size_t n) {
  std::vector<std::vector<double>> out;
  for (std::size_t t = n + 1; t-- > 0;) {
    std::vector<double> a(n, 0.0);
    for (std::size_t i = 0; i < t; ++i) a[i] = 1.0;
    out.push_back(a);
  }
  return out;
}

// Every sampling of a chain of length n whose sets have one or two elements.
inline std::vector<Sets> small_chain_samplings(std::size_t n) {
  std::vector<std::vector<std::vector<std::size_t>>> options(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      options[i].push_back({j});
      for (std::size_t k = j + 1; k < n; ++k) options[i].push_back({j, k});
    }
  std::vector<Sets> out;
  Sets current(n);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.push_back(current);
      return;
    }
    for (const auto& o : options[i]) {
      current[i] = o;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace oracle
