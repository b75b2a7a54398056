#pragma once

// Metric spaces, nets over windows, self-distance and distance-to-point nets,
// and the window-tail Cauchy check.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "metastab/order.hpp"

namespace metastab {

struct Bit {
  std::uint8_t value = 0;
  friend auto operator<=>(const Bit&, const Bit&) = default;
};

struct Symbol {
  std::uint32_t id = 0;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

using Coordinates = std::vector<double>;

// Bit for the discrete {0,1} space, double for the unit interval and the real
// line, Coordinates for euclidean spaces, Symbol for table-defined spaces.
using Point = std::variant<Bit, double, Coordinates, Symbol>;

enum class SpaceKind { binary, unit_interval, real_line, euclidean, table };

std::string_view to_string(SpaceKind kind);

class MetricSpace {
 public:
  static MetricSpace binary();
  static MetricSpace unit_interval();
  static MetricSpace real_line();
  static MetricSpace euclidean(std::size_t dim);
  // Symmetric, zero-diagonal, nonnegative table satisfying the triangle
  // inequality; all of it is checked here.
  static MetricSpace table(std::vector<std::vector<double>> distances);

  SpaceKind kind() const { return kind_; }
  // Coordinates per point: 1 for the scalar spaces, d for euclidean(d).
  std::size_t dimension() const { return dim_; }
  std::optional<double> diameter_bound() const { return diameter_; }
  std::size_t table_size() const { return table_n_; }
  double table_entry(std::size_t i, std::size_t j) const { return (*table_)[i * table_n_ + j]; }

  bool contains(const Point& p) const;
  // Both points must belong to the space.
  double distance(const Point& x, const Point& y) const;

  friend bool operator==(const MetricSpace& a, const MetricSpace& b);

 private:
  MetricSpace(SpaceKind kind, std::size_t dim, std::optional<double> diameter)
      : kind_(kind), dim_(dim), diameter_(diameter) {}

  SpaceKind kind_;
  std::size_t dim_;
  std::optional<double> diameter_;
  std::shared_ptr<const std::vector<double>> table_;
  std::size_t table_n_ = 0;
};

class Net {
 public:
  // Throws precondition_error unless values covers the window and every
  // value belongs to the space.
  Net(DirectedWindow window, MetricSpace space, std::vector<Point> values);

  const DirectedWindow& window() const { return window_; }
  const MetricSpace& space() const { return space_; }
  const std::vector<Point>& values() const { return values_; }
  const Point& operator[](Index i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  double distance(Index j, Index k) const { return space_.distance(values_[j], values_[k]); }

  friend bool operator==(const Net&, const Net&) = default;

 private:
  DirectedWindow window_;
  MetricSpace space_;
  std::vector<Point> values_;
};

// Net over product(window, window) with value d(a_i, a_j) at (i, j). The
// result lives in the unit interval when the source space has diameter <= 1,
// otherwise on the real line.
Net self_distance(const Net& a);

// Net with value d(a_i, b) at i.
Net distance_to_point(const Net& a, const Point& b);

// Smallest i0 in enumeration order with d(a_j, a_k) <= eps for all j, k >= i0.
// Such an i0 witnesses [eps, eta]-metastability for every sampling eta; the
// converse is not claimed on a truncated window.
std::optional<Index> window_cauchy_index(const Net& a, double eps);

// Largest d(a_j, a_k) over j, k >= i.
double tail_diameter(const Net& a, Index i);

// Convenience constructors used throughout.
Net binary_net(const DirectedWindow& w, const std::vector<int>& bits);
Net unit_net(const DirectedWindow& w, const std::vector<double>& values);

}  // namespace metastab
