#include "metastab/net.hpp"

#include <algorithm>
#include <cmath>

#include "metastab/error.hpp"

namespace metastab {

std::string_view to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::binary: return "binary";
    case SpaceKind::unit_interval: return "unit-interval";
    case SpaceKind::real_line: return "real-line";
    case SpaceKind::euclidean: return "euclidean";
    case SpaceKind::table: return "table";
  }
  return "unknown";
}

MetricSpace MetricSpace::binary() { return MetricSpace(SpaceKind::binary, 1, 1.0); }

MetricSpace MetricSpace::unit_interval() { return MetricSpace(SpaceKind::unit_interval, 1, 1.0); }

MetricSpace MetricSpace::real_line() { return MetricSpace(SpaceKind::real_line, 1, std::nullopt); }

MetricSpace MetricSpace::euclidean(std::size_t dim) {
  if (dim == 0) throw precondition_error("euclidean space needs dimension >= 1");
  return MetricSpace(SpaceKind::euclidean, dim, std::nullopt);
}

MetricSpace MetricSpace::table(std::vector<std::vector<double>> distances) {
  const std::size_t n = distances.size();
  if (n == 0) throw precondition_error("distance table is empty");
  auto flat = std::make_shared<std::vector<double>>(n * n);
  double diameter = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (distances[i].size() != n) throw precondition_error("distance table is not square");
    for (std::size_t j = 0; j < n; ++j) {
      const double d = distances[i][j];
      if (!std::isfinite(d) || d < 0.0) throw precondition_error("distance table has a negative or non-finite entry");
      (*flat)[i * n + j] = d;
      diameter = std::max(diameter, d);
    }
  }
  auto at = [&](std::size_t i, std::size_t j) { return (*flat)[i * n + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    if (at(i, i) != 0.0) throw precondition_error("distance table has a nonzero diagonal entry");
    for (std::size_t j = 0; j < n; ++j) {
      if (at(i, j) != at(j, i)) throw precondition_error("distance table is not symmetric");
      for (std::size_t k = 0; k < n; ++k)
        if (at(i, k) > at(i, j) + at(j, k))
          throw precondition_error("distance table violates the triangle inequality");
    }
  }
  MetricSpace space(SpaceKind::table, 1, diameter);
  space.table_ = std::move(flat);
  space.table_n_ = n;
  return space;
}

bool MetricSpace::contains(const Point& p) const {
  switch (kind_) {
    case SpaceKind::binary: {
      const auto* b = std::get_if<Bit>(&p);
      return b != nullptr && b->value <= 1;
    }
    case SpaceKind::unit_interval: {
      const auto* x = std::get_if<double>(&p);
      return x != nullptr && *x >= 0.0 && *x <= 1.0;
    }
    case SpaceKind::real_line: {
      const auto* x = std::get_if<double>(&p);
      return x != nullptr && std::isfinite(*x);
    }
    case SpaceKind::euclidean: {
      const auto* v = std::get_if<Coordinates>(&p);
      return v != nullptr && v->size() == dim_ &&
             std::all_of(v->begin(), v->end(), [](double c) { return std::isfinite(c); });
    }
    case SpaceKind::table: {
      const auto* s = std::get_if<Symbol>(&p);
      return s != nullptr && s->id < table_n_;
    }
  }
  return false;
}

double MetricSpace::distance(const Point& x, const Point& y) const {
  switch (kind_) {
    case SpaceKind::binary:
      return std::get<Bit>(x).value == std::get<Bit>(y).value ? 0.0 : 1.0;
    case SpaceKind::unit_interval:
    case SpaceKind::real_line:
      return std::abs(std::get<double>(x) - std::get<double>(y));
    case SpaceKind::euclidean: {
      const auto& u = std::get<Coordinates>(x);
      const auto& v = std::get<Coordinates>(y);
      if (dim_ == 2) return std::hypot(u[0] - v[0], u[1] - v[1]);
      double sum = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) sum += (u[k] - v[k]) * (u[k] - v[k]);
      return std::sqrt(sum);
    }
    case SpaceKind::table:
      return table_entry(std::get<Symbol>(x).id, std::get<Symbol>(y).id);
  }
  return 0.0;
}

bool operator==(const MetricSpace& a, const MetricSpace& b) {
  if (a.kind_ != b.kind_ || a.dim_ != b.dim_) return false;
  if (a.kind_ != SpaceKind::table) return true;
  return a.table_n_ == b.table_n_ && *a.table_ == *b.table_;
}

Net::Net(DirectedWindow window, MetricSpace space, std::vector<Point> values)
    : window_(std::move(window)), space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != window_.size())
    throw precondition_error("net has " + std::to_string(values_.size()) + " values but the window has " +
                             std::to_string(window_.size()) + " elements");
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!space_.contains(values_[i]))
      throw precondition_error("net value at index " + std::to_string(i) + " is not a point of the " +
                               std::string(to_string(space_.kind())) + " space");
}

namespace {

MetricSpace distance_space(const MetricSpace& source) {
  const auto bound = source.diameter_bound();
  return bound && *bound <= 1.0 ? MetricSpace::unit_interval() : MetricSpace::real_line();
}

}  // namespace

Net self_distance(const Net& a) {
  const DirectedWindow& d = a.window();
  DirectedWindow dd = DirectedWindow::product(d, d);
  std::vector<Point> values(dd.size());
  const auto n = static_cast<Index>(d.size());
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) values[dd.encode_pair(i, j)] = a.distance(i, j);
  return Net(std::move(dd), distance_space(a.space()), std::move(values));
}

Net distance_to_point(const Net& a, const Point& b) {
  if (!a.space().contains(b)) throw precondition_error("target point is not in the net's space");
  std::vector<Point> values(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) values[i] = a.space().distance(a.values()[i], b);
  return Net(a.window(), distance_space(a.space()), std::move(values));
}

double tail_diameter(const Net& a, Index i) {
  const IndexSet up = a.window().up_set(i);
  double diam = 0.0;
  for (std::size_t x = 0; x < up.size(); ++x)
    for (std::size_t y = x + 1; y < up.size(); ++y) diam = std::max(diam, a.distance(up[x], up[y]));
  return diam;
}

std::optional<Index> window_cauchy_index(const Net& a, double eps) {
  if (!(eps > 0.0)) throw precondition_error("eps must be positive");
  const DirectedWindow& w = a.window();
  const std::size_t n = w.size();
  if (w.is_chain()) {
    // Tail diameters are non-increasing along a chain; compute them top-down.
    std::vector<double> diam(n, 0.0);
    for (std::size_t i = n - 1; i-- > 0;) {
      double d = diam[i + 1];
      for (std::size_t j = i + 1; j < n; ++j)
        d = std::max(d, a.distance(static_cast<Index>(i), static_cast<Index>(j)));
      diam[i] = d;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (diam[i] <= eps) return static_cast<Index>(i);
    return std::nullopt;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const IndexSet up = w.up_set(static_cast<Index>(i));
    bool bounded = true;
    for (std::size_t x = 0; x < up.size() && bounded; ++x)
      for (std::size_t y = x + 1; y < up.size() && bounded; ++y)
        if (!(a.distance(up[x], up[y]) <= eps)) bounded = false;
    if (bounded) return static_cast<Index>(i);
  }
  return std::nullopt;
}

Net binary_net(const DirectedWindow& w, const std::vector<int>& bits) {
  std::vector<Point> values;
  values.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw precondition_error("binary net values must be 0 or 1");
    values.emplace_back(Bit{static_cast<std::uint8_t>(b)});
  }
  return Net(w, MetricSpace::binary(), std::move(values));
}

Net unit_net(const DirectedWindow& w, const std::vector<double>& values) {
  return Net(w, MetricSpace::unit_interval(), std::vector<Point>(values.begin(), values.end()));
}

}  // namespace metastab
