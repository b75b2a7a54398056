#include "metastab/order.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "metastab/error.hpp"

namespace metastab {

IndexSet normalized(IndexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::string_view to_string(WindowKind kind) {
  switch (kind) {
    case WindowKind::omega: return "omega";
    case WindowKind::ordinal: return "ordinal";
    case WindowKind::product: return "product";
    case WindowKind::custom: return "custom";
  }
  return "unknown";
}

struct DirectedWindow::Impl {
  WindowKind kind;
  std::size_t n;
  // product
  std::optional<DirectedWindow> left;
  std::optional<DirectedWindow> right;
  // custom: row-major n x n
  std::vector<char> order;
  std::vector<Index> join;
  Index top = 0;
};

DirectedWindow::DirectedWindow(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

namespace {

void require_index_range(std::size_t n) {
  if (n == 0) throw precondition_error("window size must be at least 1");
  if (n > std::numeric_limits<Index>::max())
    throw precondition_error("window size exceeds the index range");
}

}  // namespace

DirectedWindow DirectedWindow::omega(std::size_t n) {
  require_index_range(n);
  auto impl = std::make_shared<Impl>();
  impl->kind = WindowKind::omega;
  impl->n = n;
  impl->top = static_cast<Index>(n - 1);
  return DirectedWindow(std::move(impl));
}

DirectedWindow DirectedWindow::ordinal(std::size_t n) {
  require_index_range(n);
  auto impl = std::make_shared<Impl>();
  impl->kind = WindowKind::ordinal;
  impl->n = n;
  impl->top = static_cast<Index>(n - 1);
  return DirectedWindow(std::move(impl));
}

DirectedWindow DirectedWindow::product(const DirectedWindow& d, const DirectedWindow& e) {
  const std::size_t n = d.size() * e.size();
  if (n / e.size() != d.size()) throw precondition_error("product window too large");
  require_index_range(n);
  auto impl = std::make_shared<Impl>();
  impl->kind = WindowKind::product;
  impl->n = n;
  impl->left = d;
  impl->right = e;
  impl->top = static_cast<Index>(d.top() * e.size() + e.top());
  return DirectedWindow(std::move(impl));
}

DirectedWindow DirectedWindow::custom(std::vector<std::vector<bool>> order,
                                      std::optional<std::vector<std::vector<Index>>> join) {
  const std::size_t n = order.size();
  require_index_range(n);
  auto impl = std::make_shared<Impl>();
  impl->kind = WindowKind::custom;
  impl->n = n;
  impl->order.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (order[i].size() != n) throw precondition_error("custom order matrix is not square");
    for (std::size_t j = 0; j < n; ++j) impl->order[i * n + j] = order[i][j] ? 1 : 0;
  }
  auto le = [&](std::size_t i, std::size_t j) { return impl->order[i * n + j] != 0; };

  for (std::size_t i = 0; i < n; ++i) {
    if (!le(i, i)) throw precondition_error("custom order is not reflexive at " + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && le(i, j) && le(j, i))
        throw precondition_error("custom order is not antisymmetric at (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")");
      for (std::size_t k = 0; k < n; ++k)
        if (le(i, j) && le(j, k) && !le(i, k))
          throw precondition_error("custom order is not transitive at (" + std::to_string(i) + ", " +
                                   std::to_string(j) + ", " + std::to_string(k) + ")");
    }
  }

  impl->join.assign(n * n, 0);
  if (join) {
    if (join->size() != n) throw precondition_error("custom join table is not square");
    for (std::size_t i = 0; i < n; ++i) {
      if ((*join)[i].size() != n) throw precondition_error("custom join table is not square");
      for (std::size_t j = 0; j < n; ++j) impl->join[i * n + j] = (*join)[i][j];
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::optional<std::size_t> lub;
        std::optional<std::size_t> first;
        for (std::size_t u = 0; u < n; ++u) {
          if (!le(i, u) || !le(j, u)) continue;
          if (!first) first = u;
          bool least = true;
          for (std::size_t v = 0; v < n && least; ++v)
            if (le(i, v) && le(j, v) && !le(u, v)) least = false;
          if (least) {
            lub = u;
            break;
          }
        }
        if (!first)
          throw precondition_error("custom order is not directed: " + std::to_string(i) + " and " +
                                   std::to_string(j) + " have no upper bound");
        impl->join[i * n + j] = static_cast<Index>(lub ? *lub : *first);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Index u = impl->join[i * n + j];
      if (u >= n || !le(i, u) || !le(j, u))
        throw precondition_error("custom join is not a majorization at (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")");
    }
  }

  Index top = 0;
  for (std::size_t i = 1; i < n; ++i) top = impl->join[top * n + i];
  impl->top = top;
  return DirectedWindow(std::move(impl));
}

std::size_t DirectedWindow::size() const { return impl_->n; }

WindowKind DirectedWindow::kind() const { return impl_->kind; }

bool DirectedWindow::is_chain() const {
  return impl_->kind == WindowKind::omega || impl_->kind == WindowKind::ordinal;
}

bool DirectedWindow::leq(Index i, Index j) const {
  const Impl& m = *impl_;
  switch (m.kind) {
    case WindowKind::omega:
    case WindowKind::ordinal:
      return i <= j;
    case WindowKind::product: {
      const std::size_t e = m.right->size();
      return m.left->leq(static_cast<Index>(i / e), static_cast<Index>(j / e)) &&
             m.right->leq(static_cast<Index>(i % e), static_cast<Index>(j % e));
    }
    case WindowKind::custom:
      return m.order[static_cast<std::size_t>(i) * m.n + j] != 0;
  }
  return false;
}

Index DirectedWindow::join(Index i, Index j) const {
  const Impl& m = *impl_;
  switch (m.kind) {
    case WindowKind::omega:
    case WindowKind::ordinal:
      return std::max(i, j);
    case WindowKind::product: {
      const std::size_t e = m.right->size();
      const Index a = m.left->join(static_cast<Index>(i / e), static_cast<Index>(j / e));
      const Index b = m.right->join(static_cast<Index>(i % e), static_cast<Index>(j % e));
      return static_cast<Index>(a * e + b);
    }
    case WindowKind::custom:
      return m.join[static_cast<std::size_t>(i) * m.n + j];
  }
  return 0;
}

Index DirectedWindow::top() const { return impl_->top; }

IndexSet DirectedWindow::up_set(Index i) const {
  IndexSet up;
  if (is_chain()) {
    up.reserve(size() - i);
    for (std::size_t j = i; j < size(); ++j) up.push_back(static_cast<Index>(j));
    return up;
  }
  for (std::size_t j = 0; j < size(); ++j)
    if (leq(i, static_cast<Index>(j))) up.push_back(static_cast<Index>(j));
  return up;
}

const DirectedWindow& DirectedWindow::left() const {
  if (!impl_->left) throw precondition_error("left() requires a product window");
  return *impl_->left;
}

const DirectedWindow& DirectedWindow::right() const {
  if (!impl_->right) throw precondition_error("right() requires a product window");
  return *impl_->right;
}

Index DirectedWindow::encode_pair(Index i, Index j) const {
  if (!left().contains(i) || !right().contains(j))
    throw precondition_error("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                             ") lies outside the product window");
  return static_cast<Index>(static_cast<std::size_t>(i) * right().size() + j);
}

std::pair<Index, Index> DirectedWindow::decode_pair(Index p) const {
  const std::size_t e = right().size();
  if (!contains(p)) throw precondition_error("element outside the product window");
  return {static_cast<Index>(p / e), static_cast<Index>(p % e)};
}

bool operator==(const DirectedWindow& a, const DirectedWindow& b) {
  if (a.impl_ == b.impl_) return true;
  const auto& x = *a.impl_;
  const auto& y = *b.impl_;
  if (x.kind != y.kind || x.n != y.n) return false;
  switch (x.kind) {
    case WindowKind::omega:
    case WindowKind::ordinal:
      return true;
    case WindowKind::product:
      return *x.left == *y.left && *x.right == *y.right;
    case WindowKind::custom:
      return x.order == y.order && x.join == y.join;
  }
  return false;
}

std::vector<std::string> check_window_invariants(const DirectedWindow& w) {
  std::vector<std::string> problems;
  const auto n = static_cast<Index>(w.size());
  auto pair_text = [](Index i, Index j) {
    std::ostringstream os;
    os << "(" << i << ", " << j << ")";
    return os.str();
  };
  for (Index i = 0; i < n; ++i) {
    if (!w.leq(i, i)) problems.push_back("not reflexive at " + std::to_string(i));
    for (Index j = 0; j < n; ++j) {
      if (i != j && w.leq(i, j) && w.leq(j, i)) problems.push_back("not antisymmetric at " + pair_text(i, j));
      const Index u = w.join(i, j);
      if (!w.contains(u) || !w.leq(i, u) || !w.leq(j, u))
        problems.push_back("join is not an upper bound at " + pair_text(i, j));
      for (Index k = 0; k < n; ++k)
        if (w.leq(i, j) && w.leq(j, k) && !w.leq(i, k))
          problems.push_back("not transitive at " + pair_text(i, j) + " -> " + std::to_string(k));
    }
    if (!w.leq(i, w.top())) problems.push_back("top is not above " + std::to_string(i));
  }
  return problems;
}

Sampling::Sampling(DirectedWindow window, std::vector<IndexSet> assign, std::string id)
    : window_(std::move(window)), assign_(std::move(assign)), id_(std::move(id)) {
  for (auto& s : assign_) s = normalized(std::move(s));
}

SamplingReport validate_sampling(const Sampling& s) {
  const DirectedWindow& w = s.window();
  if (s.assign().size() != w.size())
    throw precondition_error("sampling assigns " + std::to_string(s.assign().size()) +
                             " sets but the window has " + std::to_string(w.size()) + " elements");
  SamplingReport report;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto elem = static_cast<Index>(i);
    const IndexSet& eta = s.assign()[i];
    if (eta.empty()) {
      report.violations.push_back({elem, std::nullopt, SamplingViolation::Reason::empty});
      continue;
    }
    for (Index j : eta) {
      if (!w.contains(j))
        report.violations.push_back({elem, j, SamplingViolation::Reason::outside_window});
      else if (!w.leq(elem, j))
        report.violations.push_back({elem, j, SamplingViolation::Reason::not_above});
    }
  }
  return report;
}

void require_valid(const Sampling& s) {
  const SamplingReport r = validate_sampling(s);
  if (r.ok()) return;
  const SamplingViolation& v = r.violations.front();
  std::string msg = "invalid sampling '" + s.id() + "' at element " + std::to_string(v.element);
  switch (v.reason) {
    case SamplingViolation::Reason::empty: msg += ": empty set"; break;
    case SamplingViolation::Reason::outside_window:
      msg += ": " + std::to_string(*v.offending) + " is outside the window";
      break;
    case SamplingViolation::Reason::not_above:
      msg += ": " + std::to_string(*v.offending) + " is not above it";
      break;
  }
  throw precondition_error(msg);
}

Sampling induced_sampling(const Sampling& eta, const DirectedWindow& d) {
  if (!(eta.window() == d)) throw precondition_error("sampling is not over the given window");
  require_valid(eta);
  const DirectedWindow dd = DirectedWindow::product(d, d);
  const auto n = static_cast<Index>(d.size());
  std::vector<IndexSet> assign(dd.size());
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const IndexSet& base = eta[d.join(i, j)];
      IndexSet& out = assign[dd.encode_pair(i, j)];
      out.reserve(base.size() * base.size());
      for (Index a : base)
        for (Index b : base) out.push_back(dd.encode_pair(a, b));
    }
  }
  return Sampling(dd, std::move(assign), "induced(" + eta.id() + ")");
}

IndexSet project_set(std::span<const std::pair<Index, Index>> pairs, const DirectedWindow& d) {
  IndexSet out;
  out.reserve(pairs.size());
  for (const auto& [i, j] : pairs) {
    if (!d.contains(i) || !d.contains(j))
      throw precondition_error("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                               ") lies outside the product window");
    out.push_back(d.join(i, j));
  }
  return normalized(std::move(out));
}

IndexSet project_set(const IndexSet& encoded_pairs, const DirectedWindow& product_window) {
  if (product_window.kind() != WindowKind::product || !(product_window.left() == product_window.right()))
    throw precondition_error("project_set expects a square product window");
  std::vector<std::pair<Index, Index>> pairs;
  pairs.reserve(encoded_pairs.size());
  for (Index p : encoded_pairs) pairs.push_back(product_window.decode_pair(p));
  return project_set(pairs, product_window.left());
}

Index join_all(const DirectedWindow& w, const IndexSet& s) {
  if (s.empty()) throw precondition_error("join of an empty set");
  Index acc = s.front();
  for (Index i : s) {
    if (!w.contains(i)) throw precondition_error("element " + std::to_string(i) + " outside the window");
    acc = w.join(acc, i);
  }
  return acc;
}

}  // namespace metastab
