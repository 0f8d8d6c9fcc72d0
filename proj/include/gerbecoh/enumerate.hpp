#pragma once

// Budgeted backtracking over finite assignments and orbit merging.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "gerbecoh/error.hpp"

namespace gerbecoh {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Shared counter of candidate assignments. Charging past the limit throws
/// CapacityError. The total charged by a complete search does not depend on
/// how it was split across workers, so exceeding the budget is deterministic.
class Budget {
 public:
  explicit Budget(std::uint64_t limit = kDefaultBudget) : limit_(limit) {
    detail::require_pre(limit >= 1, "budget must be at least 1");
  }
  Budget(const Budget&) = delete;
  Budget& operator=(const Budget&) = delete;

  void charge(std::uint64_t n = 1) {
    const std::uint64_t now = used_.fetch_add(n, std::memory_order_relaxed) + n;
    if (now > limit_)
      throw CapacityError("enumeration budget of " + std::to_string(limit_) +
                          " candidate assignments exceeded");
  }
  /// Throws up front when a known search size is already over the limit.
  void require_within(double size, const std::string& what) const {
    if (size > static_cast<double>(limit_))
      throw CapacityError(what + " needs about " + std::to_string(static_cast<std::uint64_t>(size)) +
                          " candidates, over the budget of " + std::to_string(limit_));
  }
  std::uint64_t used() const { return used_.load(); }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> used_{0};
};

struct EnumOptions {
  std::uint64_t budget = kDefaultBudget;
  int workers = 1;
};

/// A finite constraint problem: variable v ranges over [0, domain[v]).
/// checks[v] are run as soon as variable v is assigned, and may read any
/// variable with a smaller index.
struct SearchSpace {
  using Check = std::function<bool(const std::vector<int>&)>;

  std::vector<int> domain;
  std::vector<std::vector<Check>> checks;

  int add_variable(int size) {
    domain.push_back(size);
    checks.emplace_back();
    return static_cast<int>(domain.size()) - 1;
  }
  /// Registers a check over the given variables; it runs when the last of them is assigned.
  void add_check(const std::vector<int>& vars, Check c) {
    const int last = vars.empty() ? 0 : *std::max_element(vars.begin(), vars.end());
    checks.at(last).push_back(std::move(c));
  }
  std::size_t size() const { return domain.size(); }
};

namespace detail {

inline void backtrack(const SearchSpace& sp, std::vector<int>& a, std::size_t v, Budget& budget,
                      std::vector<std::vector<int>>& out) {
  if (v == sp.size()) {
    out.push_back(a);
    return;
  }
  for (int x = 0; x < sp.domain[v]; ++x) {
    budget.charge();
    a[v] = x;
    bool ok = true;
    for (const auto& c : sp.checks[v])
      if (!c(a)) {
        ok = false;
        break;
      }
    if (ok) backtrack(sp, a, v + 1, budget, out);
  }
}

}  // namespace detail

/// Every satisfying assignment, in lexicographic order. With several workers
/// the values of variable 0 are dealt round-robin and results are merged in
/// value order, so the output is identical for any worker count.
inline std::vector<std::vector<int>> enumerate_solutions(const SearchSpace& sp, Budget& budget,
                                                         int workers = 1) {
  if (sp.size() == 0) return {std::vector<int>{}};
  for (int d : sp.domain)
    if (d <= 0) return {};
  const int top = sp.domain[0];
  std::vector<std::vector<std::vector<int>>> per_value(top);
  auto run_value = [&](int x) {
    std::vector<int> a(sp.size(), 0);
    budget.charge();
    a[0] = x;
    for (const auto& c : sp.checks[0])
      if (!c(a)) return;
    detail::backtrack(sp, a, 1, budget, per_value[x]);
  };
  workers = std::max(1, std::min(workers, top));
  if (workers == 1) {
    for (int x = 0; x < top; ++x) run_value(x);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (int x = w; x < top; x += workers) run_value(x);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  std::vector<std::vector<int>> out;
  for (auto& block : per_value)
    for (auto& s : block) out.push_back(std::move(s));
  return out;
}

namespace detail {

inline bool backtrack_first(const SearchSpace& sp, std::vector<int>& a, std::size_t v, Budget& budget) {
  if (v == sp.size()) return true;
  for (int x = 0; x < sp.domain[v]; ++x) {
    budget.charge();
    a[v] = x;
    bool ok = true;
    for (const auto& c : sp.checks[v])
      if (!c(a)) {
        ok = false;
        break;
      }
    if (ok && backtrack_first(sp, a, v + 1, budget)) return true;
  }
  return false;
}

}  // namespace detail

/// The lexicographically least satisfying assignment, if any.
inline std::optional<std::vector<int>> find_solution(const SearchSpace& sp, Budget& budget) {
  std::vector<int> a(sp.size(), 0);
  if (detail::backtrack_first(sp, a, 0, budget)) return a;
  return std::nullopt;
}

/// Union-find whose roots are always the smallest index in their class.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Orbits of a set of sorted points under a family of moves. `moves(p, emit)`
/// calls emit(q) for the image q of p under every generator. The result lists,
/// for each orbit in order of its least member, the indices of its members.
template <class Moves>
std::vector<std::vector<std::size_t>> orbits_by_moves(const std::vector<std::vector<int>>& points,
                                                      Moves&& moves, Budget& budget) {
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < points.size(); ++i) index.emplace(points[i], i);
  UnionFind uf(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    moves(points[i], [&](const std::vector<int>& q) {
      budget.charge();
      auto it = index.find(q);
      if (it == index.end())
        throw std::logic_error("internal error: coboundary image is not an enumerated cocycle");
      uf.unite(i, it->second);
    });
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < points.size(); ++i) groups[uf.find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

/// Calls f(tuple) for every tuple in the product of [0, sizes[i]), in lexicographic order.
template <class F>
void for_each_tuple(const std::vector<int>& sizes, F&& f) {
  std::vector<int> t(sizes.size(), 0);
  for (int s : sizes)
    if (s <= 0) return;
  while (true) {
    f(static_cast<const std::vector<int>&>(t));
    std::size_t i = t.size();
    while (i > 0) {
      --i;
      if (++t[i] < sizes[i]) break;
      t[i] = 0;
      if (i == 0) return;
    }
    if (t.empty()) return;
  }
}

}  // namespace gerbecoh
