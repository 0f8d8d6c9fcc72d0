#pragma once

// Nerves of finite covers, and the finite spaces they are realized on.

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gerbecoh/error.hpp"

namespace gerbecoh {

using Face = std::vector<int>;  // strictly increasing indices

/// A finite abstract simplicial complex on indices 0..index_count-1 that
/// contains every singleton. Faces are kept sorted by size, then lexicographically.
class Nerve {
 public:
  Nerve() : Nerve(1, {}) {}

  /// Closes `generators` downward and adds all singletons.
  Nerve(int index_count, const std::vector<Face>& generators) : n_(index_count) {
    detail::require_structure(index_count >= 1, "a nerve needs at least one index");
    std::set<Face> all;
    for (int i = 0; i < n_; ++i) all.insert({i});
    for (Face f : generators) {
      std::sort(f.begin(), f.end());
      detail::require_structure(!f.empty(), "empty face");
      detail::require_structure(std::adjacent_find(f.begin(), f.end()) == f.end(),
                                "face has a repeated index");
      detail::require_structure(f.front() >= 0 && f.back() < n_, "face index out of range");
      const int k = static_cast<int>(f.size());
      for (unsigned mask = 1; mask < (1u << k); ++mask) {
        Face sub;
        for (int b = 0; b < k; ++b)
          if (mask & (1u << b)) sub.push_back(f[b]);
        all.insert(sub);
      }
    }
    faces_.assign(all.begin(), all.end());
    std::stable_sort(faces_.begin(), faces_.end(),
                     [](const Face& a, const Face& b) { return a.size() < b.size(); });
    for (std::size_t i = 0; i < faces_.size(); ++i) {
      index_[faces_[i]] = static_cast<int>(i);
      by_dim_.resize(std::max(by_dim_.size(), faces_[i].size() + 1));
      by_dim_[faces_[i].size()].push_back(faces_[i]);
    }
  }

  int index_count() const noexcept { return n_; }
  const std::vector<Face>& faces() const noexcept { return faces_; }
  bool is_face(Face f) const {
    std::sort(f.begin(), f.end());
    return index_.count(f) > 0;
  }
  /// Faces with exactly k indices, lexicographic.
  const std::vector<Face>& faces_of_size(std::size_t k) const {
    static const std::vector<Face> none;
    return k < by_dim_.size() ? by_dim_[k] : none;
  }
  /// Position of a face within faces_of_size(f.size()); -1 if absent.
  int position(const Face& f) const {
    const auto& fs = faces_of_size(f.size());
    auto it = std::lower_bound(fs.begin(), fs.end(), f);
    return (it != fs.end() && *it == f) ? static_cast<int>(it - fs.begin()) : -1;
  }
  std::size_t dimension() const { return by_dim_.empty() ? 0 : by_dim_.size() - 2; }
  bool operator==(const Nerve& o) const { return n_ == o.n_ && faces_ == o.faces_; }

  /// The maximal faces, lexicographic.
  std::vector<Face> maximal_faces() const {
    std::vector<Face> out;
    for (const auto& f : faces_) {
      bool maximal = true;
      for (const auto& g : faces_of_size(f.size() + 1))
        if (std::includes(g.begin(), g.end(), f.begin(), f.end())) {
          maximal = false;
          break;
        }
      if (maximal) out.push_back(f);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  int n_;
  std::vector<Face> faces_;
  std::map<Face, int> index_;
  std::vector<std::vector<Face>> by_dim_;
};

/// True iff every nonempty subset of a listed face is listed and all singletons are present.
inline bool is_downward_closed(int index_count, const std::vector<Face>& faces) {
  std::set<Face> s;
  for (Face f : faces) {
    std::sort(f.begin(), f.end());
    s.insert(f);
  }
  for (int i = 0; i < index_count; ++i)
    if (!s.count({i})) return false;
  for (const auto& f : s) {
    const int k = static_cast<int>(f.size());
    for (int drop = 0; k > 1 && drop < k; ++drop) {
      Face sub = f;
      sub.erase(sub.begin() + drop);
      if (!s.count(sub)) return false;
    }
  }
  return true;
}

/// Nerve of a cover of {0..point_count-1}: a set of indices is a face iff the
/// corresponding subsets have a common point.
inline Nerve nerve_from_cover(int point_count, const std::vector<std::vector<int>>& subsets) {
  detail::require_structure(point_count >= 1, "base must have at least one point");
  detail::require_structure(!subsets.empty(), "cover has no subsets");
  std::vector<char> covered(point_count, 0);
  for (const auto& u : subsets)
    for (int x : u) {
      detail::require_structure(x >= 0 && x < point_count, "cover point out of range");
      covered[x] = 1;
    }
  for (int x = 0; x < point_count; ++x)
    if (!covered[x])
      throw PreconditionError("subsets do not cover point " + std::to_string(x));
  // The faces are exactly the index sets {i : x in U_i} for points x, plus their subsets.
  std::vector<Face> gens;
  for (int x = 0; x < point_count; ++x) {
    Face f;
    for (int i = 0; i < static_cast<int>(subsets.size()); ++i)
      if (std::find(subsets[i].begin(), subsets[i].end(), x) != subsets[i].end()) f.push_back(i);
    gens.push_back(f);
  }
  for (std::size_t i = 0; i < subsets.size(); ++i)
    detail::require_structure(!subsets[i].empty(), "cover element " + std::to_string(i) + " is empty");
  return Nerve(static_cast<int>(subsets.size()), gens);
}

inline Nerve circle_nerve(int m) {
  if (m < 3) throw PreconditionError("circle nerve needs at least 3 indices");
  std::vector<Face> gens;
  for (int i = 0; i < m; ++i) gens.push_back({i, (i + 1) % m});
  return Nerve(m, gens);
}

inline Nerve simplex_nerve(int m) {
  detail::require_pre(m >= 1 && m <= 12, "simplex nerve needs 1 to 12 indices");
  Face all(m);
  for (int i = 0; i < m; ++i) all[i] = i;
  return Nerve(m, {all});
}

/// All proper nonempty subsets of {0..m-1}: the boundary of an (m-1)-simplex.
inline Nerve simplex_boundary_nerve(int m) {
  detail::require_pre(m >= 2 && m <= 12, "simplex boundary needs 2 to 12 indices");
  std::vector<Face> gens;
  for (int drop = 0; drop < m; ++drop) {
    Face f;
    for (int i = 0; i < m; ++i)
      if (i != drop) f.push_back(i);
    gens.push_back(f);
  }
  return Nerve(m, gens);
}

inline Nerve sphere2_nerve() { return simplex_boundary_nerve(4); }

/// Parses "circle(m)", "simplex(m)", "sphere2" and "boundary(m)".
inline Nerve standard_nerve(const std::string& kind) {
  if (kind == "sphere2") return sphere2_nerve();
  auto open = kind.find('(');
  if (open != std::string::npos && kind.back() == ')') {
    const std::string head = kind.substr(0, open);
    const std::string arg = kind.substr(open + 1, kind.size() - open - 2);
    int m = 0;
    try {
      std::size_t used = 0;
      m = std::stoi(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
    } catch (const std::exception&) {
      throw StructuralError("bad nerve parameter in '" + kind + "'");
    }
    if (head == "circle") return circle_nerve(m);
    if (head == "simplex") return simplex_nerve(m);
    if (head == "boundary") return simplex_boundary_nerve(m);
  }
  throw StructuralError("unknown standard nerve '" + kind + "'");
}

/// Ordered k-tuples of distinct indices whose underlying set is a face, lexicographic.
inline std::vector<std::vector<int>> tuples(const Nerve& nerve, int k) {
  detail::require_pre(k >= 1, "tuple length must be positive");
  std::vector<std::vector<int>> out;
  for (const auto& f : nerve.faces_of_size(static_cast<std::size_t>(k))) {
    std::vector<int> t = f;
    do out.push_back(t);
    while (std::next_permutation(t.begin(), t.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Finite spaces

/// A finite poset viewed as a topological space: a set is open iff it is
/// closed upward along links. links are the strict relations x < y, and must
/// be transitively closed.
struct FiniteSpace {
  int points = 1;
  std::vector<std::pair<int, int>> links;

  bool operator==(const FiniteSpace&) const = default;

  static FiniteSpace discrete(int n) { return FiniteSpace{n, {}}; }

  /// Index of link (x, y), or -1.
  int link_index(int x, int y) const {
    auto it = std::lower_bound(links.begin(), links.end(), std::make_pair(x, y));
    return (it != links.end() && *it == std::make_pair(x, y)) ? static_cast<int>(it - links.begin())
                                                              : -1;
  }
  bool is_open(const std::vector<int>& u) const {
    std::vector<char> in(points, 0);
    for (int x : u) in[x] = 1;
    for (auto [x, y] : links)
      if (in[x] && !in[y]) return false;
    return true;
  }
  /// Connected components (links taken undirected); component id per point, ids ordered by least point.
  std::vector<int> components() const {
    std::vector<int> comp(points, -1);
    int next = 0;
    for (int s = 0; s < points; ++s) {
      if (comp[s] >= 0) continue;
      std::vector<int> stack{s};
      comp[s] = next;
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        for (auto [a, b] : links) {
          const int other = a == x ? b : (b == x ? a : -1);
          if (other >= 0 && comp[other] < 0) {
            comp[other] = next;
            stack.push_back(other);
          }
        }
      }
      ++next;
    }
    return comp;
  }
};

inline void validate_space(const FiniteSpace& s) {
  detail::require_structure(s.points >= 1, "space needs at least one point");
  detail::require_structure(std::is_sorted(s.links.begin(), s.links.end()) &&
                                std::adjacent_find(s.links.begin(), s.links.end()) == s.links.end(),
                            "links must be sorted and distinct");
  std::set<std::pair<int, int>> rel(s.links.begin(), s.links.end());
  for (auto [x, y] : s.links) {
    detail::require_structure(x >= 0 && x < s.points && y >= 0 && y < s.points,
                              "link endpoint out of range");
    detail::require_structure(x != y && !rel.count({y, x}), "links must be antisymmetric");
    for (auto [a, b] : s.links)
      if (a == y)
        detail::require_structure(rel.count({x, b}) > 0, "links must be transitively closed");
  }
}

/// An open cover of a finite space by the sets U_i (sorted point lists).
struct Cover {
  FiniteSpace space;
  std::vector<std::vector<int>> sets;

  Nerve nerve() const { return nerve_from_cover(space.points, sets); }
  bool contains(int i, int x) const {
    return std::binary_search(sets[i].begin(), sets[i].end(), x);
  }
  /// Points of U_{i0} ∩ ... ∩ U_{ik}.
  std::vector<int> intersection(const std::vector<int>& idx) const {
    std::vector<int> out;
    for (int x = 0; x < space.points; ++x) {
      bool all = true;
      for (int i : idx) all = all && contains(i, x);
      if (all) out.push_back(x);
    }
    return out;
  }
};

inline void validate_cover(const Cover& c) {
  validate_space(c.space);
  for (const auto& u : c.sets) {
    detail::require_structure(std::is_sorted(u.begin(), u.end()), "cover set must be sorted");
    for (int x : u)
      detail::require_structure(x >= 0 && x < c.space.points, "cover point out of range");
    detail::require_structure(c.space.is_open(u), "cover set is not open");
  }
  (void)c.nerve();  // checks that the sets cover
}

/// The face poset of a nerve, covered by the open stars U_i = {faces containing i}.
/// Point p is nerve.faces()[p]; links are strict inclusions. Its nerve is the given one.
inline Cover canonical_cover(const Nerve& nerve) {
  Cover c;
  const auto& faces = nerve.faces();
  c.space.points = static_cast<int>(faces.size());
  for (int a = 0; a < c.space.points; ++a)
    for (int b = 0; b < c.space.points; ++b)
      if (faces[a].size() < faces[b].size() &&
          std::includes(faces[b].begin(), faces[b].end(), faces[a].begin(), faces[a].end()))
        c.space.links.emplace_back(a, b);
  std::sort(c.space.links.begin(), c.space.links.end());
  c.sets.resize(nerve.index_count());
  for (int p = 0; p < c.space.points; ++p)
    for (int i : faces[p]) c.sets[i].push_back(p);
  return c;
}

/// Four points: two closed points 0, 1 and two open points 2, 3 with links
/// 0<2, 0<3, 1<2, 1<3. Weakly homotopy equivalent to a circle.
inline FiniteSpace pseudo_circle() { return FiniteSpace{4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}}; }

}  // namespace gerbecoh
