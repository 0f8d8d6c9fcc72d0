#pragma once

// Torsors and bitorsors over finite spaces.
//
// A space over a finite poset X is a family of finite fibers F_x with a
// bijection F_x -> F_y for every link x < y, compatible with composition.
// Group bundles act on the left and on the right, fiberwise, compatibly with
// the link maps. A section over an open set U picks one element per point of
// U, compatibly with the link maps inside U. When X has no links every torsor
// is trivial; links are what allow a Möbius-type torsor on a circle.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gerbecoh/cochain.hpp"
#include "gerbecoh/enumerate.hpp"
#include "gerbecoh/group.hpp"
#include "gerbecoh/nerve.hpp"

namespace gerbecoh {

/// One group per point, and a group isomorphism fiber[x] -> fiber[y] per link.
struct GroupBundle {
  FiniteSpace base;
  std::vector<GroupPtr> fiber;
  std::vector<std::vector<int>> link_maps;

  static GroupBundle constant(const FiniteSpace& base, const GroupPtr& g) {
    GroupBundle b{base, std::vector<GroupPtr>(base.points, g), {}};
    std::vector<int> id(g->order());
    for (int i = 0; i < g->order(); ++i) id[i] = i;
    b.link_maps.assign(base.links.size(), id);
    return b;
  }
  static GroupBundle trivial(const FiniteSpace& base) { return constant(base, share(trivial_group())); }

  const FiniteGroup& at(int x) const { return *fiber[x]; }

  bool same_as(const GroupBundle& o) const {
    if (!(base == o.base) || fiber.size() != o.fiber.size() || link_maps != o.link_maps) return false;
    for (std::size_t x = 0; x < fiber.size(); ++x)
      if (!fiber[x]->same_table(*o.fiber[x])) return false;
    return true;
  }
  /// Constant with identity link maps; the group is fiber[0].
  bool is_constant() const {
    for (const auto& f : fiber)
      if (!f->same_table(*fiber[0])) return false;
    for (const auto& m : link_maps)
      for (int i = 0; i < static_cast<int>(m.size()); ++i)
        if (m[i] != i) return false;
    return true;
  }
};

inline bool verify_group_bundle(const GroupBundle& b, std::string* why = nullptr) {
  validate_space(b.base);
  detail::require_structure(static_cast<int>(b.fiber.size()) == b.base.points, "one group per point needed");
  detail::require_structure(b.link_maps.size() == b.base.links.size(), "one map per link needed");
  for (int x = 0; x < b.base.points; ++x)
    if (!verify_group(*b.fiber[x], why)) return false;
  for (std::size_t l = 0; l < b.base.links.size(); ++l) {
    auto [x, y] = b.base.links[l];
    GroupHom f{b.fiber[x], b.fiber[y], b.link_maps[l]};
    if (b.fiber[x]->order() != b.fiber[y]->order() || !f.is_homomorphism() ||
        static_cast<int>(f.image().size()) != b.fiber[y]->order()) {
      if (why) *why = "link map " + std::to_string(l) + " is not a group isomorphism";
      return false;
    }
  }
  return true;
}

/// Fibers with commuting left and right actions. A left torsor has a trivial
/// right bundle; a bitorsor is free and transitive on both sides.
struct Space {
  GroupBundle left;
  GroupBundle right;
  std::vector<int> size;                  // fiber cardinality per point
  std::vector<std::vector<int>> lact;     // lact[x][g * size + p] = g . p
  std::vector<std::vector<int>> ract;     // ract[x][p * |H_x| + h] = p . h
  std::vector<std::vector<int>> links;    // per link (x, y): F_x -> F_y

  const FiniteSpace& base() const { return left.base; }
  int lmul(int x, int g, int p) const { return lact[x][static_cast<std::size_t>(g) * size[x] + p]; }
  int rmul(int x, int p, int h) const {
    return ract[x][static_cast<std::size_t>(p) * right.at(x).order() + h];
  }
  int move(int link, int p) const { return links[link][p]; }
};

using Torsor = Space;
using Bitorsor = Space;

/// A section over an open set: one element per point, -1 off the set.
using Section = std::vector<int>;

inline void check_space_shape(const Space& s) {
  validate_space(s.left.base);
  detail::require_structure(s.left.base == s.right.base, "left and right bundles live over different bases");
  const int n = s.base().points;
  detail::require_structure(static_cast<int>(s.left.fiber.size()) == n &&
                                static_cast<int>(s.right.fiber.size()) == n,
                            "bundles need one group per point");
  detail::require_structure(static_cast<int>(s.size.size()) == n && static_cast<int>(s.lact.size()) == n &&
                                static_cast<int>(s.ract.size()) == n,
                            "space needs fiber data for every point");
  detail::require_structure(s.links.size() == s.base().links.size(), "space needs one map per link");
  for (int x = 0; x < n; ++x) {
    detail::require_structure(s.size[x] >= 0, "negative fiber size");
    detail::require_structure(
        static_cast<long>(s.lact[x].size()) == static_cast<long>(s.left.at(x).order()) * s.size[x],
        "left action table at point " + std::to_string(x) + " has the wrong size");
    detail::require_structure(
        static_cast<long>(s.ract[x].size()) == static_cast<long>(s.right.at(x).order()) * s.size[x],
        "right action table at point " + std::to_string(x) + " has the wrong size");
    for (int v : s.lact[x]) detail::require_structure(v >= 0 && v < s.size[x], "left action entry out of range");
    for (int v : s.ract[x]) detail::require_structure(v >= 0 && v < s.size[x], "right action entry out of range");
  }
  for (std::size_t l = 0; l < s.links.size(); ++l) {
    auto [x, y] = s.base().links[l];
    detail::require_structure(static_cast<int>(s.links[l].size()) == s.size[x], "link map has the wrong length");
    for (int v : s.links[l]) detail::require_structure(v >= 0 && v < s.size[y], "link map entry out of range");
  }
}

/// Both actions are actions, they commute, link maps are bijective, equivariant
/// on both sides, and compatible with composition of links.
inline bool is_biequivariant_space(const Space& s, std::string* why = nullptr) {
  check_space_shape(s);
  auto fail = [&](std::string m) {
    if (why) *why = std::move(m);
    return false;
  };
  std::string w;
  if (!verify_group_bundle(s.left, &w)) return fail("left bundle: " + w);
  if (!verify_group_bundle(s.right, &w)) return fail("right bundle: " + w);
  const int n = s.base().points;
  for (int x = 0; x < n; ++x) {
    const auto& G = s.left.at(x);
    const auto& H = s.right.at(x);
    const std::string at = " at point " + std::to_string(x);
    for (int p = 0; p < s.size[x]; ++p) {
      if (s.lmul(x, 0, p) != p) return fail("left identity does not act trivially" + at);
      if (s.rmul(x, p, 0) != p) return fail("right identity does not act trivially" + at);
      for (int a = 0; a < G.order(); ++a)
        for (int b = 0; b < G.order(); ++b)
          if (s.lmul(x, G.mul(a, b), p) != s.lmul(x, a, s.lmul(x, b, p))) return fail("left action law fails" + at);
      for (int a = 0; a < H.order(); ++a)
        for (int b = 0; b < H.order(); ++b)
          if (s.rmul(x, p, H.mul(a, b)) != s.rmul(x, s.rmul(x, p, a), b)) return fail("right action law fails" + at);
      for (int a = 0; a < G.order(); ++a)
        for (int b = 0; b < H.order(); ++b)
          if (s.rmul(x, s.lmul(x, a, p), b) != s.lmul(x, a, s.rmul(x, p, b))) return fail("actions do not commute" + at);
    }
  }
  for (std::size_t l = 0; l < s.links.size(); ++l) {
    auto [x, y] = s.base().links[l];
    if (s.size[x] != s.size[y]) return fail("link map " + std::to_string(l) + " is not a bijection");
    std::vector<char> hit(s.size[y], 0);
    for (int v : s.links[l]) hit[v] = 1;
    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return fail("link map " + std::to_string(l) + " is not a bijection");
    for (int p = 0; p < s.size[x]; ++p) {
      for (int a = 0; a < s.left.at(x).order(); ++a)
        if (s.move(l, s.lmul(x, a, p)) != s.lmul(y, s.left.link_maps[l][a], s.move(l, p)))
          return fail("link map " + std::to_string(l) + " is not left equivariant");
      for (int b = 0; b < s.right.at(x).order(); ++b)
        if (s.move(l, s.rmul(x, p, b)) != s.rmul(y, s.move(l, p), s.right.link_maps[l][b]))
          return fail("link map " + std::to_string(l) + " is not right equivariant");
    }
  }
  const auto& L = s.base().links;
  for (std::size_t l1 = 0; l1 < L.size(); ++l1)
    for (std::size_t l2 = 0; l2 < L.size(); ++l2)
      if (L[l1].second == L[l2].first) {
        const int l3 = s.base().link_index(L[l1].first, L[l2].second);
        for (int p = 0; p < s.size[L[l1].first]; ++p)
          if (s.move(l2, s.move(l1, p)) != s.move(l3, p)) return fail("link maps do not compose");
      }
  return true;
}

namespace detail {

inline bool acts_simply_transitively(int group_order, int fiber_size, const std::function<int(int, int)>& act) {
  if (fiber_size == 0 || group_order != fiber_size) return false;
  for (int p = 0; p < fiber_size; ++p) {
    std::vector<char> hit(fiber_size, 0);
    for (int g = 0; g < group_order; ++g) {
      const int q = act(g, p);
      if (hit[q]) return false;
      hit[q] = 1;
    }
  }
  return true;
}

}  // namespace detail

/// Free and transitive left action at every point, on a nonempty fiber.
inline bool is_torsor(const Space& t, std::string* why = nullptr) {
  if (!is_biequivariant_space(t, why)) return false;
  for (int x = 0; x < t.base().points; ++x)
    if (!detail::acts_simply_transitively(t.left.at(x).order(), t.size[x],
                                          [&](int g, int p) { return t.lmul(x, g, p); })) {
      if (why) *why = "left action is not free and transitive at point " + std::to_string(x);
      return false;
    }
  return true;
}

inline bool is_bitorsor(const Space& t, std::string* why = nullptr) {
  if (!is_torsor(t, why)) return false;
  for (int x = 0; x < t.base().points; ++x)
    if (!detail::acts_simply_transitively(t.right.at(x).order(), t.size[x],
                                          [&](int h, int p) { return t.rmul(x, p, h); })) {
      if (why) *why = "right action is not free and transitive at point " + std::to_string(x);
      return false;
    }
  return true;
}

/// The bundle acting on itself by left and right translation.
inline Bitorsor trivial_bitorsor(const GroupBundle& g) {
  Space s;
  s.left = g;
  s.right = g;
  const int n = g.base.points;
  s.size.resize(n);
  s.lact.resize(n);
  s.ract.resize(n);
  for (int x = 0; x < n; ++x) {
    const auto& G = g.at(x);
    const int k = G.order();
    s.size[x] = k;
    s.lact[x].resize(static_cast<std::size_t>(k) * k);
    s.ract[x].resize(static_cast<std::size_t>(k) * k);
    for (int a = 0; a < k; ++a)
      for (int p = 0; p < k; ++p) {
        s.lact[x][static_cast<std::size_t>(a) * k + p] = G.mul(a, p);
        s.ract[x][static_cast<std::size_t>(p) * k + a] = G.mul(p, a);
      }
  }
  s.links = g.link_maps;
  return s;
}

/// Forgets the right action.
inline Torsor left_torsor(const Space& s) {
  Space t = s;
  t.right = GroupBundle::trivial(s.base());
  for (int x = 0; x < s.base().points; ++x) {
    t.ract[x].resize(s.size[x]);
    for (int p = 0; p < s.size[x]; ++p) t.ract[x][p] = p;
  }
  return t;
}

inline Torsor trivial_torsor(const GroupBundle& g) { return left_torsor(trivial_bitorsor(g)); }

/// Same fibers; h . p = p . h^-1 and p . g = g^-1 . p.
inline Bitorsor opposite(const Space& s) {
  check_space_shape(s);
  Space o;
  o.left = s.right;
  o.right = s.left;
  o.size = s.size;
  o.links = s.links;
  const int n = s.base().points;
  o.lact.resize(n);
  o.ract.resize(n);
  for (int x = 0; x < n; ++x) {
    const auto& G = s.left.at(x);
    const auto& H = s.right.at(x);
    const int k = s.size[x];
    o.lact[x].resize(static_cast<std::size_t>(H.order()) * k);
    o.ract[x].resize(static_cast<std::size_t>(G.order()) * k);
    for (int p = 0; p < k; ++p) {
      for (int h = 0; h < H.order(); ++h) o.lact[x][static_cast<std::size_t>(h) * k + p] = s.rmul(x, p, H.inv(h));
      for (int g = 0; g < G.order(); ++g)
        o.ract[x][static_cast<std::size_t>(p) * G.order() + g] = s.lmul(x, G.inv(g), p);
    }
  }
  return o;
}

/// a ∧ b: pairs (p, q) modulo (p h, q) ~ (p, h q). Each class is represented by
/// its least member in the order p |b| + q, and classes are numbered in order
/// of their representatives.
inline Space contracted_product(const Space& a, const Space& b) {
  check_space_shape(a);
  check_space_shape(b);
  if (!a.right.same_as(b.left))
    throw PreconditionError("contracted product: the right group of the first factor differs from the left group of the second");
  Space s;
  s.left = a.left;
  s.right = b.right;
  const int n = a.base().points;
  s.size.resize(n);
  s.lact.resize(n);
  s.ract.resize(n);
  std::vector<std::vector<int>> cls(n);  // cls[x][p * |b_x| + q] = class number
  for (int x = 0; x < n; ++x) {
    const int na = a.size[x], nb = b.size[x];
    const auto& H = a.right.at(x);
    cls[x].assign(static_cast<std::size_t>(na) * nb, -1);
    int next = 0;
    for (int p = 0; p < na; ++p)
      for (int q = 0; q < nb; ++q) {
        if (cls[x][static_cast<std::size_t>(p) * nb + q] >= 0) continue;
        for (int h = 0; h < H.order(); ++h)
          cls[x][static_cast<std::size_t>(a.rmul(x, p, h)) * nb + b.lmul(x, H.inv(h), q)] = next;
        ++next;
      }
    s.size[x] = next;
    std::vector<std::pair<int, int>> rep(next, {-1, -1});
    for (int p = na - 1; p >= 0; --p)
      for (int q = nb - 1; q >= 0; --q) rep[cls[x][static_cast<std::size_t>(p) * nb + q]] = {p, q};
    const auto& G = s.left.at(x);
    const auto& K = s.right.at(x);
    s.lact[x].resize(static_cast<std::size_t>(G.order()) * next);
    s.ract[x].resize(static_cast<std::size_t>(K.order()) * next);
    for (int c = 0; c < next; ++c) {
      auto [p, q] = rep[c];
      for (int g = 0; g < G.order(); ++g)
        s.lact[x][static_cast<std::size_t>(g) * next + c] = cls[x][static_cast<std::size_t>(a.lmul(x, g, p)) * nb + q];
      for (int k = 0; k < K.order(); ++k)
        s.ract[x][static_cast<std::size_t>(c) * K.order() + k] = cls[x][static_cast<std::size_t>(p) * nb + b.rmul(x, q, k)];
    }
  }
  s.links.resize(a.base().links.size());
  for (std::size_t l = 0; l < a.base().links.size(); ++l) {
    auto [x, y] = a.base().links[l];
    s.links[l].assign(s.size[x], -1);
    const int nbx = b.size[x], nby = b.size[y];
    for (int p = 0; p < a.size[x]; ++p)
      for (int q = 0; q < nbx; ++q)
        s.links[l][cls[x][static_cast<std::size_t>(p) * nbx + q]] =
            cls[y][static_cast<std::size_t>(a.move(static_cast<int>(l), p)) * nby + b.move(static_cast<int>(l), q)];
  }
  return s;
}

/// The class number of (p, q) in contracted_product(a, b) at point x.
inline int contracted_class(const Space& a, const Space& b, int x, int p, int q) {
  const auto& H = a.right.at(x);
  const int nb = b.size[x];
  auto least = [&](int p0, int q0) {
    int best = a.size[x] * nb;
    for (int h = 0; h < H.order(); ++h) best = std::min(best, a.rmul(x, p0, h) * nb + b.lmul(x, H.inv(h), q0));
    return best;
  };
  const int rep = least(p, q);
  int index = 0;
  for (int c = 0; c < rep; ++c)
    if (least(c / nb, c % nb) == c) ++index;
  return index;
}

/// Twisted form of e by a left torsor p: e ∧ p.
inline Space twist(const Space& e, const Torsor& p) { return contracted_product(e, p); }

/// The Morita functor of q applied to a left torsor m: q ∧ m.
inline Torsor morita_apply(const Bitorsor& q, const Torsor& m) { return contracted_product(q, m); }

// ---------------------------------------------------------------------------
// Gauge group

/// Per point, the left-equivariant automorphisms of the fiber, listed
/// lexicographically (identity first) and multiplied by composition. Link
/// maps conjugate by the torsor's link maps.
inline GroupBundle gauge_group(const Torsor& t) {
  std::string why;
  if (!is_torsor(t, &why)) throw PreconditionError("gauge group of a non-torsor: " + why);
  const int n = t.base().points;
  GroupBundle b;
  b.base = t.base();
  b.fiber.resize(n);
  std::vector<std::vector<std::vector<int>>> autos(n);
  std::vector<std::map<std::vector<int>, int>> index(n);
  for (int x = 0; x < n; ++x) {
    const int k = t.size[x];
    // u is determined by u(0) = q: u(g . 0) = g . q
    std::vector<int> g_of(k);
    for (int g = 0; g < k; ++g) g_of[t.lmul(x, g, 0)] = g;
    for (int q = 0; q < k; ++q) {
      std::vector<int> u(k);
      for (int p = 0; p < k; ++p) u[p] = t.lmul(x, g_of[p], q);
      autos[x].push_back(u);
    }
    std::sort(autos[x].begin(), autos[x].end());
    for (int i = 0; i < k; ++i) index[x][autos[x][i]] = i;
    b.fiber[x] = share(FiniteGroup::from_function("Ad", k, [&](int i, int j) {
      std::vector<int> c(k);
      for (int p = 0; p < k; ++p) c[p] = autos[x][i][autos[x][j][p]];
      return index[x].at(c);
    }));
  }
  b.link_maps.resize(t.base().links.size());
  for (std::size_t l = 0; l < t.base().links.size(); ++l) {
    auto [x, y] = t.base().links[l];
    const int k = t.size[x];
    std::vector<int> inv(k);
    for (int p = 0; p < k; ++p) inv[t.links[l][p]] = p;
    for (int i = 0; i < k; ++i) {
      std::vector<int> c(k);
      for (int p = 0; p < k; ++p) c[p] = t.links[l][autos[x][i][inv[p]]];
      b.link_maps[l].push_back(index[y].at(c));
    }
  }
  return b;
}

/// The left torsor t with its gauge group acting on the right by p . u = u^-1(p).
inline Bitorsor with_gauge_action(const Torsor& t) {
  GroupBundle ad = gauge_group(t);
  Space s = t;
  s.right = ad;
  const int n = t.base().points;
  for (int x = 0; x < n; ++x) {
    const int k = t.size[x];
    std::vector<int> g_of(k);
    for (int g = 0; g < k; ++g) g_of[t.lmul(x, g, 0)] = g;
    std::vector<std::vector<int>> autos;
    for (int q = 0; q < k; ++q) {
      std::vector<int> u(k);
      for (int p = 0; p < k; ++p) u[p] = t.lmul(x, g_of[p], q);
      autos.push_back(u);
    }
    std::sort(autos.begin(), autos.end());
    s.ract[x].assign(static_cast<std::size_t>(k) * k, 0);
    for (int i = 0; i < k; ++i)
      for (int p = 0; p < k; ++p) s.ract[x][static_cast<std::size_t>(autos[i][p]) * k + i] = p;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Isomorphisms

/// An isomorphism a -> b of spaces with the same bundles: per point a bijection,
/// equivariant on both sides and commuting with link maps. Both must be left
/// torsors; the search fixes the image of one element per connected component.
inline std::optional<std::vector<std::vector<int>>> find_space_isomorphism(const Space& a, const Space& b) {
  std::string why;
  if (!is_torsor(a, &why)) throw PreconditionError("isomorphism search: first argument: " + why);
  if (!is_torsor(b, &why)) throw PreconditionError("isomorphism search: second argument: " + why);
  if (!a.left.same_as(b.left) || !a.right.same_as(b.right)) return std::nullopt;
  const int n = a.base().points;
  const auto comp = a.base().components();
  const int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<std::vector<int>> f(n);
  for (int c = 0; c < ncomp; ++c) {
    const int x0 = static_cast<int>(std::find(comp.begin(), comp.end(), c) - comp.begin());
    bool found = false;
    for (int q0 = 0; q0 < b.size[x0] && !found; ++q0) {
      std::vector<std::vector<int>> trial(n);
      const auto& G = a.left.at(x0);
      trial[x0].assign(a.size[x0], -1);
      for (int g = 0; g < G.order(); ++g) trial[x0][a.lmul(x0, g, 0)] = b.lmul(x0, g, q0);
      std::vector<int> queue{x0};
      bool ok = true;
      for (std::size_t head = 0; head < queue.size() && ok; ++head) {
        const int x = queue[head];
        for (std::size_t l = 0; l < a.base().links.size() && ok; ++l) {
          auto [u, v] = a.base().links[l];
          if (u == x && trial[v].empty()) {
            trial[v].assign(a.size[v], -1);
            for (int p = 0; p < a.size[u]; ++p) trial[v][a.move(l, p)] = b.move(l, trial[u][p]);
            queue.push_back(v);
          } else if (v == x && trial[u].empty()) {
            std::vector<int> binv(b.size[u]);
            for (int p = 0; p < b.size[u]; ++p) binv[b.move(l, p)] = p;
            trial[u].assign(a.size[u], -1);
            for (int p = 0; p < a.size[u]; ++p) trial[u][p] = binv[trial[v][a.move(l, p)]];
            queue.push_back(u);
          }
        }
      }
      // check equivariance and link compatibility on this component
      for (int x = 0; x < n && ok; ++x) {
        if (comp[x] != c) continue;
        for (int p = 0; p < a.size[x] && ok; ++p) {
          for (int g = 0; g < a.left.at(x).order() && ok; ++g)
            ok = trial[x][a.lmul(x, g, p)] == b.lmul(x, g, trial[x][p]);
          for (int h = 0; h < a.right.at(x).order() && ok; ++h)
            ok = trial[x][a.rmul(x, p, h)] == b.rmul(x, trial[x][p], h);
        }
      }
      for (std::size_t l = 0; l < a.base().links.size() && ok; ++l) {
        auto [u, v] = a.base().links[l];
        if (comp[u] != c) continue;
        for (int p = 0; p < a.size[u] && ok; ++p) ok = trial[v][a.move(l, p)] == b.move(l, trial[u][p]);
      }
      if (ok) {
        for (int x = 0; x < n; ++x)
          if (comp[x] == c) f[x] = trial[x];
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return f;
}

inline bool isomorphic_spaces(const Space& a, const Space& b) { return find_space_isomorphism(a, b).has_value(); }

/// Global sections of a left torsor (each a choice per point compatible with links).
inline std::vector<Section> global_sections(const Space& t) {
  std::vector<Section> out;
  std::vector<int> sizes(t.size.begin(), t.size.end());
  for_each_tuple(sizes, [&](const std::vector<int>& s) {
    for (std::size_t l = 0; l < t.base().links.size(); ++l) {
      auto [x, y] = t.base().links[l];
      if (t.move(static_cast<int>(l), s[x]) != s[y]) return;
    }
    out.push_back(s);
  });
  return out;
}

/// The left torsor of isomorphisms e -> e2 that commute with the left actions,
/// with e's right group acting by (g . f)(y) = f(y . g).
inline Torsor isom_torsor(const Space& e, const Space& e2) {
  check_space_shape(e);
  check_space_shape(e2);
  if (!e.left.same_as(e2.left)) throw PreconditionError("isom torsor: spaces carry different left groups");
  const int n = e.base().points;
  Space t;
  t.left = e.right;
  t.right = GroupBundle::trivial(e.base());
  t.size.resize(n);
  t.lact.resize(n);
  t.ract.resize(n);
  std::vector<std::vector<std::vector<int>>> maps(n);
  std::vector<std::map<std::vector<int>, int>> index(n);
  for (int x = 0; x < n; ++x) {
    const int k = e.size[x];
    const auto& A = e.left.at(x);
    if (e2.size[x] == k) {
      std::vector<int> f(k, -1);
      std::vector<char> used(k, 0);
      std::function<void(int)> rec = [&](int p) {
        while (p < k && f[p] >= 0) ++p;
        if (p == k) {
          maps[x].push_back(f);
          return;
        }
        for (int q = 0; q < k; ++q) {
          if (used[q]) continue;
          // f(a . p) = a . q for all a
          std::vector<int> set_now;
          bool ok = true;
          for (int a = 0; a < A.order() && ok; ++a) {
            const int pa = e.lmul(x, a, p), qa = e2.lmul(x, a, q);
            if (f[pa] < 0) {
              if (used[qa]) {
                ok = false;
                break;
              }
              f[pa] = qa;
              used[qa] = 1;
              set_now.push_back(pa);
            } else if (f[pa] != qa) {
              ok = false;
            }
          }
          if (ok) rec(p + 1);
          for (int pa : set_now) {
            used[f[pa]] = 0;
            f[pa] = -1;
          }
        }
      };
      rec(0);
    }
    std::sort(maps[x].begin(), maps[x].end());
    const int m = static_cast<int>(maps[x].size());
    for (int i = 0; i < m; ++i) index[x][maps[x][i]] = i;
    t.size[x] = m;
    const auto& G = e.right.at(x);
    t.lact[x].resize(static_cast<std::size_t>(G.order()) * m);
    t.ract[x].resize(m);
    for (int i = 0; i < m; ++i) {
      t.ract[x][i] = i;
      for (int g = 0; g < G.order(); ++g) {
        std::vector<int> c(k);
        for (int y = 0; y < k; ++y) c[y] = maps[x][i][e.rmul(x, y, g)];
        auto it = index[x].find(c);
        if (it == index[x].end()) throw PreconditionError("isom torsor: right group does not act by left automorphisms");
        t.lact[x][static_cast<std::size_t>(g) * m + i] = it->second;
      }
    }
  }
  t.links.resize(e.base().links.size());
  for (std::size_t l = 0; l < e.base().links.size(); ++l) {
    auto [x, y] = e.base().links[l];
    const int k = e.size[x];
    std::vector<int> inv(k);
    for (int p = 0; p < k; ++p) inv[e.links[l][p]] = p;
    for (const auto& f : maps[x]) {
      std::vector<int> c(k);
      for (int p = 0; p < k; ++p) c[p] = e2.links[l][f[inv[p]]];
      auto it = index[y].find(c);
      detail::require_structure(it != index[y].end(), "isom torsor: link maps do not preserve isomorphisms");
      t.links[l].push_back(it->second);
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Sections and cocycles

inline bool is_section(const Space& t, const std::vector<int>& open_set, const Section& s) {
  if (static_cast<int>(s.size()) != t.base().points) return false;
  std::vector<char> in(t.base().points, 0);
  for (int x : open_set) in[x] = 1;
  for (int x = 0; x < t.base().points; ++x) {
    if (in[x] != (s[x] >= 0)) return false;
    if (in[x] && s[x] >= t.size[x]) return false;
  }
  for (std::size_t l = 0; l < t.base().links.size(); ++l) {
    auto [x, y] = t.base().links[l];
    if (in[x] && t.move(static_cast<int>(l), s[x]) != s[y]) return false;
  }
  return true;
}

namespace detail {

inline void check_sections(const Space& t, const Cover& cover, const std::vector<Section>& sections) {
  detail::require_structure(t.base() == cover.space, "cover lives on a different space");
  detail::require_structure(sections.size() == cover.sets.size(), "one section per cover element needed");
  for (std::size_t i = 0; i < sections.size(); ++i)
    if (!is_section(t, cover.sets[i], sections[i]))
      throw PreconditionError("section " + std::to_string(i) + " is not a section over its cover element");
}

/// The unique g with g . p = q at x.
inline int left_quotient(const Space& t, int x, int q, int p) {
  for (int g = 0; g < t.left.at(x).order(); ++g)
    if (t.lmul(x, g, p) == q) return g;
  throw PreconditionError("left action is not transitive at point " + std::to_string(x));
}

}  // namespace detail

/// s_i = g_ij s_j on U_ij. Requires a constant left group; g_ij must be the
/// same at every point of U_ij.
inline Cochain1 cocycle_from_sections(const Torsor& t, const Cover& cover, const std::vector<Section>& sections) {
  std::string why;
  if (!is_torsor(t, &why)) throw PreconditionError("not a torsor: " + why);
  if (!t.left.is_constant()) throw PreconditionError("cocycle extraction needs a constant group");
  detail::check_sections(t, cover, sections);
  auto nerve = share(cover.nerve());
  Cochain1 c = Cochain1::identity(nerve, t.left.fiber[0]);
  const auto& pairs = nerve->faces_of_size(2);
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    const int i = pairs[s][0], j = pairs[s][1];
    int value = -1;
    for (int x : cover.intersection({i, j})) {
      const int g = detail::left_quotient(t, x, sections[i][x], sections[j][x]);
      if (value >= 0 && g != value)
        throw PreconditionError("sections do not trivialize over U_" + std::to_string(i) + std::to_string(j) +
                                ": transition is not constant there");
      value = g;
    }
    c.values[s] = value;
  }
  return c;
}

struct GluedTorsor {
  Torsor torsor;
  Cover cover;
  std::vector<Section> sections;
};

/// The torsor on the face poset of the nerve glued from g_ij. At a face with
/// least vertex m the fiber is G in coordinates relative to s_m; a link from a
/// face with least vertex m to one with least vertex m' multiplies on the
/// right by g_{m m'}. The canonical section over U_i is g_{i m} at each face.
inline GluedTorsor glue_torsor(const Cochain1& c) {
  if (!verify_cocycle1(c)) throw PreconditionError("glue_torsor: input is not a 1-cocycle");
  const Nerve& nerve = *c.nerve;
  const auto& G = *c.group;
  GluedTorsor out;
  out.cover = canonical_cover(nerve);
  const FiniteSpace& X = out.cover.space;
  GroupBundle bundle = GroupBundle::constant(X, c.group);
  Space t = trivial_torsor(bundle);
  const auto& faces = nerve.faces();
  for (std::size_t l = 0; l < X.links.size(); ++l) {
    auto [a, b] = X.links[l];
    const int ma = faces[a].front(), mb = faces[b].front();
    const int g = c.at(ma, mb);
    for (int p = 0; p < G.order(); ++p) t.links[l][p] = G.mul(p, g);
  }
  out.torsor = t;
  out.sections.resize(nerve.index_count());
  for (int i = 0; i < nerve.index_count(); ++i) {
    out.sections[i].assign(X.points, -1);
    for (int p : out.cover.sets[i]) out.sections[i][p] = c.at(i, faces[p].front());
  }
  return out;
}

/// Every section over an open star U_i of the face poset is determined by its value at {i}.
inline Section star_section(const Torsor& t, const Cover& cover, int i, int value_at_vertex) {
  Section s(t.base().points, -1);
  int root = -1;
  for (int x : cover.sets[i]) {
    bool below_all = true;
    for (int y : cover.sets[i])
      if (y != x && t.base().link_index(x, y) < 0) below_all = false;
    if (below_all) root = x;
  }
  if (root < 0) throw PreconditionError("cover element has no least point");
  s[root] = value_at_vertex;
  for (int y : cover.sets[i])
    if (y != root) s[y] = t.move(t.base().link_index(root, y), value_at_vertex);
  return s;
}

// ---------------------------------------------------------------------------
// Bitorsor cocycle pairs

struct BitorsorPair {
  Cochain1 g;                       // s_i = g_ij s_j
  std::vector<std::vector<int>> u;  // s_i h = u_i(h) s_i, as maps H -> G
};

inline BitorsorPair bitorsor_cocycle_pair(const Bitorsor& p, const Cover& cover, const std::vector<Section>& sections) {
  std::string why;
  if (!is_bitorsor(p, &why)) throw PreconditionError("not a bitorsor: " + why);
  if (!p.right.is_constant()) throw PreconditionError("cocycle extraction needs a constant right group");
  BitorsorPair out{cocycle_from_sections(p, cover, sections), {}};
  const int nh = p.right.fiber[0]->order();
  for (std::size_t i = 0; i < cover.sets.size(); ++i) {
    std::vector<int> u(nh, -1);
    for (int x : cover.sets[i])
      for (int h = 0; h < nh; ++h) {
        const int g = detail::left_quotient(p, x, p.rmul(x, sections[i][x], h), sections[i][x]);
        if (u[h] >= 0 && u[h] != g)
          throw PreconditionError("right action is not constant in the trivialization over U_" + std::to_string(i));
        u[h] = g;
      }
    out.u.push_back(u);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bitorsor cocycles (P_ij, psi_ijk)

/// Bitorsors P_ij over a point for every pair face i < j, and maps
/// psi_ijk: P_ij ∧ P_jk -> P_ik for every triple face, given on the canonical
/// fiber of contracted_product(P_ij, P_jk).
struct BitorsorCocycle {
  NervePtr nerve;
  std::vector<Bitorsor> p;                 // indexed like faces_of_size(2)
  std::vector<std::vector<int>> psi;       // indexed like faces_of_size(3)

  const Bitorsor& at(int i, int j) const { return p[nerve->position({i, j})]; }
  const std::vector<int>& psi_at(int i, int j, int k) const { return psi[nerve->position({i, j, k})]; }
};

inline void check_bitorsor_cocycle_shape(const BitorsorCocycle& bc) {
  detail::require_structure(bc.nerve != nullptr, "bitorsor cocycle has no nerve");
  detail::require_structure(bc.p.size() == bc.nerve->faces_of_size(2).size(), "one bitorsor per pair face needed");
  detail::require_structure(bc.psi.size() == bc.nerve->faces_of_size(3).size(),
                            "missing isomorphism on a triple face");
  for (const auto& b : bc.p) {
    check_space_shape(b);
    detail::require_structure(b.base().points == 1, "cocycle bitorsors live over a point");
  }
  const auto& tri = bc.nerve->faces_of_size(3);
  for (std::size_t s = 0; s < tri.size(); ++s) {
    const int i = tri[s][0], j = tri[s][1], k = tri[s][2];
    const int dom = bc.at(i, j).size[0] * bc.at(j, k).size[0] / std::max(1, bc.at(i, j).right.at(0).order());
    detail::require_structure(static_cast<int>(bc.psi[s].size()) == dom, "psi on a triple face has the wrong length");
    for (int v : bc.psi[s]) detail::require_structure(v >= 0 && v < bc.at(i, k).size[0], "psi entry out of range");
  }
}

/// psi_ikl (psi_ijk ∧ id) = psi_ijl (id ∧ psi_jkl) on all quadruple faces,
/// compared elementwise on triples (a, b, c).
inline bool verify_bitorsor_cocycle(const BitorsorCocycle& bc) {
  check_bitorsor_cocycle_shape(bc);
  for (const auto& f : bc.nerve->faces_of_size(4)) {
    const int i = f[0], j = f[1], k = f[2], l = f[3];
    const auto &pij = bc.at(i, j), &pjk = bc.at(j, k), &pkl = bc.at(k, l), &pik = bc.at(i, k), &pjl = bc.at(j, l);
    const auto &s_ijk = bc.psi_at(i, j, k), &s_ikl = bc.psi_at(i, k, l), &s_ijl = bc.psi_at(i, j, l),
               &s_jkl = bc.psi_at(j, k, l);
    for (int a = 0; a < pij.size[0]; ++a)
      for (int b = 0; b < pjk.size[0]; ++b)
        for (int c = 0; c < pkl.size[0]; ++c) {
          const int ab = s_ijk[contracted_class(pij, pjk, 0, a, b)];
          const int lhs = s_ikl[contracted_class(pik, pkl, 0, ab, c)];
          const int bc2 = s_jkl[contracted_class(pjk, pkl, 0, b, c)];
          const int rhs = s_ijl[contracted_class(pij, pjl, 0, a, bc2)];
          if (lhs != rhs) return false;
        }
  }
  return true;
}

}  // namespace gerbecoh
