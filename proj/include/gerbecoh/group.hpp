#pragma once

// Finite groups as Cayley tables. Elements are dense indices 0..order-1 and
// the identity is always 0. Tables are row-major: mul(a, b) = table[a*n + b].

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gerbecoh/error.hpp"

namespace gerbecoh {

class FiniteGroup {
 public:
  /// The trivial group.
  FiniteGroup() = default;

  /// Builds a group from square multiplication rows. Only the dimensions are
  /// checked here; the group axioms are checked by verify_group().
  FiniteGroup(std::string name, const std::vector<std::vector<int>>& rows)
      : name_(std::move(name)) {
    detail::require_structure(!rows.empty(), "multiplication table is empty");
    order_ = static_cast<int>(rows.size());
    mul_.assign(static_cast<std::size_t>(order_) * order_, 0);
    for (int a = 0; a < order_; ++a) {
      const auto& row = rows[a];
      if (static_cast<int>(row.size()) != order_) {
        std::ostringstream os;
        os << "multiplication table row " << a << " has " << row.size()
           << " entries, expected " << order_;
        throw StructuralError(os.str());
      }
      for (int b = 0; b < order_; ++b) {
        if (row[b] < 0 || row[b] >= order_) {
          std::ostringstream os;
          os << "multiplication table entry (" << a << ", " << b << ") = " << row[b]
             << " is out of range [0, " << order_ << ")";
          throw StructuralError(os.str());
        }
        mul_[static_cast<std::size_t>(a) * order_ + b] = row[b];
      }
    }
    compute_inverses();
  }

  template <class Mul>
  static FiniteGroup from_function(std::string name, int order, Mul&& mul) {
    detail::require_structure(order >= 1, "group order must be positive");
    std::vector<std::vector<int>> rows(order, std::vector<int>(order));
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b) rows[a][b] = mul(a, b);
    return FiniteGroup(std::move(name), rows);
  }

  int order() const noexcept { return order_; }
  const std::string& name() const noexcept { return name_; }
  int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * order_ + b]; }
  /// -1 when the table has no right inverse for a (only possible for non-groups).
  int inv(int a) const { return inv_[a]; }
  static constexpr int identity() noexcept { return 0; }

  int mul(std::initializer_list<int> xs) const {
    int r = 0;
    for (int x : xs) r = mul(r, x);
    return r;
  }
  int conj(int x, int y) const { return mul(mul(x, y), inv(x)); }  // x y x^-1

  std::vector<std::vector<int>> rows() const {
    std::vector<std::vector<int>> out(order_, std::vector<int>(order_));
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b) out[a][b] = mul(a, b);
    return out;
  }

  FiniteGroup renamed(std::string name) const {
    FiniteGroup g = *this;
    g.name_ = std::move(name);
    return g;
  }

  bool same_table(const FiniteGroup& o) const { return mul_ == o.mul_; }

 private:
  void compute_inverses() {
    inv_.assign(order_, -1);
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        if (mul(a, b) == 0) {
          inv_[a] = b;
          break;
        }
  }

  std::string name_ = "1";
  int order_ = 1;
  std::vector<int> mul_{0};
  std::vector<int> inv_{0};
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline GroupPtr share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

/// Checks the group axioms. On failure, `why` receives the first violated
/// axiom together with the witnessing elements.
inline bool verify_group(const FiniteGroup& g, std::string* why = nullptr) {
  const int n = g.order();
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  for (int x = 0; x < n; ++x) {
    if (g.mul(0, x) != x || g.mul(x, 0) != x) {
      std::ostringstream os;
      os << "identity axiom fails at element " << x;
      return fail(os.str());
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = g.mul(a, b);
      for (int c = 0; c < n; ++c) {
        if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) {
          std::ostringstream os;
          os << "associativity fails at (" << a << ", " << b << ", " << c << ")";
          return fail(os.str());
        }
      }
    }
  for (int a = 0; a < n; ++a) {
    std::vector<char> row(n, 0), col(n, 0);
    for (int b = 0; b < n; ++b) {
      row[g.mul(a, b)] = 1;
      col[g.mul(b, a)] = 1;
    }
    if (std::find(row.begin(), row.end(), 0) != row.end()) {
      std::ostringstream os;
      os << "row " << a << " is not a permutation";
      return fail(os.str());
    }
    if (std::find(col.begin(), col.end(), 0) != col.end()) {
      std::ostringstream os;
      os << "column " << a << " is not a permutation";
      return fail(os.str());
    }
  }
  for (int x = 0; x < n; ++x)
    if (g.inv(x) < 0 || g.mul(x, g.inv(x)) != 0) {
      std::ostringstream os;
      os << "element " << x << " has no inverse";
      return fail(os.str());
    }
  return true;
}

// ---------------------------------------------------------------------------
// Standard groups

inline FiniteGroup trivial_group() { return FiniteGroup{}; }

inline FiniteGroup cyclic_group(int n) {
  detail::require_structure(n >= 1, "cyclic group order must be positive");
  return FiniteGroup::from_function("Z/" + std::to_string(n), n,
                                    [n](int a, int b) { return (a + b) % n; });
}

/// Permutations of {0..n-1} in lexicographic order; mul(a, b) = a after b.
inline FiniteGroup symmetric_group(int n) {
  detail::require_structure(n >= 1 && n <= 5, "symmetric group degree must be in [1, 5]");
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < static_cast<int>(perms.size()); ++i) index[perms[i]] = i;
  const int m = static_cast<int>(perms.size());
  return FiniteGroup::from_function("S_" + std::to_string(n), m, [&](int a, int b) {
    std::vector<int> c(n);
    for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
    return index.at(c);
  });
}

/// Dihedral group of order 2n; element r^k s^e has index k + n*e.
inline FiniteGroup dihedral_group(int n) {
  detail::require_structure(n >= 1, "dihedral group parameter must be positive");
  return FiniteGroup::from_function("D_" + std::to_string(n), 2 * n, [n](int a, int b) {
    const int k1 = a % n, e1 = a / n, k2 = b % n, e2 = b / n;
    // (r^k1 s^e1)(r^k2 s^e2) = r^(k1 + (-1)^e1 k2) s^(e1+e2)
    const int k = ((k1 + (e1 ? -k2 : k2)) % n + n) % n;
    return k + n * ((e1 + e2) % 2);
  });
}

/// Quaternion group {±1, ±i, ±j, ±k} with 1, -1, i, -i, j, -j, k, -k indexed 0..7.
inline FiniteGroup quaternion_group() {
  // unit u in {1,i,j,k} as 0..3, sign s; index = 2u + s
  static const int unit_mul[4][4][2] = {
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
      {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
      {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
      {{3, 0}, {2, 0}, {1, 1}, {0, 1}},
  };
  return FiniteGroup::from_function("Q_8", 8, [](int a, int b) {
    const auto& e = unit_mul[a / 2][b / 2];
    return 2 * e[0] + ((a % 2 + b % 2 + e[1]) % 2);
  });
}

/// Direct product; the pair (a, b) has index a + |A| * b.
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order();
  return FiniteGroup::from_function(a.name() + "x" + b.name(), na * b.order(),
                                    [&](int x, int y) {
                                      return a.mul(x % na, y % na) +
                                             na * b.mul(x / na, y / na);
                                    });
}

/// Alternating group A_4 as the even permutations of S_4, in lexicographic order.
inline FiniteGroup alternating_group_4() {
  std::vector<int> p{0, 1, 2, 3};
  std::vector<std::vector<int>> perms;
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inversions += p[i] > p[j];
    if (inversions % 2 == 0) perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < static_cast<int>(perms.size()); ++i) index[perms[i]] = i;
  return FiniteGroup::from_function("A_4", 12, [&](int a, int b) {
    std::vector<int> c(4);
    for (int i = 0; i < 4; ++i) c[i] = perms[a][perms[b][i]];
    return index.at(c);
  });
}

/// Parses "1", "Z/n", "S_n", "D_n", "Q_8", "A_4" and products "AxB" of those.
inline FiniteGroup standard_group(const std::string& name) {
  if (auto x = name.find('x'); x != std::string::npos)
    return direct_product(standard_group(name.substr(0, x)), standard_group(name.substr(x + 1)));
  if (name == "1" || name == "trivial") return trivial_group();
  if (name == "Q_8") return quaternion_group();
  if (name == "A_4") return alternating_group_4();
  auto number = [&](std::size_t from) {
    const std::string arg = name.substr(from);
    try {
      std::size_t used = 0;
      const int n = std::stoi(arg, &used);
      if (used == arg.size()) return n;
    } catch (const std::exception&) {
    }
    throw StructuralError("bad group parameter in '" + name + "'");
  };
  if (name.rfind("Z/", 0) == 0) return cyclic_group(number(2));
  if (name.rfind("S_", 0) == 0) return symmetric_group(number(2));
  if (name.rfind("D_", 0) == 0) return dihedral_group(number(2));
  throw StructuralError("unknown standard group '" + name + "'");
}

// ---------------------------------------------------------------------------
// Elementary structure

inline int element_order(const FiniteGroup& g, int x) {
  int k = 1;
  for (int y = x; y != 0; y = g.mul(y, x)) ++k;
  return k;
}

inline std::vector<int> center(const FiniteGroup& g) {
  std::vector<int> z;
  for (int x = 0; x < g.order(); ++x) {
    bool central = true;
    for (int y = 0; y < g.order() && central; ++y) central = g.mul(x, y) == g.mul(y, x);
    if (central) z.push_back(x);
  }
  return z;
}

inline bool is_abelian(const FiniteGroup& g) {
  return static_cast<int>(center(g).size()) == g.order();
}

/// Sorted elements of the subgroup generated by `gens`.
inline std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens) {
  std::vector<char> seen(g.order(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int s : gens) {
      const int y = g.mul(x, s);
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  std::vector<int> out;
  for (int x = 0; x < g.order(); ++x)
    if (seen[x]) out.push_back(x);
  return out;
}

/// A generating set of minimum size; lexicographically least among those.
inline std::vector<int> minimal_generating_set(const FiniteGroup& g) {
  const int n = g.order();
  if (n == 1) return {};
  std::vector<int> cand;
  for (int x = 1; x < n; ++x) cand.push_back(x);
  for (int k = 1; k <= static_cast<int>(cand.size()); ++k) {
    // iterate k-subsets of cand in lexicographic order
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    const int m = static_cast<int>(cand.size());
    while (true) {
      std::vector<int> gens;
      for (int i : idx) gens.push_back(cand[i]);
      if (static_cast<int>(generated_subgroup(g, gens).size()) == n) return gens;
      int i = k - 1;
      while (i >= 0 && idx[i] == m - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return cand;
}

// ---------------------------------------------------------------------------
// Homomorphisms

struct GroupHom {
  GroupPtr source;
  GroupPtr target;
  std::vector<int> map;

  int operator()(int x) const { return map[x]; }

  bool is_homomorphism() const {
    if (static_cast<int>(map.size()) != source->order()) return false;
    for (int x : map)
      if (x < 0 || x >= target->order()) return false;
    if (map[0] != 0) return false;
    for (int a = 0; a < source->order(); ++a)
      for (int b = 0; b < source->order(); ++b)
        if (map[source->mul(a, b)] != target->mul(map[a], map[b])) return false;
    return true;
  }

  std::vector<int> image() const {
    std::vector<int> im(map.begin(), map.end());
    std::sort(im.begin(), im.end());
    im.erase(std::unique(im.begin(), im.end()), im.end());
    return im;
  }

  std::vector<int> kernel() const {
    std::vector<int> k;
    for (int x = 0; x < static_cast<int>(map.size()); ++x)
      if (map[x] == 0) k.push_back(x);
    return k;
  }
};

namespace detail {

/// Extends generator images to a map on all of `src` along the right Cayley
/// graph. Returns nullopt if the assignment is inconsistent (no homomorphism)
/// or, when `bijective` is set, if the result is not a bijection.
inline std::optional<std::vector<int>> extend_from_generators(const FiniteGroup& src,
                                                              const FiniteGroup& dst,
                                                              const std::vector<int>& gens,
                                                              const std::vector<int>& images,
                                                              bool bijective) {
  std::vector<int> map(src.order(), -1);
  map[0] = 0;
  std::vector<int> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int x = queue[head];
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const int y = src.mul(x, gens[s]);
      const int fy = dst.mul(map[x], images[s]);
      if (map[y] < 0) {
        map[y] = fy;
        queue.push_back(y);
      } else if (map[y] != fy) {
        return std::nullopt;
      }
    }
  }
  if (static_cast<int>(queue.size()) != src.order()) return std::nullopt;  // gens do not generate
  if (bijective) {
    std::vector<char> hit(dst.order(), 0);
    for (int v : map) {
      if (hit[v]) return std::nullopt;
      hit[v] = 1;
    }
  }
  return map;
}

/// Backtracks over images of a minimal generating set of `src`, visiting every
/// homomorphism src -> dst (or only the isomorphisms if `bijective`).
/// The visitor returns false to stop early.
template <class Visit>
void for_each_hom_by_generators(const FiniteGroup& src, const FiniteGroup& dst, bool bijective,
                                Visit&& visit) {
  const std::vector<int> gens = minimal_generating_set(src);
  std::vector<int> gen_orders;
  for (int s : gens) gen_orders.push_back(element_order(src, s));
  std::vector<std::vector<int>> options(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int y = 0; y < dst.order(); ++y) {
      const int oy = element_order(dst, y);
      if (bijective ? oy == gen_orders[i] : gen_orders[i] % oy == 0) options[i].push_back(y);
    }
  std::vector<int> images(gens.size());
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    if (i == gens.size()) {
      if (auto m = extend_from_generators(src, dst, gens, images, bijective))
        if (!visit(*m)) stop = true;
      return;
    }
    for (int y : options[i]) {
      images[i] = y;
      rec(i + 1);
      if (stop) return;
    }
  };
  rec(0);
}

}  // namespace detail

/// All homomorphisms src -> dst, sorted lexicographically by map table.
inline std::vector<std::vector<int>> homomorphisms(const FiniteGroup& src, const FiniteGroup& dst) {
  std::vector<std::vector<int>> out;
  detail::for_each_hom_by_generators(src, dst, false, [&](const std::vector<int>& m) {
    out.push_back(m);
    return true;
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// An explicit isomorphism a -> b if one exists.
inline std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return std::nullopt;
  auto profile = [](const FiniteGroup& g) {
    std::vector<int> orders;
    for (int x = 0; x < g.order(); ++x) orders.push_back(element_order(g, x));
    std::sort(orders.begin(), orders.end());
    return orders;
  };
  if (profile(a) != profile(b)) return std::nullopt;
  std::optional<std::vector<int>> found;
  detail::for_each_hom_by_generators(a, b, true, [&](const std::vector<int>& m) {
    found = m;
    return false;
  });
  return found;
}

inline bool isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  return find_isomorphism(a, b).has_value();
}

// ---------------------------------------------------------------------------
// Automorphism groups

/// The automorphisms of `base`, listed in lexicographic order of their map
/// tables (the identity is always index 0), with their composition table:
/// group->mul(a, b) is the automorphism "apply b, then a".
struct AutGroup {
  GroupPtr base;
  std::vector<std::vector<int>> elements;
  GroupPtr group;
  std::map<std::vector<int>, int> index;

  int apply(int aut, int x) const { return elements[aut][x]; }
  int index_of(const std::vector<int>& map) const {
    auto it = index.find(map);
    if (it == index.end()) throw PreconditionError("map is not an automorphism of " + base->name());
    return it->second;
  }
  int order() const { return group->order(); }
};

inline AutGroup make_aut_group(GroupPtr base, std::vector<std::vector<int>> elements) {
  std::sort(elements.begin(), elements.end());
  AutGroup aut;
  aut.base = base;
  aut.elements = std::move(elements);
  for (int i = 0; i < static_cast<int>(aut.elements.size()); ++i) aut.index[aut.elements[i]] = i;
  const int n = base->order();
  const auto& els = aut.elements;
  const auto& idx = aut.index;
  aut.group = share(FiniteGroup::from_function(
      "Aut(" + base->name() + ")", static_cast<int>(els.size()), [&](int a, int b) {
        std::vector<int> c(n);
        for (int x = 0; x < n; ++x) c[x] = els[a][els[b][x]];
        return idx.at(c);
      }));
  return aut;
}

/// All automorphisms, found by backtracking over images of a minimal
/// generating set.
inline AutGroup automorphisms(GroupPtr g) {
  std::vector<std::vector<int>> els;
  detail::for_each_hom_by_generators(*g, *g, true, [&](const std::vector<int>& m) {
    els.push_back(m);
    return true;
  });
  return make_aut_group(g, std::move(els));
}

inline AutGroup automorphisms(const FiniteGroup& g) { return automorphisms(share(g)); }

/// x -> (gamma -> x gamma x^-1), as a homomorphism into aut.group.
inline GroupHom inner_conjugation(const GroupPtr& g, const AutGroup& aut) {
  GroupHom h{g, aut.group, std::vector<int>(g->order())};
  for (int x = 0; x < g->order(); ++x) {
    std::vector<int> m(g->order());
    for (int y = 0; y < g->order(); ++y) m[y] = g->conj(x, y);
    h.map[x] = aut.index_of(m);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Actions

/// A left action of an `acting` group on an `acted` group, stored as the
/// table table[a * |acted| + x] = a . x.
class GroupAction {
 public:
  GroupAction() = default;
  GroupAction(int acting_order, int acted_order, std::vector<int> table)
      : acting_(acting_order), acted_(acted_order), table_(std::move(table)) {
    detail::require_structure(
        static_cast<long>(table_.size()) == static_cast<long>(acting_) * acted_,
        "action table has wrong size");
    for (int v : table_)
      detail::require_structure(v >= 0 && v < acted_, "action table entry out of range");
  }

  static GroupAction trivial(int acting_order, int acted_order) {
    std::vector<int> t(static_cast<std::size_t>(acting_order) * acted_order);
    for (int a = 0; a < acting_order; ++a)
      for (int x = 0; x < acted_order; ++x) t[static_cast<std::size_t>(a) * acted_order + x] = x;
    return GroupAction(acting_order, acted_order, std::move(t));
  }

  /// Action through a homomorphism into an automorphism group.
  static GroupAction from_automorphisms(const std::vector<int>& aut_index, const AutGroup& aut) {
    const int acting = static_cast<int>(aut_index.size());
    const int acted = aut.base->order();
    std::vector<int> t(static_cast<std::size_t>(acting) * acted);
    for (int a = 0; a < acting; ++a) {
      detail::require_structure(aut_index[a] >= 0 && aut_index[a] < aut.order(),
                                "automorphism index out of range");
      for (int x = 0; x < acted; ++x)
        t[static_cast<std::size_t>(a) * acted + x] = aut.apply(aut_index[a], x);
    }
    return GroupAction(acting, acted, std::move(t));
  }

  /// Conjugation action of a group on itself.
  static GroupAction conjugation(const FiniteGroup& g) {
    const int n = g.order();
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
      for (int x = 0; x < n; ++x) t[static_cast<std::size_t>(a) * n + x] = g.conj(a, x);
    return GroupAction(n, n, std::move(t));
  }

  /// The action obtained by precomposing with a homomorphism f: K -> acting.
  GroupAction pulled_back(const std::vector<int>& f) const {
    const int k = static_cast<int>(f.size());
    std::vector<int> t(static_cast<std::size_t>(k) * acted_);
    for (int a = 0; a < k; ++a)
      for (int x = 0; x < acted_; ++x) t[static_cast<std::size_t>(a) * acted_ + x] = apply(f[a], x);
    return GroupAction(k, acted_, std::move(t));
  }

  int apply(int a, int x) const { return table_[static_cast<std::size_t>(a) * acted_ + x]; }
  int acting_order() const noexcept { return acting_; }
  int acted_order() const noexcept { return acted_; }
  const std::vector<int>& table() const noexcept { return table_; }
  std::vector<int> automorphism(int a) const {
    return {table_.begin() + static_cast<std::ptrdiff_t>(a) * acted_,
            table_.begin() + static_cast<std::ptrdiff_t>(a + 1) * acted_};
  }
  bool operator==(const GroupAction&) const = default;

 private:
  int acting_ = 1;
  int acted_ = 1;
  std::vector<int> table_{0};
};

/// True iff every a acts by an automorphism and a -> (x -> a.x) is a homomorphism.
inline bool is_action_by_automorphisms(const FiniteGroup& acting, const FiniteGroup& acted,
                                       const GroupAction& act, std::string* why = nullptr) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (act.acting_order() != acting.order() || act.acted_order() != acted.order())
    return fail("action dimensions do not match the groups");
  for (int a = 0; a < acting.order(); ++a) {
    std::vector<char> hit(acted.order(), 0);
    for (int x = 0; x < acted.order(); ++x) hit[act.apply(a, x)] = 1;
    if (std::find(hit.begin(), hit.end(), 0) != hit.end())
      return fail("element " + std::to_string(a) + " does not act bijectively");
    for (int x = 0; x < acted.order(); ++x)
      for (int y = 0; y < acted.order(); ++y)
        if (act.apply(a, acted.mul(x, y)) != acted.mul(act.apply(a, x), act.apply(a, y)))
          return fail("element " + std::to_string(a) + " does not act by a homomorphism");
  }
  for (int x = 0; x < acted.order(); ++x)
    if (act.apply(0, x) != x) return fail("identity does not act trivially");
  for (int a = 0; a < acting.order(); ++a)
    for (int b = 0; b < acting.order(); ++b)
      for (int x = 0; x < acted.order(); ++x)
        if (act.apply(acting.mul(a, b), x) != act.apply(a, act.apply(b, x)))
          return fail("action is not compatible with multiplication at (" + std::to_string(a) +
                      ", " + std::to_string(b) + ")");
  return true;
}

/// n x| h with (a, x)(b, y) = (a . act(x)(b), xy); the pair (a, x) has index a + |n| x.
inline FiniteGroup semidirect_product(const FiniteGroup& n, const FiniteGroup& h,
                                      const GroupAction& act) {
  std::string why;
  if (!is_action_by_automorphisms(h, n, act, &why))
    throw PreconditionError("semidirect product needs an action by automorphisms: " + why);
  const int nn = n.order();
  return FiniteGroup::from_function(n.name() + "x|" + h.name(), nn * h.order(), [&](int p, int q) {
    const int a = p % nn, x = p / nn, b = q % nn, y = q / nn;
    return n.mul(a, act.apply(x, b)) + nn * h.mul(x, y);
  });
}

}  // namespace gerbecoh
