#pragma once

// Schreier theory: extensions 1 -> G -> H -> K -> 1 as cocycle pairs
// (lam: K -> Aut(G), g: K x K -> G) over a point.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gerbecoh/coh.hpp"
#include "gerbecoh/enumerate.hpp"
#include "gerbecoh/group.hpp"

namespace gerbecoh {

/// Normalized: lam(e) = id and g(e, k) = g(k, e) = e.
/// lam(a) lam(b) = i_{g(a,b)} lam(ab) and lam(a)(g(b,c)) g(a,bc) = g(a,b) g(ab,c).
struct ExtensionCocycle {
  GroupPtr G;
  GroupPtr K;
  std::shared_ptr<const AutGroup> aut;
  std::vector<int> lam;  // automorphism index per element of K
  std::vector<int> g;    // g[a * |K| + b]

  int gv(int a, int b) const { return g[static_cast<std::size_t>(a) * K->order() + b]; }
  int act(int a, int x) const { return aut->apply(lam[a], x); }

  static ExtensionCocycle trivial(GroupPtr G, GroupPtr K, std::shared_ptr<const AutGroup> aut) {
    const int nk = K->order();
    return ExtensionCocycle{std::move(G), std::move(K), std::move(aut), std::vector<int>(nk, 0),
                            std::vector<int>(static_cast<std::size_t>(nk) * nk, 0)};
  }
  static ExtensionCocycle trivial(GroupPtr G, GroupPtr K) {
    auto aut = std::make_shared<const AutGroup>(automorphisms(G));
    return trivial(std::move(G), std::move(K), std::move(aut));
  }
};

struct ExtensionWitness {
  GroupPtr H;
  GroupHom embed;    // G -> H
  GroupHom project;  // H -> K
};

inline void check_extension_shape(const ExtensionCocycle& c) {
  detail::require_structure(c.G && c.K && c.aut, "extension cocycle is missing a group");
  const int nk = c.K->order();
  detail::require_structure(static_cast<int>(c.lam.size()) == nk, "lam needs one automorphism per element of K");
  detail::require_structure(static_cast<long>(c.g.size()) == static_cast<long>(nk) * nk, "g needs |K|^2 values");
  for (int v : c.lam) detail::require_structure(v >= 0 && v < c.aut->order(), "lam index out of range");
  for (int v : c.g) detail::require_structure(v >= 0 && v < c.G->order(), "g value out of range");
}

inline bool verify_extension_cocycle(const ExtensionCocycle& c, std::string* why = nullptr) {
  check_extension_shape(c);
  auto fail = [&](std::string m) {
    if (why) *why = std::move(m);
    return false;
  };
  const auto& G = *c.G;
  const auto& K = *c.K;
  const auto& A = *c.aut->group;
  const auto inner = inner_conjugation(c.G, *c.aut).map;
  const int nk = K.order();
  if (c.lam[0] != 0) return fail("lam(e) is not the identity");
  for (int k = 0; k < nk; ++k)
    if (c.gv(0, k) != 0 || c.gv(k, 0) != 0) return fail("g is not normalized at " + std::to_string(k));
  for (int a = 0; a < nk; ++a)
    for (int b = 0; b < nk; ++b)
      if (A.mul(c.lam[a], c.lam[b]) != A.mul(inner[c.gv(a, b)], c.lam[K.mul(a, b)]))
        return fail("lam(a) lam(b) = i_g(a,b) lam(ab) fails at (" + std::to_string(a) + ", " + std::to_string(b) + ")");
  for (int a = 0; a < nk; ++a)
    for (int b = 0; b < nk; ++b)
      for (int d = 0; d < nk; ++d)
        if (G.mul(c.act(a, c.gv(b, d)), c.gv(a, K.mul(b, d))) != G.mul(c.gv(a, b), c.gv(K.mul(a, b), d)))
          return fail("twisted 2-cocycle equation fails at (" + std::to_string(a) + ", " + std::to_string(b) + ", " +
                      std::to_string(d) + ")");
  return true;
}

/// H = G x K with (g1,k1)(g2,k2) = (g1 lam(k1)(g2) g(k1,k2), k1 k2); (x, k) has index x + |G| k.
inline ExtensionWitness build_extension(const ExtensionCocycle& c) {
  std::string why;
  if (!verify_extension_cocycle(c, &why)) throw PreconditionError("not an extension cocycle: " + why);
  const auto& G = *c.G;
  const auto& K = *c.K;
  const int ng = G.order();
  GroupPtr H = share(FiniteGroup::from_function("H", ng * K.order(), [&](int u, int v) {
    const int g1 = u % ng, k1 = u / ng, g2 = v % ng, k2 = v / ng;
    return G.mul({g1, c.act(k1, g2), c.gv(k1, k2)}) + ng * K.mul(k1, k2);
  }));
  ExtensionWitness w{H, GroupHom{c.G, H, std::vector<int>(ng)}, GroupHom{H, c.K, std::vector<int>(H->order())}};
  for (int x = 0; x < ng; ++x) w.embed.map[x] = x;
  for (int u = 0; u < H->order(); ++u) w.project.map[u] = u / ng;
  return w;
}

inline bool verify_extension_witness(const ExtensionWitness& w, std::string* why = nullptr) {
  auto fail = [&](std::string m) {
    if (why) *why = std::move(m);
    return false;
  };
  if (!verify_group(*w.H)) return fail("H is not a group");
  if (!w.embed.is_homomorphism()) return fail("embedding is not a homomorphism");
  if (!w.project.is_homomorphism()) return fail("projection is not a homomorphism");
  if (static_cast<int>(w.embed.image().size()) != w.embed.source->order()) return fail("embedding is not injective");
  if (static_cast<int>(w.project.image().size()) != w.project.target->order()) return fail("projection is not surjective");
  if (w.embed.image() != w.project.kernel()) return fail("image of the embedding differs from the kernel of the projection");
  return true;
}

/// g(a,b) = s(a) s(b) s(ab)^-1 and lam(k)(x) = embed^-1(s(k) embed(x) s(k)^-1),
/// for a set-theoretic section s of the projection with s(e) = e.
inline ExtensionCocycle cocycle_from_extension(const ExtensionWitness& w, const std::vector<int>& section,
                                               std::shared_ptr<const AutGroup> aut = nullptr) {
  std::string why;
  if (!verify_extension_witness(w, &why)) throw PreconditionError("invalid extension: " + why);
  const auto& H = *w.H;
  const auto& K = *w.project.target;
  const int nk = K.order(), ng = w.embed.source->order();
  detail::require_pre(static_cast<int>(section.size()) == nk, "section needs one value per element of K");
  for (int k = 0; k < nk; ++k)
    detail::require_pre(section[k] >= 0 && section[k] < H.order() && w.project(section[k]) == k,
                        "section does not lift element " + std::to_string(k));
  detail::require_pre(section[0] == 0, "section must send the identity to the identity");
  if (!aut) aut = std::make_shared<const AutGroup>(automorphisms(w.embed.source));
  std::vector<int> back(H.order(), -1);
  for (int x = 0; x < ng; ++x) back[w.embed(x)] = x;
  ExtensionCocycle c = ExtensionCocycle::trivial(w.embed.source, w.project.target, aut);
  for (int k = 0; k < nk; ++k) {
    std::vector<int> m(ng);
    for (int x = 0; x < ng; ++x) m[x] = back[H.conj(section[k], w.embed(x))];
    c.lam[k] = aut->index_of(m);
  }
  for (int a = 0; a < nk; ++a)
    for (int b = 0; b < nk; ++b)
      c.g[static_cast<std::size_t>(a) * nk + b] = back[H.mul({section[a], section[b], H.inv(section[K.mul(a, b)])})];
  return c;
}

/// lam'_a = i_{theta(a)} lam_a, g'(a,b) = theta(a) lam_a(theta(b)) g(a,b) theta(ab)^-1, theta(e) = e.
inline ExtensionCocycle apply_extension_equivalence(const ExtensionCocycle& c, const std::vector<int>& theta) {
  const auto& G = *c.G;
  const auto& K = *c.K;
  const auto& A = *c.aut->group;
  const auto inner = inner_conjugation(c.G, *c.aut).map;
  const int nk = K.order();
  ExtensionCocycle out = c;
  for (int a = 0; a < nk; ++a) out.lam[a] = A.mul(inner[theta[a]], c.lam[a]);
  for (int a = 0; a < nk; ++a)
    for (int b = 0; b < nk; ++b)
      out.g[static_cast<std::size_t>(a) * nk + b] =
          G.mul({theta[a], c.act(a, theta[b]), c.gv(a, b), G.inv(theta[K.mul(a, b)])});
  return out;
}

namespace detail {

inline std::vector<int> extension_flat(const ExtensionCocycle& c) {
  std::vector<int> v = c.lam;
  v.insert(v.end(), c.g.begin(), c.g.end());
  return v;
}

inline void extension_assign_flat(ExtensionCocycle& c, const std::vector<int>& v) {
  const auto nk = c.lam.size();
  c.lam.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(nk));
  c.g.assign(v.begin() + static_cast<std::ptrdiff_t>(nk), v.end());
}

}  // namespace detail

/// Standard groups of small order used to name extension groups.
inline std::vector<FiniteGroup> small_group_catalog(int order) {
  std::vector<FiniteGroup> out;
  auto z = [](int n) { return cyclic_group(n); };
  auto x = [](const FiniteGroup& a, const FiniteGroup& b) {
    return direct_product(a, b).renamed(a.name() + "x" + b.name());
  };
  out.push_back(z(order));
  switch (order) {
    case 4: out.push_back(x(z(2), z(2))); break;
    case 6: out.push_back(symmetric_group(3)); break;
    case 8:
      out.push_back(x(z(4), z(2)));
      out.push_back(x(x(z(2), z(2)), z(2)));
      out.push_back(dihedral_group(4));
      out.push_back(quaternion_group());
      break;
    case 9: out.push_back(x(z(3), z(3))); break;
    case 10: out.push_back(dihedral_group(5)); break;
    case 12: {
      out.push_back(x(z(6), z(2)));
      out.push_back(alternating_group_4());
      out.push_back(dihedral_group(6));
      // dicyclic group Z/3 x| Z/4, generator of Z/4 acting by inversion
      const FiniteGroup c3 = z(3), c4 = z(4);
      std::vector<int> t(12);
      for (int a = 0; a < 4; ++a)
        for (int y = 0; y < 3; ++y) t[a * 3 + y] = a % 2 ? (3 - y) % 3 : y;
      out.push_back(semidirect_product(c3, c4, GroupAction(4, 3, t)).renamed("Dic_3"));
      break;
    }
    case 14: out.push_back(dihedral_group(7)); break;
    case 16:
      out.push_back(x(z(8), z(2)));
      out.push_back(x(z(4), z(4)));
      out.push_back(x(x(z(4), z(2)), z(2)));
      out.push_back(x(x(x(z(2), z(2)), z(2)), z(2)));
      out.push_back(dihedral_group(8));
      out.push_back(x(dihedral_group(4), z(2)));
      out.push_back(x(quaternion_group(), z(2)));
      break;
    case 18:
      out.push_back(x(z(6), z(3)));
      out.push_back(dihedral_group(9));
      out.push_back(x(symmetric_group(3), z(3)));
      break;
    case 20: out.push_back(x(z(10), z(2))); out.push_back(dihedral_group(10)); break;
    case 24:
      out.push_back(symmetric_group(4));
      out.push_back(x(alternating_group_4(), z(2)));
      out.push_back(x(z(12), z(2)));
      out.push_back(x(x(z(6), z(2)), z(2)));
      out.push_back(dihedral_group(12));
      out.push_back(x(symmetric_group(3), z(4)));
      out.push_back(x(dihedral_group(4), z(3)));
      out.push_back(x(quaternion_group(), z(3)));
      out.push_back(x(symmetric_group(3), x(z(2), z(2))));
      break;
    default: break;
  }
  return out;
}

/// A catalog name for h, or a generic label when h is not in the catalog.
inline std::string identify_group(const FiniteGroup& h) {
  for (const auto& c : small_group_catalog(h.order()))
    if (isomorphic(h, c)) return c.name();
  return "unnamed group of order " + std::to_string(h.order());
}

struct ExtensionClass {
  ExtensionCocycle representative;
  ExtensionWitness extension;
  std::string group_name;
  int isomorphism_type = 0;  // equal numbers mean isomorphic extension groups
};

struct ExtensionClassification {
  std::size_t cocycle_count = 0;
  std::vector<ExtensionClass> classes;
  int isomorphism_type_count = 0;
  std::uint64_t budget_used = 0;
  std::uint64_t budget_limit = 0;
};

struct ExtOptions {
  EnumOptions enumeration;
  int order_bound = 24;
};

/// All normalized cocycles up to equivalence with G and K fixed pointwise.
inline ExtensionClassification classify_extensions(const GroupPtr& G, const GroupPtr& K, const ExtOptions& opt = {}) {
  if (G->order() * K->order() > opt.order_bound)
    throw CapacityError("extension classification needs |G| * |K| <= " + std::to_string(opt.order_bound));
  auto aut = std::make_shared<const AutGroup>(automorphisms(G));
  const auto& A = *aut->group;
  const auto& Gg = *G;
  const auto& Kg = *K;
  const auto inner = inner_conjugation(G, *aut).map;
  const int nk = Kg.order();
  // variables: lam(0..nk-1) then g(a, b) in row-major order
  SearchSpace sp;
  for (int a = 0; a < nk; ++a) sp.add_variable(a == 0 ? 1 : A.order());
  auto gvar = [nk](int a, int b) { return nk + a * nk + b; };
  for (int a = 0; a < nk; ++a)
    for (int b = 0; b < nk; ++b) sp.add_variable(a == 0 || b == 0 ? 1 : Gg.order());
  for (int a = 0; a < nk; ++a)
    for (int b = 0; b < nk; ++b) {
      const int ab = Kg.mul(a, b), v = gvar(a, b);
      sp.add_check({a, b, ab, v}, [=, &A, &inner](const std::vector<int>& x) {
        return A.mul(x[a], x[b]) == A.mul(inner[x[v]], x[ab]);
      });
    }
  for (int a = 0; a < nk; ++a)
    for (int b = 0; b < nk; ++b)
      for (int d = 0; d < nk; ++d) {
        const int bd = Kg.mul(b, d), ab = Kg.mul(a, b);
        const int v1 = gvar(b, d), v2 = gvar(a, bd), v3 = gvar(a, b), v4 = gvar(ab, d);
        sp.add_check({a, v1, v2, v3, v4}, [=, &Gg](const std::vector<int>& x) {
          return Gg.mul(aut->apply(x[a], x[v1]), x[v2]) == Gg.mul(x[v3], x[v4]);
        });
      }
  const ExtensionCocycle proto = ExtensionCocycle::trivial(G, K, aut);
  const auto gens = minimal_generating_set(Gg);
  auto moves = [&](const std::vector<int>& flat, const auto& emit) {
    ExtensionCocycle c = proto;
    detail::extension_assign_flat(c, flat);
    for (int a = 1; a < nk; ++a)
      for (int s : gens) {
        std::vector<int> theta(nk, 0);
        theta[a] = s;
        emit(detail::extension_flat(apply_extension_equivalence(c, theta)));
      }
  };
  Classification cl = classify_orbits(sp, moves, opt.enumeration);
  ExtensionClassification out;
  out.cocycle_count = cl.cocycle_count;
  out.budget_used = cl.budget_used;
  out.budget_limit = cl.budget_limit;
  std::vector<GroupPtr> types;
  for (const auto& rep : cl.representatives) {
    ExtensionCocycle c = proto;
    detail::extension_assign_flat(c, rep);
    ExtensionClass ec{c, build_extension(c), "", -1};
    for (int t = 0; t < static_cast<int>(types.size()) && ec.isomorphism_type < 0; ++t)
      if (isomorphic(*types[t], *ec.extension.H)) ec.isomorphism_type = t;
    if (ec.isomorphism_type < 0) {
      ec.isomorphism_type = static_cast<int>(types.size());
      types.push_back(ec.extension.H);
    }
    ec.group_name = identify_group(*ec.extension.H);
    out.classes.push_back(std::move(ec));
  }
  out.isomorphism_type_count = static_cast<int>(types.size());
  return out;
}

/// Searches all theta: K -> G with theta(e) = e for one relating a to b.
inline bool extensions_equivalent(const ExtensionCocycle& a, const ExtensionCocycle& b,
                                  std::uint64_t budget_limit = kDefaultBudget) {
  Budget budget(budget_limit);
  const int nk = a.K->order();
  std::vector<int> sizes(nk, a.G->order());
  sizes[0] = 1;
  bool found = false;
  for_each_tuple(sizes, [&](const std::vector<int>& theta) {
    if (found) return;
    budget.charge();
    const auto c = apply_extension_equivalence(a, theta);
    found = c.lam == b.lam && c.g == b.g;
  });
  return found;
}

}  // namespace gerbecoh
