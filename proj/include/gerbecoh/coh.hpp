#pragma once

// Čech cocycles, coboundaries and classification in degrees 0 and 1.
//
// All cochains live on increasing index tuples of the nerve, and every
// equation is imposed on increasing tuples.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gerbecoh/cochain.hpp"
#include "gerbecoh/enumerate.hpp"
#include "gerbecoh/torsor.hpp"
#include "gerbecoh/xmod.hpp"

namespace gerbecoh {

/// Result of an orbit enumeration. Representatives are the lexicographically
/// least members of their orbits, listed in increasing order.
struct Classification {
  std::size_t cocycle_count = 0;
  std::vector<std::vector<int>> representatives;
  std::vector<std::size_t> orbit_sizes;
  std::uint64_t budget_used = 0;
  std::uint64_t budget_limit = 0;
  /// class number of every enumerated cocycle, in enumeration order
  std::vector<std::size_t> class_of;
  std::vector<std::vector<int>> cocycles;

  std::size_t count() const { return representatives.size(); }
  std::size_t class_index(const std::vector<int>& cocycle) const {
    auto it = std::lower_bound(cocycles.begin(), cocycles.end(), cocycle);
    detail::require_pre(it != cocycles.end() && *it == cocycle, "not an enumerated cocycle");
    return class_of[static_cast<std::size_t>(it - cocycles.begin())];
  }
};

/// Enumerates the solutions of `sp` and merges them along `moves`.
template <class Moves>
Classification classify_orbits(const SearchSpace& sp, Moves&& moves, const EnumOptions& opt) {
  Budget budget(opt.budget);
  Classification out;
  out.cocycles = enumerate_solutions(sp, budget, opt.workers);
  out.cocycle_count = out.cocycles.size();
  const auto orbits = orbits_by_moves(out.cocycles, moves, budget);
  out.class_of.assign(out.cocycles.size(), 0);
  for (std::size_t c = 0; c < orbits.size(); ++c) {
    out.representatives.push_back(out.cocycles[orbits[c].front()]);
    out.orbit_sizes.push_back(orbits[c].size());
    for (std::size_t i : orbits[c]) out.class_of[i] = c;
  }
  out.budget_used = budget.used();
  out.budget_limit = budget.limit();
  return out;
}

// ---------------------------------------------------------------------------
// Degree 1, group coefficients

struct H1Result {
  Classification classes;
  std::vector<Cochain1> representatives;
  std::size_t count() const { return representatives.size(); }
};

/// Orbits of 1-cocycles under g'_ij = g_i g_ij g_j^-1.
inline H1Result h1_classify(const NervePtr& nerve, const GroupPtr& g, const EnumOptions& opt = {}) {
  const auto& pairs = nerve->faces_of_size(2);
  const auto& G = *g;
  SearchSpace sp;
  for (std::size_t s = 0; s < pairs.size(); ++s) sp.add_variable(G.order());
  for (const auto& f : nerve->faces_of_size(3)) {
    const int ij = nerve->position({f[0], f[1]}), jk = nerve->position({f[1], f[2]}),
              ik = nerve->position({f[0], f[2]});
    sp.add_check({ij, jk, ik}, [=, &G](const std::vector<int>& a) { return a[ik] == G.mul(a[ij], a[jk]); });
  }
  const auto gens = minimal_generating_set(G);
  auto moves = [&](const std::vector<int>& c, const auto& emit) {
    for (int i = 0; i < nerve->index_count(); ++i)
      for (int s : gens) {
        std::vector<int> d = c;
        for (std::size_t p = 0; p < pairs.size(); ++p) {
          if (pairs[p][0] == i) d[p] = G.mul(s, d[p]);
          if (pairs[p][1] == i) d[p] = G.mul(d[p], G.inv(s));
        }
        emit(d);
      }
  };
  H1Result r{classify_orbits(sp, moves, opt), {}};
  for (const auto& rep : r.classes.representatives) r.representatives.push_back(Cochain1{nerve, g, rep});
  return r;
}

// ---------------------------------------------------------------------------
// Degree 0, crossed module coefficients

/// g_ij per pair face and pi_i per index, with g_ik = g_ij g_jk and pi_i = delta(g_ij) pi_j.
struct CrossedPair0 {
  NervePtr nerve;
  std::vector<int> g;   // indexed like faces_of_size(2)
  std::vector<int> pi;  // per index

  /// Layout used by h0_crossed: pi first, then g.
  std::vector<int> flat() const {
    std::vector<int> v = pi;
    v.insert(v.end(), g.begin(), g.end());
    return v;
  }
  static CrossedPair0 from_flat(const NervePtr& n, const std::vector<int>& v) {
    const auto k = static_cast<std::size_t>(n->index_count());
    return CrossedPair0{n, std::vector<int>(v.begin() + k, v.end()), std::vector<int>(v.begin(), v.begin() + k)};
  }
};

inline bool verify_crossed_pair0(const CrossedPair0& c, const CrossedModule& cm) {
  detail::require_structure(c.g.size() == c.nerve->faces_of_size(2).size() &&
                                static_cast<int>(c.pi.size()) == c.nerve->index_count(),
                            "crossed pair has the wrong number of values");
  const auto& G = *cm.g;
  const auto& P = *cm.pi;
  const auto& pairs = c.nerve->faces_of_size(2);
  for (std::size_t s = 0; s < pairs.size(); ++s)
    if (c.pi[pairs[s][0]] != P.mul(cm.d(c.g[s]), c.pi[pairs[s][1]])) return false;
  for (const auto& f : c.nerve->faces_of_size(3)) {
    const auto at = [&](int i, int j) { return c.g[c.nerve->position({i, j})]; };
    if (at(f[0], f[2]) != G.mul(at(f[0], f[1]), at(f[1], f[2]))) return false;
  }
  return true;
}

/// (g, pi) * (g', pi') = (g_ij ^{pi_j} g'_ij, pi_i pi'_i). This is the pair of
/// the contracted product of the corresponding bitorsors; the twist must use
/// the second index, since ^{pi_i} g'_ij g_ij = g_ij ^{pi_j} g'_ij.
inline CrossedPair0 crossed_pair_product(const CrossedPair0& a, const CrossedPair0& b, const CrossedModule& cm) {
  CrossedPair0 out = a;
  const auto& pairs = a.nerve->faces_of_size(2);
  for (std::size_t s = 0; s < pairs.size(); ++s)
    out.g[s] = cm.g->mul(a.g[s], cm.apply(a.pi[pairs[s][1]], b.g[s]));
  for (std::size_t i = 0; i < a.pi.size(); ++i) out.pi[i] = cm.pi->mul(a.pi[i], b.pi[i]);
  return out;
}

/// g'_ij = g_i g_ij g_j^-1 and pi'_i = delta(g_i) pi_i.
inline CrossedPair0 apply_crossed_coboundary0(const CrossedPair0& c, const std::vector<int>& gi, const CrossedModule& cm) {
  CrossedPair0 out = c;
  const auto& G = *cm.g;
  const auto& pairs = c.nerve->faces_of_size(2);
  for (std::size_t s = 0; s < pairs.size(); ++s)
    out.g[s] = G.mul({gi[pairs[s][0]], c.g[s], G.inv(gi[pairs[s][1]])});
  for (std::size_t i = 0; i < c.pi.size(); ++i) out.pi[i] = cm.pi->mul(cm.d(gi[i]), c.pi[i]);
  return out;
}

struct H0Result {
  Classification classes;
  std::vector<CrossedPair0> representatives;
  GroupPtr group;  // class i is element i; class 0 is the class of (e, id)
  std::size_t count() const { return representatives.size(); }
};

inline H0Result h0_crossed(const NervePtr& nerve, const CrossedModule& cm, const EnumOptions& opt = {}) {
  std::string why;
  if (!verify_crossed_module(cm, &why)) throw PreconditionError("not a crossed module: " + why);
  const auto& G = *cm.g;
  const auto& P = *cm.pi;
  const int k = nerve->index_count();
  const auto& pairs = nerve->faces_of_size(2);
  SearchSpace sp;
  for (int i = 0; i < k; ++i) sp.add_variable(P.order());
  for (std::size_t s = 0; s < pairs.size(); ++s) sp.add_variable(G.order());
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    const int i = pairs[s][0], j = pairs[s][1], v = k + static_cast<int>(s);
    sp.add_check({i, j, v}, [=, &cm, &P](const std::vector<int>& a) { return a[i] == P.mul(cm.d(a[v]), a[j]); });
  }
  for (const auto& f : nerve->faces_of_size(3)) {
    const int ij = k + nerve->position({f[0], f[1]}), jk = k + nerve->position({f[1], f[2]}),
              ik = k + nerve->position({f[0], f[2]});
    sp.add_check({ij, jk, ik}, [=, &G](const std::vector<int>& a) { return a[ik] == G.mul(a[ij], a[jk]); });
  }
  const auto gens = minimal_generating_set(G);
  auto moves = [&](const std::vector<int>& flat, const auto& emit) {
    const auto c = CrossedPair0::from_flat(nerve, flat);
    for (int i = 0; i < k; ++i)
      for (int s : gens) {
        std::vector<int> gi(k, 0);
        gi[i] = s;
        emit(apply_crossed_coboundary0(c, gi, cm).flat());
      }
  };
  H0Result r{classify_orbits(sp, moves, opt), {}, nullptr};
  for (const auto& rep : r.classes.representatives) r.representatives.push_back(CrossedPair0::from_flat(nerve, rep));
  const int n = static_cast<int>(r.representatives.size());
  r.group = share(FiniteGroup::from_function("H0", n, [&](int a, int b) {
    const auto prod = crossed_pair_product(r.representatives[a], r.representatives[b], cm);
    return static_cast<int>(r.classes.class_index(prod.flat()));
  }));
  return r;
}

// ---------------------------------------------------------------------------
// Bitorsor pairs

/// Pair of the contracted product of (G,G)-bitorsors with pairs (g, u) and
/// (gamma, v): (u_i(gamma_ij) g_ij, u_i v_i). Maps u_i are tables G -> G.
inline BitorsorPair bitorsor_pair_product(const BitorsorPair& a, const BitorsorPair& b) {
  BitorsorPair out = a;
  const auto& G = *a.g.group;
  const auto& pairs = a.g.nerve->faces_of_size(2);
  for (std::size_t s = 0; s < pairs.size(); ++s)
    out.g.values[s] = G.mul(a.u[pairs[s][0]][b.g.values[s]], a.g.values[s]);
  for (std::size_t i = 0; i < a.u.size(); ++i)
    for (int h = 0; h < G.order(); ++h) out.u[i][h] = a.u[i][b.u[i][h]];
  return out;
}

/// u_i = i_{g_ij} u_j on pair faces and the 1-cocycle equation.
inline bool verify_bitorsor_pair(const BitorsorPair& p) {
  if (!verify_cocycle1(p.g)) return false;
  const auto& G = *p.g.group;
  for (const auto& f : p.g.nerve->faces_of_size(2)) {
    const int gij = p.g.at(f[0], f[1]);
    for (int h = 0; h < G.order(); ++h)
      if (p.u[f[0]][h] != G.conj(gij, p.u[f[1]][h])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Degree 1, crossed module G -> Aut(G): gerbe cocycle pairs

/// lambda_ij in Aut(G) on pair faces, g_ijk in G on triple faces, with
///   lambda_ij lambda_jk = i_{g_ijk} lambda_ik
///   lambda_ij(g_jkl) g_ijl = g_ijk g_ikl
struct GerbeCocyclePair {
  NervePtr nerve;
  GroupPtr group;
  std::shared_ptr<const AutGroup> aut;
  std::vector<int> lam;  // automorphism indices, indexed like faces_of_size(2)
  std::vector<int> g;    // indexed like faces_of_size(3)

  int lam_at(int i, int j) const { return lam[nerve->position({i, j})]; }
  int g_at(int i, int j, int k) const { return g[nerve->position({i, j, k})]; }

  std::vector<int> flat() const {
    std::vector<int> v = lam;
    v.insert(v.end(), g.begin(), g.end());
    return v;
  }
  void assign_flat(const std::vector<int>& v) {
    lam.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lam.size()));
    g.assign(v.begin() + static_cast<std::ptrdiff_t>(lam.size()), v.end());
  }
  static GerbeCocyclePair trivial(NervePtr n, GroupPtr grp, std::shared_ptr<const AutGroup> aut) {
    const auto np = n->faces_of_size(2).size(), nt = n->faces_of_size(3).size();
    return GerbeCocyclePair{std::move(n), std::move(grp), std::move(aut), std::vector<int>(np, 0),
                            std::vector<int>(nt, 0)};
  }
};

struct GerbeCoboundary {
  std::vector<int> r;      // automorphism index per index
  std::vector<int> theta;  // per pair face
};

namespace detail {

inline std::vector<int> inner_indices(const GroupPtr& g, const AutGroup& aut) {
  return inner_conjugation(g, aut).map;
}

inline void check_gerbe_shape(const GerbeCocyclePair& p) {
  detail::require_structure(p.nerve && p.group && p.aut, "gerbe pair is missing its nerve, group or automorphisms");
  detail::require_structure(p.lam.size() == p.nerve->faces_of_size(2).size(), "one lambda per pair face needed");
  detail::require_structure(p.g.size() == p.nerve->faces_of_size(3).size(), "one g per triple face needed");
  for (int v : p.lam) detail::require_structure(v >= 0 && v < p.aut->order(), "lambda index out of range");
  for (int v : p.g) detail::require_structure(v >= 0 && v < p.group->order(), "g value out of range");
}

}  // namespace detail

inline bool verify_gerbe_pair(const GerbeCocyclePair& p, std::string* why = nullptr) {
  detail::check_gerbe_shape(p);
  const auto& G = *p.group;
  const auto& A = *p.aut->group;
  const auto inner = detail::inner_indices(p.group, *p.aut);
  for (const auto& f : p.nerve->faces_of_size(3)) {
    const int i = f[0], j = f[1], k = f[2];
    if (A.mul(p.lam_at(i, j), p.lam_at(j, k)) != A.mul(inner[p.g_at(i, j, k)], p.lam_at(i, k))) {
      if (why) *why = "lambda equation fails on (" + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) + ")";
      return false;
    }
  }
  for (const auto& f : p.nerve->faces_of_size(4)) {
    const int i = f[0], j = f[1], k = f[2], l = f[3];
    if (G.mul(p.aut->apply(p.lam_at(i, j), p.g_at(j, k, l)), p.g_at(i, j, l)) != G.mul(p.g_at(i, j, k), p.g_at(i, k, l))) {
      if (why)
        *why = "twisted 2-cocycle equation fails on (" + std::to_string(i) + ", " + std::to_string(j) + ", " +
               std::to_string(k) + ", " + std::to_string(l) + ")";
      return false;
    }
  }
  return true;
}

/// lambda'_ij = i_{theta_ij} r_i lambda_ij r_j^-1,
/// g'_ijk = lambda'_ij(theta_jk) theta_ij r_i(g_ijk) theta_ik^-1.
inline GerbeCocyclePair apply_gerbe_coboundary(const GerbeCocyclePair& p, const GerbeCoboundary& b) {
  detail::check_gerbe_shape(p);
  detail::require_structure(static_cast<int>(b.r.size()) == p.nerve->index_count() &&
                                b.theta.size() == p.lam.size(),
                            "coboundary has the wrong number of values");
  const auto& G = *p.group;
  const auto& A = *p.aut->group;
  const auto inner = detail::inner_indices(p.group, *p.aut);
  GerbeCocyclePair out = p;
  const auto& pairs = p.nerve->faces_of_size(2);
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    const int i = pairs[s][0], j = pairs[s][1];
    out.lam[s] = A.mul({inner[b.theta[s]], b.r[i], p.lam[s], A.inv(b.r[j])});
  }
  auto theta = [&](int i, int j) { return b.theta[p.nerve->position({i, j})]; };
  const auto& tri = p.nerve->faces_of_size(3);
  for (std::size_t s = 0; s < tri.size(); ++s) {
    const int i = tri[s][0], j = tri[s][1], k = tri[s][2];
    out.g[s] = G.mul({p.aut->apply(out.lam_at(i, j), theta(j, k)), theta(i, j), p.aut->apply(b.r[i], p.g[s]),
                      G.inv(theta(i, k))});
  }
  return out;
}

/// Acting by `first` and then by `second` equals acting by
/// (r' r, theta' r'(theta)).
inline GerbeCoboundary compose_gerbe_coboundaries(const GerbeCocyclePair& p, const GerbeCoboundary& first,
                                                  const GerbeCoboundary& second) {
  const auto& A = *p.aut->group;
  GerbeCoboundary c;
  for (std::size_t i = 0; i < first.r.size(); ++i) c.r.push_back(A.mul(second.r[i], first.r[i]));
  const auto& pairs = p.nerve->faces_of_size(2);
  for (std::size_t s = 0; s < pairs.size(); ++s)
    c.theta.push_back(p.group->mul(second.theta[s], p.aut->apply(second.r[pairs[s][0]], first.theta[s])));
  return c;
}

enum class GerbeSector {
  all,       // every lambda, every coboundary
  lambda_id  // lambda = id, coboundaries with r = id and theta central
};

struct GerbeResult {
  Classification classes;
  std::vector<GerbeCocyclePair> representatives;
  std::size_t count() const { return representatives.size(); }
};

inline GerbeResult h1_gerbe_classify(const NervePtr& nerve, const GroupPtr& g, GerbeSector sector = GerbeSector::all,
                                     const EnumOptions& opt = {}) {
  auto aut = std::make_shared<const AutGroup>(automorphisms(g));
  const auto& G = *g;
  const auto& A = *aut->group;
  const auto inner = detail::inner_indices(g, *aut);
  const auto& pairs = nerve->faces_of_size(2);
  const auto& tri = nerve->faces_of_size(3);
  const int np = static_cast<int>(pairs.size());
  SearchSpace sp;
  for (int s = 0; s < np; ++s) sp.add_variable(sector == GerbeSector::lambda_id ? 1 : A.order());
  for (std::size_t s = 0; s < tri.size(); ++s) sp.add_variable(G.order());
  auto pv = [&](int i, int j) { return nerve->position({i, j}); };
  auto tv = [&](int i, int j, int k) { return np + nerve->position({i, j, k}); };
  for (const auto& f : tri) {
    const int ij = pv(f[0], f[1]), jk = pv(f[1], f[2]), ik = pv(f[0], f[2]), t = tv(f[0], f[1], f[2]);
    sp.add_check({ij, jk, ik, t}, [=, &A, &inner](const std::vector<int>& a) {
      return A.mul(a[ij], a[jk]) == A.mul(inner[a[t]], a[ik]);
    });
  }
  for (const auto& f : nerve->faces_of_size(4)) {
    const int i = f[0], j = f[1], k = f[2], l = f[3];
    const int lij = pv(i, j), jkl = tv(j, k, l), ijl = tv(i, j, l), ijk = tv(i, j, k), ikl = tv(i, k, l);
    sp.add_check({lij, jkl, ijl, ijk, ikl}, [=, &G](const std::vector<int>& a) {
      return G.mul(aut->apply(a[lij], a[jkl]), a[ijl]) == G.mul(a[ijk], a[ikl]);
    });
  }
  GerbeCocyclePair proto = GerbeCocyclePair::trivial(nerve, g, aut);
  std::vector<int> theta_moves, r_moves;
  if (sector == GerbeSector::lambda_id) {
    for (int z : center(G))
      if (z != 0) theta_moves.push_back(z);
  } else {
    theta_moves = minimal_generating_set(G);
    r_moves = minimal_generating_set(A);
  }
  auto moves = [&](const std::vector<int>& flat, const auto& emit) {
    GerbeCocyclePair p = proto;
    p.assign_flat(flat);
    GerbeCoboundary id{std::vector<int>(nerve->index_count(), 0), std::vector<int>(np, 0)};
    for (int i = 0; i < nerve->index_count(); ++i)
      for (int r : r_moves) {
        GerbeCoboundary b = id;
        b.r[i] = r;
        emit(apply_gerbe_coboundary(p, b).flat());
      }
    for (int s = 0; s < np; ++s)
      for (int t : theta_moves) {
        GerbeCoboundary b = id;
        b.theta[s] = t;
        emit(apply_gerbe_coboundary(p, b).flat());
      }
  };
  GerbeResult r{classify_orbits(sp, moves, opt), {}};
  for (const auto& rep : r.classes.representatives) {
    GerbeCocyclePair p = proto;
    p.assign_flat(rep);
    r.representatives.push_back(p);
  }
  return r;
}

/// The bitorsor cocycle of a gerbe pair: P_ij is G with right action
/// p . h = p lambda_ij(h), and psi_ijk [a, b] = a lambda_ij(b) g_ijk.
inline BitorsorCocycle bitorsor_cocycle_from_gerbe_pair(const GerbeCocyclePair& p) {
  detail::check_gerbe_shape(p);
  const auto& G = *p.group;
  const FiniteSpace point = FiniteSpace::discrete(1);
  const GroupBundle bundle = GroupBundle::constant(point, p.group);
  BitorsorCocycle bc;
  bc.nerve = p.nerve;
  for (int lam : p.lam) {
    Bitorsor b = trivial_bitorsor(bundle);
    for (int x = 0; x < G.order(); ++x)
      for (int h = 0; h < G.order(); ++h)
        b.ract[0][static_cast<std::size_t>(x) * G.order() + h] = G.mul(x, p.aut->apply(lam, h));
    bc.p.push_back(b);
  }
  for (const auto& f : p.nerve->faces_of_size(3)) {
    const int i = f[0], j = f[1], k = f[2];
    const auto& pij = bc.at(i, j);
    const auto& pjk = bc.at(j, k);
    std::vector<int> psi(G.order(), -1);
    for (int a = 0; a < G.order(); ++a)
      for (int b = 0; b < G.order(); ++b)
        psi[contracted_class(pij, pjk, 0, a, b)] = G.mul({a, p.aut->apply(p.lam_at(i, j), b), p.g_at(i, j, k)});
    bc.psi.push_back(psi);
  }
  return bc;
}

}  // namespace gerbecoh
