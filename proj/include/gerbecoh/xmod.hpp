#pragma once

// Crossed modules, their monoidal groupoids, and strict crossed squares.

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gerbecoh/enumerate.hpp"
#include "gerbecoh/group.hpp"

namespace gerbecoh {

/// delta: g -> pi together with a left action of pi on g.
struct CrossedModule {
  GroupPtr g;
  GroupPtr pi;
  GroupHom delta;
  GroupAction act;

  int d(int x) const { return delta.map[x]; }
  int apply(int p, int x) const { return act.apply(p, x); }  // ^p x
};

inline void check_crossed_module_shape(const CrossedModule& cm) {
  detail::require_structure(cm.g && cm.pi, "crossed module is missing a group");
  detail::require_structure(static_cast<int>(cm.delta.map.size()) == cm.g->order(),
                            "boundary map length differs from the order of g");
  for (int v : cm.delta.map)
    detail::require_structure(v >= 0 && v < cm.pi->order(), "boundary map entry out of range");
  detail::require_structure(cm.act.acting_order() == cm.pi->order() &&
                                cm.act.acted_order() == cm.g->order(),
                            "action table dimensions do not match the groups");
}

/// Equivariance and Peiffer identity, plus the homomorphism and action laws.
inline bool verify_crossed_module(const CrossedModule& cm, std::string* why = nullptr) {
  check_crossed_module_shape(cm);
  auto fail = [&](std::string m) {
    if (why) *why = std::move(m);
    return false;
  };
  const auto& G = *cm.g;
  const auto& P = *cm.pi;
  GroupHom dh{cm.g, cm.pi, cm.delta.map};
  if (!dh.is_homomorphism()) return fail("boundary map is not a homomorphism");
  std::string w;
  if (!is_action_by_automorphisms(P, G, cm.act, &w)) return fail(w);
  for (int p = 0; p < P.order(); ++p)
    for (int x = 0; x < G.order(); ++x)
      if (cm.d(cm.apply(p, x)) != P.conj(p, cm.d(x))) {
        std::ostringstream os;
        os << "equivariance fails at (" << p << ", " << x << ")";
        return fail(os.str());
      }
  for (int x = 0; x < G.order(); ++x)
    for (int y = 0; y < G.order(); ++y)
      if (cm.apply(cm.d(y), x) != G.conj(y, x)) {
        std::ostringstream os;
        os << "Peiffer identity fails at (" << x << ", " << y << ")";
        return fail(os.str());
      }
  return true;
}

/// G -> Aut(G) by inner conjugation, with Aut(G) acting by evaluation.
inline CrossedModule aut_crossed_module(const GroupPtr& g) {
  AutGroup aut = automorphisms(g);
  CrossedModule cm;
  cm.g = g;
  cm.pi = aut.group;
  cm.delta = inner_conjugation(g, aut);
  std::vector<int> all(aut.order());
  for (int i = 0; i < aut.order(); ++i) all[i] = i;
  cm.act = GroupAction::from_automorphisms(all, aut);
  return cm;
}

/// g -> pi with trivial boundary and trivial action; a crossed module iff g is abelian.
inline CrossedModule trivial_boundary_module(const GroupPtr& g, const GroupPtr& pi) {
  return CrossedModule{g, pi, GroupHom{g, pi, std::vector<int>(g->order(), 0)},
                       GroupAction::trivial(pi->order(), g->order())};
}

/// The identity of a group as a crossed module (pi acting on itself by conjugation).
inline CrossedModule identity_crossed_module(const GroupPtr& g) {
  std::vector<int> id(g->order());
  for (int i = 0; i < g->order(); ++i) id[i] = i;
  return CrossedModule{g, g, GroupHom{g, g, id}, GroupAction::conjugation(*g)};
}

// ---------------------------------------------------------------------------
// Monoidal groupoid

/// The strict monoidal groupoid of a crossed module. Objects are elements of
/// pi; the arrow (x, p) has index x + |g| p, source p and target delta(x) p.
struct MonoidalGroupoid {
  int object_count = 1;
  int arrow_count = 1;
  int g_order = 1;
  std::vector<int> source;
  std::vector<int> target;
  std::vector<int> identity;   // identity arrow per object
  std::vector<int> compose;    // compose[b * n + a] = b after a, or -1 when target(a) != source(b)
  std::vector<int> tensor;     // tensor[a * n + b]
  std::vector<int> tensor_obj; // object multiplication

  int comp(int after, int before) const { return compose[static_cast<std::size_t>(after) * arrow_count + before]; }
  int tens(int a, int b) const { return tensor[static_cast<std::size_t>(a) * arrow_count + b]; }
};

inline MonoidalGroupoid monoidal_groupoid(const CrossedModule& cm) {
  std::string why;
  if (!verify_crossed_module(cm, &why)) throw PreconditionError("not a crossed module: " + why);
  const auto& G = *cm.g;
  const auto& P = *cm.pi;
  const int ng = G.order(), np = P.order(), n = ng * np;
  MonoidalGroupoid mg;
  mg.object_count = np;
  mg.arrow_count = n;
  mg.g_order = ng;
  mg.source.resize(n);
  mg.target.resize(n);
  mg.identity.resize(np);
  mg.compose.assign(static_cast<std::size_t>(n) * n, -1);
  mg.tensor.resize(static_cast<std::size_t>(n) * n);
  mg.tensor_obj.resize(static_cast<std::size_t>(np) * np);
  for (int p = 0; p < np; ++p) {
    mg.identity[p] = ng * p;
    for (int q = 0; q < np; ++q) mg.tensor_obj[static_cast<std::size_t>(p) * np + q] = P.mul(p, q);
  }
  for (int a = 0; a < n; ++a) {
    const int x = a % ng, p = a / ng;
    mg.source[a] = p;
    mg.target[a] = P.mul(cm.d(x), p);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int x = a % ng, p = a / ng, y = b % ng, q = b / ng;
      // b after a, when a: p -> delta(x)p and b starts there
      if (mg.source[b] == mg.target[a])
        mg.compose[static_cast<std::size_t>(b) * n + a] = G.mul(y, x) + ng * p;
      mg.tensor[static_cast<std::size_t>(a) * n + b] = G.mul(x, cm.apply(p, y)) + ng * P.mul(p, q);
    }
  return mg;
}

/// Reads a crossed module back off a monoidal groupoid: pi is the object
/// group, g the arrows out of the unit object under tensor, delta their
/// targets, and pi acts by conjugating with identity arrows.
inline CrossedModule crossed_module_from_groupoid(const MonoidalGroupoid& mg) {
  const int np = mg.object_count;
  std::vector<int> g_arrows;  // arrows with source 0, in index order
  for (int a = 0; a < mg.arrow_count; ++a)
    if (mg.source[a] == 0) g_arrows.push_back(a);
  const int ng = static_cast<int>(g_arrows.size());
  std::map<int, int> pos;
  for (int i = 0; i < ng; ++i) pos[g_arrows[i]] = i;
  GroupPtr pi = share(FiniteGroup::from_function("pi", np, [&](int p, int q) {
    return mg.tensor_obj[static_cast<std::size_t>(p) * np + q];
  }));
  GroupPtr g = share(FiniteGroup::from_function("g", ng, [&](int x, int y) {
    return pos.at(mg.tens(g_arrows[x], g_arrows[y]));
  }));
  std::vector<int> delta(ng);
  for (int i = 0; i < ng; ++i) delta[i] = mg.target[g_arrows[i]];
  std::vector<int> table(static_cast<std::size_t>(np) * ng);
  for (int p = 0; p < np; ++p) {
    const int pinv = pi->inv(p);
    for (int x = 0; x < ng; ++x) {
      const int a = mg.tens(mg.tens(mg.identity[p], g_arrows[x]), mg.identity[pinv]);
      table[static_cast<std::size_t>(p) * ng + x] = pos.at(a);
    }
  }
  return CrossedModule{g, pi, GroupHom{g, pi, delta}, GroupAction(np, ng, table)};
}

inline bool same_crossed_module(const CrossedModule& a, const CrossedModule& b) {
  return a.g->same_table(*b.g) && a.pi->same_table(*b.pi) && a.delta.map == b.delta.map &&
         a.act == b.act;
}

// ---------------------------------------------------------------------------
// Crossed squares

/// A strict crossed square
///
///     L --lm--> M
///     |         |
///     ln        mp
///     v         v
///     N --np--> P
///
/// with P acting on L, M and N, and a pairing h: M x N -> L. M and N act on
/// each other and on L through P.
struct CrossedSquare {
  GroupPtr l, m, n, p;
  GroupHom lm, ln, mp, np;
  GroupAction act_l, act_m, act_n;  // actions of P
  std::vector<int> h;               // h[m * |N| + n]

  int pair(int mi, int ni) const { return h[static_cast<std::size_t>(mi) * n->order() + ni]; }
  int p_on_l(int pp, int x) const { return act_l.apply(pp, x); }
  int p_on_m(int pp, int x) const { return act_m.apply(pp, x); }
  int p_on_n(int pp, int x) const { return act_n.apply(pp, x); }
  int m_on_l(int mi, int x) const { return act_l.apply(mp(mi), x); }
  int n_on_l(int ni, int x) const { return act_l.apply(np(ni), x); }
  int m_on_n(int mi, int x) const { return act_n.apply(mp(mi), x); }
  int n_on_m(int ni, int x) const { return act_m.apply(np(ni), x); }
};

inline void check_square_shape(const CrossedSquare& sq) {
  detail::require_structure(sq.l && sq.m && sq.n && sq.p, "crossed square is missing a group");
  auto hom_shape = [](const GroupHom& f, const GroupPtr& s, const GroupPtr& t, const char* name) {
    detail::require_structure(static_cast<int>(f.map.size()) == s->order(),
                              std::string("map ") + name + " has the wrong length");
    for (int v : f.map)
      detail::require_structure(v >= 0 && v < t->order(), std::string("map ") + name + " entry out of range");
  };
  hom_shape(sq.lm, sq.l, sq.m, "l->m");
  hom_shape(sq.ln, sq.l, sq.n, "l->n");
  hom_shape(sq.mp, sq.m, sq.p, "m->p");
  hom_shape(sq.np, sq.n, sq.p, "n->p");
  const int P = sq.p->order();
  detail::require_structure(sq.act_l.acting_order() == P && sq.act_l.acted_order() == sq.l->order(),
                            "action of p on l has wrong dimensions");
  detail::require_structure(sq.act_m.acting_order() == P && sq.act_m.acted_order() == sq.m->order(),
                            "action of p on m has wrong dimensions");
  detail::require_structure(sq.act_n.acting_order() == P && sq.act_n.acted_order() == sq.n->order(),
                            "action of p on n has wrong dimensions");
  detail::require_structure(
      static_cast<long>(sq.h.size()) == static_cast<long>(sq.m->order()) * sq.n->order(),
      "pairing table must have |m| * |n| entries");
  for (int v : sq.h) detail::require_structure(v >= 0 && v < sq.l->order(), "pairing entry out of range");
}

/// The crossed module lm: L -> M with M acting on L through P.
inline CrossedModule square_side_lm(const CrossedSquare& sq) {
  return CrossedModule{sq.l, sq.m, GroupHom{sq.l, sq.m, sq.lm.map}, sq.act_l.pulled_back(sq.mp.map)};
}
inline CrossedModule square_side_ln(const CrossedSquare& sq) {
  return CrossedModule{sq.l, sq.n, GroupHom{sq.l, sq.n, sq.ln.map}, sq.act_l.pulled_back(sq.np.map)};
}
inline CrossedModule square_side_mp(const CrossedSquare& sq) {
  return CrossedModule{sq.m, sq.p, GroupHom{sq.m, sq.p, sq.mp.map}, sq.act_m};
}
inline CrossedModule square_side_np(const CrossedSquare& sq) {
  return CrossedModule{sq.n, sq.p, GroupHom{sq.n, sq.p, sq.np.map}, sq.act_n};
}

/// Checks, in order:
///  1. mp . lm = np . ln
///  2. the four sides are crossed modules, and lm, ln are P-equivariant
///  3. lm h(m,n) = m . ^n m^-1 and ln h(m,n) = ^m n . n^-1
///  4. h(lm l, n) = l . ^n l^-1 and h(m, ln l) = ^m l . l^-1
///  5. h(mm', n) = ^m h(m',n) . h(m,n) and h(m, nn') = h(m,n) . ^n h(m,n')
///  6. h(^p m, ^p n) = ^p h(m,n)
inline bool verify_crossed_square(const CrossedSquare& sq, std::string* why = nullptr) {
  check_square_shape(sq);
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  const auto& L = *sq.l;
  const auto& M = *sq.m;
  const auto& N = *sq.n;
  const auto& P = *sq.p;
  for (int x = 0; x < L.order(); ++x)
    if (sq.mp(sq.lm(x)) != sq.np(sq.ln(x))) return fail("square does not commute at l = " + std::to_string(x));
  std::string w;
  if (!verify_crossed_module(square_side_lm(sq), &w)) return fail("side l->m: " + w);
  if (!verify_crossed_module(square_side_ln(sq), &w)) return fail("side l->n: " + w);
  if (!verify_crossed_module(square_side_mp(sq), &w)) return fail("side m->p: " + w);
  if (!verify_crossed_module(square_side_np(sq), &w)) return fail("side n->p: " + w);
  for (int pp = 0; pp < P.order(); ++pp)
    for (int x = 0; x < L.order(); ++x) {
      if (sq.lm(sq.p_on_l(pp, x)) != sq.p_on_m(pp, sq.lm(x)))
        return fail("l->m is not P-equivariant at (" + std::to_string(pp) + ", " + std::to_string(x) + ")");
      if (sq.ln(sq.p_on_l(pp, x)) != sq.p_on_n(pp, sq.ln(x)))
        return fail("l->n is not P-equivariant at (" + std::to_string(pp) + ", " + std::to_string(x) + ")");
    }
  auto at = [](int a, int b) { return "(" + std::to_string(a) + ", " + std::to_string(b) + ")"; };
  for (int mi = 0; mi < M.order(); ++mi)
    for (int ni = 0; ni < N.order(); ++ni) {
      const int hv = sq.pair(mi, ni);
      if (sq.lm(hv) != M.mul(mi, sq.n_on_m(ni, M.inv(mi)))) return fail("l->m of the pairing fails at " + at(mi, ni));
      if (sq.ln(hv) != N.mul(sq.m_on_n(mi, ni), N.inv(ni))) return fail("l->n of the pairing fails at " + at(mi, ni));
    }
  for (int x = 0; x < L.order(); ++x) {
    for (int ni = 0; ni < N.order(); ++ni)
      if (sq.pair(sq.lm(x), ni) != L.mul(x, sq.n_on_l(ni, L.inv(x))))
        return fail("pairing on the image of l->m fails at " + at(x, ni));
    for (int mi = 0; mi < M.order(); ++mi)
      if (sq.pair(mi, sq.ln(x)) != L.mul(sq.m_on_l(mi, x), L.inv(x)))
        return fail("pairing on the image of l->n fails at " + at(mi, x));
  }
  for (int m1 = 0; m1 < M.order(); ++m1)
    for (int m2 = 0; m2 < M.order(); ++m2)
      for (int ni = 0; ni < N.order(); ++ni)
        if (sq.pair(M.mul(m1, m2), ni) != L.mul(sq.m_on_l(m1, sq.pair(m2, ni)), sq.pair(m1, ni)))
          return fail("pairing is not multiplicative in m at " + at(m1, m2) + " with n = " + std::to_string(ni));
  for (int mi = 0; mi < M.order(); ++mi)
    for (int n1 = 0; n1 < N.order(); ++n1)
      for (int n2 = 0; n2 < N.order(); ++n2)
        if (sq.pair(mi, N.mul(n1, n2)) != L.mul(sq.pair(mi, n1), sq.n_on_l(n1, sq.pair(mi, n2))))
          return fail("pairing is not multiplicative in n at " + at(n1, n2) + " with m = " + std::to_string(mi));
  for (int pp = 0; pp < P.order(); ++pp)
    for (int mi = 0; mi < M.order(); ++mi)
      for (int ni = 0; ni < N.order(); ++ni)
        if (sq.pair(sq.p_on_m(pp, mi), sq.p_on_n(pp, ni)) != sq.p_on_l(pp, sq.pair(mi, ni)))
          return fail("pairing is not P-equivariant at p = " + std::to_string(pp) + ", " + at(mi, ni));
  return true;
}

/// All four corners equal to g, identity maps, conjugation actions and the
/// commutator pairing h(m, n) = m n m^-1 n^-1.
inline CrossedSquare commutator_square(const GroupPtr& g) {
  std::vector<int> id(g->order());
  for (int i = 0; i < g->order(); ++i) id[i] = i;
  GroupAction c = GroupAction::conjugation(*g);
  CrossedSquare sq{g, g, g, g, {g, g, id}, {g, g, id}, {g, g, id}, {g, g, id}, c, c, c, {}};
  sq.h.resize(static_cast<std::size_t>(g->order()) * g->order());
  for (int m = 0; m < g->order(); ++m)
    for (int n = 0; n < g->order(); ++n)
      sq.h[static_cast<std::size_t>(m) * g->order() + n] = g->mul({m, n, g->inv(m), g->inv(n)});
  return sq;
}

/// L = a abelian, M = N = P trivial. Cocycle quadruples reduce to abelian 3-cocycles.
inline CrossedSquare abelian_reduction_square(const GroupPtr& a) {
  detail::require_pre(is_abelian(*a), "abelian reduction needs an abelian group");
  GroupPtr t = share(trivial_group());
  std::vector<int> zeros(a->order(), 0);
  return CrossedSquare{a, t, t, t, {a, t, zeros}, {a, t, zeros}, {t, t, {0}}, {t, t, {0}},
                       GroupAction::trivial(1, a->order()), GroupAction::trivial(1, 1),
                       GroupAction::trivial(1, 1), {0}};
}

/// The square with l = m = trivial and bottom row n -> p given by a crossed module.
inline CrossedSquare square_from_bottom_row(const CrossedModule& cm) {
  GroupPtr t = share(trivial_group());
  const int np = cm.pi->order();
  return CrossedSquare{t, t, cm.g, cm.pi, {t, t, {0}}, {t, cm.g, {0}}, {t, cm.pi, {0}},
                       GroupHom{cm.g, cm.pi, cm.delta.map}, GroupAction::trivial(np, 1),
                       GroupAction::trivial(np, 1), cm.act, std::vector<int>(cm.g->order(), 0)};
}

// ---------------------------------------------------------------------------
// Norrie square

/// Crossed homomorphisms d: pi -> g, d(pq) = d(p) ^p d(q), listed lexicographically.
inline std::vector<std::vector<int>> derivations(const CrossedModule& cm) {
  const auto& G = *cm.g;
  const auto& P = *cm.pi;
  const std::vector<int> gens = minimal_generating_set(P);
  std::vector<std::vector<int>> out;
  for_each_tuple(std::vector<int>(gens.size(), G.order()), [&](const std::vector<int>& images) {
    std::vector<int> d(P.order(), -1);
    d[0] = 0;
    std::vector<int> queue{0};
    bool ok = true;
    for (std::size_t head = 0; head < queue.size() && ok; ++head) {
      const int p = queue[head];
      for (std::size_t s = 0; s < gens.size() && ok; ++s) {
        const int q = P.mul(p, gens[s]);
        const int v = G.mul(d[p], cm.apply(p, images[s]));
        if (d[q] < 0) {
          d[q] = v;
          queue.push_back(q);
        } else if (d[q] != v) {
          ok = false;
        }
      }
    }
    if (!ok) return;
    // the generator values might still violate the law on products not reached along edges
    for (int p = 0; p < P.order() && ok; ++p)
      for (int q = 0; q < P.order() && ok; ++q)
        ok = d[P.mul(p, q)] == G.mul(d[p], cm.apply(p, d[q]));
    if (ok) out.push_back(d);
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// sigma_d(p) = delta(d(p)) p.
inline std::vector<int> derivation_sigma(const CrossedModule& cm, const std::vector<int>& d) {
  std::vector<int> s(cm.pi->order());
  for (int p = 0; p < cm.pi->order(); ++p) s[p] = cm.pi->mul(cm.d(d[p]), p);
  return s;
}

/// theta_d(x) = d(delta(x)) x.
inline std::vector<int> derivation_theta(const CrossedModule& cm, const std::vector<int>& d) {
  std::vector<int> t(cm.g->order());
  for (int x = 0; x < cm.g->order(); ++x) t[x] = cm.g->mul(d[cm.d(x)], x);
  return t;
}

/// Whitehead product (d1 * d2)(p) = d1(sigma_{d2}(p)) d2(p).
inline std::vector<int> whitehead_product(const CrossedModule& cm, const std::vector<int>& d1,
                                          const std::vector<int>& d2) {
  const auto s2 = derivation_sigma(cm, d2);
  std::vector<int> out(cm.pi->order());
  for (int p = 0; p < cm.pi->order(); ++p) out[p] = cm.g->mul(d1[s2[p]], d2[p]);
  return out;
}

struct NorrieOptions {
  int order_bound = 64;
};

/// Norrie's crossed square of a crossed module delta: G -> Pi:
///
///     G ----eta----> Der*(Pi, G)
///     |delta            |Delta
///     v                 v
///     Pi ---gamma---> Aut(G -> Pi)
///
/// Der* is the group of regular derivations under the Whitehead product;
/// Aut(G -> Pi) is the group of compatible pairs (alpha, beta), acting on G
/// by alpha, on Pi by beta and on derivations by alpha . d . beta^-1.
/// eta(x)(p) = x ^p x^-1, Delta(d) = (theta_d, sigma_d), gamma(p) = (^p -, i_p),
/// and the pairing is h(d, p) = d(p).
inline CrossedSquare norrie_square(const CrossedModule& cm, const NorrieOptions& opt = {}) {
  std::string why;
  if (!verify_crossed_module(cm, &why)) throw PreconditionError("not a crossed module: " + why);
  const auto& G = *cm.g;
  const auto& P = *cm.pi;
  if (G.order() * P.order() > opt.order_bound)
    throw CapacityError("Norrie square needs |g| * |pi| <= " + std::to_string(opt.order_bound));

  auto is_bijection = [](const std::vector<int>& f) {
    std::vector<char> hit(f.size(), 0);
    for (int v : f) {
      if (hit[v]) return false;
      hit[v] = 1;
    }
    return true;
  };
  std::vector<std::vector<int>> ders;
  for (auto& d : derivations(cm))
    if (is_bijection(derivation_sigma(cm, d))) ders.push_back(d);
  std::map<std::vector<int>, int> der_index;
  for (int i = 0; i < static_cast<int>(ders.size()); ++i) der_index[ders[i]] = i;
  GroupPtr Dg = share(FiniteGroup::from_function("Der*", static_cast<int>(ders.size()), [&](int a, int b) {
    return der_index.at(whitehead_product(cm, ders[a], ders[b]));
  }));

  AutGroup autG = automorphisms(cm.g);
  AutGroup autP = automorphisms(cm.pi);
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < autG.order(); ++a)
    for (int b = 0; b < autP.order(); ++b) {
      bool ok = true;
      for (int x = 0; x < G.order() && ok; ++x) ok = cm.d(autG.apply(a, x)) == autP.apply(b, cm.d(x));
      for (int p = 0; p < P.order() && ok; ++p)
        for (int x = 0; x < G.order() && ok; ++x)
          ok = autG.apply(a, cm.apply(p, x)) == cm.apply(autP.apply(b, p), autG.apply(a, x));
      if (ok) pairs.emplace_back(a, b);
    }
  std::map<std::pair<int, int>, int> pair_index;
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i) pair_index[pairs[i]] = i;
  GroupPtr Ag = share(FiniteGroup::from_function("Aut(xmod)", static_cast<int>(pairs.size()), [&](int i, int j) {
    return pair_index.at({autG.group->mul(pairs[i].first, pairs[j].first),
                          autP.group->mul(pairs[i].second, pairs[j].second)});
  }));
  const int nd = Dg->order(), na = Ag->order();

  CrossedSquare sq;
  sq.l = cm.g;
  sq.m = Dg;
  sq.n = cm.pi;
  sq.p = Ag;

  sq.lm = GroupHom{cm.g, Dg, std::vector<int>(G.order())};
  for (int x = 0; x < G.order(); ++x) {
    std::vector<int> eta(P.order());
    for (int p = 0; p < P.order(); ++p) eta[p] = G.mul(x, cm.apply(p, G.inv(x)));
    sq.lm.map[x] = der_index.at(eta);
  }
  sq.ln = GroupHom{cm.g, cm.pi, cm.delta.map};
  sq.mp = GroupHom{Dg, Ag, std::vector<int>(nd)};
  for (int i = 0; i < nd; ++i)
    sq.mp.map[i] = pair_index.at({autG.index_of(derivation_theta(cm, ders[i])),
                                  autP.index_of(derivation_sigma(cm, ders[i]))});
  sq.np = GroupHom{cm.pi, Ag, std::vector<int>(P.order())};
  for (int p = 0; p < P.order(); ++p) {
    std::vector<int> on_g(G.order()), on_p(P.order());
    for (int x = 0; x < G.order(); ++x) on_g[x] = cm.apply(p, x);
    for (int q = 0; q < P.order(); ++q) on_p[q] = P.conj(p, q);
    sq.np.map[p] = pair_index.at({autG.index_of(on_g), autP.index_of(on_p)});
  }

  std::vector<int> tl(static_cast<std::size_t>(na) * G.order()), tn(static_cast<std::size_t>(na) * P.order()),
      tm(static_cast<std::size_t>(na) * nd);
  for (int i = 0; i < na; ++i) {
    const auto [a, b] = pairs[i];
    const int binv = autP.group->inv(b);
    for (int x = 0; x < G.order(); ++x) tl[static_cast<std::size_t>(i) * G.order() + x] = autG.apply(a, x);
    for (int p = 0; p < P.order(); ++p) tn[static_cast<std::size_t>(i) * P.order() + p] = autP.apply(b, p);
    for (int j = 0; j < nd; ++j) {
      std::vector<int> d(P.order());
      for (int p = 0; p < P.order(); ++p) d[p] = autG.apply(a, ders[j][autP.apply(binv, p)]);
      tm[static_cast<std::size_t>(i) * nd + j] = der_index.at(d);
    }
  }
  sq.act_l = GroupAction(na, G.order(), tl);
  sq.act_m = GroupAction(na, nd, tm);
  sq.act_n = GroupAction(na, P.order(), tn);
  sq.h.resize(static_cast<std::size_t>(nd) * P.order());
  for (int j = 0; j < nd; ++j)
    for (int p = 0; p < P.order(); ++p) sq.h[static_cast<std::size_t>(j) * P.order() + p] = ders[j][p];
  return sq;
}

}  // namespace gerbecoh
