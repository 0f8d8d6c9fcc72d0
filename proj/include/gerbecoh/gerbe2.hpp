#pragma once

// Cocycle quadruples (lam, mtil, g, nu) with values in a strict crossed square
//
//        L --lm--> M
//        |ln       |mp
//        N --np--> P
//
// lam_ij in P, mtil_ijk in M, g_ijk in N, nu_ijkl in L, all on increasing
// tuples. Exponents ^x y are actions of P, with N and M acting through np and
// mp; lam(x) for x in N is the P action on N. Everything goes through Ops
// below so the two long equations cannot drift apart in convention.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gerbecoh/cochain.hpp"
#include "gerbecoh/coh.hpp"
#include "gerbecoh/enumerate.hpp"
#include "gerbecoh/xmod.hpp"

namespace gerbecoh {

using SquarePtr = std::shared_ptr<const CrossedSquare>;

inline SquarePtr share(CrossedSquare s) { return std::make_shared<const CrossedSquare>(std::move(s)); }

/// {m, x} = h(m, x). In the cocycle equations the second argument is
/// ^g_ijk lam_ik(g_klm), which makes the result an arrow
/// I -> lam_ij lam_jk(g_klm) . (^g_ijk lam_ik(g_klm))^-1.
inline int bracket(const CrossedSquare& sq, int m, int x) { return sq.pair(m, x); }

namespace detail {

struct Ops {
  const CrossedSquare& sq;
  const FiniteGroup& L;
  const FiniteGroup& M;
  const FiniteGroup& N;
  const FiniteGroup& P;

  explicit Ops(const CrossedSquare& s) : sq(s), L(*s.l), M(*s.m), N(*s.n), P(*s.p) {}

  int pn(int p, int x) const { return sq.p_on_n(p, x); }
  int pm(int p, int x) const { return sq.p_on_m(p, x); }
  int pl(int p, int x) const { return sq.p_on_l(p, x); }
  int nm(int n, int x) const { return sq.n_on_m(n, x); }
  int nl(int n, int x) const { return sq.n_on_l(n, x); }
  int h(int m, int n) const { return sq.pair(m, n); }
};

}  // namespace detail

struct QuadrupleCocycle {
  NervePtr nerve;
  SquarePtr square;
  std::vector<int> lam;   // P, per pair face
  std::vector<int> mtil;  // M, per triple face
  std::vector<int> g;     // N, per triple face
  std::vector<int> nu;    // L, per quadruple face

  int lam_at(int i, int j) const { return lam[nerve->position({i, j})]; }
  int mtil_at(int i, int j, int k) const { return mtil[nerve->position({i, j, k})]; }
  int g_at(int i, int j, int k) const { return g[nerve->position({i, j, k})]; }
  int nu_at(int i, int j, int k, int l) const { return nu[nerve->position({i, j, k, l})]; }

  /// lam, then (g, mtil) per triple face, then nu.
  std::vector<int> flat() const {
    std::vector<int> v = lam;
    for (std::size_t t = 0; t < g.size(); ++t) {
      v.push_back(g[t]);
      v.push_back(mtil[t]);
    }
    v.insert(v.end(), nu.begin(), nu.end());
    return v;
  }
  void assign_flat(const std::vector<int>& v) {
    std::size_t at = 0;
    for (auto& x : lam) x = v[at++];
    for (std::size_t t = 0; t < g.size(); ++t) {
      g[t] = v[at++];
      mtil[t] = v[at++];
    }
    for (auto& x : nu) x = v[at++];
  }

  static QuadrupleCocycle trivial(NervePtr n, SquarePtr sq) {
    const auto p = n->faces_of_size(2).size(), t = n->faces_of_size(3).size(), q = n->faces_of_size(4).size();
    return QuadrupleCocycle{std::move(n), std::move(sq), std::vector<int>(p, 0), std::vector<int>(t, 0),
                            std::vector<int>(t, 0), std::vector<int>(q, 0)};
  }
  bool operator==(const QuadrupleCocycle& o) const {
    return lam == o.lam && mtil == o.mtil && g == o.g && nu == o.nu;
  }
};

/// (r, ztil, theta, b): r_i in P per index, ztil_ij in M and theta_ij in N per
/// pair face, b_ijk in L per triple face.
struct QuadrupleCoboundary {
  std::vector<int> r;
  std::vector<int> ztil;
  std::vector<int> theta;
  std::vector<int> b;

  static QuadrupleCoboundary identity(const Nerve& n) {
    return QuadrupleCoboundary{std::vector<int>(n.index_count(), 0),
                               std::vector<int>(n.faces_of_size(2).size(), 0),
                               std::vector<int>(n.faces_of_size(2).size(), 0),
                               std::vector<int>(n.faces_of_size(3).size(), 0)};
  }
};

namespace detail {

inline void check_quadruple_shape(const QuadrupleCocycle& q) {
  require_structure(q.nerve && q.square, "quadruple is missing its nerve or square");
  check_square_shape(*q.square);
  const auto& n = *q.nerve;
  const auto& sq = *q.square;
  auto field = [](const std::vector<int>& v, std::size_t count, int order, const char* name) {
    require_structure(v.size() == count, std::string("quadruple field ") + name + " has the wrong length");
    for (int x : v) require_structure(x >= 0 && x < order, std::string("quadruple field ") + name + " out of range");
  };
  field(q.lam, n.faces_of_size(2).size(), sq.p->order(), "lam");
  field(q.mtil, n.faces_of_size(3).size(), sq.m->order(), "mtil");
  field(q.g, n.faces_of_size(3).size(), sq.n->order(), "g");
  field(q.nu, n.faces_of_size(4).size(), sq.l->order(), "nu");
}

inline void check_coboundary_shape(const QuadrupleCocycle& q, const QuadrupleCoboundary& c) {
  const auto& n = *q.nerve;
  const auto& sq = *q.square;
  auto field = [](const std::vector<int>& v, std::size_t count, int order, const char* name) {
    require_structure(v.size() == count, std::string("coboundary field ") + name + " has the wrong length");
    for (int x : v) require_structure(x >= 0 && x < order, std::string("coboundary field ") + name + " out of range");
  };
  field(c.r, static_cast<std::size_t>(n.index_count()), sq.p->order(), "r");
  field(c.ztil, n.faces_of_size(2).size(), sq.m->order(), "ztil");
  field(c.theta, n.faces_of_size(2).size(), sq.n->order(), "theta");
  field(c.b, n.faces_of_size(3).size(), sq.l->order(), "b");
}

// The checks below take any Q with lam_at / mtil_at / g_at / nu_at, so the
// enumerator can run them on partial assignments.

template <class Q>
bool mtil_target_ok(const Ops& o, const Q& q, int i, int j, int k) {
  const int want = o.P.mul({q.lam_at(i, j), q.lam_at(j, k), o.P.inv(q.lam_at(i, k)),
                            o.P.inv(o.sq.np(q.g_at(i, j, k)))});
  return o.sq.mp(q.mtil_at(i, j, k)) == want;
}

template <class Q>
bool nu_target_ok(const Ops& o, const Q& q, int i, int j, int k, int l) {
  const int want = o.N.mul({q.g_at(i, j, k), q.g_at(i, k, l), o.N.inv(q.g_at(i, j, l)),
                            o.N.inv(o.pn(q.lam_at(i, j), q.g_at(j, k, l)))});
  return o.sq.ln(q.nu_at(i, j, k, l)) == want;
}

/// mtil_ijk . ^g_ijk mtil_ikl . lm(nu_ijkl) = ^lam_ij mtil_jkl . ^lam_ij(g_jkl) mtil_ijl
template <class Q>
bool first_equation_ok(const Ops& o, const Q& q, int i, int j, int k, int l) {
  const int lhs = o.M.mul({q.mtil_at(i, j, k), o.nm(q.g_at(i, j, k), q.mtil_at(i, k, l)),
                           o.sq.lm(q.nu_at(i, j, k, l))});
  const int rhs = o.M.mul(o.pm(q.lam_at(i, j), q.mtil_at(j, k, l)),
                          o.nm(o.pn(q.lam_at(i, j), q.g_at(j, k, l)), q.mtil_at(i, j, l)));
  return lhs == rhs;
}

/// nu_ijkl . ^lam_ij(g_jkl) nu_ijlm . lam_ij(nu_jklm)
///   = ^g_ijk nu_iklm . {mtil_ijk, g_klm}^-1 . ^lam_ij lam_jk(g_klm) nu_ijkm
template <class Q>
bool second_equation_ok(const Ops& o, const Q& q, int i, int j, int k, int l, int m) {
  const int lij = q.lam_at(i, j);
  const int gijk = q.g_at(i, j, k);
  const int lhs = o.L.mul({q.nu_at(i, j, k, l), o.nl(o.pn(lij, q.g_at(j, k, l)), q.nu_at(i, j, l, m)),
                           o.pl(lij, q.nu_at(j, k, l, m))});
  const int moved = o.N.conj(gijk, o.pn(q.lam_at(i, k), q.g_at(k, l, m)));
  const int br = o.h(q.mtil_at(i, j, k), moved);
  const int rhs = o.L.mul({o.nl(gijk, q.nu_at(i, k, l, m)), o.L.inv(br),
                           o.nl(o.pn(o.P.mul(lij, q.lam_at(j, k)), q.g_at(k, l, m)), q.nu_at(i, j, k, m))});
  return lhs == rhs;
}

inline void require_valid_square(const CrossedSquare& sq) {
  std::string why;
  if (!verify_crossed_square(sq, &why)) throw StructuralError("coefficient square is not a crossed square: " + why);
}

}  // namespace detail

/// Target compatibilities, the first equation on every quadruple face and the
/// second on every quintuple face. On failure `why` names the face.
inline bool verify_quadruple(const QuadrupleCocycle& q, std::string* why = nullptr) {
  detail::check_quadruple_shape(q);
  detail::require_valid_square(*q.square);
  const detail::Ops o(*q.square);
  auto fail = [&](const std::string& what, const Face& f) {
    if (why) {
      *why = what + " fails on {";
      for (std::size_t t = 0; t < f.size(); ++t) *why += (t ? ", " : "") + std::to_string(f[t]);
      *why += "}";
    }
    return false;
  };
  for (const auto& f : q.nerve->faces_of_size(3))
    if (!detail::mtil_target_ok(o, q, f[0], f[1], f[2])) return fail("target of mtil", f);
  for (const auto& f : q.nerve->faces_of_size(4)) {
    if (!detail::nu_target_ok(o, q, f[0], f[1], f[2], f[3])) return fail("target of nu", f);
    if (!detail::first_equation_ok(o, q, f[0], f[1], f[2], f[3])) return fail("first cocycle equation", f);
  }
  for (const auto& f : q.nerve->faces_of_size(5))
    if (!detail::second_equation_ok(o, q, f[0], f[1], f[2], f[3], f[4])) return fail("second cocycle equation", f);
  return true;
}

namespace detail {

// Primed components, face by face. `dst` must already hold the primed
// components the formula reads (lam' for g', lam' and g' for mtil', and so on).

template <class C>
int lam_prime(const Ops& o, const QuadrupleCocycle& q, const C& c, int i, int j) {
  return o.P.mul({o.P.inv(o.sq.mp(c.ztil_at(i, j))), o.sq.np(c.theta_at(i, j)), c.r_at(i), q.lam_at(i, j),
                  o.P.inv(c.r_at(j))});
}

template <class Q, class C>
int g_prime(const Ops& o, const QuadrupleCocycle& q, const Q& dst, const C& c, int i, int j, int k) {
  return o.N.mul({o.N.inv(o.sq.ln(c.b_at(i, j, k))), o.pn(dst.lam_at(i, j), c.theta_at(j, k)), c.theta_at(i, j),
                  o.pn(c.r_at(i), q.g_at(i, j, k)), o.N.inv(c.theta_at(i, k))});
}

/// Solves ^lam'_ij(th_jk) zt_ij . ^lam'_ij zt_jk . mtil'_ijk
///        = ^(lam'_ij(th_jk) th_ij r_i) mtil_ijk . lm(b_ijk) . ^g'_ijk zt_ik
template <class Q, class C>
int mtil_prime(const Ops& o, const QuadrupleCocycle& q, const Q& dst, const C& c, int i, int j, int k) {
  const int lp = dst.lam_at(i, j);
  const int tw = o.pn(lp, c.theta_at(j, k));
  const int left = o.M.mul(o.nm(tw, c.ztil_at(i, j)), o.pm(lp, c.ztil_at(j, k)));
  const int mover = o.P.mul({o.sq.np(tw), o.sq.np(c.theta_at(i, j)), c.r_at(i)});
  const int right = o.M.mul({o.pm(mover, q.mtil_at(i, j, k)), o.sq.lm(c.b_at(i, j, k)),
                             o.nm(dst.g_at(i, j, k), c.ztil_at(i, k))});
  return o.M.mul(o.M.inv(left), right);
}

/// Solves
///   ^(A B th_ij r_i) nu_ijkl . ^(A B) {zt_ij, g_jkl} . lam'_ij(b_jkl) . ^lam'_ij(g'_jkl) b_ijl
///     = ^A b_ijk . {mtil'_ijk, th_kl} . ^g'_ijk b_ikl . nu'_ijkl
/// with A = lam'_ij lam'_jk(th_kl), B = lam'_ij(th_jk),
/// {zt_ij, g_jkl} = h(zt_ij, lam'_ij(r_j(g_jkl))) and
/// {mtil'_ijk, th_kl} = h(mtil'_ijk, ^g'_ijk lam'_ik(th_kl)). The zt bracket
/// enters with exponent +1: with -1 the two sides have different targets
/// already in the commutator square.
template <class Q, class C>
int nu_prime(const Ops& o, const QuadrupleCocycle& q, const Q& dst, const C& c, int i, int j, int k, int l) {
  const int lij = dst.lam_at(i, j);
  const int A = o.pn(o.P.mul(lij, dst.lam_at(j, k)), c.theta_at(k, l));
  const int B = o.pn(lij, c.theta_at(j, k));
  const int AB = o.N.mul(A, B);
  const int first_mover = o.P.mul({o.sq.np(AB), o.sq.np(c.theta_at(i, j)), c.r_at(i)});
  const int zb = o.h(c.ztil_at(i, j), o.pn(lij, o.pn(c.r_at(j), q.g_at(j, k, l))));
  const int lhs = o.L.mul({o.pl(first_mover, q.nu_at(i, j, k, l)), o.nl(AB, zb),
                           o.pl(lij, c.b_at(j, k, l)), o.nl(o.pn(lij, dst.g_at(j, k, l)), c.b_at(i, j, l))});
  const int gp = dst.g_at(i, j, k);
  const int mb = o.h(dst.mtil_at(i, j, k), o.N.conj(gp, o.pn(dst.lam_at(i, k), c.theta_at(k, l))));
  const int pre = o.L.mul({o.nl(A, c.b_at(i, j, k)), mb, o.nl(gp, c.b_at(i, k, l))});
  return o.L.mul(o.L.inv(pre), lhs);
}

struct CoboundaryView {
  const Nerve& nerve;
  const QuadrupleCoboundary& c;
  int r_at(int i) const { return c.r[i]; }
  int ztil_at(int i, int j) const { return c.ztil[nerve.position({i, j})]; }
  int theta_at(int i, int j) const { return c.theta[nerve.position({i, j})]; }
  int b_at(int i, int j, int k) const { return c.b[nerve.position({i, j, k})]; }
};

}  // namespace detail

/// The cohomologous quadruple: lam' and g' come from the targets of ztil and b,
/// mtil' and nu' are solved from the two coboundary equations.
inline QuadrupleCocycle apply_quadruple_coboundary(const QuadrupleCocycle& q, const QuadrupleCoboundary& c) {
  detail::check_quadruple_shape(q);
  detail::check_coboundary_shape(q, c);
  const detail::Ops o(*q.square);
  const auto& n = *q.nerve;
  const detail::CoboundaryView cv{n, c};
  QuadrupleCocycle out = q;
  const auto& pairs = n.faces_of_size(2);
  const auto& tri = n.faces_of_size(3);
  const auto& quad = n.faces_of_size(4);
  for (std::size_t s = 0; s < pairs.size(); ++s) out.lam[s] = detail::lam_prime(o, q, cv, pairs[s][0], pairs[s][1]);
  for (std::size_t s = 0; s < tri.size(); ++s)
    out.g[s] = detail::g_prime(o, q, out, cv, tri[s][0], tri[s][1], tri[s][2]);
  for (std::size_t s = 0; s < tri.size(); ++s)
    out.mtil[s] = detail::mtil_prime(o, q, out, cv, tri[s][0], tri[s][1], tri[s][2]);
  for (std::size_t s = 0; s < quad.size(); ++s)
    out.nu[s] = detail::nu_prime(o, q, out, cv, quad[s][0], quad[s][1], quad[s][2], quad[s][3]);
  return out;
}

namespace detail {

inline bool same_square(const CrossedSquare& a, const CrossedSquare& b) {
  return a.l->same_table(*b.l) && a.m->same_table(*b.m) && a.n->same_table(*b.n) && a.p->same_table(*b.p) &&
         a.lm.map == b.lm.map && a.ln.map == b.ln.map && a.mp.map == b.mp.map && a.np.map == b.np.map &&
         a.act_l == b.act_l && a.act_m == b.act_m && a.act_n == b.act_n && a.h == b.h;
}

/// Total number of coboundary tuples, as a double since it overflows quickly.
inline double coboundary_count(const Nerve& n, const CrossedSquare& sq) {
  double total = 1;
  for (int i = 0; i < n.index_count(); ++i) total *= sq.p->order();
  for (std::size_t s = 0; s < n.faces_of_size(2).size(); ++s) total *= double(sq.m->order()) * sq.n->order();
  for (std::size_t s = 0; s < n.faces_of_size(3).size(); ++s) total *= sq.l->order();
  return total;
}

/// Lays out a coboundary as search variables: r, then (theta, ztil) per pair, then b.
struct CoboundaryLayout {
  const Nerve& nerve;
  int indices, pairs;
  explicit CoboundaryLayout(const Nerve& n)
      : nerve(n), indices(n.index_count()), pairs(static_cast<int>(n.faces_of_size(2).size())) {}
  int r(int i) const { return i; }
  int theta(int i, int j) const { return indices + 2 * nerve.position({i, j}); }
  int ztil(int i, int j) const { return theta(i, j) + 1; }
  int b(int i, int j, int k) const { return indices + 2 * pairs + nerve.position({i, j, k}); }
};

struct AssignmentView {
  const CoboundaryLayout& lay;
  const std::vector<int>& a;
  int r_at(int i) const { return a[lay.r(i)]; }
  int ztil_at(int i, int j) const { return a[lay.ztil(i, j)]; }
  int theta_at(int i, int j) const { return a[lay.theta(i, j)]; }
  int b_at(int i, int j, int k) const { return a[lay.b(i, j, k)]; }
};

inline QuadrupleCoboundary coboundary_from_assignment(const CoboundaryLayout& lay, const std::vector<int>& a) {
  QuadrupleCoboundary c = QuadrupleCoboundary::identity(lay.nerve);
  for (int i = 0; i < lay.indices; ++i) c.r[i] = a[lay.r(i)];
  for (const auto& f : lay.nerve.faces_of_size(2)) {
    c.theta[lay.nerve.position(f)] = a[lay.theta(f[0], f[1])];
    c.ztil[lay.nerve.position(f)] = a[lay.ztil(f[0], f[1])];
  }
  for (const auto& f : lay.nerve.faces_of_size(3)) c.b[lay.nerve.position(f)] = a[lay.b(f[0], f[1], f[2])];
  return c;
}

}  // namespace detail

/// A coboundary carrying q1 to q2, found by backtracking with every primed
/// component checked as soon as the data it depends on is assigned.
inline std::optional<QuadrupleCoboundary> find_quadruple_coboundary(const QuadrupleCocycle& q1,
                                                                    const QuadrupleCocycle& q2, Budget& budget) {
  detail::check_quadruple_shape(q1);
  detail::check_quadruple_shape(q2);
  detail::require_pre(*q1.nerve == *q2.nerve, "quadruples live on different nerves");
  detail::require_pre(detail::same_square(*q1.square, *q2.square), "quadruples have different coefficients");
  detail::require_pre(verify_quadruple(q1), "first quadruple is not a cocycle");
  detail::require_pre(verify_quadruple(q2), "second quadruple is not a cocycle");
  const auto& n = *q1.nerve;
  const auto& sq = *q1.square;
  const detail::Ops o(sq);
  const detail::CoboundaryLayout lay(n);
  SearchSpace sp;
  for (int i = 0; i < n.index_count(); ++i) sp.add_variable(sq.p->order());
  for (std::size_t s = 0; s < n.faces_of_size(2).size(); ++s) {
    sp.add_variable(sq.n->order());
    sp.add_variable(sq.m->order());
  }
  for (std::size_t s = 0; s < n.faces_of_size(3).size(); ++s) sp.add_variable(sq.l->order());
  // q2 supplies the primed components read by later formulas: once a face
  // check has passed they agree with what the coboundary would produce.
  for (const auto& f : n.faces_of_size(2)) {
    const int i = f[0], j = f[1];
    sp.add_check({lay.r(i), lay.r(j), lay.theta(i, j), lay.ztil(i, j)}, [&, i, j](const std::vector<int>& a) {
      return detail::lam_prime(o, q1, detail::AssignmentView{lay, a}, i, j) == q2.lam_at(i, j);
    });
  }
  for (const auto& f : n.faces_of_size(3)) {
    const int i = f[0], j = f[1], k = f[2];
    const std::vector<int> vars{lay.r(i),         lay.theta(i, j), lay.theta(j, k), lay.theta(i, k),
                                lay.ztil(i, j),   lay.ztil(j, k),  lay.ztil(i, k),  lay.b(i, j, k)};
    sp.add_check(vars, [&, i, j, k](const std::vector<int>& a) {
      const detail::AssignmentView v{lay, a};
      return detail::g_prime(o, q1, q2, v, i, j, k) == q2.g_at(i, j, k) &&
             detail::mtil_prime(o, q1, q2, v, i, j, k) == q2.mtil_at(i, j, k);
    });
  }
  for (const auto& f : n.faces_of_size(4)) {
    const int i = f[0], j = f[1], k = f[2], l = f[3];
    const std::vector<int> vars{lay.b(i, j, k), lay.b(i, j, l), lay.b(i, k, l), lay.b(j, k, l)};
    sp.add_check(vars, [&, i, j, k, l](const std::vector<int>& a) {
      return detail::nu_prime(o, q1, q2, detail::AssignmentView{lay, a}, i, j, k, l) == q2.nu_at(i, j, k, l);
    });
  }
  auto sol = find_solution(sp, budget);
  if (!sol) return std::nullopt;
  return detail::coboundary_from_assignment(lay, *sol);
}

inline bool are_cohomologous(const QuadrupleCocycle& q1, const QuadrupleCocycle& q2, Budget& budget) {
  return find_quadruple_coboundary(q1, q2, budget).has_value();
}

inline bool are_cohomologous(const QuadrupleCocycle& q1, const QuadrupleCocycle& q2,
                             std::uint64_t budget = kDefaultBudget) {
  Budget b(budget);
  return are_cohomologous(q1, q2, b);
}

/// Every cocycle quadruple on `nerve`, as a search space over the flat layout.
inline SearchSpace quadruple_search_space(const NervePtr& nerve, const SquarePtr& square) {
  const auto& n = *nerve;
  const auto& sq = *square;
  const int np = static_cast<int>(n.faces_of_size(2).size());
  const int nt = static_cast<int>(n.faces_of_size(3).size());
  SearchSpace sp;
  for (int s = 0; s < np; ++s) sp.add_variable(sq.p->order());
  for (int s = 0; s < nt; ++s) {
    sp.add_variable(sq.n->order());
    sp.add_variable(sq.m->order());
  }
  for (std::size_t s = 0; s < n.faces_of_size(4).size(); ++s) sp.add_variable(sq.l->order());
  struct View {
    const Nerve& n;
    int np, nt;
    const std::vector<int>& a;
    int lam_at(int i, int j) const { return a[n.position({i, j})]; }
    int g_at(int i, int j, int k) const { return a[np + 2 * n.position({i, j, k})]; }
    int mtil_at(int i, int j, int k) const { return a[np + 2 * n.position({i, j, k}) + 1]; }
    int nu_at(int i, int j, int k, int l) const { return a[np + 2 * nt + n.position({i, j, k, l})]; }
  };
  // The checks outlive this call, so they share ownership of the square.
  struct Ctx {
    SquarePtr keep;
    detail::Ops ops;
    explicit Ctx(SquarePtr s) : keep(std::move(s)), ops(*keep) {}
  };
  auto ctx = std::make_shared<const Ctx>(square);
  auto lam = [&](int i, int j) { return n.position({i, j}); };
  auto gv = [&](int i, int j, int k) { return np + 2 * n.position({i, j, k}); };
  auto mv = [&](int i, int j, int k) { return np + 2 * n.position({i, j, k}) + 1; };
  auto nv = [&](int i, int j, int k, int l) { return np + 2 * nt + n.position({i, j, k, l}); };
  for (const auto& f : n.faces_of_size(3)) {
    const int i = f[0], j = f[1], k = f[2];
    sp.add_check({lam(i, j), lam(j, k), lam(i, k), gv(i, j, k), mv(i, j, k)},
                 [=](const std::vector<int>& a) {
                   return detail::mtil_target_ok(ctx->ops, View{*nerve, np, nt, a}, i, j, k);
                 });
  }
  for (const auto& f : n.faces_of_size(4)) {
    const int i = f[0], j = f[1], k = f[2], l = f[3];
    sp.add_check({nv(i, j, k, l), mv(i, j, k), mv(i, k, l), mv(j, k, l), mv(i, j, l)},
                 [=](const std::vector<int>& a) {
                   const View v{*nerve, np, nt, a};
                   return detail::nu_target_ok(ctx->ops, v, i, j, k, l) && detail::first_equation_ok(ctx->ops, v, i, j, k, l);
                 });
  }
  for (const auto& f : n.faces_of_size(5)) {
    std::vector<int> vars;
    for (int x = 0; x < 5; ++x)
      for (int y = x + 1; y < 5; ++y)
        for (int z = y + 1; z < 5; ++z)
          for (int w = z + 1; w < 5; ++w) vars.push_back(nv(f[x], f[y], f[z], f[w]));
    vars.push_back(mv(f[0], f[1], f[2]));
    sp.add_check(vars, [=](const std::vector<int>& a) {
      return detail::second_equation_ok(ctx->ops, View{*nerve, np, nt, a}, f[0], f[1], f[2], f[3], f[4]);
    });
  }
  return sp;
}

struct QuadrupleClassification {
  Classification classes;
  std::vector<QuadrupleCocycle> representatives;
  std::size_t count() const { return representatives.size(); }
};

/// All cocycle quadruples, merged under every coboundary tuple. The work is
/// (cocycles) x (coboundaries), charged against the budget.
inline QuadrupleClassification classify_quadruples(const NervePtr& nerve, const SquarePtr& square,
                                                   const EnumOptions& opt = {}) {
  detail::require_valid_square(*square);
  const auto& n = *nerve;
  const auto& sq = *square;
  {
    Budget probe(opt.budget);
    probe.require_within(detail::coboundary_count(n, sq), "coboundary enumeration");
  }
  const SearchSpace sp = quadruple_search_space(nerve, square);
  const QuadrupleCocycle proto = QuadrupleCocycle::trivial(nerve, square);
  const detail::CoboundaryLayout lay(n);
  std::vector<int> sizes(static_cast<std::size_t>(n.index_count()), sq.p->order());
  for (std::size_t s = 0; s < n.faces_of_size(2).size(); ++s) {
    sizes.push_back(sq.n->order());
    sizes.push_back(sq.m->order());
  }
  sizes.resize(sizes.size() + n.faces_of_size(3).size(), sq.l->order());
  auto moves = [&](const std::vector<int>& flat, const auto& emit) {
    QuadrupleCocycle q = proto;
    q.assign_flat(flat);
    for_each_tuple(sizes, [&](const std::vector<int>& a) {
      emit(apply_quadruple_coboundary(q, detail::coboundary_from_assignment(lay, a)).flat());
    });
  };
  QuadrupleClassification out{classify_orbits(sp, moves, opt), {}};
  for (const auto& rep : out.classes.representatives) {
    QuadrupleCocycle q = proto;
    q.assign_flat(rep);
    out.representatives.push_back(q);
  }
  return out;
}

}  // namespace gerbecoh
