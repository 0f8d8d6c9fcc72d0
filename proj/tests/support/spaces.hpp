#pragma once

// Hand-built torsors and bitorsors for tests. Fibers are copies of G with G
// acting by left translation; everything else is spelled out here rather
// than taken from the library constructions under test.

#include <random>
#include <vector>

#include "gerbecoh/torsor.hpp"

namespace spaces {

using namespace gerbecoh;

/// Right action p . h = p phi_x(h); link (x, y) maps p -> p k_l.
inline Bitorsor translation_space(const FiniteSpace& base, const GroupPtr& g, const AutGroup& aut,
                                  const std::vector<int>& phi, const std::vector<int>& k) {
  const auto& G = *g;
  const int n = G.order();
  Space s;
  s.left = GroupBundle::constant(base, g);
  s.right = GroupBundle::constant(base, g);
  s.size.assign(base.points, n);
  s.lact.resize(base.points);
  s.ract.resize(base.points);
  for (int x = 0; x < base.points; ++x) {
    s.lact[x].resize(static_cast<std::size_t>(n) * n);
    s.ract[x].resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
      for (int p = 0; p < n; ++p) {
        s.lact[x][static_cast<std::size_t>(a) * n + p] = G.mul(a, p);
        s.ract[x][static_cast<std::size_t>(p) * n + a] = G.mul(p, aut.apply(phi[x], a));
      }
  }
  for (std::size_t l = 0; l < base.links.size(); ++l) {
    std::vector<int> m(n);
    for (int p = 0; p < n; ++p) m[p] = G.mul(p, k[l]);
    s.links.push_back(m);
  }
  return s;
}

/// Inner automorphism index of conjugation by x.
inline int inner(const FiniteGroup& G, const AutGroup& aut, int x) {
  std::vector<int> m(G.order());
  for (int y = 0; y < G.order(); ++y) m[y] = G.conj(x, y);
  return aut.index_of(m);
}

/// A random (G, G)-bitorsor on the pseudo-circle. Links are 0<2, 0<3, 1<2, 1<3
/// and a link (x, y) with multiplier k needs phi_x = i_k phi_y.
inline Bitorsor random_pseudo_circle_bitorsor(const GroupPtr& g, const AutGroup& aut, std::mt19937& rng) {
  const auto& G = *g;
  const auto& A = *aut.group;
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  const int n = G.order();
  const int k02 = pick(n), k03 = pick(n), k12 = pick(n);
  const auto z = center(G);
  const int k13 = G.mul({k12, G.inv(k02), k03, z[pick(static_cast<int>(z.size()))]});
  std::vector<int> phi(4);
  phi[0] = pick(A.order());
  phi[2] = A.mul(A.inv(inner(G, aut, k02)), phi[0]);
  phi[3] = A.mul(A.inv(inner(G, aut, k03)), phi[0]);
  phi[1] = A.mul(inner(G, aut, k12), phi[2]);
  return translation_space(pseudo_circle(), g, aut, phi, {k02, k03, k12, k13});
}

/// The left G-torsor on the pseudo-circle with link multipliers k.
inline Torsor pseudo_circle_torsor(const GroupPtr& g, const std::vector<int>& k) {
  const AutGroup aut = automorphisms(g);
  return left_torsor(translation_space(pseudo_circle(), g, aut, std::vector<int>(4, 0), k));
}

struct Glued {
  Bitorsor space;
  Cover cover;
  std::vector<Section> sections;
};

/// The (G, G)-bitorsor on the face poset of the nerve with s_i = g_ij s_j and
/// s_i h = u_i(h) s_i. At a face with least vertex m the fiber is G in
/// coordinates relative to s_m.
inline Glued glue_bitorsor(const NervePtr& nerve, const GroupPtr& g, const AutGroup& aut,
                           const std::vector<int>& gij, const std::vector<int>& u) {
  const auto& G = *g;
  Glued out;
  out.cover = canonical_cover(*nerve);
  const auto& faces = nerve->faces();
  auto at = [&](int i, int j) {
    if (i == j) return 0;
    return i < j ? gij[nerve->position({i, j})] : G.inv(gij[nerve->position({j, i})]);
  };
  std::vector<int> phi, k;
  for (const auto& f : faces) phi.push_back(u[f.front()]);
  for (auto [a, b] : out.cover.space.links) k.push_back(at(faces[a].front(), faces[b].front()));
  out.space = translation_space(out.cover.space, g, aut, phi, k);
  for (int i = 0; i < nerve->index_count(); ++i) {
    Section s(faces.size(), -1);
    for (int p : out.cover.sets[i]) s[p] = at(i, faces[p].front());
    out.sections.push_back(s);
  }
  return out;
}

/// Sections [s_i, t_i] of a contracted product.
inline std::vector<Section> product_sections(const Space& a, const Space& b, const std::vector<Section>& s,
                                             const std::vector<Section>& t) {
  std::vector<Section> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Section r(s[i].size(), -1);
    for (std::size_t x = 0; x < s[i].size(); ++x)
      if (s[i][x] >= 0) r[x] = contracted_class(a, b, static_cast<int>(x), s[i][x], t[i][x]);
    out.push_back(r);
  }
  return out;
}

}  // namespace spaces
