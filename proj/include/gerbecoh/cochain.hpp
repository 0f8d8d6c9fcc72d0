#pragma once

// Group-valued 1-cochains on a nerve.
//
// Values are stored on increasing pairs i < j only. Reading (j, i) gives the
// inverse and reading (i, i) gives the identity, which is what the cocycle
// equation forces on normalized cochains.

#include <memory>
#include <vector>

#include "gerbecoh/group.hpp"
#include "gerbecoh/nerve.hpp"

namespace gerbecoh {

using NervePtr = std::shared_ptr<const Nerve>;

inline NervePtr share(Nerve n) { return std::make_shared<const Nerve>(std::move(n)); }

struct Cochain1 {
  NervePtr nerve;
  GroupPtr group;
  std::vector<int> values;  // indexed like nerve->faces_of_size(2)

  static Cochain1 identity(NervePtr n, GroupPtr g) {
    const auto k = n->faces_of_size(2).size();
    return Cochain1{std::move(n), std::move(g), std::vector<int>(k, 0)};
  }

  int at(int i, int j) const {
    if (i == j) return 0;
    if (i < j) return values[slot(i, j)];
    return group->inv(values[slot(j, i)]);
  }
  void set(int i, int j, int v) {
    if (i < j)
      values[slot(i, j)] = v;
    else
      values[slot(j, i)] = group->inv(v);
  }
  int slot(int i, int j) const {
    const int s = nerve->position({i, j});
    detail::require_pre(s >= 0, "{" + std::to_string(i) + ", " + std::to_string(j) + "} is not a face");
    return s;
  }
  bool operator==(const Cochain1& o) const { return values == o.values; }
};

inline void check_cochain_shape(const Cochain1& c) {
  detail::require_structure(c.nerve && c.group, "cochain is missing its nerve or group");
  detail::require_structure(c.values.size() == c.nerve->faces_of_size(2).size(),
                            "cochain needs one value per pair face");
  for (int v : c.values)
    detail::require_structure(v >= 0 && v < c.group->order(), "cochain value out of range");
}

/// g_ik = g_ij g_jk on every triple face i < j < k.
inline bool verify_cocycle1(const Cochain1& c) {
  check_cochain_shape(c);
  const auto& G = *c.group;
  for (const auto& f : c.nerve->faces_of_size(3)) {
    const int i = f[0], j = f[1], k = f[2];
    if (c.at(i, k) != G.mul(c.at(i, j), c.at(j, k))) return false;
  }
  return true;
}

/// g'_ij = g_i g_ij g_j^-1.
inline Cochain1 apply_coboundary1(const Cochain1& c, const std::vector<int>& gi) {
  Cochain1 out = c;
  const auto& faces = c.nerve->faces_of_size(2);
  for (std::size_t s = 0; s < faces.size(); ++s) {
    const int i = faces[s][0], j = faces[s][1];
    out.values[s] = c.group->mul({gi[i], c.values[s], c.group->inv(gi[j])});
  }
  return out;
}

}  // namespace gerbecoh
