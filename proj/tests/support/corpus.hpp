#pragma once

// Crossed modules shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "gerbecoh/xmod.hpp"

namespace corpus {

using namespace gerbecoh;

struct NamedModule {
  std::string name;
  CrossedModule cm;
};

inline std::vector<NamedModule> crossed_modules() {
  std::vector<NamedModule> out;
  const std::vector<std::string> small{"1", "Z/2", "Z/3", "Z/4", "Z/5", "Z/6", "Z/2xZ/2", "S_3"};
  for (const auto& name : small) {
    auto g = share(standard_group(name));
    out.push_back({"aut " + name, aut_crossed_module(g)});
    out.push_back({"identity " + name, identity_crossed_module(g)});
  }
  // trivial boundary needs an abelian source
  const std::vector<std::pair<std::string, std::string>> trivial{
      {"Z/2", "Z/3"}, {"Z/3", "Z/2"}, {"Z/2", "S_3"}, {"Z/3", "S_3"}, {"Z/4", "Z/4"}, {"Z/2xZ/2", "Z/3"}};
  for (const auto& [a, b] : trivial)
    out.push_back({"trivial " + a + " -> " + b,
                   trivial_boundary_module(share(standard_group(a)), share(standard_group(b)))});

  auto s3 = share(symmetric_group(3));
  auto z2 = share(cyclic_group(2));
  auto z3 = share(cyclic_group(3));
  auto z4 = share(cyclic_group(4));
  // normal subgroup {0, 3, 4} of S_3 under conjugation
  {
    const std::vector<int> embed{0, 3, 4};
    std::vector<int> table(6 * 3);
    for (int p = 0; p < 6; ++p)
      for (int x = 0; x < 3; ++x) {
        const int c = s3->conj(p, embed[x]);
        table[p * 3 + x] = static_cast<int>(std::find(embed.begin(), embed.end(), c) - embed.begin());
      }
    out.push_back({"Z/3 <| S_3", CrossedModule{z3, s3, GroupHom{z3, s3, embed}, GroupAction(6, 3, table)}});
  }
  out.push_back({"Z/4 ->> Z/2", CrossedModule{z4, z2, GroupHom{z4, z2, {0, 1, 0, 1}}, GroupAction::trivial(2, 4)}});
  out.push_back({"Z/2 >-> Z/4", CrossedModule{z2, z4, GroupHom{z2, z4, {0, 2}}, GroupAction::trivial(4, 2)}});
  out.push_back({"Z/3 trivial boundary, Z/2 inverting",
                 CrossedModule{z3, z2, GroupHom{z3, z2, {0, 0, 0}}, GroupAction(2, 3, {0, 1, 2, 0, 2, 1})}});
  return out;
}

}  // namespace corpus
