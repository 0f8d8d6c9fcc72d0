#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "gerbecoh/ext.hpp"
#include "oracle/oracles.hpp"
#include "support/extensions.hpp"

using namespace gerbecoh;

namespace {

std::vector<std::vector<int>> table_of(const FiniteGroup& h) {
  std::vector<std::vector<int>> t(h.order(), std::vector<int>(h.order()));
  for (int a = 0; a < h.order(); ++a)
    for (int b = 0; b < h.order(); ++b) t[a][b] = h.mul(a, b);
  return t;
}

// Inversion on Z/3 as an automorphism index.
int inversion(const AutGroup& aut) { return aut.index_of({0, 2, 1}); }

// A random section of the projection with s(e) = e.
std::vector<int> random_section(const ExtensionWitness& w, std::mt19937& rng) {
  const int nk = w.project.target->order();
  std::vector<std::vector<int>> fibers(nk);
  for (int u = 0; u < w.H->order(); ++u) fibers[w.project(u)].push_back(u);
  std::vector<int> s(nk, 0);
  for (int k = 1; k < nk; ++k) s[k] = fibers[k][rng() % fibers[k].size()];
  return s;
}

}  // namespace

TEST_CASE("extension cocycle checks") {
  auto z2 = share(cyclic_group(2));
  ExtensionCocycle c = ExtensionCocycle::trivial(z2, z2);
  CHECK(verify_extension_cocycle(c));
  c.g[1 * 2 + 1] = 1;
  CHECK(verify_extension_cocycle(c));
  // not normalized
  ExtensionCocycle bad = ExtensionCocycle::trivial(z2, z2);
  bad.g[0 * 2 + 1] = 1;
  CHECK_FALSE(verify_extension_cocycle(bad));
  // Z/3 by Z/2 with lam inversion but g(1,1) = 1 breaks the cocycle law
  auto z3 = share(cyclic_group(3));
  ExtensionCocycle c3 = ExtensionCocycle::trivial(z3, z2);
  c3.lam[1] = inversion(*c3.aut);
  CHECK(verify_extension_cocycle(c3));
  c3.g[1 * 2 + 1] = 1;
  CHECK_FALSE(verify_extension_cocycle(c3));
  ExtensionCocycle shape = ExtensionCocycle::trivial(z3, z2);
  shape.g.pop_back();
  CHECK_THROWS_AS(verify_extension_cocycle(shape), StructuralError);
}

TEST_CASE("building extensions") {
  auto z2 = share(cyclic_group(2));
  auto z3 = share(cyclic_group(3));
  const ExtensionWitness split = build_extension(ExtensionCocycle::trivial(z3, z2));
  CHECK(verify_extension_witness(split));
  CHECK(oracle::brute_isomorphic(table_of(*split.H), table_of(cyclic_group(6))));

  ExtensionCocycle z4 = ExtensionCocycle::trivial(z2, z2);
  z4.g[3] = 1;
  const ExtensionWitness w4 = build_extension(z4);
  CHECK(verify_extension_witness(w4));
  CHECK(oracle::brute_isomorphic(table_of(*w4.H), table_of(cyclic_group(4))));

  ExtensionCocycle s3 = ExtensionCocycle::trivial(z3, z2);
  s3.lam[1] = inversion(*s3.aut);
  const ExtensionWitness ws = build_extension(s3);
  CHECK(verify_extension_witness(ws));
  CHECK(oracle::brute_isomorphic(table_of(*ws.H), table_of(symmetric_group(3))));

  ExtensionCocycle broken = ExtensionCocycle::trivial(z3, z2);
  broken.lam[1] = inversion(*broken.aut);
  broken.g[3] = 2;
  CHECK_THROWS_AS(build_extension(broken), PreconditionError);
}

TEST_CASE("extensions of Z/2 by Z/2") {
  auto z2 = share(cyclic_group(2));
  const auto cl = classify_extensions(z2, z2);
  const auto all = extensions::all_cocycles(z2, z2);
  CHECK(cl.cocycle_count == all.size());
  CHECK(cl.cocycle_count == 2);
  REQUIRE(cl.classes.size() == 2);
  CHECK(extensions::class_count(all) == 2);
  std::set<std::string> names;
  for (const auto& c : cl.classes) {
    CHECK(verify_extension_witness(c.extension));
    names.insert(c.group_name);
  }
  CHECK(names == std::set<std::string>{"Z/4", "Z/2xZ/2"});
  CHECK(cl.isomorphism_type_count == 2);
  // one built group is cyclic, the other is not
  const bool first_cyclic = oracle::brute_isomorphic(table_of(*cl.classes[0].extension.H), table_of(cyclic_group(4)));
  const bool second_cyclic = oracle::brute_isomorphic(table_of(*cl.classes[1].extension.H), table_of(cyclic_group(4)));
  CHECK(first_cyclic != second_cyclic);
}

TEST_CASE("extensions of Z/3 by Z/2") {
  auto z2 = share(cyclic_group(2));
  auto z3 = share(cyclic_group(3));
  const auto cl = classify_extensions(z3, z2);
  const auto all = extensions::all_cocycles(z3, z2);
  CHECK(cl.cocycle_count == all.size());
  // lam(1) is either automorphism and g(1,1) must be fixed by it
  CHECK(all.size() == 3 + 1);
  REQUIRE(cl.classes.size() == 2);
  CHECK(extensions::class_count(all) == 2);
  std::set<std::string> names;
  for (const auto& c : cl.classes) names.insert(c.group_name);
  CHECK(names == std::set<std::string>{"Z/6", "S_3"});
  bool saw_s3 = false;
  for (const auto& c : cl.classes)
    saw_s3 = saw_s3 || oracle::brute_isomorphic(table_of(*c.extension.H), table_of(symmetric_group(3)));
  CHECK(saw_s3);
}

TEST_CASE("a trivial quotient has a single extension") {
  for (const char* name : {"Z/2", "Z/4", "S_3", "Z/2xZ/2"}) {
    const auto cl = classify_extensions(share(standard_group(name)), share(trivial_group()));
    CHECK(cl.cocycle_count == 1);
    CHECK(cl.classes.size() == 1);
  }
}

TEST_CASE("cocycles read off extensions") {
  auto z2 = share(cyclic_group(2));
  auto z3 = share(cyclic_group(3));
  // split extension with a homomorphic section
  ExtensionCocycle s3 = ExtensionCocycle::trivial(z3, z2);
  s3.lam[1] = inversion(*s3.aut);
  const ExtensionWitness ws = build_extension(s3);
  std::vector<int> hom_section{0, -1};
  for (int u = 0; u < 6; ++u)
    if (ws.project(u) == 1 && ws.H->mul(u, u) == 0 && hom_section[1] < 0) hom_section[1] = u;
  REQUIRE(hom_section[1] >= 0);
  const ExtensionCocycle back = cocycle_from_extension(ws, hom_section, s3.aut);
  CHECK(back.g == std::vector<int>(4, 0));
  CHECK(back.lam == s3.lam);

  // Z/4 over its subgroup {0, 2}
  auto z4 = share(cyclic_group(4));
  const ExtensionWitness w4{z4, GroupHom{z2, z4, {0, 2}}, GroupHom{z4, z2, {0, 1, 0, 1}}};
  REQUIRE(verify_extension_witness(w4));
  const ExtensionCocycle c4 = cocycle_from_extension(w4, {0, 1});
  CHECK(c4.gv(1, 1) == 1);
  CHECK(c4.lam == std::vector<int>{0, 0});

  // Z/6 over {0, 2, 4}: two sections give different but equivalent cocycles
  auto z6 = share(cyclic_group(6));
  const ExtensionWitness w6{z6, GroupHom{z3, z6, {0, 2, 4}}, GroupHom{z6, z2, {0, 1, 0, 1, 0, 1}}};
  const ExtensionCocycle a = cocycle_from_extension(w6, {0, 1});
  const ExtensionCocycle b = cocycle_from_extension(w6, {0, 3});
  CHECK(a.gv(1, 1) == 1);
  CHECK(b.gv(1, 1) == 0);
  CHECK(extensions::equivalent(a, b));
  CHECK(extensions_equivalent(a, b));

  CHECK_THROWS_AS(cocycle_from_extension(w6, {0, 2}), PreconditionError);
  CHECK_THROWS_AS(cocycle_from_extension(w6, {2, 1}), PreconditionError);
}

TEST_CASE("equivalence moves preserve validity") {
  std::mt19937 rng(5);
  for (const auto& G : extensions::small_groups())
    for (const auto& K : extensions::small_groups()) {
      if (G->order() * K->order() > 8) continue;
      for (const auto& c : extensions::all_cocycles(G, K)) {
        std::vector<int> theta(K->order(), 0);
        for (int a = 1; a < K->order(); ++a) theta[a] = static_cast<int>(rng() % G->order());
        const auto moved = apply_extension_equivalence(c, theta);
        CHECK(verify_extension_cocycle(moved));
        CHECK(extensions::equivalent(c, moved));
      }
    }
}

TEST_CASE("property: class counts agree with a direct orbit count") {
  for (const auto& G : extensions::small_groups())
    for (const auto& K : extensions::small_groups()) {
      if (G->order() * K->order() > 12) continue;
      INFO(G->name() << " by " << K->name());
      const auto all = extensions::all_cocycles(G, K);
      for (const auto& c : all) REQUIRE(verify_extension_cocycle(c));
      const auto cl = classify_extensions(G, K);
      CHECK(cl.cocycle_count == all.size());
      CHECK(static_cast<int>(cl.classes.size()) == extensions::class_count(all));
      for (const auto& c : cl.classes) CHECK(verify_extension_witness(c.extension));
    }
}

TEST_CASE("property: extension round trip stays in the class") {
  std::mt19937 rng(17);
  for (const auto& G : extensions::small_groups())
    for (const auto& K : extensions::small_groups()) {
      if (G->order() * K->order() > 16) continue;
      INFO(G->name() << " by " << K->name());
      bool ok = true;
      for (const auto& c : extensions::all_cocycles(G, K)) {
        const ExtensionWitness w = build_extension(c);
        ok = ok && verify_extension_witness(w);
        const ExtensionCocycle back = cocycle_from_extension(w, random_section(w, rng), c.aut);
        ok = ok && verify_extension_cocycle(back) && extensions::equivalent(c, back);
        if (!ok) break;
      }
      CHECK(ok);
    }
}

TEST_CASE("classification is independent of the worker count") {
  auto z2 = share(cyclic_group(2));
  auto s3 = share(symmetric_group(3));
  for (const auto& [G, K] : {std::pair{z2, s3}, std::pair{s3, z2}, std::pair{z2, share(standard_group("Z/2xZ/2"))}}) {
    ExtOptions one, many;
    many.enumeration.workers = 4;
    const auto a = classify_extensions(G, K, one);
    const auto b = classify_extensions(G, K, many);
    CHECK(a.cocycle_count == b.cocycle_count);
    REQUIRE(a.classes.size() == b.classes.size());
    for (std::size_t i = 0; i < a.classes.size(); ++i) {
      CHECK(a.classes[i].representative.g == b.classes[i].representative.g);
      CHECK(a.classes[i].representative.lam == b.classes[i].representative.lam);
      CHECK(a.classes[i].group_name == b.classes[i].group_name);
    }
    CHECK(a.budget_used == b.budget_used);
  }
}

TEST_CASE("order bound is a capacity error") {
  auto s3 = share(symmetric_group(3));
  CHECK_THROWS_AS(classify_extensions(s3, s3), CapacityError);
}
