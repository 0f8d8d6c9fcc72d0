#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>
#include <set>

#include "gerbecoh/coh.hpp"
#include "oracle/oracles.hpp"
#include "support/faces.hpp"

using namespace gerbecoh;

namespace {

std::shared_ptr<const AutGroup> aut_of(const GroupPtr& g) { return std::make_shared<const AutGroup>(automorphisms(g)); }

GerbeCoboundary random_coboundary(const GerbeCocyclePair& p, std::mt19937& rng) {
  GerbeCoboundary b;
  for (int i = 0; i < p.nerve->index_count(); ++i) b.r.push_back(static_cast<int>(rng() % p.aut->order()));
  for (std::size_t s = 0; s < p.lam.size(); ++s) b.theta.push_back(static_cast<int>(rng() % p.group->order()));
  return b;
}

// Nerve with indices renamed by perm.
Nerve relabeled(const Nerve& n, const std::vector<int>& perm) {
  std::vector<Face> gens;
  for (Face f : n.faces()) {
    for (int& v : f) v = perm[v];
    gens.push_back(f);
  }
  return Nerve(n.index_count(), gens);
}

}  // namespace

TEST_CASE("1-cocycle checks") {
  auto s3 = share(symmetric_group(3));
  CHECK(verify_cocycle1(Cochain1::identity(share(simplex_nerve(4)), s3)));
  // no triple faces on a circle
  auto c3 = share(circle_nerve(3));
  for_each_tuple({6, 6, 6}, [&](const std::vector<int>& v) { CHECK(verify_cocycle1(Cochain1{c3, s3, v})); });
  Cochain1 c = Cochain1::identity(share(simplex_nerve(3)), s3);
  c.set(0, 1, 1);
  c.set(1, 2, 2);
  c.set(0, 2, s3->mul(1, 1));  // g_02 != g_01 g_12
  CHECK_FALSE(verify_cocycle1(c));
  c.set(0, 2, s3->mul(1, 2));
  CHECK(verify_cocycle1(c));
  CHECK_THROWS_AS(verify_cocycle1(Cochain1{c3, s3, {0, 1}}), StructuralError);
}

TEST_CASE("H1 of circles with cyclic coefficients matches the cochain complex") {
  for (const char* kind : {"circle(3)", "circle(4)", "circle(5)", "simplex(3)", "sphere2"}) {
    const Nerve n = standard_nerve(kind);
    const auto faces = support::faces_by_size(n);
    for (int m : {2, 3, 4}) {
      INFO(kind << " Z/" << m);
      const H1Result r = h1_classify(share(n), share(cyclic_group(m)));
      CHECK(static_cast<double>(r.count()) == oracle::cohomology_size(faces, 1, m));
      // cocycles are the kernel of the first coboundary
      const auto d1 = oracle::coboundary_matrix(faces[2], faces[3]);
      CHECK(static_cast<double>(r.classes.cocycle_count) == oracle::kernel_size_mod(d1, faces[2].size(), m));
    }
  }
  auto c3 = share(circle_nerve(3));
  for (int m : {2, 3, 4}) CHECK(h1_classify(c3, share(cyclic_group(m))).count() == static_cast<std::size_t>(m));
}

TEST_CASE("H1 of a circle with S_3 coefficients") {
  auto c3 = share(circle_nerve(3));
  auto s3 = share(symmetric_group(3));
  const H1Result r = h1_classify(c3, s3);
  CHECK(r.count() == 3);
  CHECK(r.classes.cocycle_count == 216);
  // independently: conjugacy classes of S_3, the monodromy around the loop
  std::set<std::set<int>> classes;
  for (int x = 0; x < 6; ++x) {
    std::set<int> cls;
    for (int y = 0; y < 6; ++y) cls.insert(s3->conj(y, x));
    classes.insert(cls);
  }
  CHECK(classes.size() == 3);
  for (int w : {2, 8}) {
    const H1Result rw = h1_classify(c3, s3, EnumOptions{kDefaultBudget, w});
    CHECK(rw.classes.representatives == r.classes.representatives);
    CHECK(rw.classes.orbit_sizes == r.classes.orbit_sizes);
    CHECK(rw.classes.budget_used == r.classes.budget_used);
  }
  std::size_t total = 0;
  for (auto s : r.classes.orbit_sizes) total += s;
  CHECK(total == 216);
}

TEST_CASE("H1 of simplices is a single class") {
  for (int m = 1; m <= 4; ++m)
    for (const char* gname : {"Z/2", "Z/3", "Z/4", "S_3", "Z/2xZ/2"}) {
      INFO(m << " " << gname);
      const H1Result r = h1_classify(share(simplex_nerve(m)), share(standard_group(gname)));
      CHECK(r.count() == 1);
      CHECK(r.representatives[0].values == std::vector<int>(r.representatives[0].values.size(), 0));
    }
}

TEST_CASE("property: H1 counts do not depend on the labeling of indices") {
  std::mt19937 rng(2);
  auto s3 = share(symmetric_group(3));
  for (const char* kind : {"circle(4)", "circle(5)", "sphere2"}) {
    const Nerve n = standard_nerve(kind);
    const auto base = h1_classify(share(n), s3).count();
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<int> perm(n.index_count());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      CHECK(h1_classify(share(relabeled(n, perm)), s3).count() == base);
    }
  }
}

TEST_CASE("budget exhaustion is a capacity error") {
  CHECK_THROWS_AS(h1_classify(share(circle_nerve(3)), share(symmetric_group(3)), EnumOptions{100, 1}), CapacityError);
  CHECK_THROWS_AS(h1_classify(share(circle_nerve(3)), share(symmetric_group(3)), EnumOptions{100, 4}), CapacityError);
}

TEST_CASE("H0 with automorphism coefficients over a point") {
  auto pt = share(simplex_nerve(1));
  const H0Result z3 = h0_crossed(pt, aut_crossed_module(share(cyclic_group(3))));
  CHECK(z3.count() == 2);
  CHECK(verify_group(*z3.group));
  const H0Result s3 = h0_crossed(pt, aut_crossed_module(share(symmetric_group(3))));
  CHECK(s3.count() == 1);
  // independently: |Out(G)| = |Aut(G)| / |Inn(G)|
  auto g = share(cyclic_group(3));
  const AutGroup aut = automorphisms(g);
  CHECK(z3.count() == static_cast<std::size_t>(aut.order()) / inner_conjugation(g, aut).image().size());
  // the unit is the class of (e, id)
  CHECK(z3.representatives[0].pi == std::vector<int>{0});
}

TEST_CASE("property: H0 class multiplication matches the pair product") {
  for (const char* kind : {"simplex(1)", "circle(3)", "simplex(3)"})
    for (const char* gname : {"Z/3", "S_3", "Z/4"}) {
      INFO(kind << " " << gname);
      auto n = share(standard_nerve(kind));
      const CrossedModule cm = aut_crossed_module(share(standard_group(gname)));
      const H0Result r = h0_crossed(n, cm);
      CHECK(verify_group(*r.group));
      const auto& cs = r.classes.cocycles;
      for (std::size_t a = 0; a < cs.size(); a += 3)
        for (std::size_t b = 0; b < cs.size(); b += 5) {
          const auto ca = CrossedPair0::from_flat(n, cs[a]);
          const auto cb = CrossedPair0::from_flat(n, cs[b]);
          const auto prod = crossed_pair_product(ca, cb, cm);
          REQUIRE(verify_crossed_pair0(prod, cm));
          CHECK(r.classes.class_index(prod.flat()) ==
                static_cast<std::size_t>(r.group->mul(static_cast<int>(r.classes.class_of[a]),
                                                      static_cast<int>(r.classes.class_of[b]))));
        }
    }
}

TEST_CASE("property: crossed coboundaries preserve H0 cocycles and their classes") {
  std::mt19937 rng(9);
  auto n = share(circle_nerve(3));
  for (const auto& cm : {aut_crossed_module(share(symmetric_group(3))), identity_crossed_module(share(cyclic_group(4)))}) {
    const H0Result r = h0_crossed(n, cm);
    for (std::size_t i = 0; i < r.classes.cocycles.size(); ++i) {
      const auto c = CrossedPair0::from_flat(n, r.classes.cocycles[i]);
      std::vector<int> gi(3);
      for (int& v : gi) v = static_cast<int>(rng() % cm.g->order());
      const auto d = apply_crossed_coboundary0(c, gi, cm);
      CHECK(verify_crossed_pair0(d, cm));
      CHECK(r.classes.class_index(d.flat()) == r.classes.class_of[i]);
    }
  }
}

TEST_CASE("gerbe pairs: trivial pair and the abelian 2-cocycle condition") {
  auto sphere = share(sphere2_nerve());
  auto s3 = share(symmetric_group(3));
  CHECK(verify_gerbe_pair(GerbeCocyclePair::trivial(sphere, s3, aut_of(s3))));
  // on simplex(4) with lambda = id and Z/n values, validity is d(g) = 0
  auto n = share(simplex_nerve(4));
  const auto faces = support::faces_by_size(*n);
  const auto d2 = oracle::coboundary_matrix(faces[3], faces[4]);
  std::mt19937 rng(1);
  for (int m : {2, 3}) {
    auto g = share(cyclic_group(m));
    GerbeCocyclePair p = GerbeCocyclePair::trivial(n, g, aut_of(g));
    int valid = 0;
    for (int trial = 0; trial < 300; ++trial) {
      for (int& v : p.g) v = static_cast<int>(rng() % m);
      const auto dg = oracle::apply_mod(d2, p.g, m);
      const bool closed = std::all_of(dg.begin(), dg.end(), [](int v) { return v == 0; });
      CHECK(verify_gerbe_pair(p) == closed);
      valid += closed;
    }
    // exhaustive count of closed 2-cochains on a 4-simplex: m^(number of 2-cochains - rank)
    std::size_t closed_count = 0;
    for_each_tuple(std::vector<int>(p.g.size(), m), [&](const std::vector<int>& v) {
      p.g = v;
      closed_count += verify_gerbe_pair(p);
    });
    CHECK(static_cast<double>(closed_count) == oracle::kernel_size_mod(d2, faces[3].size(), m));
  }
}

TEST_CASE("gerbe pairs: a single mutation on the sphere breaks validity") {
  std::mt19937 rng(6);
  auto sphere = share(sphere2_nerve());
  auto s3 = share(symmetric_group(3));
  const GerbeCocyclePair base = GerbeCocyclePair::trivial(sphere, s3, aut_of(s3));
  for (int trial = 0; trial < 50; ++trial) {
    GerbeCocyclePair p = apply_gerbe_coboundary(base, random_coboundary(base, rng));
    REQUIRE(verify_gerbe_pair(p));
    const auto s = rng() % p.g.size();
    p.g[s] = (p.g[s] + 1 + static_cast<int>(rng() % 5)) % 6;
    std::string why;
    CHECK_FALSE(verify_gerbe_pair(p, &why));
    CHECK(why.find("lambda equation") != std::string::npos);
  }
}

TEST_CASE("gerbe coboundaries") {
  auto n = share(simplex_nerve(3));
  auto s3 = share(symmetric_group(3));
  const auto& G = *s3;
  const auto aut = aut_of(s3);
  const GerbeCocyclePair p = GerbeCocyclePair::trivial(n, s3, aut);
  const GerbeCoboundary id{std::vector<int>(3, 0), std::vector<int>(3, 0)};
  CHECK(apply_gerbe_coboundary(p, id).flat() == p.flat());
  // theta only, on the trivial pair: lambda' = i_theta, g'_ijk = theta_ij theta_jk theta_ik^-1
  const GerbeCoboundary th{std::vector<int>(3, 0), {1, 3, 2}};
  const GerbeCocyclePair q = apply_gerbe_coboundary(p, th);
  CHECK(verify_gerbe_pair(q));
  const auto inner = inner_conjugation(s3, *aut).map;
  CHECK(q.lam == std::vector<int>{inner[1], inner[3], inner[2]});
  // theta_01 = 1, theta_02 = 3, theta_12 = 2
  CHECK(q.g_at(0, 1, 2) == G.mul({G.conj(1, 2), 1, G.inv(3)}));
  CHECK(q.g_at(0, 1, 2) == G.mul({1, 2, G.inv(3)}));
}

TEST_CASE("property: gerbe coboundaries act and compose") {
  std::mt19937 rng(12);
  auto n = share(simplex_nerve(3));
  for (const char* gname : {"Z/2", "Z/3", "Z/4", "Z/2xZ/2"}) {
    INFO(gname);
    auto g = share(standard_group(gname));
    const GerbeResult all = h1_gerbe_classify(n, g);
    CHECK(all.count() == 1);
    GerbeCocyclePair p = GerbeCocyclePair::trivial(n, g, aut_of(g));
    for (const auto& flat : all.classes.cocycles) {
      p.assign_flat(flat);
      for (int trial = 0; trial < 8; ++trial) {
        const GerbeCoboundary b1 = random_coboundary(p, rng), b2 = random_coboundary(p, rng);
        const GerbeCocyclePair once = apply_gerbe_coboundary(p, b1);
        CHECK(verify_gerbe_pair(once));
        const GerbeCocyclePair twice = apply_gerbe_coboundary(once, b2);
        CHECK(twice.flat() == apply_gerbe_coboundary(p, compose_gerbe_coboundaries(p, b1, b2)).flat());
      }
    }
  }
}

TEST_CASE("property: gerbe coboundaries preserve validity on S_3 over the sphere") {
  std::mt19937 rng(14);
  auto sphere = share(sphere2_nerve());
  auto s3 = share(symmetric_group(3));
  GerbeCocyclePair p = GerbeCocyclePair::trivial(sphere, s3, aut_of(s3));
  for (int trial = 0; trial < 1000; ++trial) {
    p = apply_gerbe_coboundary(p, random_coboundary(p, rng));
    REQUIRE(verify_gerbe_pair(p));
  }
}

TEST_CASE("gerbe classification in the lambda = id sector matches H2") {
  for (const char* kind : {"sphere2", "simplex(3)", "circle(3)", "circle(4)"})
    for (int m : {2, 3, 4}) {
      INFO(kind << " Z/" << m);
      const Nerve n = standard_nerve(kind);
      const GerbeResult r = h1_gerbe_classify(share(n), share(cyclic_group(m)), GerbeSector::lambda_id);
      CHECK(static_cast<double>(r.count()) == oracle::cohomology_size(support::faces_by_size(n), 2, m));
      CHECK(r.classes.representatives.front() == std::vector<int>(r.classes.representatives.front().size(), 0));
    }
  auto sphere = share(sphere2_nerve());
  CHECK(h1_gerbe_classify(sphere, share(cyclic_group(2)), GerbeSector::lambda_id).count() == 2);
  CHECK(h1_gerbe_classify(sphere, share(cyclic_group(3)), GerbeSector::lambda_id).count() == 3);
}

TEST_CASE("gerbe classification over a simplex is a single class") {
  auto n = share(simplex_nerve(3));
  for (const char* gname : {"Z/2", "Z/3", "Z/4", "Z/2xZ/2"}) CHECK(h1_gerbe_classify(n, share(standard_group(gname))).count() == 1);
}

TEST_CASE("gerbe classification is worker independent") {
  auto sphere = share(sphere2_nerve());
  auto z3 = share(cyclic_group(3));
  const GerbeResult a = h1_gerbe_classify(sphere, z3, GerbeSector::all, EnumOptions{kDefaultBudget, 1});
  const GerbeResult b = h1_gerbe_classify(sphere, z3, GerbeSector::all, EnumOptions{kDefaultBudget, 8});
  CHECK(a.classes.representatives == b.classes.representatives);
  CHECK(a.classes.orbit_sizes == b.classes.orbit_sizes);
}
