// Command-line front end.
//
// Exit status: 0 success, 1 a verification or comparison answered "no",
// 2 bad input (parse, structural or precondition errors), 3 budget exceeded.

#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gerbecoh/io.hpp"

namespace {

using namespace gerbecoh;
using io::json;

struct Globals {
  bool json_out = false;
  std::uint64_t budget = kDefaultBudget;
  int workers = 1;
  std::uint64_t seed = 1;

  EnumOptions enumeration() const { return EnumOptions{budget, workers}; }
};

/// One command's result: machine-readable fields plus a text rendering.
struct Output {
  json data = json::object();
  std::ostringstream text;
  int status = 0;
};

std::string list(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

std::string face_str(const Face& f) {
  std::string s = "{";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? ", " : "") + std::to_string(f[i]);
  return s + "}";
}

std::string count_of(std::size_t n, const char* one, const char* many) {
  return std::to_string(n) + " " + (n == 1 ? one : many);
}

void verdict(Output& out, const char* what, bool ok, const std::string& why) {
  out.data["valid"] = ok;
  if (!ok) out.data["reason"] = why;
  out.text << what << ": " << (ok ? "valid" : "invalid") << "\n";
  if (!ok) out.text << "reason: " << why << "\n";
  out.status = ok ? 0 : 1;
}

void report_budget(Output& out, std::uint64_t used, std::uint64_t limit) {
  out.data["budget_used"] = used;
  out.data["budget_limit"] = limit;
  out.text << "budget: " << used << " of " << limit << " candidate assignments\n";
}

void require_crossed_module(const CrossedModule& cm, const std::string& path) {
  std::string why;
  if (!verify_crossed_module(cm, &why)) throw PreconditionError(path + ": not a crossed module: " + why);
}

// ---------------------------------------------------------------------------
// group

void group_verify(const Globals&, Output& out, const std::string& path) {
  GroupPtr g = io::load(path, [](const json& j, const io::Ctx& c) { return io::parse_group(j, c, false); });
  std::string why;
  const bool ok = verify_group(*g, &why);
  out.data["order"] = g->order();
  verdict(out, ("group " + g->name() + " of order " + std::to_string(g->order())).c_str(), ok, why);
}

void group_aut(const Globals&, Output& out, const std::string& path) {
  GroupPtr g = io::load(path, [](const json& j, const io::Ctx& c) { return io::parse_group(j, c); });
  const AutGroup aut = automorphisms(g);
  const GroupHom inner = inner_conjugation(g, aut);
  const auto inner_image = inner.image();
  const std::string type = identify_group(*aut.group);
  out.data["order"] = aut.order();
  out.data["isomorphic_to"] = type;
  out.data["inner_order"] = inner_image.size();
  out.data["automorphisms"] = aut.elements;
  out.data["inner_conjugation"] = inner.map;
  out.text << "Aut(" << g->name() << "): order " << aut.order() << ", isomorphic to " << type << "\n";
  out.text << "inner automorphisms: " << inner_image.size() << "\n";
  out.text << "automorphisms (images of 0.." << g->order() - 1 << "):\n";
  for (int a = 0; a < aut.order(); ++a) out.text << "  " << a << ": " << list(aut.elements[a]) << "\n";
  out.text << "inner conjugation: " << list(inner.map) << "\n";
}

// ---------------------------------------------------------------------------
// xmod

void xmod_verify(const Globals&, Output& out, const std::string& path) {
  const CrossedModule cm = io::load(path, io::parse_crossed_module);
  std::string why;
  const bool ok = verify_crossed_module(cm, &why);
  out.data["g_order"] = cm.g->order();
  out.data["pi_order"] = cm.pi->order();
  verdict(out, ("crossed module " + std::to_string(cm.g->order()) + " -> " + std::to_string(cm.pi->order())).c_str(),
          ok, why);
}

void xmod_norrie(const Globals&, Output& out, const std::string& path) {
  const CrossedModule cm = io::load(path, io::parse_crossed_module);
  require_crossed_module(cm, path);
  const CrossedSquare sq = norrie_square(cm);
  std::string why;
  const bool ok = verify_crossed_square(sq, &why);
  out.data["orders"] = {{"l", sq.l->order()}, {"m", sq.m->order()}, {"n", sq.n->order()}, {"p", sq.p->order()}};
  out.data["square"] = io::square_json(sq);
  out.text << "square orders: l = " << sq.l->order() << ", m = " << sq.m->order() << ", n = " << sq.n->order()
           << ", p = " << sq.p->order() << "\n";
  out.text << "lm = " << list(sq.lm.map) << "\nln = " << list(sq.ln.map) << "\nmp = " << list(sq.mp.map)
           << "\nnp = " << list(sq.np.map) << "\n";
  verdict(out, "crossed square", ok, why);
}

// ---------------------------------------------------------------------------
// nerve

void nerve_show(const Globals&, Output& out, const std::string& path) {
  NervePtr n = io::load(path, io::parse_nerve);
  out.data = io::nerve_json(*n);
  out.data["dimension"] = n->dimension();
  json counts = json::array(), tuple_counts = json::array();
  out.text << "indices: " << n->index_count() << "\ndimension: " << n->dimension() << "\n";
  for (std::size_t k = 1; k <= n->dimension() + 1; ++k) {
    const auto faces = n->faces_of_size(k).size();
    const auto ordered = tuples(*n, static_cast<int>(k)).size();
    counts.push_back(faces);
    tuple_counts.push_back(ordered);
    out.text << "size " << k << ": " << count_of(faces, "face", "faces") << ", " << count_of(ordered, "ordered tuple", "ordered tuples") << "\n";
  }
  out.data["face_counts"] = counts;
  out.data["ordered_tuple_counts"] = tuple_counts;
  out.data["total_faces"] = n->faces().size();
  out.text << "total faces: " << n->faces().size() << "\nfaces:";
  for (const auto& f : n->faces()) out.text << " " << face_str(f);
  out.text << "\n";
}

// ---------------------------------------------------------------------------
// torsor and bitorsor

void describe_space(Output& out, const Space& s) {
  out.text << "base points: " << s.base().points << ", fiber sizes: " << list(s.size) << "\n";
}

void torsor_verify(const Globals&, Output& out, const std::string& path) {
  const io::SpaceFile f = io::load(path, io::parse_space);
  std::string why;
  const bool torsor = is_torsor(f.space, &why);
  describe_space(out, f.space);
  bool ok = torsor;
  if (torsor && f.space.right.at(0).order() > 1) {
    ok = is_bitorsor(f.space, &why);
    out.data["bitorsor"] = ok;
    verdict(out, "bitorsor", ok, why);
    return;
  }
  verdict(out, "torsor", ok, why);
}

void torsor_cocycle(const Globals&, Output& out, const std::string& path) {
  const io::SpaceFile f = io::load(path, io::parse_space);
  if (!f.cover || !f.sections) throw ParseError(path + ": a cocycle needs 'cover' and 'sections'");
  const Cochain1 c = cocycle_from_sections(f.space, *f.cover, *f.sections);
  out.data = io::cochain_json(c);
  out.text << "cocycle on " << c.nerve->index_count() << " indices:\n";
  for (const auto& p : c.nerve->faces_of_size(2))
    out.text << "  g" << face_str(p) << " = " << c.at(p[0], p[1]) << "\n";
}

void torsor_glue(const Globals&, Output& out, const std::string& path) {
  const Cochain1 c = io::load(path, io::parse_cochain);
  const GluedTorsor t = glue_torsor(c);
  const auto global = global_sections(t.torsor);
  out.data = io::space_json(t.torsor, t.cover, t.sections);
  out.data["global_sections"] = global.size();
  describe_space(out, t.torsor);
  out.text << "global sections: " << global.size() << (global.empty() ? " (nontrivial torsor)" : "") << "\n";
}

void bitorsor_product(const Globals&, Output& out, const std::string& a_path, const std::string& b_path) {
  const Space a = io::load(a_path, io::parse_space).space;
  const Space b = io::load(b_path, io::parse_space).space;
  const Space p = contracted_product(a, b);
  out.data = io::space_json(p);
  describe_space(out, p);
  std::string why;
  const bool ok = is_bitorsor(p, &why);
  out.data["bitorsor"] = ok;
  out.text << "bitorsor: " << (ok ? "yes" : "no") << "\n";
}

void bitorsor_opposite(const Globals&, Output& out, const std::string& path) {
  const Space o = opposite(io::load(path, io::parse_space).space);
  out.data = io::space_json(o);
  describe_space(out, o);
}

void bitorsor_verify_cocycle(const Globals&, Output& out, const std::string& path) {
  const BitorsorCocycle bc = io::load(path, io::parse_bitorsor_cocycle);
  const bool ok = verify_bitorsor_cocycle(bc);
  verdict(out, "bitorsor cocycle", ok, "the isomorphisms do not agree on some quadruple face");
}

// ---------------------------------------------------------------------------
// degree 0 and 1

void h1(const Globals& g, Output& out, const std::string& nerve_path, const std::string& group_path) {
  NervePtr n = io::load(nerve_path, io::parse_nerve);
  GroupPtr grp = io::load(group_path, [](const json& j, const io::Ctx& c) { return io::parse_group(j, c); });
  const H1Result r = h1_classify(n, grp, g.enumeration());
  out.data["classes"] = r.count();
  out.data["cocycles"] = r.classes.cocycle_count;
  out.data["orbit_sizes"] = r.classes.orbit_sizes;
  json reps = json::array();
  out.text << count_of(r.count(), "class", "classes") << " (" << count_of(r.classes.cocycle_count, "cocycle", "cocycles") << ")\n";
  for (std::size_t i = 0; i < r.count(); ++i) {
    reps.push_back(io::detail::face_values_json(*n, 2, r.representatives[i].values));
    out.text << "  class " << i << ": " << list(r.representatives[i].values) << ", orbit size "
             << r.classes.orbit_sizes[i] << "\n";
  }
  out.data["representatives"] = reps;
  report_budget(out, r.classes.budget_used, r.classes.budget_limit);
}

void h0x(const Globals& g, Output& out, const std::string& nerve_path, const std::string& xmod_path) {
  NervePtr n = io::load(nerve_path, io::parse_nerve);
  const CrossedModule cm = io::load(xmod_path, io::parse_crossed_module);
  require_crossed_module(cm, xmod_path);
  const H0Result r = h0_crossed(n, cm, g.enumeration());
  const std::string type = identify_group(*r.group);
  out.data["order"] = r.count();
  out.data["isomorphic_to"] = type;
  out.data["multiplication"] = r.group->rows();
  json reps = json::array();
  out.text << "group of order " << r.count() << ", isomorphic to " << type << "\n";
  for (std::size_t i = 0; i < r.count(); ++i) {
    const auto& p = r.representatives[i];
    reps.push_back({{"pi", p.pi}, {"g", p.g}});
    out.text << "  class " << i << ": pi = " << list(p.pi) << ", g = " << list(p.g) << "\n";
  }
  out.data["representatives"] = reps;
  out.text << "multiplication:\n";
  for (const auto& row : r.group->rows()) out.text << "  " << list(row) << "\n";
  report_budget(out, r.classes.budget_used, r.classes.budget_limit);
}

// ---------------------------------------------------------------------------
// gerbe

void gerbe_verify(const Globals&, Output& out, const std::string& path) {
  const GerbeCocyclePair p = io::load(path, io::parse_gerbe_pair);
  std::string why;
  verdict(out, "gerbe cocycle pair", verify_gerbe_pair(p, &why), why);
}

void gerbe_classify(const Globals& g, Output& out, const std::string& nerve_path, const std::string& group_path,
                    const std::string& sector) {
  NervePtr n = io::load(nerve_path, io::parse_nerve);
  GroupPtr grp = io::load(group_path, [](const json& j, const io::Ctx& c) { return io::parse_group(j, c); });
  const GerbeSector s = sector == "lambda-id" ? GerbeSector::lambda_id : GerbeSector::all;
  const GerbeResult r = h1_gerbe_classify(n, grp, s, g.enumeration());
  out.data["sector"] = sector;
  out.data["classes"] = r.count();
  out.data["cocycles"] = r.classes.cocycle_count;
  out.data["orbit_sizes"] = r.classes.orbit_sizes;
  json reps = json::array();
  out.text << "sector " << sector << ": " << count_of(r.count(), "class", "classes") << " (" << count_of(r.classes.cocycle_count, "cocycle", "cocycles") << ")\n";
  for (std::size_t i = 0; i < r.count(); ++i) {
    const auto& p = r.representatives[i];
    reps.push_back({{"lam", p.lam}, {"g", p.g}});
    out.text << "  class " << i << ": lam = " << list(p.lam) << ", g = " << list(p.g) << ", orbit size "
             << r.classes.orbit_sizes[i] << "\n";
  }
  out.data["representatives"] = reps;
  report_budget(out, r.classes.budget_used, r.classes.budget_limit);
}

void gerbe_coboundary(const Globals& g, Output& out, const std::string& pair_path, const std::string& cob_path) {
  const GerbeCocyclePair p = io::load(pair_path, io::parse_gerbe_pair);
  std::string why;
  if (!verify_gerbe_pair(p, &why)) throw PreconditionError(pair_path + ": not a gerbe cocycle pair: " + why);
  GerbeCoboundary b;
  if (cob_path.empty()) {
    std::mt19937_64 rng(g.seed);
    auto draw = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
    for (int i = 0; i < p.nerve->index_count(); ++i) b.r.push_back(draw(p.aut->order()));
    for (std::size_t s = 0; s < p.nerve->faces_of_size(2).size(); ++s) b.theta.push_back(draw(p.group->order()));
  } else {
    b = io::load(cob_path, [&](const json& j, const io::Ctx& c) { return io::parse_gerbe_coboundary(j, c, p); });
  }
  const GerbeCocyclePair q = apply_gerbe_coboundary(p, b);
  const bool ok = verify_gerbe_pair(q, &why);
  out.data["result"] = io::gerbe_pair_json(q);
  out.data["coboundary"] = {{"r", b.r}, {"theta", b.theta}};
  out.text << "coboundary: r = " << list(b.r) << ", theta = " << list(b.theta) << "\n";
  out.text << "result: lam = " << list(q.lam) << ", g = " << list(q.g) << "\n";
  verdict(out, "result", ok, why);
}

// ---------------------------------------------------------------------------
// ext

json cocycle_summary(const ExtensionCocycle& c) {
  json lam = json::array(), g = json::array();
  for (int a = 0; a < c.K->order(); ++a) {
    lam.push_back(c.aut->elements[c.lam[a]]);
    json row = json::array();
    for (int b = 0; b < c.K->order(); ++b) row.push_back(c.gv(a, b));
    g.push_back(row);
  }
  return {{"lam", lam}, {"g", g}};
}

void ext_classify(const Globals& g, Output& out, const std::string& g_path, const std::string& k_path) {
  auto parse = [](const json& j, const io::Ctx& c) { return io::parse_group(j, c); };
  GroupPtr G = io::load(g_path, parse), K = io::load(k_path, parse);
  ExtOptions opt;
  opt.enumeration = g.enumeration();
  const ExtensionClassification r = classify_extensions(G, K, opt);
  json classes = json::array();
  out.text << count_of(r.classes.size(), "class", "classes") << " (" << count_of(r.cocycle_count, "cocycle", "cocycles") << "), "
           << count_of(static_cast<std::size_t>(r.isomorphism_type_count), "isomorphism type", "isomorphism types") << "\n";
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    const auto& c = r.classes[i];
    json e = cocycle_summary(c.representative);
    e["group"] = c.group_name;
    e["isomorphism_type"] = c.isomorphism_type;
    classes.push_back(e);
    out.text << "  class " << i << ": " << c.group_name << "\n";
  }
  out.data["classes"] = r.classes.size();
  out.data["cocycles"] = r.cocycle_count;
  out.data["isomorphism_types"] = r.isomorphism_type_count;
  out.data["extensions"] = classes;
  report_budget(out, r.budget_used, r.budget_limit);
}

void ext_build(const Globals&, Output& out, const std::string& path) {
  const ExtensionCocycle c = io::load(path, io::parse_extension_cocycle);
  std::string why;
  if (!verify_extension_cocycle(c, &why)) {
    verdict(out, "extension cocycle", false, why);
    return;
  }
  const ExtensionWitness w = build_extension(c);
  const std::string type = identify_group(*w.H);
  std::vector<int> section(c.K->order());
  for (int k = 0; k < c.K->order(); ++k) section[k] = k * c.G->order();
  out.data = io::witness_json(w, section);
  out.data["isomorphic_to"] = type;
  out.data["order"] = w.H->order();
  out.text << "extension of order " << w.H->order() << ", isomorphic to " << type << "\n";
  out.text << "embed: " << list(w.embed.map) << "\nproject: " << list(w.project.map) << "\n";
}

void ext_from_extension(const Globals&, Output& out, const std::string& path) {
  const io::WitnessFile w = io::load(path, io::parse_witness);
  const ExtensionCocycle c = cocycle_from_extension(w.witness, w.section);
  out.data = cocycle_summary(c);
  out.text << "lam (automorphisms of G, one per k):\n";
  for (int a = 0; a < c.K->order(); ++a) out.text << "  " << a << ": " << list(c.aut->elements[c.lam[a]]) << "\n";
  out.text << "g:\n";
  for (int a = 0; a < c.K->order(); ++a) {
    std::vector<int> row;
    for (int b = 0; b < c.K->order(); ++b) row.push_back(c.gv(a, b));
    out.text << "  " << list(row) << "\n";
  }
}

// ---------------------------------------------------------------------------
// g2

void g2_verify(const Globals&, Output& out, const std::string& path) {
  const QuadrupleCocycle q = io::load(path, io::parse_quadruple);
  std::string why;
  verdict(out, "cocycle quadruple", verify_quadruple(q, &why), why);
}

void g2_cohomologous(const Globals& g, Output& out, const std::string& a, const std::string& b) {
  const QuadrupleCocycle q1 = io::load(a, io::parse_quadruple);
  const QuadrupleCocycle q2 = io::load(b, io::parse_quadruple);
  Budget budget(g.budget);
  const auto c = find_quadruple_coboundary(q1, q2, budget);
  out.data["cohomologous"] = c.has_value();
  out.text << "cohomologous: " << (c ? "yes" : "no") << "\n";
  if (c) {
    out.data["coboundary"] = {{"r", c->r}, {"ztil", c->ztil}, {"theta", c->theta}, {"b", c->b}};
    out.text << "coboundary: r = " << list(c->r) << ", ztil = " << list(c->ztil) << ", theta = " << list(c->theta)
             << ", b = " << list(c->b) << "\n";
  }
  out.status = c ? 0 : 1;
  report_budget(out, budget.used(), budget.limit());
}

void g2_classify(const Globals& g, Output& out, const std::string& nerve_path, const std::string& square_path) {
  NervePtr n = io::load(nerve_path, io::parse_nerve);
  SquarePtr sq = io::load(square_path, io::parse_square);
  const QuadrupleClassification r = classify_quadruples(n, sq, g.enumeration());
  out.data["classes"] = r.count();
  out.data["cocycles"] = r.classes.cocycle_count;
  out.data["orbit_sizes"] = r.classes.orbit_sizes;
  json reps = json::array();
  out.text << count_of(r.count(), "class", "classes") << " (" << count_of(r.classes.cocycle_count, "cocycle", "cocycles") << ")\n";
  for (std::size_t i = 0; i < r.count(); ++i) {
    const auto& q = r.representatives[i];
    reps.push_back({{"lam", q.lam}, {"mtil", q.mtil}, {"g", q.g}, {"nu", q.nu}});
    out.text << "  class " << i << ": lam = " << list(q.lam) << ", mtil = " << list(q.mtil) << ", g = " << list(q.g)
             << ", nu = " << list(q.nu) << ", orbit size " << r.classes.orbit_sizes[i] << "\n";
  }
  out.data["representatives"] = reps;
  report_budget(out, r.classes.budget_used, r.classes.budget_limit);
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  CLI::App app{"Finite nonabelian cohomology: torsors, gerbes, extensions and 2-gerbe quadruples"};
  app.require_subcommand(1);
  app.add_flag("--json", g.json_out, "Print machine-readable JSON");
  app.add_option("--budget", g.budget, "Cap on candidate assignments per enumeration")
      ->check(CLI::PositiveNumber);
  app.add_option("--workers", g.workers, "Worker threads for enumeration")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for randomly drawn data");

  std::function<void(Output&)> run;
  std::vector<std::string> a(2);
  std::string sector = "all";

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  std::vector<std::string> args, auto fn, bool optional_last = false) {
    CLI::App* cmd = parent->add_subcommand(name, help);
    for (std::size_t i = 0; i < args.size(); ++i) {
      auto* opt = cmd->add_option(args[i], a[i], args[i] + " file");
      if (!(optional_last && i + 1 == args.size())) opt->required();
    }
    cmd->callback([&, fn, n = args.size()] {
      run = [&, fn, n](Output& out) {
        if constexpr (std::is_invocable_v<decltype(fn), const Globals&, Output&, const std::string&>) {
          (void)n;
          fn(g, out, a[0]);
        } else {
          fn(g, out, a[0], a[1]);
        }
      };
    });
    return cmd;
  };
  auto group = [&](const std::string& name, const std::string& help) {
    auto* c = app.add_subcommand(name, help);
    c->require_subcommand(1);
    return c;
  };

  auto* grp = group("group", "Finite groups");
  leaf(grp, "verify", "Check the group axioms", {"group"}, group_verify);
  leaf(grp, "aut", "Automorphism group and inner automorphisms", {"group"}, group_aut);
  auto* xm = group("xmod", "Crossed modules");
  leaf(xm, "verify", "Check the crossed module axioms", {"xmod"}, xmod_verify);
  leaf(xm, "norrie", "Crossed square built from the derivation group", {"xmod"}, xmod_norrie);
  auto* nv = group("nerve", "Nerves");
  leaf(nv, "show", "Faces and ordered tuples", {"nerve"}, nerve_show);
  auto* tor = group("torsor", "Torsors over finite spaces");
  leaf(tor, "verify", "Check the torsor (or bitorsor) conditions", {"space"}, torsor_verify);
  leaf(tor, "glue", "Glue a torsor from a 1-cocycle", {"cochain"}, torsor_glue);
  leaf(tor, "cocycle", "Transition cocycle of a torsor with local sections", {"space"}, torsor_cocycle);
  auto* bit = group("bitorsor", "Bitorsors");
  leaf(bit, "product", "Contracted product", {"first", "second"}, bitorsor_product);
  leaf(bit, "opposite", "Opposite bitorsor", {"space"}, bitorsor_opposite);
  leaf(bit, "verify-cocycle", "Check a bitorsor cocycle", {"cocycle"}, bitorsor_verify_cocycle);
  leaf(&app, "h1", "Degree-1 classes with group coefficients", {"nerve", "group"}, h1);
  leaf(&app, "h0x", "Degree-0 classes with crossed module coefficients", {"nerve", "xmod"}, h0x);
  auto* ger = group("gerbe", "Gerbe cocycle pairs");
  leaf(ger, "verify", "Check a gerbe cocycle pair", {"pair"}, gerbe_verify);
  auto* gcl = leaf(ger, "classify", "Classes of gerbe cocycle pairs", {"nerve", "group"},
                   [&](const Globals& gl, Output& out, const std::string& n, const std::string& gp) {
                     gerbe_classify(gl, out, n, gp, sector);
                   });
  gcl->add_option("--sector", sector, "all, or lambda-id for lambda = id with central theta")
      ->check(CLI::IsMember({"all", "lambda-id"}));
  leaf(ger, "coboundary", "Apply a coboundary (drawn from --seed when omitted)", {"pair", "coboundary"},
       gerbe_coboundary, true);
  auto* ext = group("ext", "Group extensions");
  leaf(ext, "classify", "Extensions of K by G up to equivalence", {"G", "K"}, ext_classify);
  leaf(ext, "build", "Extension group of a cocycle", {"cocycle"}, ext_build);
  leaf(ext, "from-extension", "Cocycle of an extension with a section", {"witness"}, ext_from_extension);
  auto* g2 = group("g2", "2-gerbe cocycle quadruples");
  leaf(g2, "verify", "Check a cocycle quadruple", {"quadruple"}, g2_verify);
  leaf(g2, "cohomologous", "Search for a coboundary relating two quadruples", {"first", "second"}, g2_cohomologous);
  leaf(g2, "classify", "Classes of cocycle quadruples", {"nerve", "square"}, g2_classify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Output out;
  try {
    run(out);
  } catch (const CapacityError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (g.json_out) {
    out.data["status"] = out.status;
    std::cout << out.data.dump(2) << "\n";
  } else {
    std::cout << out.text.str();
  }
  return out.status;
}
