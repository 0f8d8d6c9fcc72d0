#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gerbecoh/io.hpp"

using namespace gerbecoh;
namespace fs = std::filesystem;

namespace {

const fs::path data_dir = GERBECOH_DATA_DIR;

template <class F>
auto load_data(const char* name, F&& parse, std::ostream* notices = nullptr) {
  return io::load(data_dir / name, std::forward<F>(parse), notices);
}

auto group_parser = [](const io::json& j, const io::Ctx& c) { return io::parse_group(j, c); };

std::string parse_error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

// Contexts for values round-tripped in memory; references resolve against the data directory.
io::Ctx memory_ctx() { return io::Ctx{data_dir / "memory.json", "", nullptr}; }

}  // namespace

TEST_CASE("groups load from tables and standard names") {
  const GroupPtr s3 = load_data("s3.json", group_parser);
  CHECK(isomorphic(*s3, symmetric_group(3)));
  const GroupPtr z4 = load_data("z4.json", group_parser);
  CHECK(z4->order() == 4);
}

TEST_CASE("strict parsing errors name the file and field") {
  const auto unknown = parse_error_of([] { load_data("unknown_field.json", group_parser); });
  CHECK(unknown.find("unknown field 'comment'") != std::string::npos);
  CHECK(unknown.find("unknown_field.json") != std::string::npos);

  const auto ragged = parse_error_of([] { load_data("nonsquare.json", group_parser); });
  CHECK(ragged.find("mul[1]") != std::string::npos);

  const auto axioms = parse_error_of([] { load_data("broken.json", group_parser); });
  CHECK(axioms.find("not a group") != std::string::npos);

  const auto missing = parse_error_of([] { load_data("cochain_missing_group.json", io::parse_cochain); });
  CHECK(missing.find("does not exist") != std::string::npos);
  CHECK(missing.find("group") != std::string::npos);

  const auto extra = parse_error_of([] { load_data("quad_bad_field.json", io::parse_quadruple); });
  CHECK(extra.find("unknown field 'xi'") != std::string::npos);

  CHECK_THROWS_AS(load_data("no_such_file.json", group_parser), ParseError);
}

TEST_CASE("syntax errors report line and column") {
  const fs::path tmp = fs::temp_directory_path() / "gerbecoh_syntax_error.json";
  {
    std::ofstream out(tmp);
    out << "{\n  \"order\": 2,\n  \"mul\": [[0, 1] [1, 0]]\n}\n";
  }
  const auto msg = parse_error_of([&] { io::load(tmp, group_parser, nullptr); });
  fs::remove(tmp);
  CHECK(msg.find(":3:") != std::string::npos);
  CHECK(msg.find("invalid JSON") != std::string::npos);
}

TEST_CASE("out of range indices are parse errors") {
  const io::json j = {{"order", 2}, {"mul", {{0, 1}, {1, 2}}}};
  const auto msg = parse_error_of([&] { io::parse_group(j, memory_ctx()); });
  CHECK(msg.find("out of range") != std::string::npos);
  CHECK(msg.find("mul[1][1]") != std::string::npos);
}

TEST_CASE("nerves that are not downward closed are completed with a notice") {
  std::ostringstream notices;
  const NervePtr n = load_data("open_faces.json", io::parse_nerve, &notices);
  CHECK(n->is_face({0, 1}));
  CHECK(n->is_face({3}));
  CHECK(n->faces().size() == 9);
  CHECK(notices.str().find("not downward closed") != std::string::npos);
  CHECK(notices.str().find("added 7 missing faces") != std::string::npos);
  std::ostringstream quiet;
  load_data("simplex3.json", io::parse_nerve, &quiet);
  CHECK(quiet.str().empty());
}

TEST_CASE("references resolve relative to the referring file") {
  const Cochain1 c = load_data("cochain_simplex3.json", io::parse_cochain);
  CHECK(*c.nerve == simplex_nerve(3));
  const GerbeCocyclePair p = load_data("gerbe_z3_simplex3.json", io::parse_gerbe_pair);
  CHECK(*p.nerve == simplex_nerve(3));
  CHECK(p.group->order() == 3);
  CHECK(p.lam_at(0, 1) != 0);
  CHECK(p.lam_at(0, 2) == 0);
}

TEST_CASE("writers round trip") {
  const io::Ctx c = memory_ctx();
  auto s3 = share(symmetric_group(3));

  const GroupPtr g = io::parse_group(io::group_json(*s3), c);
  CHECK(g->rows() == s3->rows());

  for (const char* kind : {"circle(4)", "sphere2", "boundary(5)"}) {
    const Nerve n = standard_nerve(kind);
    CHECK(*io::parse_nerve(io::nerve_json(n), c) == n);
  }

  const CrossedModule cm = aut_crossed_module(s3);
  CHECK(same_crossed_module(io::parse_crossed_module(io::crossed_module_json(cm), c), cm));

  for (const CrossedSquare& sq : {commutator_square(s3), norrie_square(aut_crossed_module(share(cyclic_group(3)))),
                                  abelian_reduction_square(share(cyclic_group(2)))})
    CHECK(detail::same_square(*io::parse_square(io::square_json(sq), c), sq));

  Cochain1 co = Cochain1::identity(share(circle_nerve(3)), s3);
  co.values = {1, 3, 5};
  CHECK(io::parse_cochain(io::cochain_json(co), c).values == co.values);

  ExtensionCocycle e = ExtensionCocycle::trivial(share(cyclic_group(3)), share(cyclic_group(2)));
  e.lam[1] = e.aut->index_of({0, 2, 1});
  const ExtensionCocycle e2 = io::parse_extension_cocycle(io::extension_cocycle_json(e), c);
  CHECK(e2.lam == e.lam);
  CHECK(e2.g == e.g);

  const GerbeCocyclePair p = load_data("gerbe_z3_simplex3.json", io::parse_gerbe_pair);
  const GerbeCocyclePair p2 = io::parse_gerbe_pair(io::gerbe_pair_json(p), c);
  CHECK(p2.lam == p.lam);
  CHECK(p2.g == p.g);

  const QuadrupleCocycle q = load_data("quad_valid.json", io::parse_quadruple);
  CHECK(io::parse_quadruple(io::quadruple_json(q), c) == q);

  const auto w = load_data("witness_z4.json", io::parse_witness);
  const auto w2 = io::parse_witness(io::witness_json(w.witness, w.section), c);
  CHECK(w2.section == w.section);
  CHECK(w2.witness.H->rows() == w.witness.H->rows());
  CHECK(w2.witness.embed.map == w.witness.embed.map);
  CHECK(w2.witness.project.map == w.witness.project.map);

  const auto sp = load_data("bitorsor_z3_twisted.json", io::parse_space);
  const auto sp2 = io::parse_space(io::space_json(sp.space), c);
  CHECK(sp2.space.lact == sp.space.lact);
  CHECK(sp2.space.ract == sp.space.ract);
  CHECK(sp2.space.links == sp.space.links);
}

TEST_CASE("extension cocycles parse with defaults") {
  const ExtensionCocycle z4 = load_data("ext_z4.json", io::parse_extension_cocycle);
  CHECK(z4.gv(1, 1) == 1);
  CHECK(z4.lam == std::vector<int>{0, 0});
  CHECK(verify_extension_cocycle(z4));
  const ExtensionCocycle corrupt = load_data("ext_z4_corrupt.json", io::parse_extension_cocycle);
  CHECK_FALSE(verify_extension_cocycle(corrupt));
}
