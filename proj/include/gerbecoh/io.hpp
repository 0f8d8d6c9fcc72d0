#pragma once

// JSON input and output for every value the command line handles.
//
// Parsing is strict: unknown fields are rejected, every index is range
// checked, and a nested value may be given inline or as a path relative to
// the file that mentions it. Errors are ParseError with the file and a field
// path such as "square.act_l[2]". Writers produce the same layouts, so any
// output can be fed back in.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gerbecoh/coh.hpp"
#include "gerbecoh/ext.hpp"
#include "gerbecoh/gerbe2.hpp"
#include "gerbecoh/torsor.hpp"
#include "gerbecoh/xmod.hpp"

namespace gerbecoh::io {

using nlohmann::json;
namespace fs = std::filesystem;

/// Where a value came from: its file, the directory used to resolve
/// references, and the field path inside the file.
struct Ctx {
  fs::path file;
  std::string field;
  std::ostream* notices = &std::cerr;

  Ctx at(const std::string& key) const { return Ctx{file, field.empty() ? key : field + "." + key, notices}; }
  Ctx at(std::size_t index) const { return Ctx{file, field + "[" + std::to_string(index) + "]", notices}; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(file.string() + ": " + (field.empty() ? std::string("top level") : field) + ": " + msg);
  }
};

/// Reads and parses a JSON file; syntax errors report line and column.
inline json read_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": invalid JSON: " + e.what());
  }
}

namespace detail {

inline void expect_object(const json& j, const Ctx& c, std::initializer_list<const char*> required,
                          std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) c.fail("expected an object");
  std::set<std::string> known;
  for (const char* k : required) {
    known.insert(k);
    if (!j.contains(k)) c.fail(std::string("missing field '") + k + "'");
  }
  for (const char* k : optional) known.insert(k);
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) c.fail("unknown field '" + it.key() + "'");
}

/// Exactly one of the listed keys, used to pick a layout variant.
inline std::string variant_key(const json& j, const Ctx& c, std::initializer_list<const char*> keys) {
  if (!j.is_object()) c.fail("expected an object");
  std::string found;
  for (const char* k : keys)
    if (j.contains(k)) {
      if (!found.empty()) c.fail("fields '" + found + "' and '" + k + "' cannot be combined");
      found = k;
    }
  return found;
}

inline int as_int(const json& j, const Ctx& c) {
  if (!j.is_number_integer()) c.fail("expected an integer");
  const auto v = j.get<long long>();
  if (v < -1'000'000'000LL || v > 1'000'000'000LL) c.fail("integer out of range");
  return static_cast<int>(v);
}

inline int as_index(const json& j, const Ctx& c, int bound, const char* what) {
  const int v = as_int(j, c);
  if (v < 0 || v >= bound) c.fail(std::string(what) + " " + std::to_string(v) + " is out of range [0, " +
                                   std::to_string(bound) + ")");
  return v;
}

inline std::string as_string(const json& j, const Ctx& c) {
  if (!j.is_string()) c.fail("expected a string");
  return j.get<std::string>();
}

inline const json& as_array(const json& j, const Ctx& c) {
  if (!j.is_array()) c.fail("expected an array");
  return j;
}

inline std::vector<int> index_list(const json& j, const Ctx& c, std::size_t length, int bound, const char* what) {
  as_array(j, c);
  if (j.size() != length)
    c.fail("expected " + std::to_string(length) + " entries, found " + std::to_string(j.size()));
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_index(j[i], c.at(i), bound, what));
  return out;
}

/// A referenced value: inline, or a relative path to a file holding it.
inline std::pair<json, Ctx> deref(const json& j, const Ctx& c) {
  if (!j.is_string()) return {j, c};
  const fs::path rel = j.get<std::string>();
  const fs::path full = rel.is_absolute() ? rel : c.file.parent_path() / rel;
  if (!fs::exists(full)) c.fail("referenced file '" + rel.string() + "' does not exist");
  return {read_json(full), Ctx{full, "", c.notices}};
}

template <class F>
auto wrap_structural(const Ctx& c, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const StructuralError& e) {
    c.fail(e.what());
  } catch (const PreconditionError& e) {
    c.fail(e.what());
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Groups

/// {"name", "order", "mul"} or {"standard": "S_3"}. With `check_axioms`, a
/// table that is not a group is rejected.
inline GroupPtr parse_group(const json& in, const Ctx& cin, bool check_axioms = true) {
  auto [j, c] = detail::deref(in, cin);
  if (j.is_object() && j.contains("standard")) {
    detail::expect_object(j, c, {"standard"});
    const std::string name = detail::as_string(j["standard"], c.at("standard"));
    return detail::wrap_structural(c.at("standard"), [&] { return share(standard_group(name)); });
  }
  detail::expect_object(j, c, {"order", "mul"}, {"name"});
  const int n = detail::as_int(j["order"], c.at("order"));
  if (n < 1) c.at("order").fail("group order must be positive");
  const Ctx cm = c.at("mul");
  detail::as_array(j["mul"], cm);
  if (static_cast<int>(j["mul"].size()) != n)
    cm.fail("expected " + std::to_string(n) + " rows, found " + std::to_string(j["mul"].size()));
  std::vector<std::vector<int>> rows;
  for (int a = 0; a < n; ++a) {
    const Ctx cr = cm.at(static_cast<std::size_t>(a));
    const json& row = detail::as_array(j["mul"][a], cr);
    if (static_cast<int>(row.size()) != n)
      cr.fail("row " + std::to_string(a) + " has " + std::to_string(row.size()) + " entries, expected " +
              std::to_string(n));
    rows.push_back(detail::index_list(row, cr, n, n, "element"));
  }
  const std::string name = j.contains("name") ? detail::as_string(j["name"], c.at("name")) : "G";
  FiniteGroup g(name, rows);
  std::string why;
  if (check_axioms && !verify_group(g, &why)) cm.fail("not a group: " + why);
  return share(std::move(g));
}

inline json group_json(const FiniteGroup& g) { return json{{"name", g.name()}, {"order", g.order()}, {"mul", g.rows()}}; }

/// An automorphism given as its list of images.
inline int parse_automorphism(const json& j, const Ctx& c, const AutGroup& aut) {
  const auto map = detail::index_list(j, c, static_cast<std::size_t>(aut.base->order()), aut.base->order(), "element");
  auto it = aut.index.find(map);
  if (it == aut.index.end()) c.fail("map is not an automorphism of " + aut.base->name());
  return it->second;
}

/// Action table [a][x] = a . x, one row per element of the acting group.
inline GroupAction parse_action(const json& j, const Ctx& c, int acting, int acted) {
  detail::as_array(j, c);
  if (static_cast<int>(j.size()) != acting)
    c.fail("expected " + std::to_string(acting) + " rows, found " + std::to_string(j.size()));
  std::vector<int> table;
  for (int a = 0; a < acting; ++a) {
    auto row = detail::index_list(j[a], c.at(static_cast<std::size_t>(a)), acted, acted, "element");
    table.insert(table.end(), row.begin(), row.end());
  }
  return GroupAction(acting, acted, std::move(table));
}

inline json action_json(const GroupAction& a) {
  json rows = json::array();
  for (int p = 0; p < a.acting_order(); ++p) rows.push_back(a.automorphism(p));
  return rows;
}

// ---------------------------------------------------------------------------
// Nerves

/// {"indices", "faces"}, {"standard": "circle(3)"}, or {"points", "cover"}
/// for the nerve of a family of subsets. Faces that are not downward closed
/// are completed, with a notice.
inline NervePtr parse_nerve(const json& in, const Ctx& cin) {
  auto [j, c] = detail::deref(in, cin);
  if (j.is_object() && j.contains("cover")) {
    detail::expect_object(j, c, {"points", "cover"});
    const int points = detail::as_int(j["points"], c.at("points"));
    if (points < 1) c.at("points").fail("at least one point needed");
    const Ctx cc = c.at("cover");
    detail::as_array(j["cover"], cc);
    std::vector<std::vector<int>> sets;
    for (std::size_t i = 0; i < j["cover"].size(); ++i) {
      const json& u = detail::as_array(j["cover"][i], cc.at(i));
      std::vector<int> set;
      for (std::size_t t = 0; t < u.size(); ++t) set.push_back(detail::as_index(u[t], cc.at(i).at(t), points, "point"));
      sets.push_back(set);
    }
    return detail::wrap_structural(cc, [&] { return share(nerve_from_cover(points, sets)); });
  }
  if (j.is_object() && j.contains("standard")) {
    detail::expect_object(j, c, {"standard"});
    const std::string kind = detail::as_string(j["standard"], c.at("standard"));
    return detail::wrap_structural(c.at("standard"), [&] { return share(standard_nerve(kind)); });
  }
  detail::expect_object(j, c, {"indices", "faces"});
  const int n = detail::as_int(j["indices"], c.at("indices"));
  if (n < 1) c.at("indices").fail("a nerve needs at least one index");
  const Ctx cf = c.at("faces");
  detail::as_array(j["faces"], cf);
  std::vector<Face> faces;
  for (std::size_t s = 0; s < j["faces"].size(); ++s) {
    const Ctx cs = cf.at(s);
    const json& f = detail::as_array(j["faces"][s], cs);
    if (f.empty()) cs.fail("faces must be nonempty");
    Face face;
    for (std::size_t t = 0; t < f.size(); ++t) face.push_back(detail::as_index(f[t], cs.at(t), n, "index"));
    std::sort(face.begin(), face.end());
    if (std::adjacent_find(face.begin(), face.end()) != face.end()) cs.fail("repeated index in face");
    faces.push_back(face);
  }
  Nerve nerve(n, faces);
  if (!is_downward_closed(n, faces) && c.notices) {
    std::set<Face> given(faces.begin(), faces.end());
    std::size_t added = 0;
    for (const auto& f : nerve.faces()) added += given.count(f) ? 0 : 1;
    *c.notices << "notice: " << c.file.string() << ": faces were not downward closed; added " << added
               << " missing face" << (added == 1 ? "" : "s") << "\n";
  }
  return share(std::move(nerve));
}

inline json nerve_json(const Nerve& n) {
  json faces = json::array();
  for (const auto& f : n.faces()) faces.push_back(f);
  return json{{"indices", n.index_count()}, {"faces", faces}};
}

// ---------------------------------------------------------------------------
// Crossed modules and squares

/// {"g", "pi", "delta", "action"}, or {"aut": G} for G -> Aut(G), or
/// {"identity": G} for G -> G with conjugation.
inline CrossedModule parse_crossed_module(const json& in, const Ctx& cin) {
  auto [j, c] = detail::deref(in, cin);
  const std::string v = detail::variant_key(j, c, {"aut", "identity"});
  if (v == "aut") {
    detail::expect_object(j, c, {"aut"});
    return aut_crossed_module(parse_group(j["aut"], c.at("aut")));
  }
  if (v == "identity") {
    detail::expect_object(j, c, {"identity"});
    return identity_crossed_module(parse_group(j["identity"], c.at("identity")));
  }
  detail::expect_object(j, c, {"g", "pi", "delta", "action"});
  GroupPtr g = parse_group(j["g"], c.at("g"));
  GroupPtr pi = parse_group(j["pi"], c.at("pi"));
  auto delta = detail::index_list(j["delta"], c.at("delta"), static_cast<std::size_t>(g->order()), pi->order(),
                                  "element");
  GroupAction act = parse_action(j["action"], c.at("action"), pi->order(), g->order());
  return CrossedModule{g, pi, GroupHom{g, pi, delta}, act};
}

inline json crossed_module_json(const CrossedModule& cm) {
  return json{{"g", group_json(*cm.g)},
              {"pi", group_json(*cm.pi)},
              {"delta", cm.delta.map},
              {"action", action_json(cm.act)}};
}

/// Full layout {"l", "m", "n", "p", "lm", "ln", "mp", "np", "act_l", "act_m",
/// "act_n", "h"} with h[m][n], or one of {"norrie": xmod}, {"commutator": G},
/// {"abelian_reduction": A}, {"bottom_row": xmod}.
inline SquarePtr parse_square(const json& in, const Ctx& cin) {
  auto [j, c] = detail::deref(in, cin);
  const std::string v = detail::variant_key(j, c, {"norrie", "commutator", "abelian_reduction", "bottom_row"});
  if (!v.empty()) {
    detail::expect_object(j, c, {v.c_str()});
    const Ctx cv = c.at(v);
    return detail::wrap_structural(cv, [&] {
      if (v == "norrie") return share(norrie_square(parse_crossed_module(j[v], cv)));
      if (v == "commutator") return share(commutator_square(parse_group(j[v], cv)));
      if (v == "abelian_reduction") return share(abelian_reduction_square(parse_group(j[v], cv)));
      return share(square_from_bottom_row(parse_crossed_module(j[v], cv)));
    });
  }
  detail::expect_object(j, c, {"l", "m", "n", "p", "lm", "ln", "mp", "np", "act_l", "act_m", "act_n", "h"});
  GroupPtr L = parse_group(j["l"], c.at("l")), M = parse_group(j["m"], c.at("m")),
           N = parse_group(j["n"], c.at("n")), P = parse_group(j["p"], c.at("p"));
  auto hom = [&](const char* key, const GroupPtr& s, const GroupPtr& t) {
    return GroupHom{s, t, detail::index_list(j[key], c.at(key), static_cast<std::size_t>(s->order()), t->order(),
                                             "element")};
  };
  CrossedSquare sq{L, M, N, P, hom("lm", L, M), hom("ln", L, N), hom("mp", M, P), hom("np", N, P),
                   parse_action(j["act_l"], c.at("act_l"), P->order(), L->order()),
                   parse_action(j["act_m"], c.at("act_m"), P->order(), M->order()),
                   parse_action(j["act_n"], c.at("act_n"), P->order(), N->order()), {}};
  const Ctx ch = c.at("h");
  detail::as_array(j["h"], ch);
  if (static_cast<int>(j["h"].size()) != M->order())
    ch.fail("expected " + std::to_string(M->order()) + " rows, found " + std::to_string(j["h"].size()));
  for (int m = 0; m < M->order(); ++m) {
    auto row = detail::index_list(j["h"][m], ch.at(static_cast<std::size_t>(m)), N->order(), L->order(), "element");
    sq.h.insert(sq.h.end(), row.begin(), row.end());
  }
  return share(std::move(sq));
}

inline json square_json(const CrossedSquare& sq) {
  json h = json::array();
  for (int m = 0; m < sq.m->order(); ++m) {
    json row = json::array();
    for (int n = 0; n < sq.n->order(); ++n) row.push_back(sq.pair(m, n));
    h.push_back(row);
  }
  return json{{"l", group_json(*sq.l)},     {"m", group_json(*sq.m)},      {"n", group_json(*sq.n)},
              {"p", group_json(*sq.p)},     {"lm", sq.lm.map},             {"ln", sq.ln.map},
              {"mp", sq.mp.map},            {"np", sq.np.map},             {"act_l", action_json(sq.act_l)},
              {"act_m", action_json(sq.act_m)}, {"act_n", action_json(sq.act_n)}, {"h", h}};
}

// ---------------------------------------------------------------------------
// Values on faces

namespace detail {

/// Entries [i0, ..., i_{k-1}, value] on faces of size k. Unlisted faces keep
/// their current value. With `ordered_only`, indices must be increasing.
template <class Set>
void parse_face_values(const json& j, const Ctx& c, const Nerve& nerve, std::size_t k, int bound, bool ordered_only,
                       Set&& set) {
  as_array(j, c);
  std::set<Face> seen;
  for (std::size_t e = 0; e < j.size(); ++e) {
    const Ctx ce = c.at(e);
    const json& entry = as_array(j[e], ce);
    if (entry.size() != k + 1) ce.fail("expected " + std::to_string(k) + " indices and a value");
    Face f;
    for (std::size_t t = 0; t < k; ++t) f.push_back(as_index(entry[t], ce.at(t), nerve.index_count(), "index"));
    if (ordered_only && !std::is_sorted(f.begin(), f.end())) ce.fail("indices must be increasing");
    Face sorted = f;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) ce.fail("repeated index");
    if (nerve.position(sorted) < 0) ce.fail("not a face of the nerve");
    if (!seen.insert(sorted).second) ce.fail("face listed twice");
    set(f, as_index(entry[k], ce.at(k), bound, "value"), ce);
  }
}

inline json face_values_json(const Nerve& n, std::size_t k, const std::vector<int>& values) {
  json out = json::array();
  const auto& faces = n.faces_of_size(k);
  for (std::size_t s = 0; s < faces.size(); ++s) {
    json e = faces[s];
    e.push_back(values[s]);
    out.push_back(e);
  }
  return out;
}

}  // namespace detail

/// {"nerve", "group", "values": [[i, j, g], ...]}; unlisted pairs are the identity.
inline Cochain1 parse_cochain(const json& in, const Ctx& cin) {
  auto [j, c] = detail::deref(in, cin);
  detail::expect_object(j, c, {"nerve", "group"}, {"values"});
  NervePtr n = parse_nerve(j["nerve"], c.at("nerve"));
  GroupPtr g = parse_group(j["group"], c.at("group"));
  Cochain1 out = Cochain1::identity(n, g);
  if (j.contains("values"))
    detail::parse_face_values(j["values"], c.at("values"), *n, 2, g->order(), false,
                              [&](const Face& f, int v, const Ctx&) { out.set(f[0], f[1], v); });
  return out;
}

inline json cochain_json(const Cochain1& c) {
  return json{{"nerve", nerve_json(*c.nerve)},
              {"group", group_json(*c.group)},
              {"values", detail::face_values_json(*c.nerve, 2, c.values)}};
}

// ---------------------------------------------------------------------------
// Spaces (torsors and bitorsors) over finite posets

struct SpaceFile {
  Space space;
  std::optional<Cover> cover;
  std::optional<std::vector<Section>> sections;
};

inline FiniteSpace parse_base(const json& j, const Ctx& c) {
  detail::expect_object(j, c, {"points"}, {"links"});
  FiniteSpace s;
  s.points = detail::as_int(j["points"], c.at("points"));
  if (s.points < 1) c.at("points").fail("a base needs at least one point");
  if (j.contains("links")) {
    const Ctx cl = c.at("links");
    detail::as_array(j["links"], cl);
    for (std::size_t l = 0; l < j["links"].size(); ++l) {
      auto xy = detail::index_list(j["links"][l], cl.at(l), 2, s.points, "point");
      s.links.emplace_back(xy[0], xy[1]);
    }
    std::sort(s.links.begin(), s.links.end());
  }
  detail::wrap_structural(c, [&] { validate_space(s); });
  return s;
}

inline json base_json(const FiniteSpace& s) {
  json links = json::array();
  for (auto [x, y] : s.links) links.push_back({x, y});
  return json{{"points", s.points}, {"links", links}};
}

/// {"base", "left", "right"?, "fibers": [{"size", "left", "right"?}], "links",
///  "cover"?, "sections"?}. Groups are constant over the base; "right"
/// defaults to the trivial group, with the identity action. links[l] is the
/// map F_x -> F_y for the l-th link in sorted order. sections[i] lists the
/// values at the points of cover set i, in increasing order.
inline SpaceFile parse_space(const json& in, const Ctx& cin) {
  auto [j, c] = detail::deref(in, cin);
  detail::expect_object(j, c, {"base", "left", "fibers"}, {"right", "links", "cover", "sections"});
  SpaceFile out;
  const FiniteSpace base = parse_base(j["base"], c.at("base"));
  GroupPtr G = parse_group(j["left"], c.at("left"));
  GroupPtr H = j.contains("right") ? parse_group(j["right"], c.at("right")) : share(trivial_group());
  Space& s = out.space;
  s.left = GroupBundle::constant(base, G);
  s.right = GroupBundle::constant(base, H);
  const Ctx cf = c.at("fibers");
  detail::as_array(j["fibers"], cf);
  if (static_cast<int>(j["fibers"].size()) != base.points)
    cf.fail("expected one fiber per point (" + std::to_string(base.points) + ")");
  for (int x = 0; x < base.points; ++x) {
    const Ctx cx = cf.at(static_cast<std::size_t>(x));
    const json& fx = j["fibers"][x];
    detail::expect_object(fx, cx, {"size", "left"}, {"right"});
    const int size = detail::as_int(fx["size"], cx.at("size"));
    if (size < 0) cx.at("size").fail("negative fiber size");
    s.size.push_back(size);
    s.lact.push_back(parse_action(fx["left"], cx.at("left"), G->order(), size).table());
    if (fx.contains("right")) {
      // rows are per fiber element p: [p . h for h in H]
      const Ctx cr = cx.at("right");
      detail::as_array(fx["right"], cr);
      if (static_cast<int>(fx["right"].size()) != size) cr.fail("expected one row per fiber element");
      std::vector<int> t;
      for (int p = 0; p < size; ++p) {
        auto row = detail::index_list(fx["right"][p], cr.at(static_cast<std::size_t>(p)),
                                      static_cast<std::size_t>(H->order()), size, "fiber element");
        t.insert(t.end(), row.begin(), row.end());
      }
      s.ract.push_back(t);
    } else {
      if (H->order() != 1) cx.fail("missing field 'right' (the right group is not trivial)");
      std::vector<int> t(size);
      for (int p = 0; p < size; ++p) t[p] = p;
      s.ract.push_back(t);
    }
  }
  const Ctx cl = c.at("links");
  if (!base.links.empty() && !j.contains("links")) c.fail("missing field 'links'");
  if (j.contains("links")) {
    detail::as_array(j["links"], cl);
    if (j["links"].size() != base.links.size()) cl.fail("expected one map per base link");
    for (std::size_t l = 0; l < base.links.size(); ++l) {
      auto [x, y] = base.links[l];
      s.links.push_back(detail::index_list(j["links"][l], cl.at(l), static_cast<std::size_t>(s.size[x]), s.size[y],
                                           "fiber element"));
    }
  }
  detail::wrap_structural(c, [&] { check_space_shape(s); });
  if (j.contains("cover")) {
    const Ctx cc = c.at("cover");
    detail::as_array(j["cover"], cc);
    Cover cov{base, {}};
    for (std::size_t i = 0; i < j["cover"].size(); ++i) {
      const json& u = detail::as_array(j["cover"][i], cc.at(i));
      std::vector<int> set;
      for (std::size_t t = 0; t < u.size(); ++t) set.push_back(detail::as_index(u[t], cc.at(i).at(t), base.points, "point"));
      std::sort(set.begin(), set.end());
      cov.sets.push_back(set);
    }
    detail::wrap_structural(cc, [&] { validate_cover(cov); });
    out.cover = cov;
  }
  if (j.contains("sections")) {
    if (!out.cover) c.fail("'sections' needs a 'cover'");
    const Ctx cs = c.at("sections");
    detail::as_array(j["sections"], cs);
    if (j["sections"].size() != out.cover->sets.size()) cs.fail("expected one section per cover set");
    std::vector<Section> secs;
    for (std::size_t i = 0; i < out.cover->sets.size(); ++i) {
      const auto& set = out.cover->sets[i];
      Section sec(base.points, -1);
      const json& vals = detail::as_array(j["sections"][i], cs.at(i));
      if (vals.size() != set.size()) cs.at(i).fail("expected one value per point of the cover set");
      for (std::size_t t = 0; t < set.size(); ++t)
        sec[set[t]] = detail::as_index(vals[t], cs.at(i).at(t), s.size[set[t]], "fiber element");
      secs.push_back(sec);
    }
    out.sections = secs;
  }
  return out;
}

inline json space_json(const Space& s) {
  if (!s.left.is_constant() || !s.right.is_constant())
    throw StructuralError("only spaces with constant group bundles can be written");
  json fibers = json::array();
  const int nh = s.right.at(0).order();
  for (int x = 0; x < s.base().points; ++x) {
    json left = json::array(), right = json::array();
    for (int g = 0; g < s.left.at(x).order(); ++g) {
      json row = json::array();
      for (int p = 0; p < s.size[x]; ++p) row.push_back(s.lmul(x, g, p));
      left.push_back(row);
    }
    for (int p = 0; p < s.size[x]; ++p) {
      json row = json::array();
      for (int h = 0; h < nh; ++h) row.push_back(s.rmul(x, p, h));
      right.push_back(row);
    }
    json f{{"size", s.size[x]}, {"left", left}};
    if (nh > 1) f["right"] = right;
    fibers.push_back(f);
  }
  json out{{"base", base_json(s.base())}, {"left", group_json(s.left.at(0))}};
  if (nh > 1) out["right"] = group_json(s.right.at(0));
  out["fibers"] = fibers;
  out["links"] = s.links;
  return out;
}

inline json space_json(const Space& s, const Cover& cover, const std::vector<Section>& sections) {
  json out = space_json(s);
  out["cover"] = cover.sets;
  json secs = json::array();
  for (std::size_t i = 0; i < cover.sets.size(); ++i) {
    json vals = json::array();
    for (int x : cover.sets[i]) vals.push_back(sections[i][x]);
    secs.push_back(vals);
  }
  out["sections"] = secs;
  return out;
}

/// {"nerve", "bitorsors": [[i, j, space], ...], "psi": [[i, j, k, map], ...]}
/// with every pair and triple face listed once, indices increasing.
inline BitorsorCocycle parse_bitorsor_cocycle(const json& in, const Ctx& cin) {
  auto [j, c] = detail::deref(in, cin);
  detail::expect_object(j, c, {"nerve", "bitorsors", "psi"});
  BitorsorCocycle bc;
  bc.nerve = parse_nerve(j["nerve"], c.at("nerve"));
  const auto& n = *bc.nerve;
  auto keyed = [&](const char* key, std::size_t k, auto&& take) {
    const Ctx ck = c.at(key);
    detail::as_array(j[key], ck);
    std::vector<char> seen(n.faces_of_size(k).size(), 0);
    for (std::size_t e = 0; e < j[key].size(); ++e) {
      const Ctx ce = ck.at(e);
      const json& entry = detail::as_array(j[key][e], ce);
      if (entry.size() != k + 1) ce.fail("expected " + std::to_string(k) + " indices and a value");
      Face f;
      for (std::size_t t = 0; t < k; ++t) f.push_back(detail::as_index(entry[t], ce.at(t), n.index_count(), "index"));
      const int pos = n.position(f);
      if (pos < 0) ce.fail("not an increasing face of the nerve");
      if (seen[pos]++) ce.fail("face listed twice");
      take(pos, entry[k], ce.at(k));
    }
    for (std::size_t s = 0; s < seen.size(); ++s)
      if (!seen[s]) ck.fail("no entry for a face of size " + std::to_string(k));
  };
  bc.p.resize(n.faces_of_size(2).size());
  bc.psi.resize(n.faces_of_size(3).size());
  keyed("bitorsors", 2, [&](int pos, const json& v, const Ctx& cv) { bc.p[pos] = parse_space(v, cv).space; });
  keyed("psi", 3, [&](int pos, const json& v, const Ctx& cv) {
    const json& arr = detail::as_array(v, cv);
    for (std::size_t t = 0; t < arr.size(); ++t) bc.psi[pos].push_back(detail::as_int(arr[t], cv.at(t)));
  });
  detail::wrap_structural(c, [&] { check_bitorsor_cocycle_shape(bc); });
  return bc;
}

// ---------------------------------------------------------------------------
// Gerbe pairs

/// {"nerve", "group", "lam": [[i, j, automorphism images]], "g": [[i, j, k, x]]};
/// unlisted faces carry the identity.
inline GerbeCocyclePair parse_gerbe_pair(const json& in, const Ctx& cin) {
  auto [j, c] = detail::deref(in, cin);
  detail::expect_object(j, c, {"nerve", "group"}, {"lam", "g"});
  NervePtr n = parse_nerve(j["nerve"], c.at("nerve"));
  GroupPtr g = parse_group(j["group"], c.at("group"));
  auto aut = std::make_shared<const AutGroup>(automorphisms(g));
  GerbeCocyclePair p = GerbeCocyclePair::trivial(n, g, aut);
  if (j.contains("lam")) {
    const Ctx cl = c.at("lam");
    detail::as_array(j["lam"], cl);
    std::set<int> seen;
    for (std::size_t e = 0; e < j["lam"].size(); ++e) {
      const Ctx ce = cl.at(e);
      const json& entry = detail::as_array(j["lam"][e], ce);
      if (entry.size() != 3) ce.fail("expected [i, j, automorphism]");
      const int a = detail::as_index(entry[0], ce.at(0), n->index_count(), "index");
      const int b = detail::as_index(entry[1], ce.at(1), n->index_count(), "index");
      const int pos = n->position({a, b});
      if (a >= b || pos < 0) ce.fail("not an increasing pair face");
      if (!seen.insert(pos).second) ce.fail("face listed twice");
      p.lam[pos] = parse_automorphism(entry[2], ce.at(2), *aut);
    }
  }
  if (j.contains("g"))
    detail::parse_face_values(j["g"], c.at("g"), *n, 3, g->order(), true,
                              [&](const Face& f, int v, const Ctx&) { p.g[n->position(f)] = v; });
  return p;
}

inline json gerbe_pair_json(const GerbeCocyclePair& p) {
  json lam = json::array();
  const auto& pairs = p.nerve->faces_of_size(2);
  for (std::size_t s = 0; s < pairs.size(); ++s) lam.push_back({pairs[s][0], pairs[s][1], p.aut->elements[p.lam[s]]});
  return json{{"nerve", nerve_json(*p.nerve)},
              {"group", group_json(*p.group)},
              {"lam", lam},
              {"g", detail::face_values_json(*p.nerve, 3, p.g)}};
}

/// {"r": [[i, automorphism images]], "theta": [[i, j, x]]}; unlisted entries are identities.
inline GerbeCoboundary parse_gerbe_coboundary(const json& in, const Ctx& cin, const GerbeCocyclePair& p) {
  auto [j, c] = detail::deref(in, cin);
  detail::expect_object(j, c, {}, {"r", "theta"});
  const auto& n = *p.nerve;
  GerbeCoboundary b{std::vector<int>(n.index_count(), 0), std::vector<int>(n.faces_of_size(2).size(), 0)};
  if (j.contains("r")) {
    const Ctx cr = c.at("r");
    detail::as_array(j["r"], cr);
    std::set<int> seen;
    for (std::size_t e = 0; e < j["r"].size(); ++e) {
      const Ctx ce = cr.at(e);
      const json& entry = detail::as_array(j["r"][e], ce);
      if (entry.size() != 2) ce.fail("expected [i, automorphism]");
      const int i = detail::as_index(entry[0], ce.at(0), n.index_count(), "index");
      if (!seen.insert(i).second) ce.fail("index listed twice");
      b.r[i] = parse_automorphism(entry[1], ce.at(1), *p.aut);
    }
  }
  if (j.contains("theta"))
    detail::parse_face_values(j["theta"], c.at("theta"), n, 2, p.group->order(), true,
                              [&](const Face& f, int v, const Ctx&) { b.theta[n.position(f)] = v; });
  return b;
}

// ---------------------------------------------------------------------------
// Extensions

/// {"G", "K", "lam"?: [automorphism images per k], "g"?: [[g(a, b)]]}.
inline ExtensionCocycle parse_extension_cocycle(const json& in, const Ctx& cin) {
  auto [j, c] = detail::deref(in, cin);
  detail::expect_object(j, c, {"G", "K"}, {"lam", "g"});
  GroupPtr G = parse_group(j["G"], c.at("G"));
  GroupPtr K = parse_group(j["K"], c.at("K"));
  auto aut = std::make_shared<const AutGroup>(automorphisms(G));
  ExtensionCocycle e = ExtensionCocycle::trivial(G, K, aut);
  const int nk = K->order();
  if (j.contains("lam")) {
    const Ctx cl = c.at("lam");
    detail::as_array(j["lam"], cl);
    if (static_cast<int>(j["lam"].size()) != nk) cl.fail("expected one automorphism per element of K");
    for (int a = 0; a < nk; ++a) e.lam[a] = parse_automorphism(j["lam"][a], cl.at(static_cast<std::size_t>(a)), *aut);
  }
  if (j.contains("g")) {
    const Ctx cg = c.at("g");
    detail::as_array(j["g"], cg);
    if (static_cast<int>(j["g"].size()) != nk) cg.fail("expected |K| rows");
    for (int a = 0; a < nk; ++a) {
      auto row = detail::index_list(j["g"][a], cg.at(static_cast<std::size_t>(a)), nk, G->order(), "element");
      std::copy(row.begin(), row.end(), e.g.begin() + static_cast<std::ptrdiff_t>(a) * nk);
    }
  }
  return e;
}

inline json extension_cocycle_json(const ExtensionCocycle& e) {
  json lam = json::array(), g = json::array();
  const int nk = e.K->order();
  for (int a = 0; a < nk; ++a) {
    lam.push_back(e.aut->elements[e.lam[a]]);
    json row = json::array();
    for (int b = 0; b < nk; ++b) row.push_back(e.gv(a, b));
    g.push_back(row);
  }
  return json{{"G", group_json(*e.G)}, {"K", group_json(*e.K)}, {"lam", lam}, {"g", g}};
}

struct WitnessFile {
  ExtensionWitness witness;
  GroupPtr G, K;
  std::vector<int> section;
};

/// {"G", "K", "H", "embed", "project", "section"}.
inline WitnessFile parse_witness(const json& in, const Ctx& cin) {
  auto [j, c] = detail::deref(in, cin);
  detail::expect_object(j, c, {"G", "K", "H", "embed", "project", "section"});
  WitnessFile w;
  w.G = parse_group(j["G"], c.at("G"));
  w.K = parse_group(j["K"], c.at("K"));
  GroupPtr H = parse_group(j["H"], c.at("H"));
  w.witness = ExtensionWitness{
      H,
      GroupHom{w.G, H, detail::index_list(j["embed"], c.at("embed"), static_cast<std::size_t>(w.G->order()),
                                          H->order(), "element")},
      GroupHom{H, w.K, detail::index_list(j["project"], c.at("project"), static_cast<std::size_t>(H->order()),
                                          w.K->order(), "element")}};
  w.section = detail::index_list(j["section"], c.at("section"), static_cast<std::size_t>(w.K->order()), H->order(),
                                 "element");
  return w;
}

inline json witness_json(const ExtensionWitness& w, const std::vector<int>& section) {
  return json{{"G", group_json(*w.embed.source)}, {"K", group_json(*w.project.target)}, {"H", group_json(*w.H)},
              {"embed", w.embed.map}, {"project", w.project.map}, {"section", section}};
}

// ---------------------------------------------------------------------------
// Cocycle quadruples

/// {"nerve", "square", "lam": [[i, j, p]], "mtil": [[i, j, k, m]], "g": [[i, j, k, n]],
///  "nu": [[i, j, k, l, x]]}; unlisted faces carry the identity.
inline QuadrupleCocycle parse_quadruple(const json& in, const Ctx& cin) {
  auto [j, c] = detail::deref(in, cin);
  detail::expect_object(j, c, {"nerve", "square"}, {"lam", "mtil", "g", "nu"});
  NervePtr n = parse_nerve(j["nerve"], c.at("nerve"));
  SquarePtr sq = parse_square(j["square"], c.at("square"));
  QuadrupleCocycle q = QuadrupleCocycle::trivial(n, sq);
  auto field = [&](const char* key, std::size_t k, int order, std::vector<int>& dst) {
    if (j.contains(key))
      detail::parse_face_values(j[key], c.at(key), *n, k, order, true,
                                [&](const Face& f, int v, const Ctx&) { dst[n->position(f)] = v; });
  };
  field("lam", 2, sq->p->order(), q.lam);
  field("mtil", 3, sq->m->order(), q.mtil);
  field("g", 3, sq->n->order(), q.g);
  field("nu", 4, sq->l->order(), q.nu);
  return q;
}

inline json quadruple_json(const QuadrupleCocycle& q) {
  const auto& n = *q.nerve;
  return json{{"nerve", nerve_json(n)},
              {"square", square_json(*q.square)},
              {"lam", detail::face_values_json(n, 2, q.lam)},
              {"mtil", detail::face_values_json(n, 3, q.mtil)},
              {"g", detail::face_values_json(n, 3, q.g)},
              {"nu", detail::face_values_json(n, 4, q.nu)}};
}

// ---------------------------------------------------------------------------
// File entry points

template <class F>
auto load(const fs::path& path, F&& parse, std::ostream* notices = &std::cerr) {
  return parse(read_json(path), Ctx{path, "", notices});
}

}  // namespace gerbecoh::io
