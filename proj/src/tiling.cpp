#include "uf1/tiling.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace uf1 {

using Vars = std::vector<std::string>;

TileSet parse_tiles(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid tile JSON: ") + e.what());
  }
  if (!j.is_array()) throw Error("tile file must be a JSON array of tiles");
  TileSet ts;
  for (const auto& t : j) {
    if (!t.is_object()) throw Error("each tile must be an object with R, L, T, B");
    Tile tile;
    for (auto [key, field] : {std::pair{"R", &tile.R}, {"L", &tile.L}, {"T", &tile.T}, {"B", &tile.B}}) {
      if (!t.contains(key) || !t[key].is_string()) throw Error(std::string("tile lacks a string colour for ") + key);
      *field = t[key].get<std::string>();
    }
    ts.tiles.push_back(tile);
  }
  if (ts.tiles.empty()) throw Error("empty tile set");
  return ts;
}

TileSet load_tiles(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_tiles(ss.str());
}

std::string tiles_json(const TileSet& ts) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& t : ts.tiles) j.push_back({{"R", t.R}, {"L", t.L}, {"T", t.T}, {"B", t.B}});
  return j.dump();
}

std::string tile_symbol(size_t i) { return "P_t" + std::to_string(i + 1); }
std::string edge_symbol(char side, size_t i) { return std::string("P_") + side + "_t" + std::to_string(i + 1); }

Formula grid_axioms_gf1() {
  Formula eta_h = forall("x", exists("y", atom("H", {"x", "y"})));
  Formula eta_v = forall("x", exists("y", atom("V", {"x", "y"})));
  Formula eta_com = forall(Vars{"x", "y", "z", "w"},
                           implies(conj({atom("H", {"x", "y"}), atom("V", {"x", "z"}), atom("H", {"z", "w"})}),
                                   atom("V", {"y", "w"})));
  return conj({eta_h, eta_v, eta_com});
}

Gf1Tiling tiling_parts_gf1(const TileSet& ts) {
  if (ts.tiles.empty()) throw Error("empty tile set");
  std::vector<Formula> hs, vs;
  size_t n = ts.tiles.size();
  auto clash = [&](size_t i, size_t j, const std::string& rel) {
    return implies(conj(atom(tile_symbol(i), {"x"}), atom(tile_symbol(j), {"y"})), neg(atom(rel, {"x", "y"})));
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (ts.tiles[i].R != ts.tiles[j].L) hs.push_back(clash(i, j, "H"));
      if (ts.tiles[i].T != ts.tiles[j].B) vs.push_back(clash(i, j, "V"));
    }
  // Exactly one tile per element: at least one, and no two.
  std::vector<Formula> some, part;
  for (size_t i = 0; i < n; ++i) some.push_back(atom(tile_symbol(i), {"x"}));
  part.push_back(disj(some));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) part.push_back(neg(conj(some[i], some[j])));
  Gf1Tiling out;
  out.psi_h = forall(Vars{"x", "y"}, conj(hs));
  out.psi_v = forall(Vars{"x", "y"}, conj(vs));
  out.psi_part = forall("x", conj(part));
  return out;
}

Formula tiling_sentence_gf1(const TileSet& ts) { return tiling_parts_gf1(ts).sentence(); }

Formula grid_axioms_suf2() {
  Formula theta_s = forall("x", exists("y", atom("S", {"x", "y"})));
  Formula theta_h = forall(Vars{"x1", "x2"}, implies(atom("S", {"x1", "x2"}), forall("y", atom("Hplus", {"x1", "x2", "y"}))));
  Formula theta_v = forall(Vars{"y1", "y2"}, implies(atom("S", {"y1", "y2"}), forall("x", atom("Vplus", {"x", "y1", "y2"}))));
  return conj({theta_s, theta_h, theta_v});
}

namespace {

// Where a side's colour lives in a triple (a, b, c): the two positions
// naming the grid pair it colours, and the free middle position.
struct Side {
  char name;
  int first, second, free;
};
constexpr Side kSides[] = {{'R', 0, 2, 1}, {'L', 1, 2, 0}, {'T', 0, 1, 2}, {'B', 0, 2, 1}};

// P_side,t applied with the pair (u, v) in its positions and z in the free one.
Formula edge_atom(const Side& s, size_t t, const std::string& u, const std::string& v, const std::string& z) {
  std::vector<std::string> args(3);
  args[static_cast<size_t>(s.first)] = u;
  args[static_cast<size_t>(s.second)] = v;
  args[static_cast<size_t>(s.free)] = z;
  return atom(edge_symbol(s.name, t), args);
}

}  // namespace

Suf2Tiling tiling_parts_suf2(const TileSet& ts) {
  if (ts.tiles.empty()) throw Error("empty tile set");
  size_t n = ts.tiles.size();
  std::vector<Formula> hs, vs;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (ts.tiles[i].R != ts.tiles[j].L)
        hs.push_back(implies(conj(atom(edge_symbol('R', i), {"x1", "x2", "y"}), atom(edge_symbol('L', j), {"x1", "x2", "y"})),
                             neg(atom("Hplus", {"x1", "x2", "y"}))));
      if (ts.tiles[i].T != ts.tiles[j].B)
        vs.push_back(implies(conj(atom(edge_symbol('T', i), {"x", "y1", "y2"}), atom(edge_symbol('B', j), {"x", "y1", "y2"})),
                             neg(atom("Vplus", {"x", "y1", "y2"}))));
    }

  std::vector<Formula> prop;
  // Each edge symbol depends only on the pair it colours.
  for (const Side& s : kSides)
    for (size_t t = 0; t < n; ++t)
      prop.push_back(forall(Vars{"u", "v"}, implies(exists("z", edge_atom(s, t, "u", "v", "z")),
                                                forall("z", edge_atom(s, t, "u", "v", "z")))));
  // The four colours of a pair come from one tile, for every pair of sides.
  for (size_t a = 0; a < 4; ++a)
    for (size_t b = a + 1; b < 4; ++b)
      for (size_t t = 0; t < n; ++t)
        prop.push_back(forall(Vars{"u", "v"}, iff(exists("z", edge_atom(kSides[a], t, "u", "v", "z")),
                                              exists("z", edge_atom(kSides[b], t, "u", "v", "z")))));
  // Every triple carries exactly one colour per side.
  for (const Side& s : kSides) {
    std::vector<Formula> some, part;
    for (size_t t = 0; t < n; ++t) some.push_back(atom(edge_symbol(s.name, t), {"x1", "x2", "x3"}));
    part.push_back(disj(some));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) part.push_back(neg(conj(some[i], some[j])));
    prop.push_back(forall(Vars{"x1", "x2", "x3"}, conj(part)));
  }

  Suf2Tiling out;
  out.phi_h = forall(Vars{"x1", "x2", "y"}, conj(hs));
  out.phi_v = forall(Vars{"x", "y1", "y2"}, conj(vs));
  out.phi_prop = conj(prop);
  return out;
}

Formula tiling_sentence_suf2(const TileSet& ts) { return tiling_parts_suf2(ts).sentence(); }

Structure torus_grid(int w, int h, const std::vector<int>& f, const TileSet& ts) {
  if (w < 1 || h < 1 || f.size() != static_cast<size_t>(w * h)) throw Error("grid assignment has the wrong size");
  std::vector<std::string> names;
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) names.push_back(std::to_string(i) + "_" + std::to_string(j));
  Structure s(names);
  s.add_symbol("H", 2);
  s.add_symbol("V", 2);
  for (size_t t = 0; t < ts.tiles.size(); ++t) s.add_symbol(tile_symbol(t), 1);
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      int c = j * w + i;
      s.set("H", {c, j * w + (i + 1) % w});
      s.set("V", {c, ((j + 1) % h) * w + i});
      s.set(tile_symbol(static_cast<size_t>(f[static_cast<size_t>(c)])), {c});
    }
  return s;
}

bool horizontal_ok(int w, int h, const std::vector<int>& f, const TileSet& ts) {
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      const Tile& a = ts.tiles[static_cast<size_t>(f[static_cast<size_t>(j * w + i)])];
      const Tile& b = ts.tiles[static_cast<size_t>(f[static_cast<size_t>(j * w + (i + 1) % w)])];
      if (a.R != b.L) return false;
    }
  return true;
}

bool vertical_ok(int w, int h, const std::vector<int>& f, const TileSet& ts) {
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      const Tile& a = ts.tiles[static_cast<size_t>(f[static_cast<size_t>(j * w + i)])];
      const Tile& b = ts.tiles[static_cast<size_t>(f[static_cast<size_t>(((j + 1) % h) * w + i)])];
      if (a.T != b.B) return false;
    }
  return true;
}

}  // namespace uf1
