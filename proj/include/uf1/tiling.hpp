// Grid axioms and tiling sentences for the two undecidable neighbours of
// UF1: the one-dimensional guarded fragment GF1 and the two-dimensional
// uniform fragment SUF2. Sentences only; nothing here decides them.
#pragma once

#include "uf1/structures.hpp"

namespace uf1 {

struct Tile {
  std::string R, L, T, B;  // edge colours
  bool operator==(const Tile&) const = default;
};

struct TileSet {
  std::vector<Tile> tiles;  // nonempty
};

// [{"R":"red","L":"red","T":"blue","B":"blue"}, ...]
TileSet parse_tiles(const std::string& json_text);
TileSet load_tiles(const std::string& path);
std::string tiles_json(const TileSet& ts);

// Symbol names, tiles numbered from 1.
std::string tile_symbol(size_t i);                   // P_t1
std::string edge_symbol(char side, size_t i);        // P_R_t1

// GF1 over H/2, V/2 and one unary symbol per tile.
Formula grid_axioms_gf1();
struct Gf1Tiling {
  Formula psi_h, psi_v, psi_part;
  Formula sentence() const { return conj(psi_h, conj(psi_v, psi_part)); }
};
Gf1Tiling tiling_parts_gf1(const TileSet& ts);
Formula tiling_sentence_gf1(const TileSet& ts);

// SUF2 over Hplus/3, Vplus/3, S/2 and four ternary symbols per tile.
Formula grid_axioms_suf2();
struct Suf2Tiling {
  Formula phi_h, phi_v, phi_prop;
  Formula sentence() const { return conj(phi_h, conj(phi_v, phi_prop)); }
};
Suf2Tiling tiling_parts_suf2(const TileSet& ts);
Formula tiling_sentence_suf2(const TileSet& ts);

// Finite w x h grid wrapped into a torus, (i,j) at index j*w + i, with
// H to (i+1,j), V to (i,j+1) and P_t on the cells f assigns to tile t.
// f lists tile indices (0-based) in cell order.
Structure torus_grid(int w, int h, const std::vector<int>& f, const TileSet& ts);
// (T_H) and (T_V) checked directly on the wrapped grid.
bool horizontal_ok(int w, int h, const std::vector<int>& f, const TileSet& ts);
bool vertical_ok(int w, int h, const std::vector<int>& f, const TileSet& ts);

}  // namespace uf1
