#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "eritile/eri_class.hpp"
#include "eritile/molecule.hpp"

namespace eritile {

// Per-primitive-pair data, precomputed once so quadruple evaluation only
// combines bra and ket halves.
struct PrimPair {
  double p = 0.0;        // combined exponent alpha + beta
  double inv_two_p = 0.0;
  Vec3 P = Vec3::Zero();  // product center (alpha*A + beta*B) / p
  Vec3 PA = Vec3::Zero();
  Vec3 PB = Vec3::Zero();
  double kappa = 0.0;    // exp(-alpha*beta*|A-B|^2 / p)
  double coef = 0.0;     // contraction weight D_ik * D_jl
};

struct ShellPair {
  int i = 0, j = 0;  // shell indices, i <= j
  PairClass cls;
  Vec3 AB = Vec3::Zero();  // A - B
  std::vector<PrimPair> prims;
};

// Contiguous run of same-class pairs, at most M of them.
struct PairTile {
  PairClass cls;
  int first = 0;
  int count = 0;
};

// One class-homogeneous unit of work: every quadruple in the block pairs a
// bra pair from one tile with a ket pair from another (M^2 quadruples for
// full tiles). Blocks share no data dependencies.
struct QuadBlock {
  int bra_tile = 0, ket_tile = 0;
  EriClass cls;
};

// All S(S+1)/2 shell pairs, sorted ascending by (Li+Lj, Li, Lj) and then by
// index for determinism. A positive screen threshold drops primitive pairs
// whose |coef * kappa| falls below it, and whole pairs once every primitive
// pair is negligible; zero keeps everything.
inline std::vector<ShellPair> build_pairs(const std::vector<Shell>& shells,
                                          double screen_threshold = 0.0) {
  if (shells.empty())
    throw std::invalid_argument("build_pairs: no shells");
  std::vector<ShellPair> pairs;
  const int S = static_cast<int>(shells.size());
  pairs.reserve(static_cast<std::size_t>(S) * (S + 1) / 2);

  for (int i = 0; i < S; ++i) {
    for (int j = i; j < S; ++j) {
      const Shell& a = shells[i];
      const Shell& b = shells[j];
      ShellPair sp;
      sp.i = i;
      sp.j = j;
      sp.cls = PairClass{a.total_momentum, b.total_momentum};
      sp.AB = a.center - b.center;
      const double ab2 = sp.AB.squaredNorm();
      sp.prims.reserve(a.exponents.size() * b.exponents.size());
      for (std::size_t k = 0; k < a.exponents.size(); ++k) {
        for (std::size_t l = 0; l < b.exponents.size(); ++l) {
          const double alpha = a.exponents[k];
          const double beta = b.exponents[l];
          PrimPair pp;
          pp.p = alpha + beta;
          pp.inv_two_p = 0.5 / pp.p;
          pp.P = (alpha * a.center + beta * b.center) / pp.p;
          pp.PA = pp.P - a.center;
          pp.PB = pp.P - b.center;
          pp.kappa = std::exp(-alpha * beta * ab2 / pp.p);
          pp.coef = a.coefficients[k] * b.coefficients[l];
          if (screen_threshold > 0.0 &&
              std::abs(pp.coef) * pp.kappa < screen_threshold)
            continue;
          sp.prims.push_back(pp);
        }
      }
      if (screen_threshold > 0.0 && sp.prims.empty()) continue;
      pairs.push_back(std::move(sp));
    }
  }

  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const ShellPair& x, const ShellPair& y) {
                     auto key = [](const ShellPair& p) {
                       return std::tuple(p.cls.li + p.cls.lj, p.cls.li,
                                         p.cls.lj, p.i, p.j);
                     };
                     return key(x) < key(y);
                   });
  return pairs;
}

// Bytes materialized by the pair store; grows as O(S^2), independent of the
// quadruple count.
inline std::size_t pair_store_bytes(const std::vector<ShellPair>& pairs) {
  std::size_t bytes = pairs.capacity() * sizeof(ShellPair);
  for (const auto& p : pairs) bytes += p.prims.capacity() * sizeof(PrimPair);
  return bytes;
}

// Chunk same-class runs into tiles of at most M pairs; tiles never span a
// class boundary.
inline std::vector<PairTile> tile_pairs(const std::vector<ShellPair>& pairs,
                                        int tile_size) {
  if (tile_size < 1)
    throw std::invalid_argument("tile_pairs: tile size must be >= 1");
  std::vector<PairTile> tiles;
  int n = static_cast<int>(pairs.size());
  int start = 0;
  while (start < n) {
    int run_end = start;
    while (run_end < n && pairs[run_end].cls == pairs[start].cls) ++run_end;
    for (int t = start; t < run_end; t += tile_size)
      tiles.push_back(PairTile{pairs[start].cls, t,
                               std::min(tile_size, run_end - t)});
    start = run_end;
  }
  return tiles;
}

// Emit one block per tile pair (ti <= tj), exploiting (ab|cd) = (cd|ab).
// Quadruples are never materialized; a block is two tile references.
template <typename Fn>
inline void for_each_block(const std::vector<PairTile>& tiles, Fn&& fn) {
  const int T = static_cast<int>(tiles.size());
  for (int ti = 0; ti < T; ++ti)
    for (int tj = ti; tj < T; ++tj)
      fn(QuadBlock{ti, tj,
                   EriClass{tiles[ti].cls.li, tiles[ti].cls.lj,
                            tiles[tj].cls.li, tiles[tj].cls.lj}});
}

inline std::vector<QuadBlock> make_blocks(const std::vector<PairTile>& tiles) {
  std::vector<QuadBlock> blocks;
  blocks.reserve(tiles.size() * (tiles.size() + 1) / 2);
  for_each_block(tiles, [&](const QuadBlock& b) { blocks.push_back(b); });
  return blocks;
}

}  // namespace eritile
