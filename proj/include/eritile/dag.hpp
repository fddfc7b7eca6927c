#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "eritile/eri_class.hpp"
#include "eritile/molecule.hpp"

namespace eritile {

// Intermediate integral [a b | c d]^(m). The node with all momenta zero is
// the analytic base case.
struct IntegralNode {
  Momentum a, b, c, d;
  int m = 0;

  bool is_base() const {
    return a.total() == 0 && b.total() == 0 && c.total() == 0 &&
           d.total() == 0;
  }
  bool is_transferred() const { return b.total() == 0 && d.total() == 0; }
  int total_momentum() const {
    return a.total() + b.total() + c.total() + d.total();
  }
  bool operator==(const IntegralNode&) const = default;
  auto operator<=>(const IntegralNode&) const = default;
};

inline std::string to_string(const Momentum& v) {
  return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + "," +
         std::to_string(v.z) + ")";
}

inline std::string to_string(const IntegralNode& n) {
  return "[" + to_string(n.a) + to_string(n.b) + "|" + to_string(n.c) +
         to_string(n.d) + "]^" + std::to_string(n.m);
}

// Symbolic scalar coefficient kinds bound at runtime per primitive quadruple
// (per shell quadruple for AB/CD). ITP_RP and ITQ_RQ are the cached products
// (1/2p)(rho/p) and (1/2q)(rho/q) appearing in the vertical relation.
enum class CoeffKind : std::uint8_t {
  Unit,
  PA,
  PB,
  QC,
  QD,
  WP,
  WQ,
  InvTwoP,
  InvTwoQ,
  InvTwoPQ,
  ITP_RP,
  ITQ_RQ,
  AB,
  CD,
};

inline const char* coeff_kind_name(CoeffKind k) {
  switch (k) {
    case CoeffKind::Unit: return "1";
    case CoeffKind::PA: return "PA";
    case CoeffKind::PB: return "PB";
    case CoeffKind::QC: return "QC";
    case CoeffKind::QD: return "QD";
    case CoeffKind::WP: return "WP";
    case CoeffKind::WQ: return "WQ";
    case CoeffKind::InvTwoP: return "1/2p";
    case CoeffKind::InvTwoQ: return "1/2q";
    case CoeffKind::InvTwoPQ: return "1/2(p+q)";
    case CoeffKind::ITP_RP: return "(1/2p)(rho/p)";
    case CoeffKind::ITQ_RQ: return "(1/2q)(rho/q)";
    case CoeffKind::AB: return "AB";
    case CoeffKind::CD: return "CD";
  }
  return "?";
}

// One term of a derivation: contribution factor * coeff(kind, dir) * source.
struct SourceTerm {
  IntegralNode node;
  CoeffKind kind = CoeffKind::Unit;
  int dir = 0;
  double factor = 1.0;
};

using Derivation = std::vector<SourceTerm>;

// A candidate recurrence application: which momentum slot (0..3 = a,b,c,d)
// and Cartesian direction to reduce on the node at hand, with the Alg-style
// bookkeeping the cost function consumes: r reused sources, n new sources,
// ang the momentum component value at the position.
struct Position {
  int slot = 0;
  int dir = 0;
  int r = 0;
  int n = 0;
  int ang = 0;
  Derivation sources;
};

namespace detail {
inline Momentum dec(Momentum v, int i) {
  v[i] -= 1;
  return v;
}
inline Momentum inc(Momentum v, int i) {
  v[i] += 1;
  return v;
}
}  // namespace detail

// Sources for reducing `node` at (slot, dir). Horizontal transfers move one
// unit from b to a (or d to c) at fixed m; vertical reductions are valid only
// on transferred nodes [e0|f0]^(m) and thread the auxiliary order.
inline Derivation recurrence_sources(const IntegralNode& node, int slot,
                                     int dir) {
  using detail::dec;
  using detail::inc;
  Derivation d;
  switch (slot) {
    case 0: {  // vertical on bra: node = [(e+1_i) 0 | c 0]^m
      const Momentum e = dec(node.a, dir);
      d.push_back({{e, node.b, node.c, node.d, node.m}, CoeffKind::PA, dir, 1.0});
      d.push_back({{e, node.b, node.c, node.d, node.m + 1}, CoeffKind::WP, dir, 1.0});
      if (e[dir] > 0) {
        const Momentum e1 = dec(e, dir);
        d.push_back({{e1, node.b, node.c, node.d, node.m},
                     CoeffKind::InvTwoP, 0, double(e[dir])});
        d.push_back({{e1, node.b, node.c, node.d, node.m + 1},
                     CoeffKind::ITP_RP, 0, -double(e[dir])});
      }
      if (node.c[dir] > 0)
        d.push_back({{e, node.b, dec(node.c, dir), node.d, node.m + 1},
                     CoeffKind::InvTwoPQ, 0, double(node.c[dir])});
      break;
    }
    case 1: {  // horizontal on bra: [a (b'+1_i)| = [(a+1_i) b'| + AB_i [a b'|
      const Momentum b1 = dec(node.b, dir);
      d.push_back({{inc(node.a, dir), b1, node.c, node.d, node.m},
                   CoeffKind::Unit, 0, 1.0});
      d.push_back({{node.a, b1, node.c, node.d, node.m}, CoeffKind::AB, dir, 1.0});
      break;
    }
    case 2: {  // vertical on ket: node = [a 0 | (f+1_i) 0]^m
      const Momentum f = dec(node.c, dir);
      d.push_back({{node.a, node.b, f, node.d, node.m}, CoeffKind::QC, dir, 1.0});
      d.push_back({{node.a, node.b, f, node.d, node.m + 1}, CoeffKind::WQ, dir, 1.0});
      if (f[dir] > 0) {
        const Momentum f1 = dec(f, dir);
        d.push_back({{node.a, node.b, f1, node.d, node.m},
                     CoeffKind::InvTwoQ, 0, double(f[dir])});
        d.push_back({{node.a, node.b, f1, node.d, node.m + 1},
                     CoeffKind::ITQ_RQ, 0, -double(f[dir])});
      }
      if (node.a[dir] > 0)
        d.push_back({{dec(node.a, dir), node.b, f, node.d, node.m + 1},
                     CoeffKind::InvTwoPQ, 0, double(node.a[dir])});
      break;
    }
    case 3: {  // horizontal on ket
      const Momentum d1 = dec(node.d, dir);
      d.push_back({{node.a, node.b, inc(node.c, dir), d1, node.m},
                   CoeffKind::Unit, 0, 1.0});
      d.push_back({{node.a, node.b, node.c, d1, node.m}, CoeffKind::CD, dir, 1.0});
      break;
    }
  }
  return d;
}

// Enumerate valid positions on a node in slot-major, direction-minor order.
// Vertical reductions require the horizontal slots to be exhausted first.
inline std::vector<Position> candidate_positions(
    const IntegralNode& node, const std::set<IntegralNode>& known) {
  std::vector<Position> out;
  const bool transferred = node.is_transferred();
  for (int slot = 0; slot < 4; ++slot) {
    if ((slot == 0 || slot == 2) && !transferred) continue;
    const Momentum& v = slot == 0   ? node.a
                        : slot == 1 ? node.b
                        : slot == 2 ? node.c
                                    : node.d;
    for (int dir = 0; dir < 3; ++dir) {
      if (v[dir] == 0) continue;
      Position pos;
      pos.slot = slot;
      pos.dir = dir;
      pos.ang = v[dir];
      pos.sources = recurrence_sources(node, slot, dir);
      for (const auto& t : pos.sources)
        (known.count(t.node) ? pos.r : pos.n) += 1;
      out.push_back(std::move(pos));
    }
  }
  return out;
}

// The recurrence graph selected for one ERI class: every non-base node has
// exactly one chosen derivation, and every node reaches the base cases.
struct RecurrenceDAG {
  EriClass cls;
  std::set<IntegralNode> nodes;
  std::map<IntegralNode, Derivation> derivations;
  std::vector<IntegralNode> derivation_order;  // order the search fixed them
  std::vector<IntegralNode> targets;           // component nodes, a-major
  int reuse_count = 0;

  int max_aux_order() const {
    int m = 0;
    for (const auto& n : nodes) m = std::max(m, n.m);
    return m;
  }
};

// Target component nodes of a class, nested a-major over the deterministic
// Cartesian component order.
inline std::vector<IntegralNode> class_targets(const EriClass& cls) {
  std::vector<IntegralNode> t;
  for (const auto& a : shell_components(cls.la))
    for (const auto& b : shell_components(cls.lb))
      for (const auto& c : shell_components(cls.lc))
        for (const auto& d : shell_components(cls.ld))
          t.push_back(IntegralNode{a, b, c, d, 0});
  return t;
}

}  // namespace eritile
