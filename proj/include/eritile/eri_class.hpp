#pragma once

#include <compare>
#include <string>

namespace eritile {

// Total angular momenta of a bra or ket shell pair.
struct PairClass {
  int li = 0, lj = 0;
  bool operator==(const PairClass&) const = default;
  auto operator<=>(const PairClass&) const = default;
};

// ERI class: the 4-tuple of total momenta. All quadruples of one class share
// one derivation path and one execution plan.
struct EriClass {
  int la = 0, lb = 0, lc = 0, ld = 0;

  int total() const { return la + lb + lc + ld; }
  bool operator==(const EriClass&) const = default;
  auto operator<=>(const EriClass&) const = default;
};

inline std::string to_string(const EriClass& c) {
  return "(" + std::to_string(c.la) + "," + std::to_string(c.lb) + "," +
         std::to_string(c.lc) + "," + std::to_string(c.ld) + ")";
}

}  // namespace eritile
