#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace eritile {

// Periodic table through Kr; enough for any molecule this engine targets.
inline constexpr std::array<std::string_view, 36> element_symbols = {
    "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg",
    "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr",
    "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr"};

inline std::optional<int> atomic_number_of(std::string_view symbol) {
  std::string s(symbol);
  if (s.empty()) return std::nullopt;
  s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  for (std::size_t i = 1; i < s.size(); ++i)
    s[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[i])));
  for (std::size_t z = 0; z < element_symbols.size(); ++z)
    if (element_symbols[z] == s) return static_cast<int>(z) + 1;
  return std::nullopt;
}

inline std::string_view element_symbol(int atomic_number) {
  return element_symbols.at(static_cast<std::size_t>(atomic_number) - 1);
}

}  // namespace eritile
