#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eritile/elements.hpp"

namespace eritile {

inline constexpr double angstrom_to_bohr = 1.8897259886;

using Vec3 = Eigen::Vector3d;

// Cartesian angular momentum vector (ax, ay, az).
struct Momentum {
  int x = 0, y = 0, z = 0;

  int total() const { return x + y + z; }
  int operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  int& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  bool operator==(const Momentum&) const = default;
  auto operator<=>(const Momentum&) const = default;
};

struct Atom {
  std::string element;
  int atomic_number = 0;
  Vec3 position = Vec3::Zero();  // Bohr
};

// Contracted Cartesian Gaussian shell. Coefficients carry primitive and
// contracted normalization already folded in (see attach_basis).
struct Shell {
  Vec3 center = Vec3::Zero();
  int total_momentum = 0;
  std::vector<double> exponents;
  std::vector<double> coefficients;
  int atom = -1;

  int contraction_degree() const { return static_cast<int>(exponents.size()); }
  int num_functions() const {
    return (total_momentum + 1) * (total_momentum + 2) / 2;
  }
};

struct BasisFunction {
  int shell_index = 0;
  Momentum momentum;
};

struct Molecule {
  std::vector<Atom> atoms;
  std::vector<Shell> shells;
  int charge = 0;
  int multiplicity = 1;

  int electron_count() const {
    int n = 0;
    for (const auto& a : atoms) n += a.atomic_number;
    return n - charge;
  }
  // Closed-shell only: number of doubly occupied orbitals.
  int n_occupied() const { return electron_count() / 2; }
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& tok, int line_no) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": malformed number '" + tok + "'");
  }
  if (pos != tok.size())
    throw ParseError("line " + std::to_string(line_no) +
                     ": malformed number '" + tok + "'");
  if (!std::isfinite(v))
    throw ParseError("line " + std::to_string(line_no) +
                     ": non-finite coordinate '" + tok + "'");
  return v;
}
}  // namespace detail

// Standard XYZ: atom count, comment line, then `symbol x y z` in Angstrom.
// Coordinates are converted to Bohr. Any defect rejects the whole file.
inline Molecule parse_xyz(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  auto next_line = [&](bool required) -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      return true;
    }
    if (required) throw ParseError("unexpected end of file");
    return false;
  };

  if (!next_line(false)) throw ParseError("empty XYZ input");
  long declared;
  try {
    declared = std::stol(detail::trim(line));
  } catch (const std::exception&) {
    throw ParseError("line 1: expected atom count, got '" +
                     detail::trim(line) + "'");
  }
  if (declared < 0) throw ParseError("line 1: negative atom count");
  next_line(true);  // comment line

  Molecule mol;
  mol.atoms.reserve(static_cast<std::size_t>(declared));
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = detail::trim(line);
    if (t.empty()) continue;
    std::istringstream ls(t);
    std::string sym, xs, ys, zs;
    if (!(ls >> sym >> xs >> ys >> zs))
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'symbol x y z', got '" + t + "'");
    auto z = atomic_number_of(sym);
    if (!z)
      throw ParseError("line " + std::to_string(line_no) +
                       ": unknown element symbol '" + sym + "'");
    Atom a;
    a.element = std::string(element_symbol(*z));
    a.atomic_number = *z;
    a.position = Vec3(detail::parse_double(xs, line_no),
                      detail::parse_double(ys, line_no),
                      detail::parse_double(zs, line_no)) *
                 angstrom_to_bohr;
    mol.atoms.push_back(std::move(a));
  }
  if (static_cast<long>(mol.atoms.size()) != declared)
    throw ParseError("declared " + std::to_string(declared) +
                     " atoms, found " + std::to_string(mol.atoms.size()));
  return mol;
}

// Canonical XYZ form of the geometry (Angstrom, 12 decimals); parsing the
// output reproduces the atom list bit-for-bit at this print precision.
inline std::string to_xyz(const Molecule& mol, const std::string& comment = "") {
  std::string out = std::to_string(mol.atoms.size()) + "\n" + comment + "\n";
  char buf[160];
  for (const auto& a : mol.atoms) {
    Vec3 ang = a.position / angstrom_to_bohr;
    std::snprintf(buf, sizeof(buf), "%s %.12f %.12f %.12f\n",
                  a.element.c_str(), ang[0], ang[1], ang[2]);
    out += buf;
  }
  return out;
}

// Deterministic Cartesian ordering within a shell: lexicographic descending
// on ax, then ay. A p shell yields (1,0,0),(0,1,0),(0,0,1).
inline std::vector<Momentum> shell_components(int L) {
  std::vector<Momentum> out;
  out.reserve(static_cast<std::size_t>((L + 1) * (L + 2) / 2));
  for (int ax = L; ax >= 0; --ax)
    for (int ay = L - ax; ay >= 0; --ay)
      out.push_back(Momentum{ax, ay, L - ax - ay});
  return out;
}

inline std::vector<BasisFunction> expand_functions(const Molecule& mol) {
  std::vector<BasisFunction> funcs;
  for (int s = 0; s < static_cast<int>(mol.shells.size()); ++s)
    for (const auto& m : shell_components(mol.shells[s].total_momentum))
      funcs.push_back(BasisFunction{s, m});
  return funcs;
}

inline int basis_dimension(const Molecule& mol) {
  int n = 0;
  for (const auto& s : mol.shells) n += s.num_functions();
  return n;
}

inline double odd_double_factorial(int n) {  // (2n-1)!! with (-1)!! = 1
  double v = 1.0;
  for (int k = 2 * n - 1; k > 1; k -= 2) v *= k;
  return v;
}

// Relative normalization of a Cartesian component against the (L,0,0) one;
// unity for L <= 1.
inline double component_norm_scale(const Momentum& a) {
  int L = a.total();
  if (L <= 1) return 1.0;
  return std::sqrt(odd_double_factorial(L) /
                   (odd_double_factorial(a.x) * odd_double_factorial(a.y) *
                    odd_double_factorial(a.z)));
}

}  // namespace eritile
