#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "eritile/molecule.hpp"

namespace eritile {

// One shell record of a basis-set table, as read from the fixture file
// (raw published coefficients, no normalization applied yet).
struct BasisRecordShell {
  int total_momentum = 0;
  std::vector<double> exponents;
  std::vector<double> coefficients;
};

// Text format, one record per element:
//
//   element <symbol>
//   <L> <K>
//   <exponent> <coefficient>   (K rows)
//   ... further `L K` shell blocks ...
//
// Blank lines and `#` comments are ignored.
class BasisSetTable {
 public:
  static BasisSetTable parse(const std::string& text) {
    BasisSetTable table;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::string current;

    auto fail = [&](const std::string& msg) {
      throw ParseError("basis table line " + std::to_string(line_no) + ": " +
                       msg);
    };

    while (std::getline(in, line)) {
      ++line_no;
      std::string t = detail::trim(line);
      if (t.empty() || t[0] == '#') continue;
      std::istringstream ls(t);
      std::string head;
      ls >> head;
      if (head == "element") {
        std::string sym;
        if (!(ls >> sym)) fail("missing element symbol");
        if (!atomic_number_of(sym)) fail("unknown element symbol '" + sym + "'");
        current = std::string(element_symbol(*atomic_number_of(sym)));
        table.records_[current];  // create record, may stay empty until shells
      } else {
        if (current.empty()) fail("shell block before any 'element' record");
        int L = 0, K = 0;
        std::istringstream hs(t);
        if (!(hs >> L >> K) || L < 0 || K < 1)
          fail("expected shell header 'L K', got '" + t + "'");
        BasisRecordShell sh;
        sh.total_momentum = L;
        for (int k = 0; k < K; ++k) {
          if (!std::getline(in, line)) fail("unexpected end of shell block");
          ++line_no;
          std::string row = detail::trim(line);
          std::istringstream rs(row);
          std::string es, cs;
          if (!(rs >> es >> cs))
            fail("expected 'exponent coefficient', got '" + row + "'");
          double e = detail::parse_double(es, line_no);
          double c = detail::parse_double(cs, line_no);
          if (e <= 0.0) fail("exponent must be positive");
          sh.exponents.push_back(e);
          sh.coefficients.push_back(c);
        }
        table.records_[current].push_back(std::move(sh));
      }
    }
    return table;
  }

  static BasisSetTable load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open basis file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }

  bool has_element(const std::string& symbol) const {
    return records_.count(symbol) > 0;
  }

  const std::vector<BasisRecordShell>& shells_for(
      const std::string& symbol) const {
    auto it = records_.find(symbol);
    if (it == records_.end())
      throw std::runtime_error("basis table has no element '" + symbol + "'");
    return it->second;
  }

 private:
  std::map<std::string, std::vector<BasisRecordShell>> records_;
};

// Self-overlap of an unnormalized primitive pair sharing one center and the
// Cartesian momentum (L,0,0).
inline double primitive_pair_overlap(double alpha, double beta, int L) {
  double p = alpha + beta;
  return std::pow(std::numbers::pi / p, 1.5) * odd_double_factorial(L) /
         std::pow(2.0 * p, L);
}

inline double primitive_norm(double alpha, int L) {
  return 1.0 / std::sqrt(primitive_pair_overlap(alpha, alpha, L));
}

// Attach the element's shells to every atom. Primitive norms (for the
// (L,0,0) component) and the contracted renormalization are folded into the
// stored coefficients, so downstream integral code needs no extra factors;
// components with mixed momentum pick up component_norm_scale at scatter
// time.
inline void attach_basis(Molecule& mol, const BasisSetTable& table) {
  mol.shells.clear();
  for (int ai = 0; ai < static_cast<int>(mol.atoms.size()); ++ai) {
    const Atom& atom = mol.atoms[ai];
    const auto& records = table.shells_for(atom.element);
    for (const auto& rec : records) {
      Shell sh;
      sh.center = atom.position;
      sh.total_momentum = rec.total_momentum;
      sh.exponents = rec.exponents;
      sh.coefficients = rec.coefficients;
      sh.atom = ai;

      const int K = sh.contraction_degree();
      for (int k = 0; k < K; ++k)
        sh.coefficients[k] *= primitive_norm(sh.exponents[k], sh.total_momentum);
      double self = 0.0;
      for (int k = 0; k < K; ++k)
        for (int l = 0; l < K; ++l)
          self += sh.coefficients[k] * sh.coefficients[l] *
                  primitive_pair_overlap(sh.exponents[k], sh.exponents[l],
                                         sh.total_momentum);
      const double scale = 1.0 / std::sqrt(self);
      for (double& c : sh.coefficients) c *= scale;

      mol.shells.push_back(std::move(sh));
    }
  }
}

// Contracted self-overlap of a shell's (L,0,0) component; 1 after attach.
inline double shell_self_overlap(const Shell& sh) {
  double self = 0.0;
  for (int k = 0; k < sh.contraction_degree(); ++k)
    for (int l = 0; l < sh.contraction_degree(); ++l)
      self += sh.coefficients[k] * sh.coefficients[l] *
              primitive_pair_overlap(sh.exponents[k], sh.exponents[l],
                                     sh.total_momentum);
  return self;
}

}  // namespace eritile
