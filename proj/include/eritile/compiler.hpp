#pragma once

#include <algorithm>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "eritile/dag.hpp"
#include "eritile/eri_class.hpp"

namespace eritile {

struct CompilerConfig {
  double lambda = 1.0;  // balances momentum value against reuse in the cost
  // Single deterministic tie-break rule: first position in iteration order.
  int tie_break = 0;
};

// Greedy position choice: minimize (n - r) + lambda * ang; ties go to the
// first candidate in iteration order.
inline std::size_t find_optimal_position(const std::vector<Position>& positions,
                                         double lambda) {
  if (positions.empty())
    throw std::invalid_argument("find_optimal_position: no candidates");
  double best = std::numeric_limits<double>::infinity();
  std::size_t opt = 0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const double cost =
        double(positions[i].n - positions[i].r) + lambda * positions[i].ang;
    if (cost < best) {
      best = cost;
      opt = i;
    }
  }
  return opt;
}

namespace detail {

using PositionChooser =
    std::function<std::size_t(const std::vector<Position>&)>;

// Depth-first derivation: fix a recurrence for every pending node until only
// base cases remain. The chooser decides among valid positions; reuse is
// counted against the set of nodes already introduced.
inline RecurrenceDAG run_search(const EriClass& cls,
                                const PositionChooser& choose) {
  RecurrenceDAG dag;
  dag.cls = cls;
  dag.targets = class_targets(cls);

  std::vector<IntegralNode> stack;
  for (auto it = dag.targets.rbegin(); it != dag.targets.rend(); ++it) {
    if (dag.nodes.insert(*it).second) stack.push_back(*it);
  }

  while (!stack.empty()) {
    IntegralNode node = stack.back();
    stack.pop_back();
    if (node.is_base() || dag.derivations.count(node)) continue;

    auto positions = candidate_positions(node, dag.nodes);
    const std::size_t pick = choose(positions);
    Position& pos = positions.at(pick);
    dag.reuse_count += pos.r;

    for (auto it = pos.sources.rbegin(); it != pos.sources.rend(); ++it) {
      if (dag.nodes.insert(it->node).second && !it->node.is_base())
        stack.push_back(it->node);
    }
    dag.derivations.emplace(node, std::move(pos.sources));
    dag.derivation_order.push_back(node);
  }
  return dag;
}

}  // namespace detail

inline RecurrenceDAG build_dag(const EriClass& cls,
                               const CompilerConfig& config = {}) {
  return detail::run_search(cls, [&](const std::vector<Position>& p) {
    return find_optimal_position(p, config.lambda);
  });
}

// Derivation order alone (targets first, bases implicit).
inline std::vector<IntegralNode> search_path(const EriClass& cls,
                                             const CompilerConfig& config = {}) {
  return build_dag(cls, config).derivation_order;
}

// Same derivation loop with uniformly random position choices; used as the
// baseline the greedy plan is measured against.
inline RecurrenceDAG build_random_dag(const EriClass& cls, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return detail::run_search(cls, [&](const std::vector<Position>& p) {
    if (p.empty())
      throw std::invalid_argument("random search: no candidates");
    return std::uniform_int_distribution<std::size_t>(0, p.size() - 1)(rng);
  });
}

struct PlanTerm {
  int src = 0;
  CoeffKind kind = CoeffKind::Unit;
  int dir = 0;
  double factor = 1.0;
};

// base_m >= 0 loads prefactor * F_m into dst; otherwise dst accumulates the
// listed terms.
struct PlanInstr {
  int dst = 0;
  int base_m = -1;
  std::vector<PlanTerm> terms;
};

struct PlanStats {
  long op_count = 0;    // base loads plus multiply-add terms
  int slot_count = 0;   // primitive registers plus contracted slots
  int node_count = 0;
  int reuse_count = 0;
};

// Straight-line program for one ERI class. The primitive segment runs per
// primitive quadruple into a register file; registers listed in `contract`
// are then folded, weighted by the contraction coefficient product, into the
// contracted buffer the horizontal segment and targets read. Only symbolic
// coefficient kinds appear; no numeric geometry is baked in.
struct ExecutionPlan {
  EriClass cls;
  double lambda = 1.0;
  int max_m = 0;
  int prim_slot_count = 0;
  int contracted_slot_count = 0;
  std::vector<PlanInstr> prim;
  std::vector<std::pair<int, int>> contract;  // register -> contracted slot
  std::vector<PlanInstr> hrr;                 // over the contracted buffer
  std::vector<int> targets;                   // contracted slot per component
  PlanStats stats;
};

namespace detail {

// Deterministic topological order over `wanted` (sources before dependents),
// smallest node first among ready ones.
inline std::vector<IntegralNode> topo_order(
    const RecurrenceDAG& dag, const std::set<IntegralNode>& wanted) {
  std::map<IntegralNode, int> indegree;
  std::map<IntegralNode, std::vector<IntegralNode>> dependents;
  for (const auto& n : wanted) {
    int deg = 0;
    auto it = dag.derivations.find(n);
    if (it != dag.derivations.end()) {
      std::set<IntegralNode> srcs;
      for (const auto& t : it->second) srcs.insert(t.node);
      for (const auto& s : srcs) {
        if (wanted.count(s)) {
          ++deg;
          dependents[s].push_back(n);
        }
      }
    }
    indegree[n] = deg;
  }
  std::set<IntegralNode> ready;
  for (const auto& [n, d] : indegree)
    if (d == 0) ready.insert(n);
  std::vector<IntegralNode> order;
  while (!ready.empty()) {
    IntegralNode n = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(n);
    for (const auto& dep : dependents[n])
      if (--indegree[dep] == 0) ready.insert(dep);
  }
  if (order.size() != wanted.size())
    throw std::logic_error("plan generation: cycle in recurrence graph");
  return order;
}

}  // namespace detail

// Emit the straight-line plan from a searched DAG: base cases first, then the
// vertical (primitive) segment in topological order with register reuse, the
// contraction boundary, and the horizontal (contracted) segment.
inline ExecutionPlan generate_plan(const RecurrenceDAG& dag,
                                   const std::vector<IntegralNode>& path,
                                   double lambda = 1.0) {
  for (const auto& n : path)
    if (!dag.nodes.count(n))
      throw std::invalid_argument("generate_plan: path node " + to_string(n) +
                                  " absent from DAG");

  ExecutionPlan plan;
  plan.cls = dag.cls;
  plan.lambda = lambda;
  plan.max_m = dag.max_aux_order();

  // Partition: transferred nodes run per primitive; the rest run on
  // contracted values (their horizontal coefficients are primitive-free).
  std::set<IntegralNode> lower, upper;
  for (const auto& n : dag.nodes)
    (n.is_transferred() ? lower : upper).insert(n);

  // Contracted slots: every upper node, plus each lower node some upper
  // derivation reads, plus lower targets.
  std::set<IntegralNode> boundary;
  for (const auto& n : upper)
    for (const auto& t : dag.derivations.at(n))
      if (t.node.is_transferred()) boundary.insert(t.node);
  for (const auto& t : dag.targets)
    if (t.is_transferred()) boundary.insert(t);

  std::map<IntegralNode, int> cslot;
  for (const auto& n : boundary) cslot.emplace(n, int(cslot.size()));
  for (const auto& n : upper) cslot.emplace(n, int(cslot.size()));
  plan.contracted_slot_count = int(cslot.size());

  // Primitive segment in topological order.
  const auto lower_order = detail::topo_order(dag, lower);
  std::map<IntegralNode, int> vreg;  // virtual register per lower node
  std::vector<PlanInstr> prim_virtual;
  for (const auto& n : lower_order) {
    PlanInstr ins;
    ins.dst = int(vreg.size());
    vreg.emplace(n, ins.dst);
    if (n.is_base()) {
      ins.base_m = n.m;
    } else {
      for (const auto& t : dag.derivations.at(n))
        ins.terms.push_back({vreg.at(t.node), t.kind, t.dir, t.factor});
    }
    prim_virtual.push_back(std::move(ins));
  }

  // Register allocation with slot reuse: boundary registers stay live until
  // the contraction scatter, everything else frees after its last use.
  std::vector<int> last_use(prim_virtual.size(), -1);
  for (std::size_t i = 0; i < prim_virtual.size(); ++i)
    for (const auto& t : prim_virtual[i].terms)
      last_use[static_cast<std::size_t>(t.src)] = int(i);
  std::set<int> live_to_end;
  for (const auto& n : boundary) live_to_end.insert(vreg.at(n));

  std::vector<int> phys(prim_virtual.size(), -1);
  std::set<int> free_slots;
  int peak = 0;
  for (std::size_t i = 0; i < prim_virtual.size(); ++i) {
    int slot;
    if (!free_slots.empty()) {
      slot = *free_slots.begin();
      free_slots.erase(free_slots.begin());
    } else {
      slot = peak++;
    }
    phys[i] = slot;
    PlanInstr ins = prim_virtual[i];
    ins.dst = slot;
    for (auto& t : ins.terms) t.src = phys[static_cast<std::size_t>(t.src)];
    plan.prim.push_back(std::move(ins));
    for (std::size_t v = 0; v <= i; ++v)
      if (last_use[v] == int(i) && !live_to_end.count(int(v)) &&
          phys[v] >= 0) {
        free_slots.insert(phys[v]);
        phys[v] = -phys[v] - 1000;  // poison further use
      }
  }
  plan.prim_slot_count = peak;

  for (const auto& n : boundary)
    plan.contract.emplace_back(phys[static_cast<std::size_t>(vreg.at(n))],
                               cslot.at(n));

  // Horizontal segment over contracted slots.
  for (const auto& n : detail::topo_order(dag, upper)) {
    PlanInstr ins;
    ins.dst = cslot.at(n);
    for (const auto& t : dag.derivations.at(n))
      ins.terms.push_back({cslot.at(t.node), t.kind, t.dir, t.factor});
    plan.hrr.push_back(std::move(ins));
  }

  for (const auto& t : dag.targets) plan.targets.push_back(cslot.at(t));

  long ops = 0;
  for (const auto& i : plan.prim)
    ops += i.base_m >= 0 ? 1 : long(i.terms.size());
  for (const auto& i : plan.hrr) ops += long(i.terms.size());
  plan.stats.op_count = ops;
  plan.stats.slot_count = plan.prim_slot_count + plan.contracted_slot_count;
  plan.stats.node_count = int(dag.nodes.size());
  plan.stats.reuse_count = dag.reuse_count;
  return plan;
}

inline ExecutionPlan compile_class(const EriClass& cls,
                                   const CompilerConfig& config = {}) {
  RecurrenceDAG dag = build_dag(cls, config);
  return generate_plan(dag, dag.derivation_order, config.lambda);
}

inline ExecutionPlan compile_random_class(const EriClass& cls,
                                          std::uint64_t seed) {
  RecurrenceDAG dag = build_random_dag(cls, seed);
  return generate_plan(dag, dag.derivation_order);
}

inline PlanStats plan_stats(const ExecutionPlan& plan) { return plan.stats; }

// Readable scalar source text equivalent to the plan; also the byte-exact
// determinism witness.
inline std::string emit_source(const ExecutionPlan& plan) {
  std::string out = "// class " + to_string(plan.cls) + " lambda " +
                    std::to_string(plan.lambda) + "\n";
  char buf[128];
  auto term_str = [&](const PlanTerm& t, const char* reg) {
    std::string s;
    if (t.factor != 1.0) {
      std::snprintf(buf, sizeof(buf), "%g*", t.factor);
      s += buf;
    }
    if (t.kind != CoeffKind::Unit) {
      s += coeff_kind_name(t.kind);
      if (t.kind == CoeffKind::PA || t.kind == CoeffKind::PB ||
          t.kind == CoeffKind::QC || t.kind == CoeffKind::QD ||
          t.kind == CoeffKind::WP || t.kind == CoeffKind::WQ ||
          t.kind == CoeffKind::AB || t.kind == CoeffKind::CD)
        s += std::string(".") + "xyz"[t.dir];
      s += "*";
    }
    s += reg + std::to_string(t.src);
    return s;
  };
  out += "// primitive segment (per primitive quadruple)\n";
  for (const auto& i : plan.prim) {
    out += "r" + std::to_string(i.dst) + " = ";
    if (i.base_m >= 0) {
      out += "pref*F[" + std::to_string(i.base_m) + "]";
    } else {
      for (std::size_t k = 0; k < i.terms.size(); ++k)
        out += (k ? " + " : "") + term_str(i.terms[k], "r");
    }
    out += ";\n";
  }
  out += "// contraction boundary (weight = product of contraction coefficients)\n";
  for (const auto& [reg, cs] : plan.contract)
    out += "t" + std::to_string(cs) + " += w*r" + std::to_string(reg) + ";\n";
  out += "// contracted segment (per shell quadruple)\n";
  for (const auto& i : plan.hrr) {
    out += "t" + std::to_string(i.dst) + " = ";
    for (std::size_t k = 0; k < i.terms.size(); ++k)
      out += (k ? " + " : "") + term_str(i.terms[k], "t");
    out += ";\n";
  }
  out += "// targets\n";
  for (std::size_t k = 0; k < plan.targets.size(); ++k)
    out += "out" + std::to_string(k) + " = t" +
           std::to_string(plan.targets[k]) + ";\n";
  return out;
}

// Contraction expansion of one contracted quartet into its K*L*M*N primitive
// tasks, each carrying the coefficient product.
struct PrimTask {
  double exps[4] = {0, 0, 0, 0};
  double coef = 0.0;
};

inline std::vector<PrimTask> deconstruct(const Shell& a, const Shell& b,
                                         const Shell& c, const Shell& d) {
  std::vector<PrimTask> tasks;
  tasks.reserve(a.exponents.size() * b.exponents.size() * c.exponents.size() *
                d.exponents.size());
  for (std::size_t k = 0; k < a.exponents.size(); ++k)
    for (std::size_t l = 0; l < b.exponents.size(); ++l)
      for (std::size_t m = 0; m < c.exponents.size(); ++m)
        for (std::size_t n = 0; n < d.exponents.size(); ++n)
          tasks.push_back(PrimTask{
              {a.exponents[k], b.exponents[l], c.exponents[m], d.exponents[n]},
              a.coefficients[k] * b.coefficients[l] * c.coefficients[m] *
                  d.coefficients[n]});
  return tasks;
}

}  // namespace eritile
