#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avoidforge/bits.hpp"
#include "avoidforge/gf2core.hpp"

namespace avoidforge {

using Literal = int;  // +v or -v, v 1-based
using Clause = std::vector<Literal>;

struct CnfFormula {
  std::size_t num_vars = 0;
  std::vector<Clause> clauses;
  /// Role tags: X(i), HIST(g<id>), Q(round,i); all 1-based except gate ids.
  std::map<std::size_t, std::string> var_names;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// tau_b(G) together with where each gate's variable and clauses live.
struct TauEncoding {
  CnfFormula cnf;
  std::vector<std::size_t> gate_var;           // variable of each gate id
  std::vector<std::size_t> gate_clause_begin;  // gate g owns [begin[g], begin[g+1])
  std::size_t output_clause_begin = 0;         // one unit per output from here
};

/// Variables x_1..x_n, then one per non-input gate in gate order. Each gate
/// contributes one clause per violating row of its truth table (duplicate
/// literals merged, tautologies dropped); output o contributes the unit
/// v_{out_o} = b_o. Satisfiable iff b is in Range(G).
TauEncoding encode_tau_detailed(const Gf2Circuit& G, std::span<const std::uint8_t> b);
CnfFormula encode_tau(const Gf2Circuit& G, std::span<const std::uint8_t> b);

/// Negation of "the students win": satisfiable iff some q_1..q_k has
/// G(q_i) = B_i(q_1..q_{i-1}) for every round i. Variables q_1..q_k come first
/// (k n of them, round-major).
CnfFormula encode_student_loses(const Gf2Circuit& G, std::span<const Gf2Circuit> students);

/// Splits the leading k n variables of a student-loses assignment into q_1..q_k.
std::vector<BitVec> decode_queries(std::span<const std::uint8_t> assignment, std::size_t k, std::size_t n);

/// `c var <idx> <role>` lines, then `p cnf V C`, then one 0-terminated clause per line.
std::string emit_dimacs(const CnfFormula& f);
CnfFormula parse_dimacs(std::string_view text);

struct SatResult {
  bool sat = false;
  std::vector<std::uint8_t> assignment;  // index 0 unused
};

/// DPLL with unit propagation, branching only on X/Q variables (all variables
/// when the formula carries no roles) while any remain.
SatResult brute_force_sat(const CnfFormula& f, std::size_t free_var_budget = 24);

bool satisfies(const CnfFormula& f, std::span<const std::uint8_t> assignment);

/// Exact by enumeration; n <= 24.
bool range_membership(const Gf2Circuit& G, std::span<const std::uint8_t> b);

}  // namespace avoidforge
