#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "avoidforge/cnfenc.hpp"
#include "avoidforge/extract.hpp"
#include "avoidforge/gf2core.hpp"
#include "avoidforge/linear.hpp"

namespace avoidforge {

/// CNF literal x -> x=1, -x -> x=0.
LinearClause translate_clause(const Clause& c);
std::vector<LinearClause> translate_cnf(const CnfFormula& f);

// ---------------------------------------------------------------------------
// Simple parity reductions

struct Justification {
  enum class Kind { Taut, Axiom, XorAx };
  Kind kind = Kind::Taut;
  std::vector<std::size_t> axioms;  // one index for Axiom, any number for XorAx

  bool operator==(const Justification&) const = default;
};

/// Destination variable y_v is the XOR of source variables rows[v-1].
struct ParityReduction {
  std::size_t src_vars = 0;
  std::size_t dst_vars = 0;
  std::vector<LinearForm> rows;
  std::vector<Justification> just;  // one per destination clause

  bool operator==(const ParityReduction&) const = default;

  LinearForm substitute(const LinearForm& f) const;
  LinearClause substitute(const LinearClause& c) const;
  LinearClause substitute(const Clause& c) const;
  /// redu(a) for a 1-based source assignment.
  std::vector<std::uint8_t> apply(std::span<const std::uint8_t> src) const;
};

enum class ReductionFault { None, BadJustificationIndex, WidthViolation, NotTautology, NotAxiom, NotXor, BadRow };
const char* to_string(ReductionFault f);

struct ReductionCheck {
  ReductionFault fault = ReductionFault::None;
  std::size_t clause = 0;
  bool ok() const { return fault == ReductionFault::None; }
};

/// F is the source formula, Gf the destination.
ReductionCheck check_parity_reduction(const CnfFormula& F, const CnfFormula& Gf, const ParityReduction& red);

struct CanonicalReduction {
  ParityReduction red;
  BitVec z;
  Gf2Circuit composed;  // C_r
};

/// Reduction from tau_y(G) to tau_z(C_r) with z = T_r y.
CanonicalReduction build_canonical_reduction(const Gf2Circuit& G, const ExtractorKey& key, std::span<const std::uint8_t> y);

/// `reduction src=<n> dst=<m>`, `map y<v> = x<a>+...` (or `0`), `just <i> TAUT|AXIOM <j>|XORAX <j>...`.
std::string emit_reduction(const ParityReduction& red);
ParityReduction parse_reduction(std::string_view text);

// ---------------------------------------------------------------------------
// Res[xor] proofs

struct ProofLine {
  enum class Rule { Axiom, Weaken, Resolve };
  LinearClause clause;
  Rule rule = Rule::Axiom;
  std::size_t a = 0;  // axiom index, or premise line
  std::size_t b = 0;  // second premise (Resolve)
  LinearForm pivot;   // Resolve

  bool operator==(const ProofLine&) const = default;
};

struct ResXorProof {
  std::string name = "f";
  std::vector<ProofLine> lines;

  bool operator==(const ResXorProof&) const = default;
};

enum class ProofFault { None, BadReference, BadAxiom, NoPivot, BadConclusion, NotImplied, NotEmptyFinal };
const char* to_string(ProofFault f);

struct ProofCheck {
  ProofFault fault = ProofFault::None;
  std::size_t line = 0;
  bool ok() const { return fault == ProofFault::None; }
};

/// RESOLVE on f: first premise holds f=0, second f=1, conclusion is the
/// normalized union of the rest. WEAKEN is semantic implication.
ProofCheck check_resxor_proof(std::span<const LinearClause> axioms, const ResXorProof& proof);
ProofCheck check_resxor_proof(const CnfFormula& F, const ResXorProof& proof);

/// Turns a refutation of Gf into one of F through a checked reduction F -> Gf.
/// Throws ReductionInvalid, ProofInvalid, or BoundViolated when the output
/// would exceed 2 n m' + s lines.
ResXorProof transform_resxor_proof(const ResXorProof& proofG, const CnfFormula& Gf, const CnfFormula& F,
                                   const ParityReduction& red);

/// Either a refutation whose axiom i is equation i, or a satisfying assignment.
using LinearRefutation = std::variant<ResXorProof, std::vector<std::uint8_t>>;

LinearRefutation refute_linear_system(std::span<const LinearLiteral> eqs);

/// Refutation of tau_z(L) for a circuit built from INPUT, CONST, NOT and XOR,
/// or a satisfying assignment when z is in the range.
LinearRefutation refute_linear_tau(const Gf2Circuit& L, std::span<const std::uint8_t> z);

/// Appends the two-line derivation of (A+B = a+b) from lines holding (A=a)
/// and (B=b); A must be non-empty. Returns the index of the last line.
std::size_t append_sum_gadget(ResXorProof& proof, std::size_t line_a, std::size_t line_b);

std::string emit_proof(const ResXorProof& proof);
ResXorProof parse_proof(std::string_view text);

}  // namespace avoidforge
