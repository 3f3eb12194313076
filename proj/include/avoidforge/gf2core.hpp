#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avoidforge/bits.hpp"

namespace avoidforge {

enum class Op : std::uint8_t { Input, Const, Not, And, Or, Xor };

const char* to_string(Op op);
std::size_t arity(Op op);

using GateId = std::uint32_t;

/// For INPUT `a` is the input index, for CONST `a` is the bit; otherwise `a`
/// and `b` are operand gate ids (b unused for NOT).
struct Gate {
  Op op = Op::Const;
  std::uint32_t a = 0;
  std::uint32_t b = 0;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Fan-in-2 circuit over {INPUT, CONST, NOT, AND, OR, XOR}. Gate ids are
/// dense and assigned in definition order; operands always point backwards.
struct Gf2Circuit {
  std::string name = "c";
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<Gate> gates;
  std::vector<GateId> outputs;  // outputs[o] = gate computing output o

  friend bool operator==(const Gf2Circuit&, const Gf2Circuit&) = default;

  /// Throws if any structural invariant is broken.
  void validate() const;
};

/// Incremental construction with the same invariants as parse_netlist.
class CircuitBuilder {
 public:
  CircuitBuilder(std::string name, std::size_t n);

  GateId input(std::size_t index);
  GateId constant(bool bit);
  GateId not_(GateId a);
  GateId and_(GateId a, GateId b);
  GateId or_(GateId a, GateId b);
  GateId xor_(GateId a, GateId b);
  GateId gate(Op op, std::uint32_t a, std::uint32_t b = 0);

  /// Copies `sub` into this circuit with its input i wired to `wires[i]`.
  /// Returns the gate ids of sub's outputs.
  std::vector<GateId> inline_circuit(const Gf2Circuit& sub, std::span<const GateId> wires);

  std::size_t size() const { return circuit_.gates.size(); }
  Gf2Circuit finish(std::vector<GateId> outputs) &&;

 private:
  Gf2Circuit circuit_;
};

Gf2Circuit parse_netlist(std::string_view text);
std::string emit_netlist(const Gf2Circuit& c);

BitVec eval_circuit(const Gf2Circuit& c, std::span<const std::uint8_t> x);
/// Value of every gate, indexed by gate id.
BitVec eval_gates(const Gf2Circuit& c, std::span<const std::uint8_t> x);

/// Syntactic degree bound: INPUT 1, CONST 0, NOT same, XOR max, AND/OR sum.
std::size_t circuit_degree(const Gf2Circuit& c);
std::size_t gate_degree(const Gf2Circuit& c, GateId g);

/// Polynomial over F2 in the input variables 0..n-1. A monomial is a sorted
/// list of variable indices; the empty monomial is the constant 1.
struct SparsePoly {
  std::set<std::vector<std::uint32_t>> monomials;

  std::size_t degree() const;
  std::uint8_t eval(std::span<const std::uint8_t> x) const;
  friend bool operator==(const SparsePoly&, const SparsePoly&) = default;
};

std::vector<SparsePoly> circuit_to_polynomials(const Gf2Circuit& c, std::size_t budget = 1'000'000);

/// One output of a linear layer: XOR of the selected old outputs, plus a constant.
struct XorRow {
  std::vector<std::uint32_t> indices;
  bool constant = false;
};

/// New circuit whose outputs are the rows applied to c's outputs. Old gates
/// keep their ids; each row becomes a left-deep XOR chain (a NOT for a set
/// constant). A row with no indices becomes a CONST gate.
Gf2Circuit append_linear_layer(const Gf2Circuit& c, std::span<const XorRow> rows);

/// Gate ids of INPUT gates reachable from `g`, as input indices (sorted, unique).
std::vector<std::uint32_t> input_cone(const Gf2Circuit& c, GateId g);

/// Test fixture: random circuit with every op kind, deterministic in seed.
Gf2Circuit random_circuit(std::size_t n, std::size_t m, std::size_t internal_gates, std::uint64_t seed);

}  // namespace avoidforge
