#pragma once

// Independent reference implementations used only by the tests. They are
// written from the definitions, without reusing library code paths.

#include <cstdint>
#include <set>
#include <vector>

#include "avoidforge/gf2core.hpp"

namespace oracle {

using Bits = std::vector<std::uint8_t>;

inline Bits int_to_bits(std::uint64_t v, std::size_t len) {
  Bits b(len);
  for (std::size_t i = 0; i < len; ++i) b[len - 1 - i] = (v >> i) & 1u;
  return b;
}

inline std::uint64_t bits_to_int(const Bits& b) {
  std::uint64_t v = 0;
  for (auto x : b) v = v * 2 + x;
  return v;
}

// Recursive gate evaluation from the gate list.
inline std::uint8_t gate_value(const avoidforge::Gf2Circuit& c, std::uint32_t g, const Bits& x) {
  const auto& gate = c.gates[g];
  using avoidforge::Op;
  switch (gate.op) {
    case Op::Input: return x[gate.a];
    case Op::Const: return static_cast<std::uint8_t>(gate.a);
    case Op::Not: return gate_value(c, gate.a, x) ^ 1u;
    case Op::And: return gate_value(c, gate.a, x) & gate_value(c, gate.b, x);
    case Op::Or: return gate_value(c, gate.a, x) | gate_value(c, gate.b, x);
    case Op::Xor: return gate_value(c, gate.a, x) ^ gate_value(c, gate.b, x);
  }
  return 0;
}

inline Bits eval(const avoidforge::Gf2Circuit& c, const Bits& x) {
  Bits y;
  for (auto o : c.outputs) y.push_back(gate_value(c, o, x));
  return y;
}

inline std::set<Bits> range(const avoidforge::Gf2Circuit& c) {
  std::set<Bits> r;
  for (std::uint64_t u = 0; u < (std::uint64_t{1} << c.n); ++u) r.insert(eval(c, int_to_bits(u, c.n)));
  return r;
}

// T[i][j] = diag[i - j + N - 1], straight from the definition.
inline Bits toeplitz(const Bits& diag, std::size_t N, std::size_t m, const Bits& y) {
  Bits out(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < N; ++j) out[i] ^= diag[i + N - 1 - j] & y[j];
  return out;
}

}  // namespace oracle
