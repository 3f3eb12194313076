#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "avoidforge/bits.hpp"
#include "avoidforge/gf2core.hpp"

namespace avoidforge {

/// d-uniform hypergraph on n vertices with ordered edges of distinct vertices.
struct Hypergraph {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<std::vector<std::uint32_t>> edges;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;
  void validate() const;
};

Hypergraph sample_hypergraph(std::size_t n, std::size_t m, std::size_t d, std::uint64_t seed);
std::string emit_hypergraph(const Hypergraph& g);
Hypergraph parse_hypergraph(std::string_view text);

/// x1 + x2 + x3 + x4 x5 as a 5-input, 1-output circuit.
Gf2Circuit mst06_predicate();

/// Output i applies the predicate to x restricted to edge i.
Gf2Circuit build_goldreich(const Hypergraph& g, const Gf2Circuit& predicate);

// ---------------------------------------------------------------------------
// Sparse-vector encoder: input is s slots, each slot d one-hot selector blocks
// of B = ceil(m^(1/d)) bits. Output j = XOR over slots of the AND of the
// selector bits picked by j's base-B digits, so each output has degree <= d.

/// Smallest B with B^d >= m.
std::size_t encoder_base(std::size_t m, std::size_t d);
/// (s d)^d <= m^(d-1), i.e. s <= m^(1-1/d) / d.
bool encoder_applicable(std::size_t m, std::size_t s, std::size_t d);
std::size_t encoder_input_length(std::size_t m, std::size_t s, std::size_t d);

Gf2Circuit build_sparse_encoder(std::size_t m, std::size_t s, std::size_t d);
BitVec sparse_preimage(std::size_t m, std::size_t s, std::size_t d, std::span<const std::uint8_t> v);

struct LpnParams {
  std::size_t n = 0;   // secret length
  std::size_t m = 0;   // equations
  std::uint64_t mu_num = 0;
  std::uint64_t mu_den = 1;
  std::size_t d = 1;   // encoder degree
  std::vector<BitVec> A;  // m rows of n bits

  /// floor(mu * m)
  std::size_t sparsity() const { return static_cast<std::size_t>((mu_num * m) / mu_den); }
  void validate() const;
};

/// Uniform public matrix A from the seed.
LpnParams sample_lpn_params(std::size_t n, std::size_t m, std::uint64_t mu_num, std::uint64_t mu_den, std::size_t d,
                            std::uint64_t seed);

/// Inputs are (e_enc, s); output is A s + f(e_enc).
Gf2Circuit build_lpn_generator(const LpnParams& p);
/// Input vector for build_lpn_generator with the given secret and sparse noise.
BitVec lpn_preimage(const LpnParams& p, std::span<const std::uint8_t> secret, std::span<const std::uint8_t> noise);

// ---------------------------------------------------------------------------
// Truth-table generator: a description of s gates, each 2 op bits
// (00 AND, 01 OR, 10 XOR, 11 NOT) and two L-bit operand indices with
// L = ceil(log2(s + n)). Operand k of gate g is taken mod (n + g) over
// inputs then earlier gates. The last gate is the output.

struct TtSpec {
  std::size_t n = 0;
  std::size_t s = 0;
  std::size_t index_bits() const;
  std::size_t description_length() const;
  std::size_t output_length() const { return std::size_t{1} << n; }
};

BitVec tt_evaluate(const TtSpec& spec, std::span<const std::uint8_t> desc);

struct PlantedSpec {
  std::uint64_t seed = 0;
  std::size_t gate_budget = 0;
};

struct GeneratorSpec {
  enum class Kind { Goldreich, Lpn, TruthTable, Planted, Circuit };
  Kind kind = Kind::Circuit;
  std::variant<Hypergraph, LpnParams, TtSpec, PlantedSpec, Gf2Circuit> payload;
  std::size_t n_in = 0;
  std::size_t n_out = 0;

  /// Evaluates G on an n_in-bit input.
  BitVec evaluate(std::span<const std::uint8_t> x) const;
};

GeneratorSpec build_tt_generator(std::size_t n, std::size_t s);

/// Random stretching circuit: n inputs, N outputs, at most gate_budget gates,
/// every output an internal gate whose cone contains an input.
Gf2Circuit build_planted_generator(std::size_t n, std::size_t N, std::uint64_t seed, std::size_t gate_budget);

/// LpnParams as config-style lines: `lpn n= m= mu=<p>/<q> d=` then `row <hex>`.
std::string emit_lpn_params(const LpnParams& p);
LpnParams parse_lpn_params(std::string_view text);

}  // namespace avoidforge
