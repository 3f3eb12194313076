#include <set>

#include "avoidforge/error.hpp"
#include "avoidforge/gens.hpp"
#include "avoidforge/range.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace avoidforge;

TEST_CASE("hypergraph sampling yields distinct in-range vertices and roundtrips") {
  auto g = sample_hypergraph(10, 20, 5, 4);
  CHECK(g.edges.size() == 20);
  for (const auto& e : g.edges) {
    CHECK(std::set<std::uint32_t>(e.begin(), e.end()).size() == 5);
    for (auto v : e) CHECK(v < 10);
  }
  CHECK(parse_hypergraph(emit_hypergraph(g)) == g);
  CHECK(sample_hypergraph(10, 20, 5, 4) == g);
  CHECK_THROWS_AS(sample_hypergraph(4, 3, 5, 1), Error);
  try {
    sample_hypergraph(4, 3, 5, 1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DTooLarge);
  }
}

TEST_CASE("mst06 predicate is x1+x2+x3+x4x5") {
  auto p = mst06_predicate();
  for (std::uint64_t u = 0; u < 32; ++u) {
    auto x = oracle::int_to_bits(u, 5);
    CHECK(eval_circuit(p, x)[0] == ((x[0] ^ x[1] ^ x[2] ^ (x[3] & x[4])) & 1));
  }
  CHECK(circuit_degree(p) == 2);
}

TEST_CASE("goldreich output i applies the predicate to edge i") {
  auto g = sample_hypergraph(7, 12, 5, 11);
  auto G = build_goldreich(g, mst06_predicate());
  CHECK(G.n == 7);
  CHECK(G.m == 12);
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    auto x = rng.bits(7);
    auto y = eval_circuit(G, x);
    for (std::size_t i = 0; i < 12; ++i) {
      const auto& e = g.edges[i];
      CHECK(y[i] == (x[e[0]] ^ x[e[1]] ^ x[e[2]] ^ (x[e[3]] & x[e[4]])));
    }
  }
  CHECK(circuit_degree(G) == 2);
}

TEST_CASE("sparse encoder dimensions and preimages") {
  CHECK(encoder_base(16, 2) == 4);
  CHECK(encoder_base(17, 2) == 5);
  CHECK(encoder_base(8, 3) == 2);
  CHECK(encoder_input_length(16, 2, 2) == 16);
  CHECK(encoder_applicable(16, 2, 2));
  CHECK_FALSE(encoder_applicable(16, 3, 2));
  auto f = build_sparse_encoder(16, 2, 2);
  CHECK(f.n == 16);
  CHECK(f.m == 16);
  std::size_t checked = 0;
  for (std::uint64_t v = 0; v < (1u << 16); ++v) {
    auto bits = oracle::int_to_bits(v, 16);
    if (weight(bits) > 2) continue;
    CHECK(eval_circuit(f, sparse_preimage(16, 2, 2, bits)) == bits);
    ++checked;
  }
  CHECK(checked == 137);
  for (const auto& p : circuit_to_polynomials(f)) CHECK(p.degree() <= 2);
  try {
    sparse_preimage(16, 2, 2, oracle::int_to_bits(7, 16));
    FAIL("weight 3 accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WeightTooLarge);
  }
  try {
    build_sparse_encoder(16, 3, 2);
    FAIL("sparsity 3 accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SparsityTooLarge);
  }
}

TEST_CASE("sparse encoder range covers every vector of weight at most s") {
  // m = 8, d = 3, B = 2, s = 1: input length 6.
  auto f = build_sparse_encoder(8, 1, 3);
  CHECK(f.n == 6);
  auto img = oracle::range(f);
  CHECK(img.count(BitVec(8, 0)) == 1);
  for (std::size_t j = 0; j < 8; ++j) {
    BitVec e(8, 0);
    e[j] = 1;
    CHECK(img.count(e) == 1);
  }
}

TEST_CASE("lpn generator computes A s + e and keeps degree d") {
  auto p = sample_lpn_params(6, 16, 1, 8, 2, 21);
  CHECK(p.sparsity() == 2);
  auto G = build_lpn_generator(p);
  CHECK(G.n == 16 + 6);
  CHECK(circuit_degree(G) <= 2);
  Rng rng(8);
  for (int t = 0; t < 40; ++t) {
    auto s = rng.bits(6);
    BitVec e(16, 0);
    e[rng.below(16)] = 1;
    e[rng.below(16)] ^= 1;
    BitVec expect(16);
    for (std::size_t j = 0; j < 16; ++j) {
      std::uint8_t acc = e[j];
      for (std::size_t k = 0; k < 6; ++k) acc ^= p.A[j][k] & s[k];
      expect[j] = acc;
    }
    CHECK(eval_circuit(G, lpn_preimage(p, s, e)) == expect);
  }
  CHECK(parse_lpn_params(emit_lpn_params(p)).A == p.A);
  try {
    sample_lpn_params(6, 16, 3, 8, 2, 1);
    FAIL("too much noise accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SparsityTooLarge);
  }
}

TEST_CASE("truth-table generator follows the description") {
  TtSpec spec{2, 3};
  CHECK(spec.index_bits() == 3);
  CHECK(spec.description_length() == 3 * 8);
  // g0 = x0 XOR x1 (op 10, a=0, b=1); g1 = NOT g0 (op 11, a=2); g2 = g1 AND x0 (op 00, a=3, b=0)
  BitVec desc = from_bitstring("10000001" "11010000" "00011000");
  // x0 x1 lex order: 00 01 10 11 -> g0 = 0110, g1 = 1001, g2 = 1001 & 0011 = 0001
  CHECK(tt_evaluate(spec, desc) == from_bitstring("0001"));
  // operand indices wrap mod (n + g): a = 7 at gate 0 is 7 mod 2 = 1 -> NOT x1 = 1010
  TtSpec one{2, 1};
  CHECK(tt_evaluate(one, from_bitstring("11" "11" "00")) == from_bitstring("1010"));
  auto g = build_tt_generator(3, 5);
  CHECK(g.n_out == 8);
  CHECK(g.n_in == 5 * (2 + 2 * 3));
  // All-zero description: every gate is x0 AND x0, so the table is x0's.
  CHECK(g.evaluate(BitVec(g.n_in, 0)) == from_bitstring("00001111"));
}

TEST_CASE("planted generator stretches, respects the budget, and is seed-deterministic") {
  auto G = build_planted_generator(4, 18, 3, 60);
  CHECK(G.n == 4);
  CHECK(G.m == 18);
  CHECK(G.gates.size() <= 60);
  CHECK(build_planted_generator(4, 18, 3, 60) == G);
  for (auto o : G.outputs) {
    CHECK(G.gates[o].op != Op::Input);
    CHECK_FALSE(input_cone(G, o).empty());
  }
  try {
    build_planted_generator(4, 4, 1, 20);
    FAIL("N <= n accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotStretching);
  }
  try {
    build_planted_generator(4, 6, 1, 9);
    FAIL("small budget accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetTooSmall);
  }
}
