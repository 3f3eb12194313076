#include <set>

#include "avoidforge/avoidinst.hpp"
#include "avoidforge/error.hpp"
#include "avoidforge/gens.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace avoidforge;

namespace {

Gf2Circuit identity_padded() {
  // n = 2 -> m = 3: (x0, x1, 0)
  CircuitBuilder b("idpad", 2);
  auto x0 = b.input(0), x1 = b.input(1);
  auto z = b.constant(false);
  return std::move(b).finish({x0, x1, z});
}

}  // namespace

TEST_CASE("brute-force avoid returns the lexicographically smallest non-range string") {
  CircuitBuilder b("zero", 1);
  b.input(0);
  auto z = b.constant(false);
  auto c = std::move(b).finish({z, z});
  CHECK(brute_force_avoid(c) == BitVec{0, 1});
  CHECK(brute_force_avoid(identity_padded()) == BitVec{0, 0, 1});
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = random_circuit(3, 5, 8, seed);
    auto y = brute_force_avoid(g);
    auto img = oracle::range(g);
    CHECK(img.count(y) == 0);
    for (std::uint64_t v = 0; v < oracle::bits_to_int(y); ++v) CHECK(img.count(oracle::int_to_bits(v, 5)) == 1);
  }
}

TEST_CASE("composition agrees with Ext after G on every input") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto G = build_planted_generator(5, 12, seed, 40);
    auto key = sample_key(12, 7, seed + 500);
    auto inst = compose_instance(G, key);
    CHECK(inst.provenance == AvoidInstance::Provenance::Composed);
    CHECK(circuit_degree(inst.circuit) == circuit_degree(G));
    for (std::uint64_t u = 0; u < 32; ++u) {
      auto s = oracle::int_to_bits(u, 5);
      CHECK(eval_circuit(inst.circuit, s) == oracle::toeplitz(key.diag, 12, 7, oracle::eval(G, s)));
    }
  }
  auto G = build_planted_generator(4, 8, 1, 20);
  try {
    compose_instance(G, sample_key(8, 4, 1));
    FAIL("non-stretching composition accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotStretching);
  }
  try {
    compose_instance(G, sample_key(9, 5, 1));
    FAIL("dimension mismatch accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimMismatch);
  }
}

TEST_CASE("shift instance range is the union of shifted ranges") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    auto G = build_planted_generator(3, 8, seed, 25);
    const std::size_t t = 1 + seed % 8;
    Rng rng(seed);
    std::vector<BitVec> shifts;
    for (std::size_t i = 0; i < t; ++i) shifts.push_back(rng.bits(8));
    auto inst = ilango_instance(G, shifts);
    CHECK(inst.circuit.n == 3 + ceil_log2(t));
    std::set<oracle::Bits> expect;
    for (const auto& y : oracle::range(G))
      for (const auto& s : shifts) expect.insert(xor_bits(y, s));
    CHECK(oracle::range(inst.circuit) == expect);
  }
}

TEST_CASE("shift instance wraps indices and handles t = 1") {
  auto G = build_planted_generator(3, 8, 4, 25);
  std::vector<BitVec> one{from_bitstring("10100101")};
  auto inst = ilango_instance(G, one);
  CHECK(inst.circuit.n == 3);
  for (std::uint64_t u = 0; u < 8; ++u) {
    auto x = oracle::int_to_bits(u, 3);
    CHECK(eval_circuit(inst.circuit, x) == xor_bits(oracle::eval(G, x), one[0]));
  }
  std::vector<BitVec> three{from_bitstring("00000001"), from_bitstring("00000010"), from_bitstring("00000100")};
  auto wrapped = ilango_instance(G, three);
  auto x = oracle::int_to_bits(5, 3);
  BitVec in = x;
  in.push_back(1);
  in.push_back(1);  // i = 3 wraps to s_0
  CHECK(eval_circuit(wrapped.circuit, in) == xor_bits(oracle::eval(G, x), three[0]));
  std::vector<BitVec> zeros(4, BitVec(8, 0));
  CHECK(oracle::range(ilango_instance(G, zeros).circuit) == oracle::range(G));
  auto small = build_planted_generator(3, 5, 4, 20);
  try {
    ilango_instance(small, std::vector<BitVec>(4, BitVec(5, 0)));
    FAIL("stretch violation accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StretchViolation);
  }
}

TEST_CASE("compose adversary never accepts range points and its key list is prefix-closed") {
  auto G = build_planted_generator(4, 12, 7, 40);
  AvoidSolver solver = brute_force_avoid;
  ComposeAdversary small(G, 5, solver, {false, 50, 9});
  ComposeAdversary large(G, 5, solver, {false, 200, 9});
  for (const auto& y : oracle::range(G)) {
    CHECK_FALSE(small.accepts(y).accepted);
    CHECK_FALSE(large.accepts(y).accepted);
  }
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    auto y = rng.bits(12);
    auto v = small.accepts(y);
    if (v.accepted) {
      CHECK(large.accepts(y).accepted);
      REQUIRE(v.witness);
      auto inst = compose_instance(G, *v.witness);
      CHECK(brute_force_avoid(inst.circuit) == toeplitz_apply(*v.witness, y));
    }
  }
}

TEST_CASE("exhaustive key mode agrees with the definition on a toy instance") {
  auto G = build_planted_generator(2, 5, 3, 12);
  AvoidSolver solver = brute_force_avoid;
  ComposeAdversary adv(G, 3, solver, {true, 0, 0});
  CHECK(adv.key_count() == 128);
  for (std::uint64_t y = 0; y < 32; ++y) {
    auto yb = oracle::int_to_bits(y, 5);
    bool expect = false;
    for (std::uint64_t w = 0; w < 128 && !expect; ++w) {
      auto key = ExtractorKey::from_diag_word(5, 3, w);
      expect = brute_force_avoid(compose_instance(G, key).circuit) == oracle::toeplitz(key.diag, 5, 3, yb);
    }
    CHECK(adv.accepts(yb).accepted == expect);
  }
}

TEST_CASE("shift adversary rejects every range point") {
  auto G = build_planted_generator(3, 8, 2, 25);
  IlangoAdversary adv(G, brute_force_avoid, 8, {false, 500, 3});
  CHECK(adv.reduced_t());
  for (const auto& y : oracle::range(G)) CHECK_FALSE(adv.accepts(y));
}

TEST_CASE("break report for trivial adversaries") {
  auto G = build_planted_generator(3, 6, 2, 20);
  auto range_size = oracle::range(G).size();
  auto none = demi_break_report(G, [](std::span<const std::uint8_t>) { return false; }, {true, 0, 0});
  CHECK(none.accepts_on_range == 0);
  CHECK(none.accept_rate_uniform.num == 0);
  CHECK(none.accept_rate_uniform.den == 64);
  auto all = demi_break_report(G, [](std::span<const std::uint8_t>) { return true; }, {false, 100, 5});
  CHECK(all.accepts_on_range == range_size);
  CHECK(all.range_points_tested == range_size);
  CHECK(all.accept_rate_uniform.str() == "100/100");
}

TEST_CASE("lautemann covering") {
  const std::size_t m = 6;
  auto full = [](std::uint64_t) { return true; };
  CHECK(lautemann_cover_check(full, 64, m, std::vector<BitVec>{BitVec(m, 0)}));
  auto zero = [](std::uint64_t z) { return z == 0; };
  CHECK_FALSE(lautemann_cover_check(zero, 1, m, std::vector<BitVec>{BitVec(m, 0)}));
  CHECK_THROWS_AS(lautemann_cover_check(zero, 2, m, std::vector<BitVec>{BitVec(m, 0)}), Error);
  // Oracle: explicit union of shifted copies.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto table = random_dense_set(m, 22, seed);
    std::uint64_t size = 0;
    for (auto b : table) size += b;
    CHECK(size == 22);
    Rng rng(seed + 50);
    std::vector<BitVec> shifts;
    for (int i = 0; i < 4; ++i) shifts.push_back(rng.bits(m));
    std::set<std::uint64_t> covered;
    for (std::uint64_t y = 0; y < 64; ++y)
      if (table[y])
        for (const auto& s : shifts) covered.insert(y ^ pack(s));
    auto member = [&](std::uint64_t z) { return table[z] != 0; };
    CHECK(lautemann_cover_check(member, 22, m, shifts) == (covered.size() == 64));
  }
}
