#include <cmath>
#include <map>

#include "avoidforge/error.hpp"
#include "avoidforge/extract.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace avoidforge;

TEST_CASE("toeplitz_apply matches the diagonal definition") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t N = 4 + seed % 9, m = 1 + seed % N;
    auto key = sample_key(N, m, seed);
    CHECK(key.diag.size() == N + m - 1);
    Rng rng(seed + 1000);
    auto y = rng.bits(N);
    CHECK(toeplitz_apply(key, y) == oracle::toeplitz(key.diag, N, m, y));
    CHECK(ExtractorKey::from_diag_word(N, m, key.diag_word()) == key);
    CHECK(parse_key(emit_key(key)) == key);
  }
}

TEST_CASE("xor rows of a key select the ones of each matrix row") {
  auto key = ExtractorKey::from_diag_word(4, 2, 0b10110);
  auto rows = key_to_xor_rows(key);
  REQUIRE(rows.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    std::vector<std::uint32_t> expect;
    for (std::size_t j = 0; j < 4; ++j)
      if (key.diag[i + 3 - j]) expect.push_back(static_cast<std::uint32_t>(j));
    CHECK(rows[i].indices == expect);
    CHECK_FALSE(rows[i].constant);
  }
}

TEST_CASE("key sampling rejects bad dimensions") {
  try {
    sample_key(3, 4, 1);
    FAIL("m > N accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadDims);
  }
  CHECK_THROWS_AS(sample_key(3, 0, 1), Error);
  CHECK_THROWS_AS(toeplitz_apply(sample_key(4, 2, 1), BitVec(3)), Error);
}

TEST_CASE("leftover hash parameters for m = 5") {
  auto p = lhl_params(5);
  CHECK(p.N_min == 18);
  CHECK(p.d_min == 36);
  CHECK(p.k == 17);
  CHECK(p.eps_exponent == 6);
}

TEST_CASE("universality scan against a pairwise oracle") {
  // Oracle: for each pair y != y', count keys with T y = T y'.
  for (auto [N, m] : {std::pair<std::size_t, std::size_t>{4, 2}, {5, 3}, {3, 3}}) {
    std::uint64_t worst = 0;
    const std::uint64_t keys = std::uint64_t{1} << (N + m - 1);
    for (std::uint64_t a = 0; a < (1u << N); ++a)
      for (std::uint64_t b = a + 1; b < (1u << N); ++b) {
        std::uint64_t hits = 0;
        for (std::uint64_t w = 0; w < keys; ++w) {
          auto diag = oracle::int_to_bits(w, N + m - 1);
          hits += oracle::toeplitz(diag, N, m, oracle::int_to_bits(a, N)) == oracle::toeplitz(diag, N, m, oracle::int_to_bits(b, N));
        }
        worst = std::max(worst, hits);
      }
    auto r = universality_scan(N, m);
    CHECK(r.num == worst);
    CHECK(r.den == keys);
  }
  auto r = universality_scan(6, 3);
  CHECK(r.str() == "32/256");
}

TEST_CASE("distance estimate equals the mean exact conditional distance") {
  const std::size_t N = 6, m = 2;
  std::vector<std::uint64_t> support{1, 2, 7, 12, 33, 40, 41, 63};
  const std::uint64_t trials = 25, seed = 77;
  double expect = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto key = sample_key(N, m, seed + t);
    std::map<oracle::Bits, double> hist;
    for (auto x : support) hist[oracle::toeplitz(key.diag, N, m, oracle::int_to_bits(x, N))] += 1.0 / support.size();
    double sd = 0;
    for (std::uint64_t z = 0; z < (1u << m); ++z) sd += std::fabs(hist[oracle::int_to_bits(z, m)] - 1.0 / (1u << m));
    expect += sd / 2 / trials;
  }
  auto est = extraction_distance_estimate(N, m, support, trials, seed);
  CHECK(est.trials == trials);
  CHECK(est.distance.approx() == doctest::Approx(expect).epsilon(1e-12));
  CHECK_THROWS_AS(extraction_distance_estimate(N, m, std::vector<std::uint64_t>{}, 1, 1), Error);
}

TEST_CASE("uniform source on the whole cube is perfectly extracted by full-rank keys") {
  std::vector<std::uint64_t> all(64);
  for (std::uint64_t x = 0; x < 64; ++x) all[x] = x;
  // Every Toeplitz matrix with a nonzero diagonal has rank >= 1; the estimate is
  // zero exactly when every sampled key has full rank m = 1.
  auto est = extraction_distance_estimate(6, 1, all, 50, 3);
  std::uint64_t zero_keys = 0;
  for (std::uint64_t t = 0; t < 50; ++t) zero_keys += sample_key(6, 1, 3 + t).diag_word() == 0;
  CHECK(est.distance.num == zero_keys * 2 * 64);
}
