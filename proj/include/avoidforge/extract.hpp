#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avoidforge/bits.hpp"
#include "avoidforge/gf2core.hpp"

namespace avoidforge {

/// Toeplitz matrix T in F2^{m x N} with T[i][j] = diag[i - j + N - 1]. The map
/// y -> T y is the F2-linear hash Ext(., key). No affine offset.
struct ExtractorKey {
  std::size_t N = 0;
  std::size_t m = 0;
  BitVec diag;  // length N + m - 1

  friend bool operator==(const ExtractorKey&, const ExtractorKey&) = default;

  std::uint8_t entry(std::size_t i, std::size_t j) const { return diag[i + N - 1 - j]; }
  /// Packed diagonal (bit k = diag[k]); needs N + m - 1 <= 64.
  std::uint64_t diag_word() const;
  static ExtractorKey from_diag_word(std::size_t N, std::size_t m, std::uint64_t word);
};

/// Leftover-hash parameters for output length m; eps = 2^-eps_exponent.
struct LhlParams {
  std::size_t m = 0;
  std::size_t N_min = 0;
  std::size_t d_min = 0;
  std::size_t k = 0;
  unsigned eps_exponent = 0;
};

LhlParams lhl_params(std::size_t m);

ExtractorKey sample_key(std::size_t N, std::size_t m, std::uint64_t seed);
BitVec toeplitz_apply(const ExtractorKey& key, std::span<const std::uint8_t> y);
/// Row i selects {j : T[i][j] = 1}; constants are always 0.
std::vector<XorRow> key_to_xor_rows(const ExtractorKey& key);

/// max over y != y' of Pr_key[T y = T y'], exact over all 2^(N+m-1) keys.
Rational universality_scan(std::size_t N, std::size_t m);

struct DistanceEstimate {
  Rational distance;  // mean statistical distance, exact for the sampled keys
  std::uint64_t trials = 0;
};

/// Distance of (key, Ext(X, key)) from (key, U_m) for X uniform on `support`
/// (packed N-bit points). Each trial draws a key with seed + trial and adds
/// that key's exact conditional distance.
DistanceEstimate extraction_distance_estimate(std::size_t N, std::size_t m, std::span<const std::uint64_t> support,
                                              std::uint64_t trials, std::uint64_t seed);

/// `toeplitz N=<N> m=<m> diag=<hex>`
std::string emit_key(const ExtractorKey& key);
ExtractorKey parse_key(std::string_view text);

}  // namespace avoidforge
