#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace avoidforge {

/// One byte per bit, each 0 or 1. Index 0 is the leftmost character of the
/// string y_0 y_1 ... y_{len-1}, so std::vector's ordering is lexicographic.
using BitVec = std::vector<std::uint8_t>;

/// Packs bits MSB-first: bit 0 lands in position len-1. Numeric order of the
/// packed integers equals lexicographic order of the strings. len <= 64.
std::uint64_t pack(std::span<const std::uint8_t> bits);
BitVec unpack(std::uint64_t value, std::size_t len);

BitVec xor_bits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
std::size_t weight(std::span<const std::uint8_t> bits);

/// MSB-first hex with zero padding on the right of the last nibble.
std::string to_hex(std::span<const std::uint8_t> bits);
BitVec from_hex(std::string_view hex, std::size_t len);

std::string to_bitstring(std::span<const std::uint8_t> bits);
BitVec from_bitstring(std::string_view text);

/// Unreduced count ratio; reports print it verbatim as `num/den`.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  std::string str() const;
  double approx() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }

  /// Exact comparison against 2^-exponent.
  bool at_least_pow2(unsigned exponent) const;
  bool at_most_pow2(unsigned exponent) const;
};

bool operator<(const Rational& a, const Rational& b);
bool operator<=(const Rational& a, const Rational& b);
bool same_value(const Rational& a, const Rational& b);

/// Seeded mt19937_64 stream. Only raw engine output is consumed so results
/// are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::uint8_t bit() { return static_cast<std::uint8_t>(engine_() >> 63); }
  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);
  BitVec bits(std::size_t len);

 private:
  std::mt19937_64 engine_;
};

/// Per-trial stream seed for shared-nothing parallel trials.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) { return seed + index; }

/// ceil(log2(x)) for x >= 1.
unsigned ceil_log2(std::uint64_t x);

}  // namespace avoidforge
