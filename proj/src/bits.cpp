#include "avoidforge/bits.hpp"

#include "avoidforge/error.hpp"

namespace avoidforge {

std::uint64_t pack(std::span<const std::uint8_t> bits) {
  if (bits.size() > 64) throw Error(ErrorKind::BudgetExceeded, "cannot pack more than 64 bits");
  std::uint64_t value = 0;
  for (auto b : bits) value = (value << 1) | (b & 1u);
  return value;
}

BitVec unpack(std::uint64_t value, std::size_t len) {
  BitVec out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = static_cast<std::uint8_t>((value >> (len - 1 - i)) & 1u);
  return out;
}

BitVec xor_bits(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::LengthMismatch, "xor of unequal lengths");
  BitVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

std::size_t weight(std::span<const std::uint8_t> bits) {
  std::size_t w = 0;
  for (auto b : bits) w += b;
  return w;
}

std::string to_hex(std::span<const std::uint8_t> bits) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    unsigned nib = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      nib <<= 1;
      if (i + k < bits.size()) nib |= bits[i + k];
    }
    out.push_back(digits[nib]);
  }
  return out;
}

BitVec from_hex(std::string_view hex, std::size_t len) {
  if (hex.size() != (len + 3) / 4)
    throw Error(ErrorKind::LengthMismatch,
                "hex string '" + std::string(hex) + "' does not encode " + std::to_string(len) + " bits");
  BitVec out(len);
  for (std::size_t c = 0; c < hex.size(); ++c) {
    char ch = hex[c];
    unsigned nib;
    if (ch >= '0' && ch <= '9') nib = static_cast<unsigned>(ch - '0');
    else if (ch >= 'a' && ch <= 'f') nib = static_cast<unsigned>(ch - 'a' + 10);
    else if (ch >= 'A' && ch <= 'F') nib = static_cast<unsigned>(ch - 'A' + 10);
    else throw Error(ErrorKind::SyntaxError, "bad hex digit '" + std::string(1, ch) + "'");
    for (std::size_t k = 0; k < 4; ++k) {
      std::size_t idx = 4 * c + k;
      std::uint8_t bit = static_cast<std::uint8_t>((nib >> (3 - k)) & 1u);
      if (idx < len) out[idx] = bit;
      else if (bit) throw Error(ErrorKind::SyntaxError, "nonzero padding in hex string");
    }
  }
  return out;
}

std::string to_bitstring(std::span<const std::uint8_t> bits) {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits) out.push_back(b ? '1' : '0');
  return out;
}

BitVec from_bitstring(std::string_view text) {
  BitVec out;
  out.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw Error(ErrorKind::SyntaxError, "bit string may only contain 0 and 1");
    out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return out;
}

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

bool Rational::at_least_pow2(unsigned exponent) const {
  // num / den >= 2^-e  <=>  num * 2^e >= den
  if (num == 0) return den == 0;
  if (exponent >= 64) return true;
  unsigned __int128 lhs = static_cast<unsigned __int128>(num) << exponent;
  return lhs >= den;
}

bool Rational::at_most_pow2(unsigned exponent) const {
  if (num == 0) return true;
  if (exponent >= 64) return false;
  unsigned __int128 lhs = static_cast<unsigned __int128>(num) << exponent;
  return lhs <= den;
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<unsigned __int128>(a.num) * b.den < static_cast<unsigned __int128>(b.num) * a.den;
}

bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }

bool same_value(const Rational& a, const Rational& b) {
  return static_cast<unsigned __int128>(a.num) * b.den == static_cast<unsigned __int128>(b.num) * a.den;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorKind::BadArgument, "Rng::below(0)");
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

BitVec Rng::bits(std::size_t len) {
  BitVec out(len);
  for (auto& b : out) b = bit();
  return out;
}

unsigned ceil_log2(std::uint64_t x) {
  if (x > (std::uint64_t{1} << 63)) return 64;
  unsigned k = 0;
  while ((std::uint64_t{1} << k) < x) ++k;
  return k;
}

}  // namespace avoidforge
