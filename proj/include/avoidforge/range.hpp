#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "avoidforge/gf2core.hpp"

namespace avoidforge {

/// Full image of a circuit with at most 24 inputs and at most 64 outputs,
/// indexed for membership and preimage queries. Values are packed MSB-first.
class RangeTable {
 public:
  explicit RangeTable(const Gf2Circuit& c);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }

  bool contains(std::uint64_t y) const;
  bool contains(std::span<const std::uint8_t> y) const;

  /// Lexicographically first preimage.
  std::optional<std::uint64_t> first_preimage(std::uint64_t y) const;
  /// All preimages in increasing order.
  std::vector<std::uint64_t> preimages(std::uint64_t y) const;

  /// Distinct range points in increasing order.
  std::vector<std::uint64_t> points() const;
  /// Smallest value outside the range, if any (m <= 63).
  std::optional<std::uint64_t> smallest_missing() const;

  const std::vector<std::uint64_t>& image() const { return image_; }

 private:
  std::size_t n_, m_;
  std::vector<std::uint64_t> image_;                             // image_[x] = C(x)
  std::vector<std::pair<std::uint64_t, std::uint64_t>> sorted_;  // (y, x) sorted
};

}  // namespace avoidforge
