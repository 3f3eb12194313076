#include "avoidforge/range.hpp"

#include <algorithm>

#include "avoidforge/error.hpp"
#include "avoidforge/kernels.hpp"

namespace avoidforge {

RangeTable::RangeTable(const Gf2Circuit& c) : n_(c.n), m_(c.m), image_(kernels::output_table(c)) {
  sorted_.reserve(image_.size());
  for (std::uint64_t x = 0; x < image_.size(); ++x) sorted_.emplace_back(image_[x], x);
  std::sort(sorted_.begin(), sorted_.end());
}

bool RangeTable::contains(std::uint64_t y) const {
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), std::pair<std::uint64_t, std::uint64_t>{y, 0});
  return it != sorted_.end() && it->first == y;
}

bool RangeTable::contains(std::span<const std::uint8_t> y) const {
  if (y.size() != m_) throw Error(ErrorKind::LengthMismatch, "range query of wrong length");
  return contains(pack(y));
}

std::optional<std::uint64_t> RangeTable::first_preimage(std::uint64_t y) const {
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), std::pair<std::uint64_t, std::uint64_t>{y, 0});
  if (it == sorted_.end() || it->first != y) return std::nullopt;
  return it->second;
}

std::vector<std::uint64_t> RangeTable::preimages(std::uint64_t y) const {
  std::vector<std::uint64_t> out;
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), std::pair<std::uint64_t, std::uint64_t>{y, 0});
  for (; it != sorted_.end() && it->first == y; ++it) out.push_back(it->second);
  return out;
}

std::vector<std::uint64_t> RangeTable::points() const {
  std::vector<std::uint64_t> out;
  for (const auto& [y, x] : sorted_)
    if (out.empty() || out.back() != y) out.push_back(y);
  return out;
}

std::optional<std::uint64_t> RangeTable::smallest_missing() const {
  if (m_ > 63) throw Error(ErrorKind::BudgetExceeded, "smallest_missing needs m <= 63");
  std::uint64_t expect = 0;
  for (const auto& [y, x] : sorted_) {
    if (y > expect) return expect;
    if (y == expect) ++expect;
  }
  if (expect < (std::uint64_t{1} << m_)) return expect;
  return std::nullopt;
}

}  // namespace avoidforge
