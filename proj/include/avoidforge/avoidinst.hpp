#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "avoidforge/bits.hpp"
#include "avoidforge/extract.hpp"
#include "avoidforge/gf2core.hpp"

namespace avoidforge {

struct AvoidInstance {
  enum class Provenance { Raw, Composed, Ilango };
  Gf2Circuit circuit;
  Provenance provenance = Provenance::Raw;
  std::optional<ExtractorKey> key;  // Composed
  std::vector<BitVec> shifts;       // Ilango
};

const char* to_string(AvoidInstance::Provenance p);

/// C_r(s) = T_r G(s).
AvoidInstance compose_instance(const Gf2Circuit& G, const ExtractorKey& key);

/// C(x, i) = G(x) xor s_{i mod t}, with i on ceil(log2 t) bits after x.
AvoidInstance ilango_instance(const Gf2Circuit& G, std::span<const BitVec> shifts);

/// Deterministic Avoid solver plugged into adversaries and students.
using AvoidSolver = std::function<BitVec(const Gf2Circuit&)>;

/// Lexicographically smallest string outside Range(c); n <= 24, m <= 63.
BitVec brute_force_avoid(const Gf2Circuit& c);

struct Sampling {
  bool exhaustive = false;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
};

struct AdversaryVerdict {
  bool accepted = false;
  std::optional<ExtractorKey> witness;
};

/// Simulates the nondeterministic adversary "exists key r with A(C_r) = T_r y"
/// over a fixed key list. Sampled key t uses seed + t, so the key list for a
/// larger count extends the smaller one.
class ComposeAdversary {
 public:
  ComposeAdversary(const Gf2Circuit& G, std::size_t m, const AvoidSolver& solver, const Sampling& keys);

  AdversaryVerdict accepts(std::span<const std::uint8_t> y) const;
  std::size_t key_count() const { return keys_.size(); }

 private:
  std::size_t N_;
  std::vector<ExtractorKey> keys_;
  std::vector<std::vector<std::uint64_t>> rows_;  // Toeplitz rows per key
  std::vector<std::uint64_t> answers_;            // packed A(C_r) per key
};

AdversaryVerdict adversary_accepts(const Gf2Circuit& G, const AvoidSolver& solver, std::size_t m, const Sampling& keys,
                                   std::span<const std::uint8_t> y);

/// Simulates "exists shifts s_1..s_t and i with A(C_s) = s_i xor y" over
/// sampled shift tuples (tuple j drawn from seed + j).
class IlangoAdversary {
 public:
  IlangoAdversary(const Gf2Circuit& G, const AvoidSolver& solver, std::size_t t, const Sampling& tuples);

  bool accepts(std::span<const std::uint8_t> y) const;
  /// t below 30 m, the count the covering argument asks for.
  bool reduced_t() const { return reduced_t_; }

 private:
  std::size_t m_;
  bool reduced_t_;
  std::unordered_set<std::uint64_t> accepted_;
};

bool ilango_adversary_accepts(const Gf2Circuit& G, const AvoidSolver& solver, std::size_t t,
                              std::span<const std::uint8_t> y, const Sampling& tuples);

using Adversary = std::function<bool(std::span<const std::uint8_t>)>;

struct BreakReport {
  Rational accept_rate_uniform;
  std::uint64_t accepts_on_range = 0;
  std::uint64_t range_points_tested = 0;
  bool y_exhaustive = false;
  std::uint64_t y_seed = 0;
};

/// Exact on-range count over every distinct point of Range(G) (n <= 20) and
/// the uniform acceptance rate, exhaustive (m <= 24) or sampled. The
/// adversary is called concurrently.
BreakReport demi_break_report(const Gf2Circuit& G, const Adversary& adv, const Sampling& ys);

/// True iff every z in {0,1}^m has some i with z xor s_i in R. `declared_size`
/// must equal |R|. m <= 16.
bool lautemann_cover_check(const std::function<bool(std::uint64_t)>& member, std::uint64_t declared_size,
                           std::size_t m, std::span<const BitVec> shifts);

/// Uniformly random subset of {0,1}^m of the given size, as a membership table.
std::vector<std::uint8_t> random_dense_set(std::size_t m, std::uint64_t size, std::uint64_t seed);

}  // namespace avoidforge
