#pragma once

// Data-parallel inner loops. Every kernel has an OpenMP implementation in
// avoidforge::kernels and a plain loop in avoidforge::kernels::serial that is
// kept as the reference the tests compare against. Results are integer
// reductions, so they do not depend on the thread schedule.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "avoidforge/gf2core.hpp"

namespace avoidforge::kernels {

/// Largest input count accepted by the exhaustive kernels.
inline constexpr std::size_t kMaxEnumInputs = 24;

/// Packed output (MSB-first) for every packed input u in [0, 2^n). Needs
/// n <= kMaxEnumInputs and m <= 64.
std::vector<std::uint64_t> output_table(const Gf2Circuit& c);

/// Packed output of one packed input; n <= 64, m <= 64.
std::uint64_t eval_packed(const Gf2Circuit& c, std::uint64_t x);

/// Number of i in [0, count) with pred(i). pred must be safe to call
/// concurrently.
std::uint64_t count_if(std::uint64_t count, const std::function<bool(std::uint64_t)>& pred);

/// Toeplitz rows as MSB-first masks over the N input bits, from a packed
/// diagonal word (bit k of `diag_word` = diag[k]). N + m - 1 <= 64.
std::vector<std::uint64_t> toeplitz_rows(std::uint64_t diag_word, std::size_t N, std::size_t m);
std::uint64_t apply_rows(std::span<const std::uint64_t> rows, std::uint64_t y);

/// For every nonzero z in {0,1}^N, the number of keys with T z = 0; entry 0
/// is unused. Enumerates all 2^(N+m-1) keys.
std::vector<std::uint64_t> toeplitz_kernel_counts(std::size_t N, std::size_t m);

/// Sum over keys of sum_out |count_out * 2^m - |support||, where count_out is
/// the number of support points hashed to `out` by that key. Dividing by
/// 2 * |support| * 2^m * keys gives the mean statistical distance.
/// Key k counts weights[k] times when weights is non-empty.
std::uint64_t extraction_l1_sum(std::size_t N, std::size_t m, std::span<const std::uint64_t> support,
                                std::span<const std::uint64_t> diag_words, std::span<const std::uint64_t> weights = {});

/// True iff every z in {0,1}^m has some shift s with z ^ s in the member table.
bool shifts_cover(std::size_t m, std::span<const std::uint8_t> member, std::span<const std::uint64_t> shifts);

namespace serial {

std::vector<std::uint64_t> output_table(const Gf2Circuit& c);
std::uint64_t count_if(std::uint64_t count, const std::function<bool(std::uint64_t)>& pred);
std::vector<std::uint64_t> toeplitz_kernel_counts(std::size_t N, std::size_t m);
std::uint64_t extraction_l1_sum(std::size_t N, std::size_t m, std::span<const std::uint64_t> support,
                                std::span<const std::uint64_t> diag_words, std::span<const std::uint64_t> weights = {});
bool shifts_cover(std::size_t m, std::span<const std::uint8_t> member, std::span<const std::uint64_t> shifts);

}  // namespace serial

}  // namespace avoidforge::kernels
