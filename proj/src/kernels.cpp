#include "avoidforge/kernels.hpp"

#include <bit>
#include <exception>

#include "avoidforge/error.hpp"

namespace avoidforge::kernels {

namespace {

void check_enumerable(const Gf2Circuit& c) {
  if (c.n > kMaxEnumInputs)
    throw Error(ErrorKind::BudgetExceeded, "circuit has " + std::to_string(c.n) + " inputs; enumeration limit is " +
                                               std::to_string(kMaxEnumInputs));
  if (c.m > 64) throw Error(ErrorKind::BudgetExceeded, "packed outputs need m <= 64");
}

// Evaluates 64 consecutive inputs base..base+63 at once, one lane per input.
void eval_block(const Gf2Circuit& c, std::uint64_t base, std::vector<std::uint64_t>& words, std::uint64_t* out,
                std::uint64_t lanes) {
  for (std::size_t g = 0; g < c.gates.size(); ++g) {
    const Gate& gate = c.gates[g];
    std::uint64_t w = 0;
    switch (gate.op) {
      case Op::Input: {
        const std::size_t shift = c.n - 1 - gate.a;
        for (std::uint64_t t = 0; t < lanes; ++t) w |= (((base + t) >> shift) & 1u) << t;
        break;
      }
      case Op::Const: w = gate.a ? ~std::uint64_t{0} : 0; break;
      case Op::Not: w = ~words[gate.a]; break;
      case Op::And: w = words[gate.a] & words[gate.b]; break;
      case Op::Or: w = words[gate.a] | words[gate.b]; break;
      case Op::Xor: w = words[gate.a] ^ words[gate.b]; break;
    }
    words[g] = w;
  }
  for (std::uint64_t t = 0; t < lanes; ++t) {
    std::uint64_t y = 0;
    for (std::size_t o = 0; o < c.m; ++o) y = (y << 1) | ((words[c.outputs[o]] >> t) & 1u);
    out[t] = y;
  }
}

}  // namespace

std::vector<std::uint64_t> output_table(const Gf2Circuit& c) {
  check_enumerable(c);
  const std::uint64_t total = std::uint64_t{1} << c.n;
  std::vector<std::uint64_t> table(total);
  const auto blocks = static_cast<std::int64_t>((total + 63) / 64);
#pragma omp parallel
  {
    std::vector<std::uint64_t> words(c.gates.size());
#pragma omp for schedule(static)
    for (std::int64_t blk = 0; blk < blocks; ++blk) {
      const std::uint64_t base = static_cast<std::uint64_t>(blk) * 64;
      const std::uint64_t lanes = std::min<std::uint64_t>(64, total - base);
      eval_block(c, base, words, table.data() + base, lanes);
    }
  }
  return table;
}

std::uint64_t eval_packed(const Gf2Circuit& c, std::uint64_t x) {
  if (c.n > 64 || c.m > 64) throw Error(ErrorKind::BudgetExceeded, "eval_packed needs n, m <= 64");
  std::vector<std::uint64_t> words(c.gates.size());
  std::uint64_t out = 0;
  // One lane: reuse the block evaluator with base = x.
  eval_block(c, x, words, &out, 1);
  return out;
}

std::uint64_t count_if(std::uint64_t count, const std::function<bool(std::uint64_t)>& pred) {
  std::uint64_t hits = 0;
  const auto n = static_cast<std::int64_t>(count);
  // Exceptions may not cross the parallel region; keep the first and rethrow.
  std::exception_ptr failure;
#pragma omp parallel for reduction(+ : hits) schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      if (pred(static_cast<std::uint64_t>(i))) ++hits;
    } catch (...) {
#pragma omp critical(avoidforge_count_if)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return hits;
}

std::vector<std::uint64_t> toeplitz_rows(std::uint64_t diag_word, std::size_t N, std::size_t m) {
  // T[i][j] = diag[i - j + N - 1]; column j sits at mask position N-1-j.
  std::vector<std::uint64_t> rows(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if ((diag_word >> (i + N - 1 - j)) & 1u) rows[i] |= std::uint64_t{1} << (N - 1 - j);
  return rows;
}

std::uint64_t apply_rows(std::span<const std::uint64_t> rows, std::uint64_t y) {
  std::uint64_t out = 0;
  for (auto r : rows) out = (out << 1) | static_cast<std::uint64_t>(std::popcount(r & y) & 1);
  return out;
}

std::vector<std::uint64_t> toeplitz_kernel_counts(std::size_t N, std::size_t m) {
  const std::uint64_t zs = std::uint64_t{1} << N;
  const auto keys = static_cast<std::int64_t>(std::uint64_t{1} << (N + m - 1));
  std::vector<std::uint64_t> counts(zs, 0);
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(zs, 0);
#pragma omp for schedule(static)
    for (std::int64_t k = 0; k < keys; ++k) {
      auto rows = toeplitz_rows(static_cast<std::uint64_t>(k), N, m);
      for (std::uint64_t z = 1; z < zs; ++z)
        if (apply_rows(rows, z) == 0) ++local[z];
    }
#pragma omp critical
    for (std::uint64_t z = 0; z < zs; ++z) counts[z] += local[z];
  }
  return counts;
}

namespace {

std::uint64_t key_l1(std::size_t N, std::size_t m, std::span<const std::uint64_t> support, std::uint64_t diag,
                     std::vector<std::uint64_t>& hist) {
  auto rows = toeplitz_rows(diag, N, m);
  std::fill(hist.begin(), hist.end(), 0);
  for (auto x : support) ++hist[apply_rows(rows, x)];
  const std::uint64_t s = support.size();
  std::uint64_t sum = 0;
  for (auto h : hist) {
    const std::uint64_t scaled = h << m;
    sum += scaled > s ? scaled - s : s - scaled;
  }
  return sum;
}

}  // namespace

std::uint64_t extraction_l1_sum(std::size_t N, std::size_t m, std::span<const std::uint64_t> support,
                                std::span<const std::uint64_t> diag_words, std::span<const std::uint64_t> weights) {
  if (!weights.empty() && weights.size() != diag_words.size()) throw Error(ErrorKind::DimMismatch, "one weight per key");
  std::uint64_t total = 0;
  const auto keys = static_cast<std::int64_t>(diag_words.size());
#pragma omp parallel reduction(+ : total)
  {
    std::vector<std::uint64_t> hist(std::size_t{1} << m);
#pragma omp for schedule(static)
    for (std::int64_t k = 0; k < keys; ++k) {
      const auto i = static_cast<std::size_t>(k);
      total += key_l1(N, m, support, diag_words[i], hist) * (weights.empty() ? 1 : weights[i]);
    }
  }
  return total;
}

bool shifts_cover(std::size_t m, std::span<const std::uint8_t> member, std::span<const std::uint64_t> shifts) {
  const auto zs = static_cast<std::int64_t>(std::uint64_t{1} << m);
  std::uint64_t uncovered = 0;
#pragma omp parallel for reduction(+ : uncovered) schedule(static)
  for (std::int64_t z = 0; z < zs; ++z) {
    bool hit = false;
    for (auto s : shifts)
      if (member[static_cast<std::uint64_t>(z) ^ s]) {
        hit = true;
        break;
      }
    if (!hit) ++uncovered;
  }
  return uncovered == 0;
}

// ---------------------------------------------------------------------------

namespace serial {

std::vector<std::uint64_t> output_table(const Gf2Circuit& c) {
  check_enumerable(c);
  const std::uint64_t total = std::uint64_t{1} << c.n;
  std::vector<std::uint64_t> table(total);
  for (std::uint64_t u = 0; u < total; ++u) table[u] = pack(eval_circuit(c, unpack(u, c.n)));
  return table;
}

std::uint64_t count_if(std::uint64_t count, const std::function<bool(std::uint64_t)>& pred) {
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < count; ++i)
    if (pred(i)) ++hits;
  return hits;
}

std::vector<std::uint64_t> toeplitz_kernel_counts(std::size_t N, std::size_t m) {
  const std::uint64_t zs = std::uint64_t{1} << N;
  const std::uint64_t keys = std::uint64_t{1} << (N + m - 1);
  std::vector<std::uint64_t> counts(zs, 0);
  for (std::uint64_t k = 0; k < keys; ++k) {
    // Direct matrix-vector product from the diagonal definition.
    for (std::uint64_t z = 1; z < zs; ++z) {
      bool zero = true;
      for (std::size_t i = 0; i < m && zero; ++i) {
        unsigned acc = 0;
        for (std::size_t j = 0; j < N; ++j) {
          const unsigned zj = (z >> (N - 1 - j)) & 1u;
          const unsigned tij = (k >> (i + N - 1 - j)) & 1u;
          acc ^= zj & tij;
        }
        if (acc) zero = false;
      }
      if (zero) ++counts[z];
    }
  }
  return counts;
}

std::uint64_t extraction_l1_sum(std::size_t N, std::size_t m, std::span<const std::uint64_t> support,
                                std::span<const std::uint64_t> diag_words, std::span<const std::uint64_t> weights) {
  if (!weights.empty() && weights.size() != diag_words.size()) throw Error(ErrorKind::DimMismatch, "one weight per key");
  std::vector<std::uint64_t> hist(std::size_t{1} << m);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < diag_words.size(); ++i)
    total += key_l1(N, m, support, diag_words[i], hist) * (weights.empty() ? 1 : weights[i]);
  return total;
}

bool shifts_cover(std::size_t m, std::span<const std::uint8_t> member, std::span<const std::uint64_t> shifts) {
  for (std::uint64_t z = 0; z < (std::uint64_t{1} << m); ++z) {
    bool hit = false;
    for (auto s : shifts) hit = hit || member[z ^ s];
    if (!hit) return false;
  }
  return true;
}

}  // namespace serial

}  // namespace avoidforge::kernels
