#include "avoidforge/extract.hpp"

#include <algorithm>
#include <sstream>

#include "avoidforge/error.hpp"
#include "avoidforge/kernels.hpp"

namespace avoidforge {

std::uint64_t ExtractorKey::diag_word() const {
  if (diag.size() > 64) throw Error(ErrorKind::BudgetExceeded, "diagonal longer than 64 bits");
  std::uint64_t w = 0;
  for (std::size_t k = 0; k < diag.size(); ++k) w |= static_cast<std::uint64_t>(diag[k] & 1u) << k;
  return w;
}

ExtractorKey ExtractorKey::from_diag_word(std::size_t N, std::size_t m, std::uint64_t word) {
  ExtractorKey key{N, m, BitVec(N + m - 1)};
  for (std::size_t k = 0; k < key.diag.size(); ++k) key.diag[k] = static_cast<std::uint8_t>((word >> k) & 1u);
  return key;
}

LhlParams lhl_params(std::size_t m) {
  if (m == 0) throw Error(ErrorKind::BadArgument, "lhl_params needs m >= 1");
  LhlParams p;
  p.m = m;
  p.N_min = 3 * m + 3;
  p.d_min = 2 * p.N_min;
  p.k = p.N_min - 1;
  p.eps_exponent = static_cast<unsigned>(m + 1);
  return p;
}

ExtractorKey sample_key(std::size_t N, std::size_t m, std::uint64_t seed) {
  if (m == 0 || N == 0 || m > N)
    throw Error(ErrorKind::BadDims, "extractor needs 1 <= m <= N, got N=" + std::to_string(N) + " m=" + std::to_string(m));
  Rng rng(seed);
  return ExtractorKey{N, m, rng.bits(N + m - 1)};
}

BitVec toeplitz_apply(const ExtractorKey& key, std::span<const std::uint8_t> y) {
  if (y.size() != key.N)
    throw Error(ErrorKind::LengthMismatch, "extractor input has " + std::to_string(y.size()) + " bits, key expects " + std::to_string(key.N));
  if (key.diag.size() + 1 != key.N + key.m) throw Error(ErrorKind::BadDims, "diagonal length must be N + m - 1");
  BitVec out(key.m, 0);
  for (std::size_t i = 0; i < key.m; ++i) {
    std::uint8_t acc = 0;
    for (std::size_t j = 0; j < key.N; ++j) acc ^= key.entry(i, j) & y[j];
    out[i] = acc;
  }
  return out;
}

std::vector<XorRow> key_to_xor_rows(const ExtractorKey& key) {
  std::vector<XorRow> rows(key.m);
  for (std::size_t i = 0; i < key.m; ++i)
    for (std::size_t j = 0; j < key.N; ++j)
      if (key.entry(i, j)) rows[i].indices.push_back(static_cast<std::uint32_t>(j));
  return rows;
}

Rational universality_scan(std::size_t N, std::size_t m) {
  if (m == 0 || N == 0) throw Error(ErrorKind::BadDims, "universality_scan needs N, m >= 1");
  if (N + m - 1 > 16) throw Error(ErrorKind::BudgetExceeded, "universality_scan needs N + m - 1 <= 16");
  // Pr[T y = T y'] = Pr[T z = 0] for z = y ^ y', so scanning nonzero z covers all pairs.
  auto counts = kernels::toeplitz_kernel_counts(N, m);
  std::uint64_t worst = 0;
  for (std::size_t z = 1; z < counts.size(); ++z) worst = std::max(worst, counts[z]);
  return Rational{worst, std::uint64_t{1} << (N + m - 1)};
}

DistanceEstimate extraction_distance_estimate(std::size_t N, std::size_t m, std::span<const std::uint64_t> support,
                                              std::uint64_t trials, std::uint64_t seed) {
  if (support.empty()) throw Error(ErrorKind::EmptySupport, "source support is empty");
  if (N > 64 || N + m - 1 > 64 || m > 24) throw Error(ErrorKind::BudgetExceeded, "estimate needs N + m - 1 <= 64, m <= 24");
  std::vector<std::uint64_t> diags(trials);
  for (std::uint64_t t = 0; t < trials; ++t) diags[t] = sample_key(N, m, trial_seed(seed, t)).diag_word();
  // Repeated keys are evaluated once and weighted by multiplicity.
  std::sort(diags.begin(), diags.end());
  std::vector<std::uint64_t> uniq, mult;
  for (auto d : diags) {
    if (!uniq.empty() && uniq.back() == d) ++mult.back();
    else {
      uniq.push_back(d);
      mult.push_back(1);
    }
  }
  const std::uint64_t l1 = kernels::extraction_l1_sum(N, m, support, uniq, mult);
  const std::uint64_t den = 2 * static_cast<std::uint64_t>(support.size()) * (std::uint64_t{1} << m) * trials;
  return DistanceEstimate{Rational{l1, den}, trials};
}

std::string emit_key(const ExtractorKey& key) {
  std::ostringstream os;
  os << "toeplitz N=" << key.N << " m=" << key.m << " diag=" << to_hex(key.diag) << "\n";
  return os.str();
}

ExtractorKey parse_key(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string tag, n_tok, m_tok, d_tok;
  if (!(is >> tag >> n_tok >> m_tok >> d_tok) || tag != "toeplitz" || n_tok.rfind("N=", 0) != 0 ||
      m_tok.rfind("m=", 0) != 0 || d_tok.rfind("diag=", 0) != 0)
    throw Error(ErrorKind::SyntaxError, "expected 'toeplitz N=<N> m=<m> diag=<hex>'", 1);
  ExtractorKey key;
  try {
    key.N = std::stoul(n_tok.substr(2));
    key.m = std::stoul(m_tok.substr(2));
  } catch (const std::exception&) {
    throw Error(ErrorKind::SyntaxError, "bad key dimensions", 1);
  }
  if (key.m == 0 || key.m > key.N) throw Error(ErrorKind::BadDims, "key needs 1 <= m <= N", 1);
  key.diag = from_hex(d_tok.substr(5), key.N + key.m - 1);
  return key;
}

}  // namespace avoidforge
