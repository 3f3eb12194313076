#include "avoidforge/avoidinst.hpp"

#include <algorithm>
#include <numeric>

#include "avoidforge/error.hpp"
#include "avoidforge/kernels.hpp"
#include "avoidforge/range.hpp"

namespace avoidforge {

const char* to_string(AvoidInstance::Provenance p) {
  switch (p) {
    case AvoidInstance::Provenance::Raw: return "RAW";
    case AvoidInstance::Provenance::Composed: return "COMPOSED";
    case AvoidInstance::Provenance::Ilango: return "ILANGO";
  }
  return "?";
}

AvoidInstance compose_instance(const Gf2Circuit& G, const ExtractorKey& key) {
  if (key.N != G.m) throw Error(ErrorKind::DimMismatch, "key has N=" + std::to_string(key.N) + " but G has m=" + std::to_string(G.m));
  if (key.m <= G.n)
    throw Error(ErrorKind::NotStretching, "key output length " + std::to_string(key.m) + " does not exceed n=" + std::to_string(G.n));
  auto rows = key_to_xor_rows(key);
  AvoidInstance inst;
  inst.circuit = append_linear_layer(G, rows);
  inst.circuit.name = G.name + "_ext";
  inst.provenance = AvoidInstance::Provenance::Composed;
  inst.key = key;
  return inst;
}

AvoidInstance ilango_instance(const Gf2Circuit& G, std::span<const BitVec> shifts) {
  const std::size_t t = shifts.size();
  if (t == 0) throw Error(ErrorKind::BadArgument, "need at least one shift");
  for (const auto& s : shifts)
    if (s.size() != G.m) throw Error(ErrorKind::LengthMismatch, "shifts must have m bits");
  const std::size_t L = ceil_log2(t);
  if (G.m <= G.n + L)
    throw Error(ErrorKind::StretchViolation, "m=" + std::to_string(G.m) + " must exceed n + ceil(log2 t) = " + std::to_string(G.n + L));

  CircuitBuilder b(G.name + "_shifted", G.n + L);
  std::vector<GateId> x(G.n), idx(L);
  for (std::size_t i = 0; i < G.n; ++i) x[i] = b.input(i);
  for (std::size_t k = 0; k < L; ++k) idx[k] = b.input(G.n + k);
  auto g_out = b.inline_circuit(G, x);

  // eq[u] is 1 iff the index bits spell u (MSB first).
  const std::size_t slots = std::size_t{1} << L;
  std::vector<GateId> eq;
  if (L > 0) {
    std::vector<GateId> neg(L);
    for (std::size_t k = 0; k < L; ++k) neg[k] = b.not_(idx[k]);
    eq.resize(slots);
    for (std::size_t u = 0; u < slots; ++u) {
      auto lit = [&](std::size_t k) { return ((u >> (L - 1 - k)) & 1u) ? idx[k] : neg[k]; };
      GateId acc = lit(0);
      for (std::size_t k = 1; k < L; ++k) acc = b.and_(acc, lit(k));
      eq[u] = acc;
    }
  }
  std::vector<GateId> outs(G.m);
  for (std::size_t j = 0; j < G.m; ++j) {
    std::optional<GateId> sel;
    if (L == 0) {
      sel = b.constant(shifts[0][j] != 0);
    } else {
      for (std::size_t u = 0; u < slots; ++u)
        if (shifts[u % t][j]) sel = sel ? b.xor_(*sel, eq[u]) : eq[u];
      if (!sel) sel = b.constant(false);
    }
    outs[j] = b.xor_(g_out[j], *sel);
  }
  AvoidInstance inst;
  inst.circuit = std::move(b).finish(std::move(outs));
  inst.provenance = AvoidInstance::Provenance::Ilango;
  inst.shifts.assign(shifts.begin(), shifts.end());
  return inst;
}

BitVec brute_force_avoid(const Gf2Circuit& c) {
  if (c.n > kernels::kMaxEnumInputs) throw Error(ErrorKind::BudgetExceeded, "brute-force avoid needs n <= 24");
  if (c.m > 63) throw Error(ErrorKind::BudgetExceeded, "brute-force avoid needs m <= 63");
  RangeTable table(c);
  auto y = table.smallest_missing();
  if (!y) throw Error(ErrorKind::BadArgument, "circuit is surjective; nothing to avoid");
  // Recheck against the raw image, independent of the sorted index.
  for (auto v : table.image())
    if (v == *y) throw Error(ErrorKind::BadArgument, "internal: avoid answer lies in the range");
  return unpack(*y, c.m);
}

// ---------------------------------------------------------------------------

ComposeAdversary::ComposeAdversary(const Gf2Circuit& G, std::size_t m, const AvoidSolver& solver, const Sampling& keys)
    : N_(G.m) {
  if (N_ + m - 1 > 64) throw Error(ErrorKind::BudgetExceeded, "keys limited to N + m - 1 <= 64");
  if (keys.exhaustive) {
    if (N_ + m - 1 > 24) throw Error(ErrorKind::BudgetExceeded, "exhaustive keys need N + m - 1 <= 24");
    const std::uint64_t total = std::uint64_t{1} << (N_ + m - 1);
    for (std::uint64_t w = 0; w < total; ++w) keys_.push_back(ExtractorKey::from_diag_word(N_, m, w));
  } else {
    for (std::uint64_t t = 0; t < keys.count; ++t) keys_.push_back(sample_key(N_, m, trial_seed(keys.seed, t)));
  }
  rows_.reserve(keys_.size());
  answers_.reserve(keys_.size());
  for (const auto& key : keys_) {
    auto inst = compose_instance(G, key);
    rows_.push_back(kernels::toeplitz_rows(key.diag_word(), N_, m));
    answers_.push_back(pack(solver(inst.circuit)));
  }
}

AdversaryVerdict ComposeAdversary::accepts(std::span<const std::uint8_t> y) const {
  if (y.size() != N_) throw Error(ErrorKind::LengthMismatch, "y must have " + std::to_string(N_) + " bits");
  const std::uint64_t packed = pack(y);
  for (std::size_t r = 0; r < keys_.size(); ++r)
    if (kernels::apply_rows(rows_[r], packed) == answers_[r]) return {true, keys_[r]};
  return {false, std::nullopt};
}

AdversaryVerdict adversary_accepts(const Gf2Circuit& G, const AvoidSolver& solver, std::size_t m, const Sampling& keys,
                                   std::span<const std::uint8_t> y) {
  return ComposeAdversary(G, m, solver, keys).accepts(y);
}

IlangoAdversary::IlangoAdversary(const Gf2Circuit& G, const AvoidSolver& solver, std::size_t t, const Sampling& tuples)
    : m_(G.m), reduced_t_(t < 30 * G.m) {
  if (m_ > 64) throw Error(ErrorKind::BudgetExceeded, "shift adversary needs m <= 64");
  for (std::uint64_t j = 0; j < tuples.count; ++j) {
    Rng rng(trial_seed(tuples.seed, j));
    std::vector<BitVec> shifts;
    shifts.reserve(t);
    for (std::size_t i = 0; i < t; ++i) shifts.push_back(rng.bits(m_));
    const std::uint64_t z = pack(solver(ilango_instance(G, shifts).circuit));
    for (const auto& s : shifts) accepted_.insert(z ^ pack(s));
  }
}

bool IlangoAdversary::accepts(std::span<const std::uint8_t> y) const {
  if (y.size() != m_) throw Error(ErrorKind::LengthMismatch, "y must have " + std::to_string(m_) + " bits");
  return accepted_.contains(pack(y));
}

bool ilango_adversary_accepts(const Gf2Circuit& G, const AvoidSolver& solver, std::size_t t,
                              std::span<const std::uint8_t> y, const Sampling& tuples) {
  return IlangoAdversary(G, solver, t, tuples).accepts(y);
}

BreakReport demi_break_report(const Gf2Circuit& G, const Adversary& adv, const Sampling& ys) {
  if (G.n > 20) throw Error(ErrorKind::BudgetExceeded, "on-range count needs n <= 20");
  BreakReport rep;
  RangeTable table(G);
  const auto points = table.points();
  rep.range_points_tested = points.size();
  rep.accepts_on_range =
      kernels::count_if(points.size(), [&](std::uint64_t i) { return adv(unpack(points[i], G.m)); });
  rep.y_exhaustive = ys.exhaustive;
  rep.y_seed = ys.seed;
  if (ys.exhaustive) {
    if (G.m > 24) throw Error(ErrorKind::BudgetExceeded, "exhaustive y needs m <= 24");
    const std::uint64_t total = std::uint64_t{1} << G.m;
    rep.accept_rate_uniform = {kernels::count_if(total, [&](std::uint64_t y) { return adv(unpack(y, G.m)); }), total};
  } else {
    const auto hits = kernels::count_if(ys.count, [&](std::uint64_t i) {
      Rng rng(trial_seed(ys.seed, i));
      return adv(rng.bits(G.m));
    });
    rep.accept_rate_uniform = {hits, ys.count};
  }
  return rep;
}

bool lautemann_cover_check(const std::function<bool(std::uint64_t)>& member, std::uint64_t declared_size,
                           std::size_t m, std::span<const BitVec> shifts) {
  if (m > 16) throw Error(ErrorKind::BudgetExceeded, "covering check needs m <= 16");
  const std::uint64_t total = std::uint64_t{1} << m;
  std::vector<std::uint8_t> table(total);
  std::uint64_t size = 0;
  for (std::uint64_t z = 0; z < total; ++z) size += (table[z] = member(z) ? 1 : 0);
  if (size != declared_size)
    throw Error(ErrorKind::BadArgument, "set has " + std::to_string(size) + " points, declared " + std::to_string(declared_size));
  std::vector<std::uint64_t> packed;
  packed.reserve(shifts.size());
  for (const auto& s : shifts) {
    if (s.size() != m) throw Error(ErrorKind::LengthMismatch, "shifts must have m bits");
    packed.push_back(pack(s));
  }
  return kernels::shifts_cover(m, table, packed);
}

std::vector<std::uint8_t> random_dense_set(std::size_t m, std::uint64_t size, std::uint64_t seed) {
  if (m > 24) throw Error(ErrorKind::BudgetExceeded, "dense sets limited to m <= 24");
  const std::uint64_t total = std::uint64_t{1} << m;
  if (size > total) throw Error(ErrorKind::BadArgument, "set larger than the cube");
  std::vector<std::uint64_t> perm(total);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed);
  for (std::uint64_t i = 0; i < size; ++i) std::swap(perm[i], perm[i + rng.below(total - i)]);
  std::vector<std::uint8_t> table(total, 0);
  for (std::uint64_t i = 0; i < size; ++i) table[perm[i]] = 1;
  return table;
}

}  // namespace avoidforge
