#include "avoidforge/gamesim.hpp"

#include <limits>
#include <sstream>

#include "avoidforge/error.hpp"
#include "avoidforge/kernels.hpp"

namespace avoidforge {

std::string GameTrace::log() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rounds.size(); ++i)
    os << "round=" << i + 1 << " y=" << to_hex(rounds[i].y) << " q=" << (rounds[i].q ? to_hex(*rounds[i].q) : "NONE") << "\n";
  if (student_wins) os << "outcome=WIN " << win_round << "\n";
  else os << "outcome=LOSE\n";
  return os.str();
}

BitVec StudentHandle::propose(std::size_t round, const Gf2Circuit& c, std::span<const BitVec> responses) const {
  switch (kind) {
    case Kind::Constant:
      if (round > constants.size()) throw Error(ErrorKind::IndexOutOfRange, "constant student has no proposal for round " + std::to_string(round));
      return constants[round - 1];
    case Kind::Lex:
      if (c.m > 63) throw Error(ErrorKind::BudgetExceeded, "lex student needs m <= 63");
      return unpack(round - 1, c.m);
    case Kind::Random: {
      Rng rng(trial_seed(seed, round));
      return rng.bits(c.m);
    }
    case Kind::BruteForce: return solver(c);
    case Kind::Circuits: {
      if (round > circuits.size()) throw Error(ErrorKind::IndexOutOfRange, "circuit student has no B_" + std::to_string(round));
      BitVec in;
      for (std::size_t i = 0; i + 1 < round; ++i) in.insert(in.end(), responses[i].begin(), responses[i].end());
      return eval_circuit(circuits[round - 1], in);
    }
  }
  return {};
}

StudentFn StudentHandle::as_function() const {
  return [self = *this](std::size_t round, const Gf2Circuit& c, std::span<const BitVec> responses) {
    return self.propose(round, c, responses);
  };
}

std::size_t StudentHandle::max_rounds() const {
  switch (kind) {
    case Kind::Constant: return constants.size();
    case Kind::Circuits: return circuits.size();
    default: return std::numeric_limits<std::size_t>::max();
  }
}

StudentHandle constant_student(std::vector<BitVec> ys) {
  StudentHandle s;
  s.kind = StudentHandle::Kind::Constant;
  s.constants = std::move(ys);
  return s;
}

StudentHandle lex_student() {
  StudentHandle s;
  s.kind = StudentHandle::Kind::Lex;
  return s;
}

StudentHandle random_student(std::uint64_t seed) {
  StudentHandle s;
  s.kind = StudentHandle::Kind::Random;
  s.seed = seed;
  return s;
}

StudentHandle bruteforce_student(AvoidSolver solver) {
  StudentHandle s;
  s.kind = StudentHandle::Kind::BruteForce;
  s.solver = std::move(solver);
  return s;
}

StudentHandle circuit_student(std::vector<Gf2Circuit> circuits) {
  StudentHandle s;
  s.kind = StudentHandle::Kind::Circuits;
  s.circuits = std::move(circuits);
  return s;
}

Gf2Circuit constant_circuit(std::size_t n, std::span<const std::uint8_t> y) {
  CircuitBuilder b("const", n);
  for (std::size_t i = 0; i < n; ++i) b.input(i);
  std::vector<GateId> outs;
  std::optional<GateId> zero, one;
  for (auto bit : y) {
    auto& g = bit ? one : zero;
    if (!g) g = b.constant(bit != 0);
    outs.push_back(*g);
  }
  return std::move(b).finish(std::move(outs));
}

std::optional<BitVec> TeacherHandle::respond(const RangeTable& table, std::span<const std::uint8_t> y, std::size_t round) const {
  const std::uint64_t packed = pack(y);
  if (kind == Kind::LexFirst) {
    auto x = table.first_preimage(packed);
    if (!x) return std::nullopt;
    return unpack(*x, table.n());
  }
  auto all = table.preimages(packed);
  if (all.empty()) return std::nullopt;
  Rng rng(trial_seed(seed, round));
  return unpack(all[rng.below(all.size())], table.n());
}

namespace {

void check_game_args(const Gf2Circuit& c, const StudentHandle& student, std::size_t k) {
  if (c.n > 20) throw Error(ErrorKind::BudgetExceeded, "game engine enumerates preimages; needs n <= 20");
  if (k > student.max_rounds()) throw Error(ErrorKind::BadArgument, "student supplies fewer than k rounds");
}

BitVec checked_proposal(const StudentHandle& student, std::size_t round, const Gf2Circuit& c, std::span<const BitVec> responses) {
  BitVec y = student.propose(round, c, responses);
  if (y.size() != c.m) throw Error(ErrorKind::LengthMismatch, "proposal must have m bits");
  return y;
}

}  // namespace

GameTrace run_game(const Gf2Circuit& c, const StudentHandle& student, const TeacherHandle& teacher, std::size_t k) {
  check_game_args(c, student, k);
  RangeTable table(c);
  GameTrace trace;
  trace.instance = c.name;
  std::vector<BitVec> responses;
  for (std::size_t i = 1; i <= k; ++i) {
    BitVec y = checked_proposal(student, i, c, responses);
    auto q = teacher.respond(table, y, i);
    if (!q) {
      trace.rounds.push_back({std::move(y), std::nullopt});
      trace.student_wins = true;
      trace.win_round = i;
      return trace;
    }
    if (eval_circuit(c, *q) != y) throw Error(ErrorKind::BadArgument, "internal: teacher returned a wrong preimage");
    responses.push_back(*q);
    trace.rounds.push_back({std::move(y), std::move(q)});
  }
  return trace;
}

bool student_wins_all_teachers(const Gf2Circuit& c, const StudentHandle& student, std::size_t k) {
  check_game_args(c, student, k);
  RangeTable table(c);
  std::vector<BitVec> responses;
  std::function<bool(std::size_t)> wins = [&](std::size_t round) {
    if (round > k) return false;
    BitVec y = checked_proposal(student, round, c, responses);
    for (auto x : table.preimages(pack(y))) {
      responses.push_back(unpack(x, c.n));
      const bool w = wins(round + 1);
      responses.pop_back();
      if (!w) return false;
    }
    return true;  // either no preimage, or every response still loses for the teacher
  };
  return wins(1);
}

bool validate_trace(const StudentFn& A, const Gf2Circuit& G, const ExtractorKey& key, std::span<const BitVec> trace) {
  for (const auto& s : trace)
    if (s.size() != G.n) throw Error(ErrorKind::DimMismatch, "trace entries must have n bits");
  if (trace.empty()) return true;
  const auto inst = compose_instance(G, key);
  for (std::size_t i = 0; i < trace.size(); ++i)
    if (eval_circuit(inst.circuit, trace[i]) != A(i + 1, inst.circuit, trace.subspan(0, i))) return false;
  return true;
}

namespace {

std::vector<ExtractorKey> key_list(std::size_t N, std::size_t m, const Sampling& keys) {
  std::vector<ExtractorKey> out;
  if (keys.exhaustive) {
    if (N + m - 1 > 20) throw Error(ErrorKind::BudgetExceeded, "exhaustive keys need N + m - 1 <= 20");
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << (N + m - 1)); ++w) out.push_back(ExtractorKey::from_diag_word(N, m, w));
  } else {
    if (keys.count == 0) throw Error(ErrorKind::BadArgument, "sampling needs a positive key count");
    for (std::uint64_t t = 0; t < keys.count; ++t) out.push_back(sample_key(N, m, trial_seed(keys.seed, t)));
  }
  return out;
}

}  // namespace

ProbabilityEstimate trace_success_probability(const StudentFn& A, const Gf2Circuit& G, std::size_t m, const Sampling& keys,
                                              std::span<const BitVec> trace) {
  const auto list = key_list(G.m, m, keys);
  const auto hits = kernels::count_if(list.size(), [&](std::uint64_t i) { return validate_trace(A, G, list[i], trace); });
  return {{hits, list.size()}, keys.exhaustive};
}

std::size_t gs_hash_length(std::uint64_t s) { return s <= 1 ? 0 : ceil_log2(s) + 1; }

GsOutcome gs_setsize_protocol(const Gf2Circuit& pred, std::uint64_t s, std::uint64_t reps, std::uint64_t seed,
                              std::optional<std::size_t> hash_length) {
  if (pred.m != 1) throw Error(ErrorKind::ArityMismatch, "set predicate must have one output");
  if (pred.n > 16) throw Error(ErrorKind::BudgetExceeded, "honest prover enumerates S; needs n <= 16");
  if (s == 0 || reps == 0) throw Error(ErrorKind::BadArgument, "threshold and repetitions must be positive");
  const std::size_t n = pred.n;
  const std::size_t l = hash_length.value_or(gs_hash_length(s));
  if (l > 63) throw Error(ErrorKind::BudgetExceeded, "hash length too large");
  std::vector<std::uint64_t> members;
  const auto table = kernels::output_table(pred);
  for (std::uint64_t x = 0; x < table.size(); ++x)
    if (table[x]) members.push_back(x);

  GsOutcome out;
  out.reps = reps;
  out.hash_length = l;
  out.successes = kernels::count_if(reps, [&](std::uint64_t r) {
    Rng rng(trial_seed(seed, r));
    if (l == 0) return !members.empty() && kernels::eval_packed(pred, members.front()) == 1;
    ExtractorKey key{n, l, rng.bits(n + l - 1)};
    const auto rows = kernels::toeplitz_rows(key.diag_word(), n, l);
    const std::uint64_t v = pack(rng.bits(l));
    for (auto x : members)
      if (kernels::apply_rows(rows, x) == v)  // honest prover's witness; verifier rechecks both conditions
        return kernels::eval_packed(pred, x) == 1 && kernels::apply_rows(rows, x) == v;
    return false;
  });
  // successes / reps >= (5/8) * s / 2^l
  const unsigned __int128 lhs = static_cast<unsigned __int128>(out.successes) * 8u << l;
  const unsigned __int128 rhs = static_cast<unsigned __int128>(s) * 5u * reps;
  out.accept = lhs >= rhs;
  return out;
}

const char* to_string(TrialVerdict v) {
  switch (v) {
    case TrialVerdict::Accept: return "ACCEPT";
    case TrialVerdict::Reject: return "REJECT";
    case TrialVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

AmTrial am_round_trial(const StudentFn& A, const Gf2Circuit& G, std::size_t m, const Sampling& keys, std::size_t j,
                       std::span<const BitVec> prefix, std::span<const std::uint8_t> y) {
  if (j == 0) throw Error(ErrorKind::BadArgument, "rounds are 1-based");
  if (prefix.size() != j - 1) throw Error(ErrorKind::DimMismatch, "prefix must hold j-1 entries");
  if (y.size() != G.m) throw Error(ErrorKind::LengthMismatch, "y must have G.m bits");
  const auto list = key_list(G.m, m, keys);
  const auto hits = kernels::count_if(list.size(), [&](std::uint64_t i) {
    const auto& key = list[i];
    if (!validate_trace(A, G, key, prefix)) return false;
    const auto inst = compose_instance(G, key);
    return toeplitz_apply(key, y) == A(j, inst.circuit, prefix);
  });
  AmTrial t;
  t.p = {{hits, list.size()}, keys.exhaustive};
  const unsigned e = static_cast<unsigned>((2 * j - 1) * m);
  if (t.p.p.at_least_pow2(e + 1)) t.verdict = TrialVerdict::Accept;
  else if (t.p.p.at_most_pow2(e + 2)) t.verdict = TrialVerdict::Reject;
  else t.verdict = TrialVerdict::Inconclusive;
  return t;
}

}  // namespace avoidforge
