#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "avoidforge/avoidinst.hpp"
#include "avoidforge/bits.hpp"
#include "avoidforge/extract.hpp"
#include "avoidforge/gf2core.hpp"
#include "avoidforge/range.hpp"

namespace avoidforge {

struct GameRound {
  BitVec y;
  std::optional<BitVec> q;  // teacher's preimage; absent when y avoids the range

  bool operator==(const GameRound&) const = default;
};

struct GameTrace {
  std::string instance;
  std::vector<GameRound> rounds;
  bool student_wins = false;
  std::size_t win_round = 0;  // 1-based

  /// `round=<i> y=<hex> q=<hex|NONE>` lines and `outcome=WIN <r>` or `outcome=LOSE`.
  std::string log() const;
};

/// Deterministic student algorithm: round is 1-based, responses are the
/// teacher's earlier preimages.
using StudentFn = std::function<BitVec(std::size_t round, const Gf2Circuit& c, std::span<const BitVec> responses)>;

struct StudentHandle {
  enum class Kind { Constant, Lex, Random, BruteForce, Circuits };
  Kind kind = Kind::Lex;
  std::vector<BitVec> constants;
  std::vector<Gf2Circuit> circuits;  // B_i reads (i-1) n response bits
  std::uint64_t seed = 0;
  AvoidSolver solver = brute_force_avoid;

  BitVec propose(std::size_t round, const Gf2Circuit& c, std::span<const BitVec> responses) const;
  StudentFn as_function() const;
  /// Most rounds the handle can play (unbounded kinds report SIZE_MAX).
  std::size_t max_rounds() const;
};

StudentHandle constant_student(std::vector<BitVec> ys);
/// Round i proposes i-1 written on m bits.
StudentHandle lex_student();
StudentHandle random_student(std::uint64_t seed);
StudentHandle bruteforce_student(AvoidSolver solver = brute_force_avoid);
StudentHandle circuit_student(std::vector<Gf2Circuit> circuits);

/// Circuit with `n` inputs whose outputs are the constant y.
Gf2Circuit constant_circuit(std::size_t n, std::span<const std::uint8_t> y);

struct TeacherHandle {
  enum class Kind { LexFirst, SeededRandom };
  Kind kind = Kind::LexFirst;
  std::uint64_t seed = 0;

  /// A preimage of y under the table's circuit, or none.
  std::optional<BitVec> respond(const RangeTable& table, std::span<const std::uint8_t> y, std::size_t round) const;
};

/// Plays k rounds; the student wins at the first proposal outside Range(c).
GameTrace run_game(const Gf2Circuit& c, const StudentHandle& student, const TeacherHandle& teacher, std::size_t k);

/// True iff the student wins within k rounds whatever preimages the teacher picks.
bool student_wins_all_teachers(const Gf2Circuit& c, const StudentHandle& student, std::size_t k);

/// C_r(s_i) = A(i, C_r, s_1..s_{i-1}) for every i, with C_r = compose(G, key).
bool validate_trace(const StudentFn& A, const Gf2Circuit& G, const ExtractorKey& key, std::span<const BitVec> trace);

struct ProbabilityEstimate {
  Rational p;
  bool exhaustive = false;
};

/// Fraction of keys (N = G.m, output m) on which the trace is valid.
ProbabilityEstimate trace_success_probability(const StudentFn& A, const Gf2Circuit& G, std::size_t m, const Sampling& keys,
                                              std::span<const BitVec> trace);

/// Hash length used by gs_setsize_protocol: 0 for s = 1, else ceil(log2 s) + 1.
std::size_t gs_hash_length(std::uint64_t s);

struct GsOutcome {
  bool accept = false;
  std::uint64_t successes = 0;
  std::uint64_t reps = 0;
  std::size_t hash_length = 0;
};

/// Set lower-bound protocol for S = {x : C(x) = 1}. Each repetition draws a
/// Toeplitz hash to l bits and a target v; the honest prover answers with an
/// element of S hashing to v. Accepts iff the success count reaches 5/8 of
/// the rate s / 2^l expected at |S| = s. hash_length overrides l.
GsOutcome gs_setsize_protocol(const Gf2Circuit& pred, std::uint64_t s, std::uint64_t reps, std::uint64_t seed,
                              std::optional<std::size_t> hash_length = std::nullopt);

enum class TrialVerdict { Accept, Reject, Inconclusive };
const char* to_string(TrialVerdict v);

struct AmTrial {
  TrialVerdict verdict = TrialVerdict::Inconclusive;
  ProbabilityEstimate p;
};

/// p = Pr_key[prefix valid and T_key y = A(j, C_key, prefix)]; accept at
/// p >= 2^-((2j-1)m+1), reject at p <= 2^-((2j-1)m+2).
AmTrial am_round_trial(const StudentFn& A, const Gf2Circuit& G, std::size_t m, const Sampling& keys, std::size_t j,
                       std::span<const BitVec> prefix, std::span<const std::uint8_t> y);

}  // namespace avoidforge
