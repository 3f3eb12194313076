#include "avoidforge/cnfenc.hpp"
#include "avoidforge/error.hpp"
#include "avoidforge/gamesim.hpp"
#include "avoidforge/gens.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace avoidforge;

namespace {

StudentFn constant_fn(BitVec w) {
  return [w](std::size_t, const Gf2Circuit&, std::span<const BitVec>) { return w; };
}

// Game-tree oracle written directly from the rules: the student loses iff some
// sequence of teacher preimages keeps every proposal inside the range.
bool loses_somehow(const Gf2Circuit& G, const std::vector<Gf2Circuit>& B, std::vector<BitVec>& qs) {
  const std::size_t i = qs.size();
  if (i == B.size()) return true;
  BitVec in;
  for (const auto& q : qs) in.insert(in.end(), q.begin(), q.end());
  const auto y = oracle::eval(B[i], in);
  for (std::uint64_t u = 0; u < (1u << G.n); ++u) {
    auto q = oracle::int_to_bits(u, G.n);
    if (oracle::eval(G, q) != y) continue;
    qs.push_back(q);
    const bool l = loses_somehow(G, B, qs);
    qs.pop_back();
    if (l) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("brute force student wins in the first round") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto G = build_planted_generator(3, 6, seed, 16);
    auto t = run_game(G, bruteforce_student(), TeacherHandle{}, 3);
    CHECK(t.student_wins);
    CHECK(t.win_round == 1);
    CHECK_FALSE(oracle::range(G).count(t.rounds[0].y));
    CHECK(t.log().find("outcome=WIN 1") != std::string::npos);
  }
}

TEST_CASE("constant student echoing G(0) never wins") {
  auto G = build_planted_generator(3, 6, 9, 16);
  const auto g0 = oracle::eval(G, BitVec(3, 0));
  auto st = constant_student({g0, g0, g0});
  for (auto kind : {TeacherHandle::Kind::LexFirst, TeacherHandle::Kind::SeededRandom}) {
    auto t = run_game(G, st, TeacherHandle{kind, 4}, 3);
    CHECK_FALSE(t.student_wins);
    REQUIRE(t.rounds.size() == 3);
    for (const auto& r : t.rounds) CHECK(oracle::eval(G, *r.q) == g0);
  }
  CHECK_FALSE(student_wins_all_teachers(G, st, 3));
}

TEST_CASE("lex student wins within 2^n + 1 rounds") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto G = build_planted_generator(3, 5, seed, 14);
    auto t = run_game(G, lex_student(), TeacherHandle{}, 9);
    REQUIRE(t.student_wins);
    CHECK(t.win_round <= 9);
    // The first lexicographic non-range string is what it lands on.
    auto img = oracle::range(G);
    std::uint64_t first = 0;
    while (img.count(oracle::int_to_bits(first, 5))) ++first;
    CHECK(t.win_round == first + 1);
    CHECK(student_wins_all_teachers(G, lex_student(), 9));
  }
}

TEST_CASE("random student is reproducible") {
  auto G = build_planted_generator(3, 5, 1, 14);
  auto a = run_game(G, random_student(8), TeacherHandle{TeacherHandle::Kind::SeededRandom, 2}, 6);
  auto b = run_game(G, random_student(8), TeacherHandle{TeacherHandle::Kind::SeededRandom, 2}, 6);
  CHECK(a.log() == b.log());
}

TEST_CASE("game arguments are validated") {
  auto G = build_planted_generator(3, 5, 1, 14);
  CHECK_THROWS_AS(run_game(G, constant_student({BitVec{0, 1}}), TeacherHandle{}, 1), Error);
  CHECK_THROWS_AS(run_game(G, constant_student({BitVec(5, 0)}), TeacherHandle{}, 2), Error);
}

TEST_CASE("validate_trace follows the composed instance") {
  auto G = build_planted_generator(2, 6, 5, 16);
  auto key = sample_key(6, 3, 11);
  const auto w = toeplitz_apply(key, oracle::eval(G, BitVec{1, 0}));
  auto A = constant_fn(w);
  CHECK(validate_trace(A, G, key, {}));
  std::vector<BitVec> ok{BitVec{1, 0}};
  CHECK(validate_trace(A, G, key, ok));
  for (std::uint64_t u = 0; u < 4; ++u) {
    std::vector<BitVec> tr{oracle::int_to_bits(u, 2)};
    CHECK(validate_trace(A, G, key, tr) == (oracle::toeplitz(key.diag, 6, 3, oracle::eval(G, tr[0])) == w));
  }
  std::vector<BitVec> bad{BitVec{1, 0, 1}};
  CHECK_THROWS_AS(validate_trace(A, G, key, bad), Error);
}

TEST_CASE("trace probability: exhaustive matches oracle, sampling is close") {
  auto G = build_planted_generator(2, 6, 2, 16);
  const std::size_t m = 3;
  auto A = constant_fn(BitVec{1, 0, 0});
  std::vector<BitVec> tr{BitVec{0, 1}};
  auto ex = trace_success_probability(A, G, m, Sampling{true, 0, 0}, tr);
  CHECK(ex.exhaustive);
  const auto gy = oracle::eval(G, tr[0]);
  std::uint64_t hits = 0;
  const std::uint64_t words = 1u << (6 + m - 1);
  for (std::uint64_t wv = 0; wv < words; ++wv)
    hits += oracle::toeplitz(oracle::int_to_bits(wv, 6 + m - 1), 6, m, gy) == BitVec{1, 0, 0};
  CHECK(ex.p.num == hits);
  CHECK(ex.p.den == words);
  auto sm = trace_success_probability(A, G, m, Sampling{false, 4000, 3}, tr);
  CHECK_FALSE(sm.exhaustive);
  CHECK(std::abs(sm.p.approx() - ex.p.approx()) < 0.05);
}

TEST_CASE("GS protocol: trivial threshold and empty set") {
  CircuitBuilder b("x0is0", 4);
  std::vector<GateId> in;
  for (std::size_t i = 0; i < 4; ++i) in.push_back(b.input(i));
  auto half = std::move(b).finish({b.not_(in[0])});
  CHECK(gs_hash_length(1) == 0);
  CHECK(gs_hash_length(8) == 4);
  CHECK(gs_hash_length(9) == 5);
  auto o = gs_setsize_protocol(half, 1, 20, 1);
  CHECK(o.accept);
  CHECK(o.successes == 20);
  CircuitBuilder e("none", 4);
  for (std::size_t i = 0; i < 4; ++i) e.input(i);
  auto empty = std::move(e).finish({e.constant(false)});
  CHECK_FALSE(gs_setsize_protocol(empty, 1, 20, 1).accept);
  CHECK(gs_setsize_protocol(empty, 4, 20, 1).successes == 0);
}

TEST_CASE("GS protocol separates a set from one a quarter its size") {
  CircuitBuilder b("big", 8);
  std::vector<GateId> in;
  for (std::size_t i = 0; i < 8; ++i) in.push_back(b.input(i));
  auto big = std::move(b).finish({b.not_(in[0])});  // 128 members
  CircuitBuilder c("small", 8);
  std::vector<GateId> jn;
  for (std::size_t i = 0; i < 8; ++i) jn.push_back(c.input(i));
  auto small = std::move(c).finish({c.not_(c.or_(c.or_(jn[0], jn[1]), jn[2]))});  // 32 members
  std::size_t acc_big = 0, acc_small = 0;
  for (std::uint64_t r = 0; r < 60; ++r) {
    acc_big += gs_setsize_protocol(big, 128, 31, r * 1000).accept;
    acc_small += gs_setsize_protocol(small, 128, 31, r * 1000).accept;
  }
  CHECK(acc_big >= 36);
  CHECK(acc_small <= 24);
  auto o1 = gs_setsize_protocol(big, 128, 31, 5), o2 = gs_setsize_protocol(big, 128, 31, 5);
  CHECK(o1.successes == o2.successes);
}

TEST_CASE("round trial verdicts follow the probability cutoffs") {
  auto G = build_planted_generator(2, 6, 2, 16);
  const std::size_t m = 3;
  BitVec y{1, 0, 0, 1, 1, 0};
  // Pr_key[T y = 0] = 2^-m exactly for y != 0.
  auto t = am_round_trial(constant_fn(BitVec(m, 0)), G, m, Sampling{true, 0, 0}, 1, {}, y);
  CHECK(t.p.p.num * 8 == t.p.p.den);
  CHECK(t.verdict == TrialVerdict::Accept);
  auto z = am_round_trial(constant_fn(BitVec{1, 0, 0}), G, m, Sampling{true, 0, 0}, 1, {}, BitVec(6, 0));
  CHECK(z.p.p.num == 0);
  CHECK(z.verdict == TrialVerdict::Reject);
  std::vector<BitVec> prefix{BitVec{0, 0}};
  auto t2 = am_round_trial(constant_fn(BitVec(m, 0)), G, m, Sampling{true, 0, 0}, 2, prefix, y);
  CHECK(t2.verdict != TrialVerdict::Inconclusive);
  CHECK_THROWS_AS(am_round_trial(constant_fn(BitVec(m, 0)), G, m, Sampling{true, 0, 0}, 2, {}, y), Error);
  CHECK(std::string(to_string(TrialVerdict::Inconclusive)) == "INCONCLUSIVE");
}

TEST_CASE("game tree outcome matches the student-loses formula") {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto G = build_planted_generator(1 + seed % 3, 4, seed, 12);
    Rng rng(seed + 500);
    for (std::size_t k = 1; k <= 2; ++k) {
      std::vector<Gf2Circuit> B;
      B.push_back(constant_circuit(0, rng.bits(4)));
      if (k == 2) B.push_back(seed % 2 ? constant_circuit(G.n, rng.bits(4)) : random_circuit(G.n, 4, 4, seed));
      auto f = encode_student_loses(G, B);
      auto sat = brute_force_sat(f);
      std::vector<BitVec> qs;
      CHECK(sat.sat == loses_somehow(G, B, qs));
      CHECK(sat.sat == !student_wins_all_teachers(G, circuit_student(B), k));
      if (sat.sat) {
        auto q = decode_queries(sat.assignment, k, G.n);
        CHECK(oracle::eval(G, q[0]) == oracle::eval(B[0], {}));
        if (k == 2) CHECK(oracle::eval(G, q[1]) == oracle::eval(B[1], q[0]));
      }
      ++checked;
    }
  }
  CHECK(checked == 50);
}

TEST_CASE("valid traces have valid prefixes on every key") {
  auto G = build_planted_generator(2, 6, 12, 16);
  auto A = constant_student({BitVec{0, 0, 0}, BitVec{0, 0, 0}, BitVec{0, 0, 0}}).as_function();
  std::size_t full = 0;
  for (std::uint64_t w = 0; w < 256; ++w) {
    auto key = ExtractorKey::from_diag_word(6, 3, w);
    auto C = compose_instance(G, key).circuit;
    // extend greedily with lexicographically first preimages
    std::vector<BitVec> tr;
    for (std::size_t i = 1; i <= 3; ++i) {
      auto want = A(i, C, tr);
      std::optional<BitVec> q;
      for (std::uint64_t u = 0; u < 4 && !q; ++u)
        if (oracle::eval(C, oracle::int_to_bits(u, 2)) == want) q = oracle::int_to_bits(u, 2);
      if (!q) break;
      tr.push_back(*q);
    }
    full += tr.size() == 3;
    for (std::size_t j = 0; j <= tr.size(); ++j) CHECK(validate_trace(A, G, key, std::span<const BitVec>(tr).first(j)));
    if (!tr.empty()) {
      auto bad = tr;
      bad.back()[0] ^= 1;
      if (oracle::eval(C, bad.back()) != oracle::eval(C, tr.back())) CHECK_FALSE(validate_trace(A, G, key, bad));
    }
  }
  CHECK(full > 0);
}

TEST_CASE("GS successes grow along nested sets") {
  // S_k = {x : x_0 = ... = x_{k-1} = 0}, so S_4 within S_3 within ... within S_0
  std::vector<std::uint64_t> successes;
  for (std::size_t k = 5; k-- > 0;) {
    CircuitBuilder b("nested", 8);
    std::vector<GateId> in;
    for (std::size_t i = 0; i < 8; ++i) in.push_back(b.input(i));
    GateId out;
    if (k == 0) out = b.constant(true);
    else {
      GateId any = in[0];
      for (std::size_t i = 1; i < k; ++i) any = b.or_(any, in[i]);
      out = b.not_(any);
    }
    auto pred = std::move(b).finish({out});
    successes.push_back(gs_setsize_protocol(pred, 64, 200, 17).successes);
  }
  for (std::size_t i = 1; i < successes.size(); ++i) CHECK(successes[i - 1] <= successes[i]);
}
