#include <functional>

#include "avoidforge/error.hpp"
#include "avoidforge/gens.hpp"
#include "avoidforge/parred.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace avoidforge;

namespace {

// Truth value of a linear clause under assignment bits a (variable v is bit v-1).
bool holds(const LinearClause& c, std::uint64_t a) {
  for (const auto& lit : c.lits()) {
    std::uint8_t v = 0;
    for (auto x : lit.form) v ^= (a >> (x - 1)) & 1u;
    if (v == lit.rhs) return true;
  }
  return false;
}

bool entails_by_table(const std::vector<LinearClause>& premises, const LinearClause& d, std::size_t vars) {
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << vars); ++a) {
    bool all = true;
    for (const auto& p : premises) all = all && holds(p, a);
    if (all && !holds(d, a)) return false;
  }
  return true;
}

// Every line follows from its premises, checked by truth table.
void check_lines_sound(std::span<const LinearClause> axioms, const ResXorProof& p, std::size_t vars) {
  for (const auto& line : p.lines) {
    std::vector<LinearClause> prem;
    if (line.rule == ProofLine::Rule::Axiom) prem.push_back(axioms[line.a]);
    else prem.push_back(p.lines[line.a].clause);
    if (line.rule == ProofLine::Rule::Resolve) prem.push_back(p.lines[line.b].clause);
    CHECK(entails_by_table(prem, line.clause, vars));
  }
}

LinearForm random_form(Rng& rng, std::size_t vars, bool allow_empty = false) {
  while (true) {
    LinearForm f;
    for (std::uint32_t v = 1; v <= vars; ++v)
      if (rng.below(3) == 0) f.push_back(v);
    if (!f.empty() || allow_empty) return f;
  }
}

LinearClause random_clause(Rng& rng, std::size_t vars, std::size_t max_width) {
  std::vector<LinearLiteral> lits;
  const std::size_t w = rng.below(max_width + 1);
  for (std::size_t k = 0; k < w; ++k) lits.push_back({random_form(rng, vars), rng.bit()});
  return LinearClause(lits);
}

std::vector<LinearLiteral> random_inconsistent_system(Rng& rng, std::size_t vars, std::size_t eqs) {
  std::vector<LinearLiteral> sys;
  for (std::size_t i = 0; i < eqs; ++i) sys.push_back({random_form(rng, vars), rng.bit()});
  LinearLiteral sum;
  for (const auto& e : sys)
    if (rng.bit()) {
      sum.form = xor_forms(sum.form, e.form);
      sum.rhs ^= e.rhs;
    }
  if (sum.form.empty()) sum = sys[0];
  sum.rhs ^= 1;
  sys.insert(sys.begin() + static_cast<std::ptrdiff_t>(rng.below(sys.size() + 1)), sum);
  return sys;
}

std::vector<LinearClause> equations_as_axioms(std::span<const LinearLiteral> eqs) {
  std::vector<LinearClause> out;
  for (const auto& e : eqs) out.push_back(LinearClause({e}));
  return out;
}

Gf2Circuit xor_circuit(std::size_t n, std::size_t m, std::size_t gates, std::uint64_t seed) {
  Rng rng(seed);
  CircuitBuilder b("lin", n);
  for (std::size_t i = 0; i < n; ++i) b.input(i);
  for (std::size_t k = 0; k < gates; ++k) {
    auto pick = [&] { return static_cast<GateId>(rng.below(b.size())); };
    switch (rng.below(6)) {
      case 0: b.not_(pick()); break;
      case 1: b.constant(rng.bit()); break;
      default: b.xor_(pick(), pick());
    }
  }
  std::vector<GateId> outs;
  for (std::size_t o = 0; o < m; ++o) outs.push_back(static_cast<GateId>(b.size() - 1 - rng.below(std::min(b.size(), gates))));
  return std::move(b).finish(std::move(outs));
}

std::size_t first_nontaut(const CnfFormula& F) {
  const auto t = translate_cnf(F);
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!t[i].tautological()) return i;
  return 0;
}

}  // namespace

TEST_CASE("linear clauses normalize, print and parse") {
  LinearClause c({{{3, 1}, 0}, {{2}, 1}, {{1, 3}, 0}, {{}, 1}});
  CHECK(c.str() == "(x1+x3=0 | x2=1)");
  CHECK(LinearClause::parse(c.str()) == c);
  CHECK(LinearClause::parse("()").empty());
  CHECK(LinearClause({{{}, 1}}).empty());
  CHECK(LinearClause({{{}, 0}}).tautological());
  CHECK(LinearClause({{{1}, 0}, {{1}, 1}}).tautological());
  CHECK(LinearClause({{{2, 2, 5}, 1}}).str() == "(x5=1)");
  CHECK_THROWS_AS(LinearClause::parse("(x1=2)"), Error);
  CHECK_THROWS_AS(LinearClause::parse("x1=1"), Error);
  CHECK(parse_form("x4+x1") == LinearForm{1, 4});
}

TEST_CASE("semantic implication agrees with truth tables") {
  Rng rng(5);
  for (int t = 0; t < 2000; ++t) {
    auto c = random_clause(rng, 5, 3);
    auto d = random_clause(rng, 5, 3);
    CHECK(implies(c, d) == entails_by_table({c}, d, 5));
    CHECK(valid(d) == entails_by_table({}, d, 5));
  }
  std::vector<LinearLiteral> ok{{{1, 2}, 1}, {{2}, 0}};
  CHECK(system_consistent(ok));
  ok.push_back({{1}, 0});
  CHECK_FALSE(system_consistent(ok));
}

TEST_CASE("echelon solutions satisfy consistent systems") {
  Rng rng(6);
  for (int t = 0; t < 300; ++t) {
    Gf2Echelon e;
    std::vector<LinearLiteral> sys;
    for (int i = 0; i < 6; ++i) {
      LinearLiteral eq{random_form(rng, 8), rng.bit()};
      if (!e.add(eq)) break;
      sys.push_back(eq);
    }
    if (!e.consistent()) continue;
    auto x = e.solution(8);
    for (const auto& eq : sys) {
      std::uint8_t v = 0;
      for (auto var : eq.form) v ^= x[var];
      CHECK(v == eq.rhs);
    }
  }
}

TEST_CASE("two-step gadget from (a=0), (b=0) is accepted verbatim") {
  std::vector<LinearClause> axioms{LinearClause::parse("(x1=0)"), LinearClause::parse("(x2=0)"), LinearClause::parse("(x1+x2=1)")};
  auto proof = parse_proof(
      "resxor for gadget\n"
      "0 AXIOM 0 : (x1=0)\n"
      "1 AXIOM 1 : (x2=0)\n"
      "2 WEAKEN 1 : (x1=1 | x1+x2=0)\n"
      "3 RESOLVE 0 2 ON x1 : (x1+x2=0)\n"
      "4 AXIOM 2 : (x1+x2=1)\n"
      "5 RESOLVE 3 4 ON x1+x2 : ()\n");
  CHECK(check_resxor_proof(axioms, proof).ok());
  check_lines_sound(axioms, proof, 2);
  CHECK(parse_proof(emit_proof(proof)) == proof);

  auto bad = proof;
  bad.lines[3].a = 2;
  bad.lines[3].b = 0;
  CHECK(check_resxor_proof(axioms, bad).fault == ProofFault::NoPivot);
  bad = proof;
  bad.lines[2].clause = LinearClause::parse("(x1=0 | x1+x2=0)");
  CHECK(check_resxor_proof(axioms, bad).fault == ProofFault::NotImplied);
  bad = proof;
  bad.lines[0].clause = LinearClause::parse("(x1=1)");
  CHECK(check_resxor_proof(axioms, bad).fault == ProofFault::BadAxiom);
  bad = proof;
  bad.lines.pop_back();
  CHECK(check_resxor_proof(axioms, bad).fault == ProofFault::NotEmptyFinal);
  bad = proof;
  bad.lines[3].clause = LinearClause::parse("(x1+x2=1)");
  CHECK(check_resxor_proof(axioms, bad).fault == ProofFault::BadConclusion);
  bad = proof;
  bad.lines[5].b = 5;
  CHECK(check_resxor_proof(axioms, bad).fault == ProofFault::BadReference);
}

TEST_CASE("refute_linear_system examples") {
  std::vector<LinearLiteral> two{{{1}, 0}, {{1}, 1}};
  auto r = refute_linear_system(two);
  REQUIRE(std::holds_alternative<ResXorProof>(r));
  auto& p = std::get<ResXorProof>(r);
  CHECK(check_resxor_proof(equations_as_axioms(two), p).ok());
  CHECK(p.lines.size() == 4);  // two axioms, then weaken and resolve

  std::vector<LinearLiteral> three{{{1, 2}, 0}, {{2}, 1}, {{1}, 0}};
  auto r3 = refute_linear_system(three);
  REQUIRE(std::holds_alternative<ResXorProof>(r3));
  CHECK(check_resxor_proof(equations_as_axioms(three), std::get<ResXorProof>(r3)).ok());

  std::vector<LinearLiteral> sat{{{1, 2}, 1}, {{2}, 1}};
  auto w = refute_linear_system(sat);
  REQUIRE(std::holds_alternative<std::vector<std::uint8_t>>(w));
  auto x = std::get<std::vector<std::uint8_t>>(w);
  CHECK((x[1] ^ x[2]) == 1);
  CHECK(x[2] == 1);
}

TEST_CASE("refutations of random inconsistent systems are valid and sound") {
  Rng rng(77);
  for (int t = 0; t < 50; ++t) {
    const std::size_t vars = 3 + rng.below(8);
    auto sys = random_inconsistent_system(rng, vars, 2 + rng.below(8));
    auto r = refute_linear_system(sys);
    REQUIRE(std::holds_alternative<ResXorProof>(r));
    auto axioms = equations_as_axioms(sys);
    CHECK(check_resxor_proof(axioms, std::get<ResXorProof>(r)).ok());
    check_lines_sound(axioms, std::get<ResXorProof>(r), vars);
  }
}

TEST_CASE("identity reduction and tautology justification") {
  auto F = encode_tau(random_circuit(3, 2, 5, 3), BitVec{0, 1});
  ParityReduction id{F.num_vars, F.num_vars, {}, {}};
  for (std::uint32_t v = 1; v <= F.num_vars; ++v) id.rows.push_back({v});
  for (std::size_t i = 0; i < F.clauses.size(); ++i) id.just.push_back({Justification::Kind::Axiom, {i}});
  CHECK(check_parity_reduction(F, F, id).ok());
  CHECK(parse_reduction(emit_reduction(id)) == id);

  CnfFormula taut;
  taut.num_vars = 1;
  taut.clauses = {{1, -1}};
  ParityReduction red{F.num_vars, 1, {{1, 2}}, {{Justification::Kind::Taut, {}}}};
  CHECK(check_parity_reduction(F, taut, red).ok());

  auto broken = id;
  broken.just[0] = {Justification::Kind::Axiom, {F.clauses.size()}};
  CHECK(check_parity_reduction(F, F, broken).fault == ReductionFault::BadJustificationIndex);
  broken = id;
  broken.just[first_nontaut(F)] = {Justification::Kind::Taut, {}};
  CHECK(check_parity_reduction(F, F, broken).fault == ReductionFault::NotTautology);
  broken = id;
  broken.just[0] = {Justification::Kind::XorAx, {0}};
  CHECK(check_parity_reduction(F, F, broken).fault == ReductionFault::WidthViolation);
}

TEST_CASE("canonical reduction passes the checker and transports satisfying assignments") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto G = build_planted_generator(3 + seed % 3, 8, seed, 24);
    auto key = sample_key(8, 2 + seed % 5, seed + 90);
    Rng rng(seed);
    auto y = oracle::eval(G, rng.bits(G.n));  // a range point, so tau_y(G) has models
    auto can = build_canonical_reduction(G, key, y);
    CHECK(can.z == oracle::toeplitz(key.diag, 8, key.m, y));
    auto F = encode_tau(G, y);
    auto Gf = encode_tau(can.composed, can.z);
    CHECK(check_parity_reduction(F, Gf, can.red).ok());
    for (std::uint64_t u = 0; u < (1u << G.n); ++u) {
      auto x = oracle::int_to_bits(u, G.n);
      if (oracle::eval(G, x) != y) continue;
      auto gates = eval_gates(G, x);
      std::vector<std::uint8_t> a(F.num_vars + 1, 0);
      auto enc = encode_tau_detailed(G, y);
      for (std::size_t g = 0; g < G.gates.size(); ++g) a[enc.gate_var[g]] = gates[g];
      REQUIRE(satisfies(F, a));
      CHECK(satisfies(Gf, can.red.apply(a)));
    }
    CHECK(parse_reduction(emit_reduction(can.red)) == can.red);
  }
}

TEST_CASE("refute_linear_tau refutes exactly the non-range targets") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto L = xor_circuit(3, 5, 8, seed);
    auto img = oracle::range(L);
    for (std::uint64_t zv = 0; zv < 32; ++zv) {
      auto z = oracle::int_to_bits(zv, 5);
      auto r = refute_linear_tau(L, z);
      auto f = encode_tau(L, z);
      if (img.count(z)) {
        REQUIRE(std::holds_alternative<std::vector<std::uint8_t>>(r));
        CHECK(satisfies(f, std::get<std::vector<std::uint8_t>>(r)));
      } else {
        REQUIRE(std::holds_alternative<ResXorProof>(r));
        CHECK(check_resxor_proof(f, std::get<ResXorProof>(r)).ok());
      }
    }
  }
}

TEST_CASE("transforming through the identity reduction keeps the proof length") {
  auto L = xor_circuit(2, 4, 6, 4);
  auto img = oracle::range(L);
  for (std::uint64_t zv = 0; zv < 16; ++zv) {
    auto z = oracle::int_to_bits(zv, 4);
    if (img.count(z)) continue;
    auto F = encode_tau(L, z);
    auto proof = std::get<ResXorProof>(refute_linear_tau(L, z));
    ParityReduction id{F.num_vars, F.num_vars, {}, {}};
    for (std::uint32_t v = 1; v <= F.num_vars; ++v) id.rows.push_back({v});
    for (std::size_t i = 0; i < F.clauses.size(); ++i) id.just.push_back({Justification::Kind::Axiom, {i}});
    auto out = transform_resxor_proof(proof, F, F, id);
    CHECK(out.lines.size() == proof.lines.size());
    CHECK(check_resxor_proof(F, out).ok());
  }
}

TEST_CASE("canonical reduction pulls refutations back to tau_y(G)") {
  std::size_t cases = 0;
  for (std::uint64_t seed = 0; cases < 10 && seed < 200; ++seed) {
    auto G = xor_circuit(3, 8, 10, seed);
    auto key = sample_key(8, 5, seed + 7);
    Rng rng(seed);
    auto y = rng.bits(8);
    auto can = build_canonical_reduction(G, key, y);
    auto r = refute_linear_tau(can.composed, can.z);
    if (!std::holds_alternative<ResXorProof>(r)) continue;
    ++cases;
    auto F = encode_tau(G, y);
    auto Gf = encode_tau(can.composed, can.z);
    const auto& proof = std::get<ResXorProof>(r);
    auto out = transform_resxor_proof(proof, Gf, F, can.red);
    CHECK(check_resxor_proof(F, out).ok());
    CHECK(out.lines.size() <= 2 * F.num_vars * Gf.clauses.size() + proof.lines.size());
  }
  CHECK(cases == 10);
}

TEST_CASE("substituted resolution and weakening steps stay valid") {
  Rng rng(31);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t dst = 4, src = 4;
    ParityReduction red{src, dst, {}, {}};
    for (std::size_t v = 0; v < dst; ++v) red.rows.push_back(random_form(rng, src, true));
    const LinearForm pivot = random_form(rng, dst);
    auto rest1 = random_clause(rng, dst, 2), rest2 = random_clause(rng, dst, 2);
    auto l1v = rest1.lits(), l2v = rest2.lits();
    l1v.push_back({pivot, 0});
    l2v.push_back({pivot, 1});
    LinearClause c1(l1v), c2(l2v);
    auto concl = [&] {
      std::vector<LinearLiteral> u;
      for (const auto& l : c1.lits())
        if (l != LinearLiteral{pivot, 0}) u.push_back(l);
      for (const auto& l : c2.lits())
        if (l != LinearLiteral{pivot, 1}) u.push_back(l);
      return LinearClause(u);
    }();
    const auto s1 = red.substitute(c1), s2 = red.substitute(c2), sc = red.substitute(concl);
    const auto f = red.substitute(pivot);
    if (f.empty() || sc.contains({f, 1})) {
      CHECK(implies(s2, sc));
    } else if (sc.contains({f, 0})) {
      CHECK(implies(s1, sc));
    } else {
      std::vector<LinearClause> axioms{s1, s2};
      ResXorProof p;
      p.lines.push_back({s1, ProofLine::Rule::Axiom, 0, 0, {}});
      p.lines.push_back({s2, ProofLine::Rule::Axiom, 1, 0, {}});
      p.lines.push_back({sc, ProofLine::Rule::Resolve, 0, 1, f});
      auto res = check_resxor_proof(axioms, p);
      CHECK((res.ok() || (res.fault == ProofFault::NotEmptyFinal && res.line == 2)));
    }
    auto d = random_clause(rng, dst, 3);
    if (implies(c1, d)) CHECK(implies(s1, red.substitute(d)));
  }
}

TEST_CASE("transformer rejects invalid inputs") {
  auto L = xor_circuit(2, 4, 6, 4);
  auto F = encode_tau(L, BitVec{0, 0, 0, 0});
  ResXorProof empty;
  ParityReduction id{F.num_vars, F.num_vars, {}, {}};
  for (std::uint32_t v = 1; v <= F.num_vars; ++v) id.rows.push_back({v});
  for (std::size_t i = 0; i < F.clauses.size(); ++i) id.just.push_back({Justification::Kind::Axiom, {i}});
  try {
    transform_resxor_proof(empty, F, F, id);
    FAIL("empty proof accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ProofInvalid);
  }
  auto broken = id;
  broken.just[first_nontaut(F)] = {Justification::Kind::Taut, {}};
  try {
    transform_resxor_proof(empty, F, F, broken);
    FAIL("bad reduction accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ReductionInvalid);
  }
}
