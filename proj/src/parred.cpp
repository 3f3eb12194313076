#include "avoidforge/parred.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "avoidforge/error.hpp"

namespace avoidforge {

namespace {

LinearLiteral literal_equation(Literal lit) {
  return {{static_cast<std::uint32_t>(std::abs(lit))}, static_cast<std::uint8_t>(lit > 0)};
}

}  // namespace

LinearClause translate_clause(const Clause& c) {
  std::vector<LinearLiteral> lits;
  lits.reserve(c.size());
  for (auto lit : c) lits.push_back(literal_equation(lit));
  return LinearClause(std::move(lits));
}

std::vector<LinearClause> translate_cnf(const CnfFormula& f) {
  std::vector<LinearClause> out;
  out.reserve(f.clauses.size());
  for (const auto& c : f.clauses) out.push_back(translate_clause(c));
  return out;
}

// ---------------------------------------------------------------------------

const char* to_string(ReductionFault f) {
  switch (f) {
    case ReductionFault::None: return "OK";
    case ReductionFault::BadJustificationIndex: return "BAD_JUSTIFICATION_INDEX";
    case ReductionFault::WidthViolation: return "WIDTH_VIOLATION";
    case ReductionFault::NotTautology: return "NOT_TAUT";
    case ReductionFault::NotAxiom: return "NOT_AXIOM";
    case ReductionFault::NotXor: return "NOT_XOR";
    case ReductionFault::BadRow: return "BAD_ROW";
  }
  return "?";
}

LinearForm ParityReduction::substitute(const LinearForm& f) const {
  LinearForm out;
  for (auto v : f) {
    if (v == 0 || v > rows.size()) throw Error(ErrorKind::IndexOutOfRange, "variable y" + std::to_string(v) + " has no row");
    out = xor_forms(out, rows[v - 1]);
  }
  return out;
}

LinearClause ParityReduction::substitute(const LinearClause& c) const {
  std::vector<LinearLiteral> lits;
  lits.reserve(c.width());
  for (const auto& lit : c.lits()) lits.push_back({substitute(lit.form), lit.rhs});
  return LinearClause(std::move(lits));
}

LinearClause ParityReduction::substitute(const Clause& c) const {
  std::vector<LinearLiteral> lits;
  lits.reserve(c.size());
  for (auto lit : c) {
    auto eq = literal_equation(lit);
    lits.push_back({substitute(eq.form), eq.rhs});
  }
  return LinearClause(std::move(lits));
}

std::vector<std::uint8_t> ParityReduction::apply(std::span<const std::uint8_t> src) const {
  if (src.size() != src_vars + 1) throw Error(ErrorKind::LengthMismatch, "source assignment must cover every variable");
  std::vector<std::uint8_t> dst(dst_vars + 1, 0);
  for (std::size_t v = 1; v <= dst_vars; ++v)
    for (auto x : rows[v - 1]) dst[v] ^= src[x];
  return dst;
}

ReductionCheck check_parity_reduction(const CnfFormula& F, const CnfFormula& Gf, const ParityReduction& red) {
  if (red.src_vars != F.num_vars || red.dst_vars != Gf.num_vars || red.rows.size() != red.dst_vars)
    throw Error(ErrorKind::DimMismatch, "reduction dimensions do not match the formulas");
  if (red.just.size() != Gf.clauses.size())
    throw Error(ErrorKind::DimMismatch, "need one justification per destination clause");
  for (const auto& row : red.rows) {
    const bool sorted = std::adjacent_find(row.begin(), row.end(), std::greater_equal<>()) == row.end();
    if (!sorted || (!row.empty() && (row.front() == 0 || row.back() > red.src_vars))) return {ReductionFault::BadRow, 0};
  }
  for (std::size_t i = 0; i < Gf.clauses.size(); ++i) {
    const auto& g = Gf.clauses[i];
    const auto& j = red.just[i];
    switch (j.kind) {
      case Justification::Kind::Taut: {
        if (!valid(red.substitute(g))) return {ReductionFault::NotTautology, i};
        break;
      }
      case Justification::Kind::Axiom: {
        if (j.axioms.size() != 1 || j.axioms[0] >= F.clauses.size()) return {ReductionFault::BadJustificationIndex, i};
        if (translate_clause(F.clauses[j.axioms[0]]) != red.substitute(g)) return {ReductionFault::NotAxiom, i};
        break;
      }
      case Justification::Kind::XorAx: {
        if (g.size() != 1) return {ReductionFault::WidthViolation, i};
        LinearLiteral sum;
        for (auto a : j.axioms) {
          if (a >= F.clauses.size()) return {ReductionFault::BadJustificationIndex, i};
          if (F.clauses[a].size() != 1) return {ReductionFault::WidthViolation, i};
          auto eq = literal_equation(F.clauses[a][0]);
          sum.form = xor_forms(sum.form, eq.form);
          sum.rhs ^= eq.rhs;
        }
        auto target = literal_equation(g[0]);
        target.form = red.substitute(target.form);
        if (target != sum) return {ReductionFault::NotXor, i};
        break;
      }
    }
  }
  return {};
}

CanonicalReduction build_canonical_reduction(const Gf2Circuit& G, const ExtractorKey& key, std::span<const std::uint8_t> y) {
  if (key.N != G.m) throw Error(ErrorKind::DimMismatch, "key has N=" + std::to_string(key.N) + " but G has m=" + std::to_string(G.m));
  if (y.size() != G.m) throw Error(ErrorKind::LengthMismatch, "y must have m bits");
  CanonicalReduction out;
  out.z = toeplitz_apply(key, y);
  const auto rows = key_to_xor_rows(key);
  out.composed = append_linear_layer(G, rows);
  const auto src = encode_tau_detailed(G, y);
  const auto dst = encode_tau_detailed(out.composed, out.z);
  const Gf2Circuit& C = out.composed;

  ParityReduction& red = out.red;
  red.src_vars = src.cnf.num_vars;
  red.dst_vars = dst.cnf.num_vars;
  red.rows.assign(red.dst_vars, {});
  std::vector<LinearForm> gate_form(C.gates.size());
  for (std::size_t g = 0; g < C.gates.size(); ++g) {
    const Gate& gate = C.gates[g];
    if (g < G.gates.size()) {
      if (dst.gate_var[g] != src.gate_var[g]) throw Error(ErrorKind::ReductionInvalid, "internal: variable layouts diverge");
      gate_form[g] = {static_cast<std::uint32_t>(src.gate_var[g])};
    } else if (gate.op == Op::Xor) {
      gate_form[g] = xor_forms(gate_form[gate.a], gate_form[gate.b]);
    } else if (gate.op == Op::Const && gate.a == 0) {
      gate_form[g] = {};
    } else {
      throw Error(ErrorKind::ReductionInvalid, "extraction layer must be linear without constants");
    }
    if (gate.op != Op::Input) red.rows[dst.gate_var[g] - 1] = gate_form[g];
  }
  for (std::size_t i = 0; i < G.n; ++i) red.rows[i] = {static_cast<std::uint32_t>(i + 1)};

  red.just.resize(dst.cnf.clauses.size());
  for (std::size_t g = 0; g < C.gates.size(); ++g) {
    for (std::size_t c = dst.gate_clause_begin[g]; c < dst.gate_clause_begin[g + 1]; ++c) {
      if (g < G.gates.size()) red.just[c] = {Justification::Kind::Axiom, {c}};
      else red.just[c] = {Justification::Kind::Taut, {}};
    }
  }
  for (std::size_t j = 0; j < C.m; ++j) {
    Justification jx{Justification::Kind::XorAx, {}};
    for (auto old : rows[j].indices) jx.axioms.push_back(src.output_clause_begin + old);
    red.just[dst.output_clause_begin + j] = std::move(jx);
  }
  return out;
}

std::string emit_reduction(const ParityReduction& red) {
  std::ostringstream os;
  os << "reduction src=" << red.src_vars << " dst=" << red.dst_vars << "\n";
  for (std::size_t v = 0; v < red.rows.size(); ++v) os << "map y" << v + 1 << " = " << form_str(red.rows[v]) << "\n";
  for (std::size_t i = 0; i < red.just.size(); ++i) {
    const auto& j = red.just[i];
    os << "just " << i;
    switch (j.kind) {
      case Justification::Kind::Taut: os << " TAUT"; break;
      case Justification::Kind::Axiom: os << " AXIOM"; break;
      case Justification::Kind::XorAx: os << " XORAX"; break;
    }
    for (auto a : j.axioms) os << " " << a;
    os << "\n";
  }
  return os.str();
}

ParityReduction parse_reduction(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  ParityReduction red;
  bool header = false;
  auto fail = [&](const std::string& msg) { return Error(ErrorKind::SyntaxError, msg, line_no); };
  while (std::getline(is, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    try {
      if (!header) {
        std::string s, d;
        if (tok != "reduction" || !(ls >> s >> d) || s.rfind("src=", 0) || d.rfind("dst=", 0))
          throw fail("expected 'reduction src=<n> dst=<m>'");
        red.src_vars = std::stoul(s.substr(4));
        red.dst_vars = std::stoul(d.substr(4));
        red.rows.assign(red.dst_vars, {});
        header = true;
      } else if (tok == "map") {
        std::string var, eq;
        if (!(ls >> var >> eq) || var.size() < 2 || var[0] != 'y' || eq != "=") throw fail("expected 'map y<i> = <form>'");
        const std::size_t v = std::stoul(var.substr(1));
        if (v == 0 || v > red.dst_vars) throw Error(ErrorKind::IndexOutOfRange, "map for unknown variable " + var, line_no);
        std::string rest;
        std::getline(ls, rest);
        red.rows[v - 1] = parse_form(rest);
      } else if (tok == "just") {
        std::size_t idx;
        std::string kind;
        if (!(ls >> idx >> kind)) throw fail("expected 'just <idx> <kind>'");
        if (idx != red.just.size()) throw fail("justifications must be listed in clause order");
        Justification j;
        if (kind == "TAUT") j.kind = Justification::Kind::Taut;
        else if (kind == "AXIOM") j.kind = Justification::Kind::Axiom;
        else if (kind == "XORAX") j.kind = Justification::Kind::XorAx;
        else throw fail("unknown justification '" + kind + "'");
        std::size_t a;
        while (ls >> a) j.axioms.push_back(a);
        if (!ls.eof()) throw fail("bad axiom index");
        if (j.kind == Justification::Kind::Axiom && j.axioms.size() != 1) throw fail("AXIOM takes one index");
        if (j.kind == Justification::Kind::Taut && !j.axioms.empty()) throw fail("TAUT takes no index");
        red.just.push_back(std::move(j));
      } else {
        throw fail("unknown statement '" + tok + "'");
      }
    } catch (const Error& e) {
      if (e.line()) throw;
      throw e.at_line(line_no);
    } catch (const std::logic_error&) {
      throw fail("bad number");
    }
  }
  if (!header) throw fail("missing reduction header");
  return red;
}

// ---------------------------------------------------------------------------

const char* to_string(ProofFault f) {
  switch (f) {
    case ProofFault::None: return "OK";
    case ProofFault::BadReference: return "BAD_REFERENCE";
    case ProofFault::BadAxiom: return "BAD_AXIOM";
    case ProofFault::NoPivot: return "NO_PIVOT";
    case ProofFault::BadConclusion: return "BAD_CONCLUSION";
    case ProofFault::NotImplied: return "NOT_IMPLIED";
    case ProofFault::NotEmptyFinal: return "NOT_EMPTY_FINAL";
  }
  return "?";
}

namespace {

LinearClause resolvent(const LinearClause& c1, const LinearClause& c2, const LinearForm& pivot) {
  std::vector<LinearLiteral> lits;
  const LinearLiteral p0{pivot, 0}, p1{pivot, 1};
  for (const auto& l : c1.lits())
    if (l != p0) lits.push_back(l);
  for (const auto& l : c2.lits())
    if (l != p1) lits.push_back(l);
  return LinearClause(std::move(lits));
}

}  // namespace

ProofCheck check_resxor_proof(std::span<const LinearClause> axioms, const ResXorProof& proof) {
  const auto& L = proof.lines;
  for (std::size_t i = 0; i < L.size(); ++i) {
    const auto& line = L[i];
    switch (line.rule) {
      case ProofLine::Rule::Axiom:
        if (line.a >= axioms.size()) return {ProofFault::BadReference, i};
        if (line.clause != axioms[line.a]) return {ProofFault::BadAxiom, i};
        break;
      case ProofLine::Rule::Weaken:
        if (line.a >= i) return {ProofFault::BadReference, i};
        if (!implies(L[line.a].clause, line.clause)) return {ProofFault::NotImplied, i};
        break;
      case ProofLine::Rule::Resolve:
        if (line.a >= i || line.b >= i) return {ProofFault::BadReference, i};
        if (line.pivot.empty() || !L[line.a].clause.contains({line.pivot, 0}) || !L[line.b].clause.contains({line.pivot, 1}))
          return {ProofFault::NoPivot, i};
        if (resolvent(L[line.a].clause, L[line.b].clause, line.pivot) != line.clause) return {ProofFault::BadConclusion, i};
        break;
    }
  }
  if (L.empty() || !L.back().clause.empty()) return {ProofFault::NotEmptyFinal, L.empty() ? 0 : L.size() - 1};
  return {};
}

ProofCheck check_resxor_proof(const CnfFormula& F, const ResXorProof& proof) {
  const auto axioms = translate_cnf(F);
  return check_resxor_proof(axioms, proof);
}

std::size_t append_sum_gadget(ResXorProof& proof, std::size_t line_a, std::size_t line_b) {
  const auto& ca = proof.lines.at(line_a).clause;
  const auto& cb = proof.lines.at(line_b).clause;
  if (ca.width() != 1 || cb.width() != 1 || ca.lits()[0].form.empty())
    throw Error(ErrorKind::BadArgument, "sum gadget needs two single equations, the first non-trivial");
  const LinearLiteral A = ca.lits()[0], B = cb.lits()[0];
  const LinearLiteral sum{xor_forms(A.form, B.form), static_cast<std::uint8_t>(A.rhs ^ B.rhs)};
  LinearClause weak({{A.form, static_cast<std::uint8_t>(A.rhs ^ 1u)}, sum});
  proof.lines.push_back({weak, ProofLine::Rule::Weaken, line_b, 0, {}});
  const std::size_t w = proof.lines.size() - 1;
  ProofLine res{LinearClause({sum}), ProofLine::Rule::Resolve, 0, 0, A.form};
  if (A.rhs == 0) {
    res.a = line_a;
    res.b = w;
  } else {
    res.a = w;
    res.b = line_a;
  }
  proof.lines.push_back(std::move(res));
  return proof.lines.size() - 1;
}

ResXorProof transform_resxor_proof(const ResXorProof& proofG, const CnfFormula& Gf, const CnfFormula& F,
                                   const ParityReduction& red) {
  if (auto rc = check_parity_reduction(F, Gf, red); !rc.ok())
    throw Error(ErrorKind::ReductionInvalid, std::string(to_string(rc.fault)) + " at clause " + std::to_string(rc.clause));
  if (auto pc = check_resxor_proof(Gf, proofG); !pc.ok())
    throw Error(ErrorKind::ProofInvalid, std::string(to_string(pc.fault)) + " at line " + std::to_string(pc.line));

  ResXorProof out;
  out.name = F.clauses.empty() ? "f" : proofG.name + "_pulled";
  const auto f_axioms = translate_cnf(F);
  std::map<std::size_t, std::size_t> f_line;  // F axiom -> output line
  auto axiom_line = [&](std::size_t i) {
    auto [it, fresh] = f_line.try_emplace(i, out.lines.size());
    if (fresh) out.lines.push_back({f_axioms[i], ProofLine::Rule::Axiom, i, 0, {}});
    return it->second;
  };
  auto weaken_to = [&](std::size_t from, LinearClause target) {
    out.lines.push_back({std::move(target), ProofLine::Rule::Weaken, from, 0, {}});
    return out.lines.size() - 1;
  };

  std::optional<ResXorProof> direct;  // F refuted outright by complementary units
  std::map<std::size_t, std::size_t> g_line;  // Gf axiom -> output line
  auto derive = [&](std::size_t gi) -> std::size_t {
    if (auto it = g_line.find(gi); it != g_line.end()) return it->second;
    const LinearClause target = red.substitute(Gf.clauses[gi]);
    const auto& j = red.just[gi];
    std::size_t line = 0;
    auto from_any_axiom = [&] {
      if (F.clauses.empty()) throw Error(ErrorKind::ReductionInvalid, "tautologies need a non-empty source formula");
      return weaken_to(axiom_line(0), target);
    };
    switch (j.kind) {
      case Justification::Kind::Axiom: line = axiom_line(j.axioms[0]); break;
      case Justification::Kind::Taut: line = from_any_axiom(); break;
      case Justification::Kind::XorAx: {
        // Cancel repeated units; opposite units on one variable refute F directly.
        std::map<std::uint32_t, std::pair<std::size_t, int>> units;  // var -> (axiom, parity count)
        std::map<std::uint32_t, std::size_t> seen_sign[2];
        for (auto a : j.axioms) {
          const auto eq = literal_equation(F.clauses[a][0]);
          const auto v = eq.form[0];
          seen_sign[eq.rhs][v] = a;
          if (auto other = seen_sign[eq.rhs ^ 1u].find(v); other != seen_sign[eq.rhs ^ 1u].end()) {
            ResXorProof r;
            r.name = out.name;
            const std::size_t zero = eq.rhs ? other->second : a, one = eq.rhs ? a : other->second;
            r.lines.push_back({f_axioms[zero], ProofLine::Rule::Axiom, zero, 0, {}});
            r.lines.push_back({f_axioms[one], ProofLine::Rule::Axiom, one, 0, {}});
            r.lines.push_back({LinearClause(), ProofLine::Rule::Resolve, 0, 1, {v}});
            direct = std::move(r);
            return 0;
          }
          auto& u = units[v];
          u.first = a;
          u.second ^= 1;
        }
        std::vector<std::size_t> used;
        for (const auto& [v, u] : units)
          if (u.second) used.push_back(u.first);
        if (used.empty()) {
          line = from_any_axiom();
        } else {
          line = axiom_line(used[0]);
          for (std::size_t k = 1; k < used.size(); ++k) line = append_sum_gadget(out, line, axiom_line(used[k]));
        }
        break;
      }
    }
    if (out.lines[line].clause != target) throw Error(ErrorKind::ReductionInvalid, "internal: derived axiom differs");
    g_line[gi] = line;
    return line;
  };

  std::vector<std::size_t> remap(proofG.lines.size());
  for (std::size_t i = 0; i < proofG.lines.size(); ++i) {
    const auto& line = proofG.lines[i];
    if (line.rule == ProofLine::Rule::Axiom) {
      remap[i] = derive(line.a);
      if (direct) {
        out = std::move(*direct);
        break;
      }
      continue;
    }
    LinearClause concl = red.substitute(line.clause);
    if (line.rule == ProofLine::Rule::Weaken) {
      remap[i] = weaken_to(remap[line.a], std::move(concl));
      continue;
    }
    const LinearForm f = red.substitute(line.pivot);
    if (f.empty() || concl.contains({f, 1})) {
      remap[i] = weaken_to(remap[line.b], std::move(concl));
    } else if (concl.contains({f, 0})) {
      remap[i] = weaken_to(remap[line.a], std::move(concl));
    } else {
      out.lines.push_back({std::move(concl), ProofLine::Rule::Resolve, remap[line.a], remap[line.b], f});
      remap[i] = out.lines.size() - 1;
    }
  }

  const std::size_t bound = 2 * F.num_vars * Gf.clauses.size() + proofG.lines.size();
  if (out.lines.size() > bound)
    throw Error(ErrorKind::BoundViolated, "transformed proof has " + std::to_string(out.lines.size()) + " lines, bound " +
                                               std::to_string(bound));
  if (auto pc = check_resxor_proof(f_axioms, out); !pc.ok())
    throw Error(ErrorKind::ProofInvalid, std::string("internal: output fails ") + to_string(pc.fault) + " at line " +
                                             std::to_string(pc.line));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

/// Gaussian elimination over equation lines already in the proof. Returns
/// true once the empty clause is derived.
bool eliminate(ResXorProof& proof, const std::vector<std::pair<std::size_t, LinearLiteral>>& eqs) {
  std::map<std::uint32_t, std::pair<std::size_t, LinearForm>> basis;  // pivot -> (line, form)
  for (const auto& [start, eq0] : eqs) {
    std::size_t line = start;
    LinearLiteral eq = eq0;
    while (true) {
      if (eq.form.empty()) {
        if (eq.rhs) return true;
        break;
      }
      auto pivot_var = std::find_if(eq.form.begin(), eq.form.end(), [&](auto v) { return basis.contains(v); });
      if (pivot_var == eq.form.end()) {
        basis[eq.form.front()] = {line, eq.form};
        break;
      }
      const auto& [pline, pform] = basis[*pivot_var];
      line = append_sum_gadget(proof, pline, line);
      eq = proof.lines[line].clause.empty() ? LinearLiteral{{}, 1} : proof.lines[line].clause.lits()[0];
      if (eq.form.empty() && eq.rhs == 0) break;  // 0=0: redundant equation
    }
  }
  return false;
}

}  // namespace

LinearRefutation refute_linear_system(std::span<const LinearLiteral> eqs) {
  ResXorProof proof;
  proof.name = "linear";
  std::vector<std::pair<std::size_t, LinearLiteral>> lines;
  Gf2Echelon ech;
  std::uint32_t max_var = 0;
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    LinearClause c({eqs[i]});
    if (!eqs[i].form.empty()) max_var = std::max(max_var, *std::max_element(eqs[i].form.begin(), eqs[i].form.end()));
    ech.add(eqs[i]);
    if (c.tautological()) continue;
    proof.lines.push_back({c, ProofLine::Rule::Axiom, i, 0, {}});
    if (c.empty()) {
      proof.lines = {proof.lines.back()};
      return proof;
    }
    lines.emplace_back(proof.lines.size() - 1, c.lits()[0]);
  }
  if (ech.consistent()) return ech.solution(max_var);
  if (!eliminate(proof, lines)) throw Error(ErrorKind::BadArgument, "internal: elimination missed a contradiction");
  return proof;
}

LinearRefutation refute_linear_tau(const Gf2Circuit& L, std::span<const std::uint8_t> z) {
  const auto enc = encode_tau_detailed(L, z);
  const auto& cnf = enc.cnf;
  ResXorProof proof;
  proof.name = L.name;
  std::vector<std::pair<std::size_t, LinearLiteral>> eq_lines;
  Gf2Echelon ech;
  auto axiom = [&](std::size_t c) {
    proof.lines.push_back({translate_clause(cnf.clauses[c]), ProofLine::Rule::Axiom, c, 0, {}});
    return proof.lines.size() - 1;
  };
  auto add_eq = [&](std::size_t line, const LinearLiteral& eq) {
    eq_lines.emplace_back(line, eq);
    ech.add(eq);
  };

  for (std::size_t g = 0; g < L.gates.size(); ++g) {
    const Gate& gate = L.gates[g];
    const auto v = static_cast<std::uint32_t>(enc.gate_var[g]);
    const std::size_t begin = enc.gate_clause_begin[g], end = enc.gate_clause_begin[g + 1];
    if (gate.op == Op::Input) continue;
    if (gate.op == Op::Const) {
      add_eq(axiom(begin), {{v}, static_cast<std::uint8_t>(gate.a)});
      continue;
    }
    if (gate.op != Op::Not && gate.op != Op::Xor)
      throw Error(ErrorKind::BadArgument, "refute_linear_tau needs a circuit of XOR, NOT and CONST gates");
    // Target equation E for this gate.
    LinearLiteral E;
    const auto va = static_cast<std::uint32_t>(enc.gate_var[gate.a]);
    if (gate.op == Op::Not) {
      E = {xor_forms({v}, {va}), 1};
    } else {
      const auto vb = static_cast<std::uint32_t>(enc.gate_var[gate.b]);
      E = {xor_forms(xor_forms({v}, {va}), {vb}), 0};
    }
    // Weaken each gate clause to E or (its operand literals), then resolve
    // the operand variables away one at a time.
    struct Part {
      std::size_t line;
      std::vector<LinearLiteral> rest;  // operand literals
    };
    std::vector<Part> parts;
    std::vector<std::uint32_t> operands;
    for (std::size_t c = begin; c < end; ++c) {
      const std::size_t ax = axiom(c);
      std::vector<LinearLiteral> rest;
      for (auto lit : cnf.clauses[c]) {
        if (static_cast<std::uint32_t>(std::abs(lit)) == v) continue;
        rest.push_back(literal_equation(lit));
        operands.push_back(static_cast<std::uint32_t>(std::abs(lit)));
      }
      auto lits = rest;
      lits.push_back(E);
      proof.lines.push_back({LinearClause(lits), ProofLine::Rule::Weaken, ax, 0, {}});
      std::sort(rest.begin(), rest.end());
      parts.push_back({proof.lines.size() - 1, std::move(rest)});
    }
    std::sort(operands.begin(), operands.end());
    operands.erase(std::unique(operands.begin(), operands.end()), operands.end());
    for (auto u : operands) {
      std::map<std::vector<LinearLiteral>, std::pair<std::optional<std::size_t>, std::optional<std::size_t>>> groups;
      for (auto& p : parts) {
        std::vector<LinearLiteral> key;
        std::uint8_t sign = 0;
        for (const auto& l : p.rest) {
          if (l.form[0] == u) sign = l.rhs;
          else key.push_back(l);
        }
        auto& slot = groups[key];
        (sign ? slot.second : slot.first) = p.line;
      }
      std::vector<Part> next;
      for (auto& [key, pr] : groups) {
        if (!pr.first || !pr.second) throw Error(ErrorKind::BadArgument, "internal: unmatched gate clause");
        auto lits = key;
        lits.push_back(E);
        proof.lines.push_back({LinearClause(lits), ProofLine::Rule::Resolve, *pr.first, *pr.second, {u}});
        next.push_back({proof.lines.size() - 1, key});
      }
      parts = std::move(next);
    }
    if (parts.size() != 1) throw Error(ErrorKind::BadArgument, "internal: gate derivation did not converge");
    add_eq(parts[0].line, LinearClause({E}).lits().at(0));
  }
  for (std::size_t j = 0; j < L.m; ++j) {
    const std::size_t c = enc.output_clause_begin + j;
    add_eq(axiom(c), literal_equation(cnf.clauses[c][0]));
  }
  if (ech.consistent()) return ech.solution(cnf.num_vars);
  if (!eliminate(proof, eq_lines)) throw Error(ErrorKind::BadArgument, "internal: elimination missed a contradiction");
  return proof;
}

// ---------------------------------------------------------------------------

std::string emit_proof(const ResXorProof& proof) {
  std::ostringstream os;
  os << "resxor for " << proof.name << "\n";
  for (std::size_t i = 0; i < proof.lines.size(); ++i) {
    const auto& l = proof.lines[i];
    os << i;
    switch (l.rule) {
      case ProofLine::Rule::Axiom: os << " AXIOM " << l.a; break;
      case ProofLine::Rule::Weaken: os << " WEAKEN " << l.a; break;
      case ProofLine::Rule::Resolve: os << " RESOLVE " << l.a << " " << l.b << " ON " << form_str(l.pivot); break;
    }
    os << " : " << l.clause.str() << "\n";
  }
  return os.str();
}

ResXorProof parse_proof(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  ResXorProof proof;
  bool header = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    try {
      std::istringstream ls(line);
      if (!header) {
        std::string a, b;
        if (!(ls >> a >> b >> proof.name) || a != "resxor" || b != "for")
          throw Error(ErrorKind::SyntaxError, "expected 'resxor for <name>'");
        header = true;
        continue;
      }
      const auto colon = line.find(':');
      if (colon == std::string::npos) throw Error(ErrorKind::SyntaxError, "missing ':'");
      std::istringstream head(line.substr(0, colon));
      std::size_t idx;
      std::string rule;
      if (!(head >> idx >> rule)) throw Error(ErrorKind::SyntaxError, "expected '<idx> <rule>'");
      if (idx != proof.lines.size()) throw Error(ErrorKind::SyntaxError, "line indices must count up from 0");
      ProofLine pl;
      if (rule == "AXIOM" || rule == "WEAKEN") {
        pl.rule = rule == "AXIOM" ? ProofLine::Rule::Axiom : ProofLine::Rule::Weaken;
        if (!(head >> pl.a)) throw Error(ErrorKind::SyntaxError, "missing reference");
      } else if (rule == "RESOLVE") {
        pl.rule = ProofLine::Rule::Resolve;
        std::string on, form;
        if (!(head >> pl.a >> pl.b >> on >> form) || on != "ON") throw Error(ErrorKind::SyntaxError, "expected 'RESOLVE <j> <k> ON <form>'");
        pl.pivot = parse_form(form);
      } else {
        throw Error(ErrorKind::SyntaxError, "unknown rule '" + rule + "'");
      }
      std::string extra;
      if (head >> extra) throw Error(ErrorKind::SyntaxError, "unexpected '" + extra + "'");
      pl.clause = LinearClause::parse(std::string_view(line).substr(colon + 1));
      proof.lines.push_back(std::move(pl));
    } catch (const Error& e) {
      if (e.line()) throw;
      throw e.at_line(line_no);
    }
  }
  if (!header) throw Error(ErrorKind::SyntaxError, "missing 'resxor for' header", line_no);
  return proof;
}

}  // namespace avoidforge
