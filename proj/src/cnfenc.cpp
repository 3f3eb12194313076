#include "avoidforge/cnfenc.hpp"

#include <algorithm>
#include <sstream>

#include "avoidforge/error.hpp"
#include "avoidforge/kernels.hpp"
#include "avoidforge/range.hpp"

namespace avoidforge {

namespace {

bool apply_op(Op op, bool a, bool b) {
  switch (op) {
    case Op::And: return a && b;
    case Op::Or: return a || b;
    case Op::Xor: return a != b;
    case Op::Not: return !a;
    default: return false;
  }
}

// Clause forbidding the given values of the given variables; nullopt if tautological.
std::optional<Clause> forbid(std::initializer_list<std::pair<std::size_t, bool>> vals) {
  Clause c;
  for (auto [v, val] : vals) {
    const Literal lit = val ? -static_cast<Literal>(v) : static_cast<Literal>(v);
    if (std::find(c.begin(), c.end(), -lit) != c.end()) return std::nullopt;
    if (std::find(c.begin(), c.end(), lit) == c.end()) c.push_back(lit);
  }
  return c;
}

}  // namespace

TauEncoding encode_tau_detailed(const Gf2Circuit& G, std::span<const std::uint8_t> b) {
  if (b.size() != G.m) throw Error(ErrorKind::LengthMismatch, "b must have m=" + std::to_string(G.m) + " bits");
  G.validate();
  TauEncoding enc;
  CnfFormula& f = enc.cnf;
  f.num_vars = G.n;
  for (std::size_t i = 0; i < G.n; ++i) f.var_names[i + 1] = "X(" + std::to_string(i + 1) + ")";
  enc.gate_var.resize(G.gates.size());
  for (std::size_t g = 0; g < G.gates.size(); ++g) {
    const Gate& gate = G.gates[g];
    if (gate.op == Op::Input) {
      enc.gate_var[g] = gate.a + 1;
    } else {
      enc.gate_var[g] = ++f.num_vars;
      f.var_names[f.num_vars] = "HIST(g" + std::to_string(g) + ")";
    }
  }
  enc.gate_clause_begin.reserve(G.gates.size() + 1);
  for (std::size_t g = 0; g < G.gates.size(); ++g) {
    enc.gate_clause_begin.push_back(f.clauses.size());
    const Gate& gate = G.gates[g];
    const std::size_t v = enc.gate_var[g];
    switch (gate.op) {
      case Op::Input: break;
      case Op::Const:
        f.clauses.push_back({gate.a ? static_cast<Literal>(v) : -static_cast<Literal>(v)});
        break;
      case Op::Not: {
        const std::size_t va = enc.gate_var[gate.a];
        for (bool pa : {false, true})
          if (auto c = forbid({{va, pa}, {v, pa}})) f.clauses.push_back(*c);
        break;
      }
      default: {
        const std::size_t va = enc.gate_var[gate.a], vb = enc.gate_var[gate.b];
        for (bool pa : {false, true})
          for (bool pb : {false, true})
            if (auto c = forbid({{va, pa}, {vb, pb}, {v, !apply_op(gate.op, pa, pb)}})) f.clauses.push_back(*c);
        break;
      }
    }
  }
  enc.gate_clause_begin.push_back(f.clauses.size());
  enc.output_clause_begin = f.clauses.size();
  for (std::size_t o = 0; o < G.m; ++o) {
    const auto v = static_cast<Literal>(enc.gate_var[G.outputs[o]]);
    f.clauses.push_back({b[o] ? v : -v});
  }
  return enc;
}

CnfFormula encode_tau(const Gf2Circuit& G, std::span<const std::uint8_t> b) {
  return std::move(encode_tau_detailed(G, b).cnf);
}

CnfFormula encode_student_loses(const Gf2Circuit& G, std::span<const Gf2Circuit> students) {
  const std::size_t k = students.size(), n = G.n;
  for (std::size_t i = 0; i < k; ++i) {
    if (students[i].n != i * n || students[i].m != G.m)
      throw Error(ErrorKind::DimMismatch, "student " + std::to_string(i + 1) + " must map " + std::to_string(i * n) +
                                              " bits to " + std::to_string(G.m));
  }
  CircuitBuilder b("student_loses", k * n);
  std::vector<GateId> q(k * n);
  for (std::size_t i = 0; i < k * n; ++i) q[i] = b.input(i);
  std::vector<GateId> outs;
  outs.reserve(k * G.m);
  for (std::size_t i = 0; i < k; ++i) {
    auto g = b.inline_circuit(G, std::span<const GateId>(q.data() + i * n, n));
    auto s = b.inline_circuit(students[i], std::span<const GateId>(q.data(), i * n));
    for (std::size_t j = 0; j < G.m; ++j) outs.push_back(b.xor_(g[j], s[j]));
  }
  Gf2Circuit host = std::move(b).finish(std::move(outs));
  CnfFormula f = encode_tau(host, BitVec(host.m, 0));
  for (std::size_t v = 1; v <= k * n; ++v)
    f.var_names[v] = "Q(" + std::to_string((v - 1) / n + 1) + "," + std::to_string((v - 1) % n + 1) + ")";
  return f;
}

std::vector<BitVec> decode_queries(std::span<const std::uint8_t> assignment, std::size_t k, std::size_t n) {
  if (assignment.size() < k * n + 1) throw Error(ErrorKind::LengthMismatch, "assignment too short");
  std::vector<BitVec> qs(k, BitVec(n));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) qs[i][j] = assignment[1 + i * n + j];
  return qs;
}

std::string emit_dimacs(const CnfFormula& f) {
  std::ostringstream os;
  for (const auto& [v, role] : f.var_names) os << "c var " << v << " " << role << "\n";
  os << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
  for (const auto& c : f.clauses) {
    for (auto lit : c) os << lit << " ";
    os << "0\n";
  }
  return os.str();
}

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  CnfFormula f;
  bool header = false;
  std::size_t declared = 0;
  Clause cur;
  while (std::getline(is, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") {
      std::string kw, role;
      std::size_t v;
      if (ls >> kw && kw == "var" && ls >> v >> role) f.var_names[v] = role;
      continue;
    }
    if (tok == "p") {
      std::string fmt;
      if (header || !(ls >> fmt >> f.num_vars >> declared) || fmt != "cnf")
        throw Error(ErrorKind::SyntaxError, "bad problem line", line_no);
      header = true;
      continue;
    }
    if (!header) throw Error(ErrorKind::SyntaxError, "clause before problem line", line_no);
    do {
      Literal lit;
      try {
        std::size_t used;
        lit = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::SyntaxError, "bad literal '" + tok + "'", line_no);
      }
      if (lit == 0) {
        f.clauses.push_back(std::move(cur));
        cur.clear();
      } else {
        if (static_cast<std::size_t>(std::abs(lit)) > f.num_vars)
          throw Error(ErrorKind::IndexOutOfRange, "literal " + tok + " exceeds variable count", line_no);
        cur.push_back(lit);
      }
    } while (ls >> tok);
  }
  if (!header) throw Error(ErrorKind::SyntaxError, "missing problem line", line_no);
  if (!cur.empty()) throw Error(ErrorKind::SyntaxError, "last clause not 0-terminated", line_no);
  if (f.clauses.size() != declared)
    throw Error(ErrorKind::SyntaxError, "header declares " + std::to_string(declared) + " clauses, found " +
                                            std::to_string(f.clauses.size()), line_no);
  return f;
}

bool satisfies(const CnfFormula& f, std::span<const std::uint8_t> assignment) {
  if (assignment.size() != f.num_vars + 1) throw Error(ErrorKind::LengthMismatch, "assignment must cover every variable");
  for (const auto& c : f.clauses) {
    bool ok = false;
    for (auto lit : c)
      if ((assignment[std::abs(lit)] != 0) == (lit > 0)) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

namespace {

class Dpll {
 public:
  Dpll(const CnfFormula& f, std::vector<std::size_t> order) : f_(f), order_(std::move(order)), val_(f.num_vars + 1, -1) {
    occurs_.resize(f.num_vars + 1);
    for (std::size_t c = 0; c < f.clauses.size(); ++c)
      for (auto lit : f.clauses[c]) occurs_[std::abs(lit)].push_back(c);
  }

  bool solve() {
    std::vector<std::size_t> all(f_.clauses.size());
    for (std::size_t c = 0; c < all.size(); ++c) all[c] = c;
    std::vector<std::size_t> trail;
    if (!propagate(all, trail)) return false;
    return search();
  }

  std::vector<std::uint8_t> assignment() const {
    std::vector<std::uint8_t> a(val_.size(), 0);
    for (std::size_t v = 1; v < val_.size(); ++v) a[v] = val_[v] == 1;
    return a;
  }

 private:
  // Status of clause c: 1 satisfied, 0 conflict, 2 unit (sets *unit), 3 open.
  int status(std::size_t c, Literal* unit) const {
    int free = 0;
    for (auto lit : f_.clauses[c]) {
      const int v = val_[std::abs(lit)];
      if (v < 0) {
        ++free;
        *unit = lit;
      } else if ((v == 1) == (lit > 0)) {
        return 1;
      }
    }
    return free == 0 ? 0 : free == 1 ? 2 : 3;
  }

  bool propagate(std::vector<std::size_t> queue, std::vector<std::size_t>& trail) {
    while (!queue.empty()) {
      const std::size_t c = queue.back();
      queue.pop_back();
      Literal unit = 0;
      const int st = status(c, &unit);
      if (st == 0) return false;
      if (st != 2) continue;
      const auto v = static_cast<std::size_t>(std::abs(unit));
      val_[v] = unit > 0 ? 1 : 0;
      trail.push_back(v);
      for (auto d : occurs_[v]) queue.push_back(d);
    }
    return true;
  }

  bool search() {
    std::size_t pick = 0;
    for (auto v : order_)
      if (val_[v] < 0) {
        pick = v;
        break;
      }
    if (pick == 0) {
      for (std::size_t v = 1; v < val_.size(); ++v)
        if (val_[v] < 0) {
          pick = v;
          break;
        }
    }
    if (pick == 0) return true;
    for (int value : {0, 1}) {
      std::vector<std::size_t> trail{pick};
      val_[pick] = value;
      if (propagate(occurs_[pick], trail) && search()) return true;
      for (auto v : trail) val_[v] = -1;
    }
    return false;
  }

  const CnfFormula& f_;
  std::vector<std::size_t> order_;
  std::vector<int> val_;
  std::vector<std::vector<std::size_t>> occurs_;
};

}  // namespace

SatResult brute_force_sat(const CnfFormula& f, std::size_t free_var_budget) {
  for (const auto& c : f.clauses)
    for (auto lit : c)
      if (lit == 0 || static_cast<std::size_t>(std::abs(lit)) > f.num_vars)
        throw Error(ErrorKind::IndexOutOfRange, "literal out of range");
  std::vector<std::size_t> decision;
  for (const auto& [v, role] : f.var_names)
    if (role.starts_with("X(") || role.starts_with("Q(")) decision.push_back(v);
  if (f.var_names.empty())
    for (std::size_t v = 1; v <= f.num_vars; ++v) decision.push_back(v);
  if (decision.size() > free_var_budget)
    throw Error(ErrorKind::BudgetExceeded, std::to_string(decision.size()) + " decision variables exceed budget " +
                                               std::to_string(free_var_budget));
  Dpll solver(f, decision);
  SatResult r;
  r.sat = solver.solve();
  if (r.sat) {
    r.assignment = solver.assignment();
    if (!satisfies(f, r.assignment)) throw Error(ErrorKind::BadArgument, "internal: SAT assignment fails a clause");
  }
  return r;
}

bool range_membership(const Gf2Circuit& G, std::span<const std::uint8_t> b) {
  if (b.size() != G.m) throw Error(ErrorKind::LengthMismatch, "b must have m bits");
  if (G.n > kernels::kMaxEnumInputs) throw Error(ErrorKind::BudgetExceeded, "range membership needs n <= 24");
  return RangeTable(G).contains(b);
}

}  // namespace avoidforge
