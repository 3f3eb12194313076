#include "avoidforge/gf2core.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>

#include "avoidforge/error.hpp"

namespace avoidforge {

const char* to_string(Op op) {
  switch (op) {
    case Op::Input: return "INPUT";
    case Op::Const: return "CONST";
    case Op::Not: return "NOT";
    case Op::And: return "AND";
    case Op::Or: return "OR";
    case Op::Xor: return "XOR";
  }
  return "?";
}

std::size_t arity(Op op) {
  switch (op) {
    case Op::Input:
    case Op::Const: return 0;
    case Op::Not: return 1;
    default: return 2;
  }
}

void Gf2Circuit::validate() const {
  for (std::size_t g = 0; g < gates.size(); ++g) {
    const Gate& gate = gates[g];
    switch (gate.op) {
      case Op::Input:
        if (gate.a >= n) throw Error(ErrorKind::IndexOutOfRange, "INPUT index out of range in gate " + std::to_string(g));
        break;
      case Op::Const:
        if (gate.a > 1) throw Error(ErrorKind::BadArity, "CONST must be 0 or 1");
        break;
      case Op::Not:
        if (gate.a >= g) throw Error(ErrorKind::UndefinedGate, "operand of gate " + std::to_string(g) + " is not earlier");
        break;
      default:
        if (gate.a >= g || gate.b >= g)
          throw Error(ErrorKind::UndefinedGate, "operand of gate " + std::to_string(g) + " is not earlier");
    }
  }
  if (outputs.size() != m) throw Error(ErrorKind::MissingOutput, "output map has wrong size");
  for (GateId o : outputs)
    if (o >= gates.size()) throw Error(ErrorKind::UndefinedGate, "output refers to unknown gate");
}

// ---------------------------------------------------------------------------
// Builder

CircuitBuilder::CircuitBuilder(std::string name, std::size_t n) {
  circuit_.name = std::move(name);
  circuit_.n = n;
}

GateId CircuitBuilder::gate(Op op, std::uint32_t a, std::uint32_t b) {
  auto id = static_cast<GateId>(circuit_.gates.size());
  switch (op) {
    case Op::Input:
      if (a >= circuit_.n) throw Error(ErrorKind::IndexOutOfRange, "INPUT index " + std::to_string(a));
      b = 0;
      break;
    case Op::Const:
      if (a > 1) throw Error(ErrorKind::BadArity, "CONST must be 0 or 1");
      b = 0;
      break;
    case Op::Not:
      if (a >= id) throw Error(ErrorKind::UndefinedGate, "NOT operand not yet defined");
      b = 0;
      break;
    default:
      if (a >= id || b >= id) throw Error(ErrorKind::UndefinedGate, "operand not yet defined");
  }
  circuit_.gates.push_back(Gate{op, a, b});
  return id;
}

GateId CircuitBuilder::input(std::size_t index) { return gate(Op::Input, static_cast<std::uint32_t>(index)); }
GateId CircuitBuilder::constant(bool bit) { return gate(Op::Const, bit ? 1u : 0u); }
GateId CircuitBuilder::not_(GateId a) { return gate(Op::Not, a); }
GateId CircuitBuilder::and_(GateId a, GateId b) { return gate(Op::And, a, b); }
GateId CircuitBuilder::or_(GateId a, GateId b) { return gate(Op::Or, a, b); }
GateId CircuitBuilder::xor_(GateId a, GateId b) { return gate(Op::Xor, a, b); }

std::vector<GateId> CircuitBuilder::inline_circuit(const Gf2Circuit& sub, std::span<const GateId> wires) {
  if (wires.size() != sub.n) throw Error(ErrorKind::DimMismatch, "inline_circuit: wire count differs from input count");
  std::vector<GateId> map(sub.gates.size());
  for (std::size_t g = 0; g < sub.gates.size(); ++g) {
    const Gate& gate = sub.gates[g];
    switch (gate.op) {
      case Op::Input: map[g] = wires[gate.a]; break;
      case Op::Const: map[g] = constant(gate.a != 0); break;
      case Op::Not: map[g] = not_(map[gate.a]); break;
      default: map[g] = this->gate(gate.op, map[gate.a], map[gate.b]);
    }
  }
  std::vector<GateId> outs;
  outs.reserve(sub.m);
  for (GateId o : sub.outputs) outs.push_back(map[o]);
  return outs;
}

Gf2Circuit CircuitBuilder::finish(std::vector<GateId> outputs) && {
  for (GateId o : outputs)
    if (o >= circuit_.gates.size()) throw Error(ErrorKind::UndefinedGate, "output refers to unknown gate");
  circuit_.m = outputs.size();
  circuit_.outputs = std::move(outputs);
  return std::move(circuit_);
}

// ---------------------------------------------------------------------------
// Netlist text

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::uint64_t> to_uint(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct NetlistParser {
  std::string name = "c";
  std::optional<std::size_t> n, m;
  std::size_t m_line = 0;
  std::vector<Gate> gates;
  std::map<std::string, GateId, std::less<>> names;
  std::vector<std::optional<GateId>> outputs;

  std::uint64_t number(std::string_view tok, std::size_t line) {
    auto v = to_uint(tok);
    if (!v) throw Error(ErrorKind::SyntaxError, "expected a number, got '" + std::string(tok) + "'", line);
    return *v;
  }

  GateId operand(std::string_view tok, std::size_t line) {
    auto it = names.find(tok);
    if (it == names.end()) throw Error(ErrorKind::UndefinedGate, "gate '" + std::string(tok) + "' is not declared before use", line);
    return it->second;
  }

  static bool is_gate_name(std::string_view tok) {
    return tok.size() >= 2 && tok[0] == 'g' && to_uint(tok.substr(1)).has_value();
  }

  void statement(const std::vector<std::string_view>& t, std::size_t line) {
    const std::string_view kw = t[0];
    if (kw == "circuit") {
      if (t.size() != 2) throw Error(ErrorKind::SyntaxError, "expected 'circuit <name>'", line);
      name = std::string(t[1]);
    } else if (kw == "inputs") {
      if (t.size() != 2) throw Error(ErrorKind::SyntaxError, "expected 'inputs <n>'", line);
      if (n) throw Error(ErrorKind::SyntaxError, "duplicate inputs declaration", line);
      n = number(t[1], line);
    } else if (kw == "outputs") {
      if (t.size() != 2) throw Error(ErrorKind::SyntaxError, "expected 'outputs <m>'", line);
      if (m) throw Error(ErrorKind::SyntaxError, "duplicate outputs declaration", line);
      m = number(t[1], line);
      m_line = line;
      outputs.assign(*m, std::nullopt);
    } else if (kw == "gate") {
      gate_statement(t, line);
    } else if (kw == "output") {
      if (t.size() != 4 || t[2] != "=") throw Error(ErrorKind::SyntaxError, "expected 'output <o> = g<k>'", line);
      if (!m) throw Error(ErrorKind::SyntaxError, "output before 'outputs' declaration", line);
      auto o = number(t[1], line);
      if (o >= *m) throw Error(ErrorKind::SyntaxError, "output index " + std::to_string(o) + " out of range", line);
      if (outputs[o]) throw Error(ErrorKind::DuplicateOutput, "output " + std::to_string(o) + " assigned twice", line);
      outputs[o] = operand(t[3], line);
    } else {
      throw Error(ErrorKind::SyntaxError, "unknown statement '" + std::string(kw) + "'", line);
    }
  }

  void gate_statement(const std::vector<std::string_view>& t, std::size_t line) {
    if (t.size() < 4 || t[2] != "=") throw Error(ErrorKind::SyntaxError, "expected 'gate g<k> = OP ...'", line);
    if (!is_gate_name(t[1])) throw Error(ErrorKind::SyntaxError, "gate names must look like g<k>", line);
    if (names.count(t[1])) throw Error(ErrorKind::SyntaxError, "gate '" + std::string(t[1]) + "' declared twice", line);
    const std::string_view op = t[3];
    const std::size_t args = t.size() - 4;
    Gate gate;
    auto expect = [&](std::size_t k) {
      if (args != k)
        throw Error(ErrorKind::BadArity, std::string(op) + " takes " + std::to_string(k) + " operand(s), got " + std::to_string(args), line);
    };
    if (op == "INPUT") {
      expect(1);
      if (!n) throw Error(ErrorKind::SyntaxError, "INPUT before 'inputs' declaration", line);
      auto i = number(t[4], line);
      if (i >= *n) throw Error(ErrorKind::SyntaxError, "input index " + std::to_string(i) + " out of range", line);
      gate = Gate{Op::Input, static_cast<std::uint32_t>(i), 0};
    } else if (op == "CONST") {
      expect(1);
      auto v = number(t[4], line);
      if (v > 1) throw Error(ErrorKind::SyntaxError, "CONST takes 0 or 1", line);
      gate = Gate{Op::Const, static_cast<std::uint32_t>(v), 0};
    } else if (op == "NOT") {
      expect(1);
      gate = Gate{Op::Not, operand(t[4], line), 0};
    } else if (op == "AND" || op == "OR" || op == "XOR") {
      expect(2);
      Op o = op == "AND" ? Op::And : op == "OR" ? Op::Or : Op::Xor;
      gate = Gate{o, operand(t[4], line), operand(t[5], line)};
    } else {
      throw Error(ErrorKind::SyntaxError, "unknown gate op '" + std::string(op) + "'", line);
    }
    names.emplace(std::string(t[1]), static_cast<GateId>(gates.size()));
    gates.push_back(gate);
  }
};

}  // namespace

Gf2Circuit parse_netlist(std::string_view text) {
  NetlistParser p;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t s = 0;
    while (s <= line.size()) {
      std::size_t semi = line.find(';', s);
      if (semi == std::string_view::npos) semi = line.size();
      auto toks = split_ws(line.substr(s, semi - s));
      if (!toks.empty()) p.statement(toks, line_no);
      s = semi + 1;
    }
    pos = eol + 1;
  }
  if (!p.n) throw Error(ErrorKind::SyntaxError, "missing 'inputs' declaration", line_no);
  if (!p.m) throw Error(ErrorKind::SyntaxError, "missing 'outputs' declaration", line_no);
  Gf2Circuit c;
  c.name = p.name;
  c.n = *p.n;
  c.m = *p.m;
  c.gates = std::move(p.gates);
  c.outputs.reserve(c.m);
  for (std::size_t o = 0; o < c.m; ++o) {
    if (!p.outputs[o]) throw Error(ErrorKind::MissingOutput, "output " + std::to_string(o) + " is never assigned", p.m_line);
    c.outputs.push_back(*p.outputs[o]);
  }
  return c;
}

std::string emit_netlist(const Gf2Circuit& c) {
  std::ostringstream os;
  os << "circuit " << c.name << "\n";
  os << "inputs " << c.n << "\n";
  os << "outputs " << c.m << "\n";
  for (std::size_t g = 0; g < c.gates.size(); ++g) {
    const Gate& gate = c.gates[g];
    os << "gate g" << g + 1 << " = " << to_string(gate.op);
    switch (gate.op) {
      case Op::Input:
      case Op::Const: os << ' ' << gate.a; break;
      case Op::Not: os << " g" << gate.a + 1; break;
      default: os << " g" << gate.a + 1 << " g" << gate.b + 1;
    }
    os << "\n";
  }
  for (std::size_t o = 0; o < c.m; ++o) os << "output " << o << " = g" << c.outputs[o] + 1 << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Evaluation

BitVec eval_gates(const Gf2Circuit& c, std::span<const std::uint8_t> x) {
  if (x.size() != c.n)
    throw Error(ErrorKind::LengthMismatch, "input has " + std::to_string(x.size()) + " bits, circuit expects " + std::to_string(c.n));
  BitVec v(c.gates.size());
  for (std::size_t g = 0; g < c.gates.size(); ++g) {
    const Gate& gate = c.gates[g];
    switch (gate.op) {
      case Op::Input: v[g] = x[gate.a] & 1u; break;
      case Op::Const: v[g] = static_cast<std::uint8_t>(gate.a); break;
      case Op::Not: v[g] = v[gate.a] ^ 1u; break;
      case Op::And: v[g] = v[gate.a] & v[gate.b]; break;
      case Op::Or: v[g] = v[gate.a] | v[gate.b]; break;
      case Op::Xor: v[g] = v[gate.a] ^ v[gate.b]; break;
    }
  }
  return v;
}

BitVec eval_circuit(const Gf2Circuit& c, std::span<const std::uint8_t> x) {
  BitVec v = eval_gates(c, x);
  BitVec out(c.m);
  for (std::size_t o = 0; o < c.m; ++o) out[o] = v[c.outputs[o]];
  return out;
}

// ---------------------------------------------------------------------------
// Degree and polynomials

static std::vector<std::size_t> gate_degrees(const Gf2Circuit& c) {
  std::vector<std::size_t> deg(c.gates.size());
  for (std::size_t g = 0; g < c.gates.size(); ++g) {
    const Gate& gate = c.gates[g];
    switch (gate.op) {
      case Op::Input: deg[g] = 1; break;
      case Op::Const: deg[g] = 0; break;
      case Op::Not: deg[g] = deg[gate.a]; break;
      case Op::Xor: deg[g] = std::max(deg[gate.a], deg[gate.b]); break;
      case Op::And:
      case Op::Or: deg[g] = deg[gate.a] + deg[gate.b]; break;
    }
  }
  return deg;
}

std::size_t gate_degree(const Gf2Circuit& c, GateId g) { return gate_degrees(c).at(g); }

std::size_t circuit_degree(const Gf2Circuit& c) {
  auto deg = gate_degrees(c);
  std::size_t d = 0;
  for (GateId o : c.outputs) d = std::max(d, deg[o]);
  return d;
}

std::size_t SparsePoly::degree() const {
  std::size_t d = 0;
  for (const auto& mono : monomials) d = std::max(d, mono.size());
  return d;
}

std::uint8_t SparsePoly::eval(std::span<const std::uint8_t> x) const {
  std::uint8_t acc = 0;
  for (const auto& mono : monomials) {
    std::uint8_t term = 1;
    for (auto v : mono) term &= x[v];
    acc ^= term;
  }
  return acc;
}

namespace {

using Monomial = std::vector<std::uint32_t>;
using MonoSet = std::set<Monomial>;

void toggle(MonoSet& s, const Monomial& mono) {
  auto [it, inserted] = s.insert(mono);
  if (!inserted) s.erase(it);
}

MonoSet add(const MonoSet& a, const MonoSet& b) {
  MonoSet out = a;
  for (const auto& mono : b) toggle(out, mono);
  return out;
}

MonoSet mul(const MonoSet& a, const MonoSet& b) {
  MonoSet out;
  Monomial merged;
  for (const auto& x : a) {
    for (const auto& y : b) {
      merged.clear();
      std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(merged));
      toggle(out, merged);
    }
  }
  return out;
}

}  // namespace

std::vector<SparsePoly> circuit_to_polynomials(const Gf2Circuit& c, std::size_t budget) {
  std::vector<MonoSet> poly(c.gates.size());
  std::size_t total = 0;
  auto charge = [&](std::size_t k) {
    total += k;
    if (total > budget) throw Error(ErrorKind::BudgetExceeded, "monomial budget of " + std::to_string(budget) + " exceeded");
  };
  const MonoSet one{Monomial{}};
  for (std::size_t g = 0; g < c.gates.size(); ++g) {
    const Gate& gate = c.gates[g];
    switch (gate.op) {
      case Op::Input: poly[g] = MonoSet{Monomial{gate.a}}; break;
      case Op::Const: poly[g] = gate.a ? one : MonoSet{}; break;
      case Op::Not: poly[g] = add(poly[gate.a], one); break;
      case Op::Xor: poly[g] = add(poly[gate.a], poly[gate.b]); break;
      case Op::And:
        charge(poly[gate.a].size() * poly[gate.b].size());
        poly[g] = mul(poly[gate.a], poly[gate.b]);
        break;
      case Op::Or:
        // x | y = x + y + xy
        charge(poly[gate.a].size() * poly[gate.b].size());
        poly[g] = add(add(poly[gate.a], poly[gate.b]), mul(poly[gate.a], poly[gate.b]));
        break;
    }
    charge(poly[g].size());
  }
  std::vector<SparsePoly> out(c.m);
  for (std::size_t o = 0; o < c.m; ++o) out[o].monomials = poly[c.outputs[o]];
  return out;
}

// ---------------------------------------------------------------------------
// Linear layer

Gf2Circuit append_linear_layer(const Gf2Circuit& c, std::span<const XorRow> rows) {
  Gf2Circuit out = c;
  out.outputs.clear();
  auto emit = [&](Op op, std::uint32_t a, std::uint32_t b) {
    out.gates.push_back(Gate{op, a, b});
    return static_cast<GateId>(out.gates.size() - 1);
  };
  for (const XorRow& row : rows) {
    for (auto idx : row.indices)
      if (idx >= c.m) throw Error(ErrorKind::IndexOutOfRange, "linear row selects output " + std::to_string(idx) + " of " + std::to_string(c.m));
    GateId acc;
    if (row.indices.empty()) {
      // Empty row: a constant output rather than an error.
      acc = emit(Op::Const, row.constant ? 1u : 0u, 0);
    } else {
      acc = c.outputs[row.indices[0]];
      for (std::size_t k = 1; k < row.indices.size(); ++k) acc = emit(Op::Xor, acc, c.outputs[row.indices[k]]);
      if (row.constant) acc = emit(Op::Not, acc, 0);
    }
    out.outputs.push_back(acc);
  }
  out.m = rows.size();
  return out;
}

std::vector<std::uint32_t> input_cone(const Gf2Circuit& c, GateId g) {
  std::vector<std::uint8_t> seen(c.gates.size(), 0);
  std::vector<GateId> stack{g};
  std::vector<std::uint32_t> inputs;
  while (!stack.empty()) {
    GateId cur = stack.back();
    stack.pop_back();
    if (seen[cur]) continue;
    seen[cur] = 1;
    const Gate& gate = c.gates[cur];
    switch (gate.op) {
      case Op::Input: inputs.push_back(gate.a); break;
      case Op::Const: break;
      case Op::Not: stack.push_back(gate.a); break;
      default:
        stack.push_back(gate.a);
        stack.push_back(gate.b);
    }
  }
  std::sort(inputs.begin(), inputs.end());
  inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());
  return inputs;
}

Gf2Circuit random_circuit(std::size_t n, std::size_t m, std::size_t internal_gates, std::uint64_t seed) {
  Rng rng(seed);
  CircuitBuilder b("random", n);
  for (std::size_t i = 0; i < n; ++i) b.input(i);
  for (std::size_t k = 0; k < internal_gates; ++k) {
    const auto size = static_cast<std::uint32_t>(b.size());
    const auto roll = rng.below(16);
    if (size == 0 || roll == 0) {
      b.constant(rng.bit());
      continue;
    }
    auto pick = [&] { return static_cast<GateId>(rng.below(size)); };
    if (roll <= 2) b.not_(pick());
    else if (roll <= 7) b.xor_(pick(), pick());
    else if (roll <= 12) b.and_(pick(), pick());
    else b.or_(pick(), pick());
  }
  if (b.size() == 0) b.constant(false);
  // Outputs prefer the most recent gates so most of the circuit is live.
  std::vector<GateId> outs(m);
  const std::size_t size = b.size();
  const std::size_t window = std::max<std::size_t>(1, std::min(size, internal_gates > 0 ? internal_gates : size));
  for (auto& o : outs) o = static_cast<GateId>(size - 1 - rng.below(window));
  return std::move(b).finish(std::move(outs));
}

}  // namespace avoidforge
