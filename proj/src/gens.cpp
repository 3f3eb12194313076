#include "avoidforge/gens.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "avoidforge/error.hpp"

namespace avoidforge {

// ---------------------------------------------------------------------------
// Hypergraphs and Goldreich's generator

void Hypergraph::validate() const {
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& edge = edges[e];
    if (edge.size() != d) throw Error(ErrorKind::ArityMismatch, "edge " + std::to_string(e) + " does not have d entries");
    for (std::size_t a = 0; a < edge.size(); ++a) {
      if (edge[a] >= n) throw Error(ErrorKind::IndexOutOfRange, "edge " + std::to_string(e) + " has a vertex >= n");
      for (std::size_t b = a + 1; b < edge.size(); ++b)
        if (edge[a] == edge[b]) throw Error(ErrorKind::BadArgument, "edge " + std::to_string(e) + " repeats a vertex");
    }
  }
}

Hypergraph sample_hypergraph(std::size_t n, std::size_t m, std::size_t d, std::uint64_t seed) {
  if (d > n) throw Error(ErrorKind::DTooLarge, "edge size " + std::to_string(d) + " exceeds vertex count " + std::to_string(n));
  Rng rng(seed);
  Hypergraph g{n, d, {}};
  g.edges.reserve(m);
  for (std::size_t e = 0; e < m; ++e) {
    std::vector<std::uint32_t> edge;
    edge.reserve(d);
    while (edge.size() < d) {
      auto v = static_cast<std::uint32_t>(rng.below(n));
      if (std::find(edge.begin(), edge.end(), v) == edge.end()) edge.push_back(v);
    }
    g.edges.push_back(std::move(edge));
  }
  return g;
}

std::string emit_hypergraph(const Hypergraph& g) {
  std::ostringstream os;
  os << "hypergraph n=" << g.n << " d=" << g.d << "\n";
  for (const auto& edge : g.edges) {
    for (std::size_t k = 0; k < edge.size(); ++k) os << (k ? " " : "") << edge[k];
    os << "\n";
  }
  return os.str();
}

Hypergraph parse_hypergraph(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  Hypergraph g;
  bool header = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (!header) {
      std::string n_tok, d_tok;
      if (tok != "hypergraph" || !(ls >> n_tok >> d_tok) || n_tok.rfind("n=", 0) != 0 || d_tok.rfind("d=", 0) != 0)
        throw Error(ErrorKind::SyntaxError, "expected 'hypergraph n=<n> d=<d>'", line_no);
      g.n = std::stoul(n_tok.substr(2));
      g.d = std::stoul(d_tok.substr(2));
      header = true;
      continue;
    }
    std::vector<std::uint32_t> edge;
    do {
      try {
        edge.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
      } catch (const std::exception&) {
        throw Error(ErrorKind::SyntaxError, "bad vertex '" + tok + "'", line_no);
      }
    } while (ls >> tok);
    g.edges.push_back(std::move(edge));
  }
  if (!header) throw Error(ErrorKind::SyntaxError, "missing hypergraph header", line_no);
  g.validate();
  return g;
}

Gf2Circuit mst06_predicate() {
  CircuitBuilder b("p_mst06", 5);
  GateId x[5];
  for (std::size_t i = 0; i < 5; ++i) x[i] = b.input(i);
  GateId lin = b.xor_(b.xor_(x[0], x[1]), x[2]);
  GateId quad = b.and_(x[3], x[4]);
  return std::move(b).finish({b.xor_(lin, quad)});
}

Gf2Circuit build_goldreich(const Hypergraph& g, const Gf2Circuit& predicate) {
  g.validate();
  if (predicate.n != g.d || predicate.m != 1)
    throw Error(ErrorKind::ArityMismatch, "predicate must have d = " + std::to_string(g.d) + " inputs and one output");
  CircuitBuilder b("goldreich", g.n);
  std::vector<GateId> inputs(g.n);
  for (std::size_t i = 0; i < g.n; ++i) inputs[i] = b.input(i);
  std::vector<GateId> outs;
  outs.reserve(g.edges.size());
  std::vector<GateId> wires(g.d);
  for (const auto& edge : g.edges) {
    for (std::size_t k = 0; k < g.d; ++k) wires[k] = inputs[edge[k]];
    outs.push_back(b.inline_circuit(predicate, wires).front());
  }
  return std::move(b).finish(std::move(outs));
}

// ---------------------------------------------------------------------------
// Sparse encoder

namespace {

using u128 = unsigned __int128;

u128 sat_pow(u128 base, std::size_t exp) {
  const u128 cap = static_cast<u128>(1) << 100;
  u128 r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    r *= base;
    if (r > cap) return cap;
  }
  return r;
}

std::size_t digit(std::size_t j, std::size_t t, std::size_t base) {
  for (std::size_t k = 0; k < t; ++k) j /= base;
  return j % base;
}

std::size_t selector_index(std::size_t slot, std::size_t block, std::size_t value, std::size_t d, std::size_t base) {
  return (slot * d + block) * base + value;
}

void check_encoder_args(std::size_t m, std::size_t s, std::size_t d) {
  if (m == 0 || d == 0) throw Error(ErrorKind::BadArgument, "encoder needs m >= 1 and d >= 1");
  if (!encoder_applicable(m, s, d))
    throw Error(ErrorKind::SparsityTooLarge, "sparsity " + std::to_string(s) + " exceeds m^(1-1/d)/d for m=" +
                                                 std::to_string(m) + " d=" + std::to_string(d));
}

}  // namespace

std::size_t encoder_base(std::size_t m, std::size_t d) {
  std::size_t b = 1;
  while (sat_pow(b, d) < m) ++b;
  return b;
}

bool encoder_applicable(std::size_t m, std::size_t s, std::size_t d) {
  if (d == 0) return false;
  return sat_pow(static_cast<u128>(s) * d, d) <= sat_pow(m, d - 1);
}

std::size_t encoder_input_length(std::size_t m, std::size_t s, std::size_t d) { return s * d * encoder_base(m, d); }

Gf2Circuit build_sparse_encoder(std::size_t m, std::size_t s, std::size_t d) {
  check_encoder_args(m, s, d);
  const std::size_t base = encoder_base(m, d);
  const std::size_t len = s * d * base;
  CircuitBuilder b("sparse_encoder", len);
  std::vector<GateId> in(len);
  for (std::size_t i = 0; i < len; ++i) in[i] = b.input(i);
  std::vector<GateId> outs;
  outs.reserve(m);
  std::optional<GateId> zero;
  for (std::size_t j = 0; j < m; ++j) {
    std::optional<GateId> acc;
    for (std::size_t slot = 0; slot < s; ++slot) {
      GateId prod = in[selector_index(slot, 0, digit(j, 0, base), d, base)];
      for (std::size_t t = 1; t < d; ++t) prod = b.and_(prod, in[selector_index(slot, t, digit(j, t, base), d, base)]);
      acc = acc ? b.xor_(*acc, prod) : prod;
    }
    if (!acc) {
      if (!zero) zero = b.constant(false);
      acc = zero;
    }
    outs.push_back(*acc);
  }
  return std::move(b).finish(std::move(outs));
}

BitVec sparse_preimage(std::size_t m, std::size_t s, std::size_t d, std::span<const std::uint8_t> v) {
  check_encoder_args(m, s, d);
  if (v.size() != m) throw Error(ErrorKind::LengthMismatch, "target vector must have m bits");
  if (weight(v) > s) throw Error(ErrorKind::WeightTooLarge, "target weight exceeds sparsity " + std::to_string(s));
  const std::size_t base = encoder_base(m, d);
  BitVec out(s * d * base, 0);
  // One slot per set coordinate; unused slots stay all-zero and contribute nothing.
  std::size_t slot = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (!v[j]) continue;
    for (std::size_t t = 0; t < d; ++t) out[selector_index(slot, t, digit(j, t, base), d, base)] = 1;
    ++slot;
  }
  return out;
}

// ---------------------------------------------------------------------------
// LPN generator

void LpnParams::validate() const {
  if (mu_den == 0 || mu_num == 0 || mu_num >= mu_den) throw Error(ErrorKind::BadArgument, "noise rate must lie in (0,1)");
  if (A.size() != m) throw Error(ErrorKind::DimMismatch, "A must have m rows");
  for (const auto& row : A)
    if (row.size() != n) throw Error(ErrorKind::DimMismatch, "every row of A must have n entries");
  if (!encoder_applicable(m, sparsity(), d))
    throw Error(ErrorKind::SparsityTooLarge, "floor(mu m) = " + std::to_string(sparsity()) + " exceeds m^(1-1/d)/d");
}

LpnParams sample_lpn_params(std::size_t n, std::size_t m, std::uint64_t mu_num, std::uint64_t mu_den, std::size_t d,
                            std::uint64_t seed) {
  Rng rng(seed);
  LpnParams p{n, m, mu_num, mu_den, d, {}};
  p.A.reserve(m);
  for (std::size_t j = 0; j < m; ++j) p.A.push_back(rng.bits(n));
  p.validate();
  return p;
}

Gf2Circuit build_lpn_generator(const LpnParams& p) {
  p.validate();
  const Gf2Circuit encoder = build_sparse_encoder(p.m, p.sparsity(), p.d);
  const std::size_t enc_len = encoder.n;
  CircuitBuilder b("lpn", enc_len + p.n);
  std::vector<GateId> in(enc_len + p.n);
  for (std::size_t i = 0; i < in.size(); ++i) in[i] = b.input(i);
  auto noise = b.inline_circuit(encoder, std::span<const GateId>(in.data(), enc_len));
  std::vector<GateId> outs;
  outs.reserve(p.m);
  for (std::size_t j = 0; j < p.m; ++j) {
    std::optional<GateId> acc;
    for (std::size_t k = 0; k < p.n; ++k)
      if (p.A[j][k]) acc = acc ? b.xor_(*acc, in[enc_len + k]) : in[enc_len + k];
    outs.push_back(acc ? b.xor_(*acc, noise[j]) : noise[j]);
  }
  return std::move(b).finish(std::move(outs));
}

BitVec lpn_preimage(const LpnParams& p, std::span<const std::uint8_t> secret, std::span<const std::uint8_t> noise) {
  if (secret.size() != p.n) throw Error(ErrorKind::LengthMismatch, "secret must have n bits");
  BitVec out = sparse_preimage(p.m, p.sparsity(), p.d, noise);
  out.insert(out.end(), secret.begin(), secret.end());
  return out;
}

std::string emit_lpn_params(const LpnParams& p) {
  std::ostringstream os;
  os << "lpn n=" << p.n << " m=" << p.m << " mu=" << p.mu_num << "/" << p.mu_den << " d=" << p.d << "\n";
  for (const auto& row : p.A) os << "row " << to_hex(row) << "\n";
  return os.str();
}

LpnParams parse_lpn_params(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  LpnParams p;
  bool header = false;
  while (std::getline(is, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    if (!header) {
      if (tok != "lpn") throw Error(ErrorKind::SyntaxError, "expected 'lpn n= m= mu= d='", line_no);
      std::string kv;
      while (ls >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::SyntaxError, "expected key=value", line_no);
        auto key = kv.substr(0, eq), val = kv.substr(eq + 1);
        try {
          if (key == "n") p.n = std::stoul(val);
          else if (key == "m") p.m = std::stoul(val);
          else if (key == "d") p.d = std::stoul(val);
          else if (key == "mu") {
            auto slash = val.find('/');
            if (slash == std::string::npos) throw Error(ErrorKind::SyntaxError, "mu must be p/q", line_no);
            p.mu_num = std::stoull(val.substr(0, slash));
            p.mu_den = std::stoull(val.substr(slash + 1));
          } else throw Error(ErrorKind::SyntaxError, "unknown lpn key '" + key + "'", line_no);
        } catch (const std::logic_error&) {
          throw Error(ErrorKind::SyntaxError, "bad value for '" + key + "'", line_no);
        }
      }
      header = true;
      continue;
    }
    std::string hex;
    if (tok != "row" || !(ls >> hex)) throw Error(ErrorKind::SyntaxError, "expected 'row <hex>'", line_no);
    p.A.push_back(from_hex(hex, p.n));
  }
  if (!header) throw Error(ErrorKind::SyntaxError, "missing lpn header", line_no);
  p.validate();
  return p;
}

// ---------------------------------------------------------------------------
// Truth-table generator

std::size_t TtSpec::index_bits() const { return ceil_log2(s + n); }
std::size_t TtSpec::description_length() const { return s * (2 + 2 * index_bits()); }

BitVec tt_evaluate(const TtSpec& spec, std::span<const std::uint8_t> desc) {
  if (spec.n == 0 || spec.s == 0) throw Error(ErrorKind::BadArgument, "truth-table generator needs n >= 1 and s >= 1");
  if (spec.n > 20) throw Error(ErrorKind::BudgetExceeded, "truth tables limited to n <= 20");
  if (desc.size() != spec.description_length())
    throw Error(ErrorKind::LengthMismatch, "description must have " + std::to_string(spec.description_length()) + " bits");
  const std::size_t rows = spec.output_length();
  const std::size_t L = spec.index_bits();
  std::vector<BitVec> table;
  table.reserve(spec.n + spec.s);
  for (std::size_t i = 0; i < spec.n; ++i) {
    BitVec col(rows);
    for (std::size_t u = 0; u < rows; ++u) col[u] = static_cast<std::uint8_t>((u >> (spec.n - 1 - i)) & 1u);
    table.push_back(std::move(col));
  }
  std::size_t pos = 0;
  auto read = [&](std::size_t bits) {
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < bits; ++k) v = (v << 1) | desc[pos++];
    return v;
  };
  for (std::size_t g = 0; g < spec.s; ++g) {
    const auto op = read(2);
    const std::size_t valid = spec.n + g;
    const auto a = static_cast<std::size_t>(read(L) % valid);
    const auto b = static_cast<std::size_t>(read(L) % valid);
    BitVec col(rows);
    for (std::size_t u = 0; u < rows; ++u) {
      const std::uint8_t x = table[a][u], y = table[b][u];
      switch (op) {
        case 0: col[u] = x & y; break;
        case 1: col[u] = x | y; break;
        case 2: col[u] = x ^ y; break;
        default: col[u] = x ^ 1u; break;
      }
    }
    table.push_back(std::move(col));
  }
  return table.back();
}

GeneratorSpec build_tt_generator(std::size_t n, std::size_t s) {
  if (s == 0 || n == 0) throw Error(ErrorKind::BadArgument, "truth-table generator needs n >= 1 and s >= 1");
  TtSpec spec{n, s};
  GeneratorSpec g;
  g.kind = GeneratorSpec::Kind::TruthTable;
  g.payload = spec;
  g.n_in = spec.description_length();
  g.n_out = spec.output_length();
  return g;
}

BitVec GeneratorSpec::evaluate(std::span<const std::uint8_t> x) const {
  if (const auto* tt = std::get_if<TtSpec>(&payload)) return tt_evaluate(*tt, x);
  if (const auto* c = std::get_if<Gf2Circuit>(&payload)) return eval_circuit(*c, x);
  throw Error(ErrorKind::BadArgument, "generator spec carries no evaluator; build its circuit first");
}

// ---------------------------------------------------------------------------
// Planted generator

Gf2Circuit build_planted_generator(std::size_t n, std::size_t N, std::uint64_t seed, std::size_t gate_budget) {
  if (n == 0) throw Error(ErrorKind::BadArgument, "planted generator needs n >= 1");
  if (N <= n) throw Error(ErrorKind::NotStretching, "planted generator needs N > n, got n=" + std::to_string(n) + " N=" + std::to_string(N));
  if (gate_budget < n + N)
    throw Error(ErrorKind::BudgetTooSmall, "gate budget " + std::to_string(gate_budget) + " is below n + N = " + std::to_string(n + N));
  Rng rng(seed);
  CircuitBuilder b("planted", n);
  for (std::size_t i = 0; i < n; ++i) b.input(i);
  auto pick = [&] { return static_cast<GateId>(rng.below(b.size())); };
  const std::size_t hidden = gate_budget - n - N;
  for (std::size_t k = 0; k < hidden; ++k) {
    switch (rng.below(4)) {
      case 0: b.not_(pick()); break;
      case 1: b.and_(pick(), pick()); break;
      case 2: b.or_(pick(), pick()); break;
      default: b.xor_(pick(), pick()); break;
    }
  }
  std::vector<GateId> outs;
  outs.reserve(N);
  for (std::size_t o = 0; o < N; ++o) {
    switch (rng.below(3)) {
      case 0: outs.push_back(b.and_(pick(), pick())); break;
      case 1: outs.push_back(b.or_(pick(), pick())); break;
      default: outs.push_back(b.xor_(pick(), pick())); break;
    }
  }
  auto c = std::move(b).finish(std::move(outs));
  c.name = "planted";
  return c;
}

}  // namespace avoidforge
