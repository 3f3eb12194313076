#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "avoidforge/avoidinst.hpp"
#include "avoidforge/cnfenc.hpp"
#include "avoidforge/config.hpp"
#include "avoidforge/error.hpp"
#include "avoidforge/experiments.hpp"
#include "avoidforge/extract.hpp"
#include "avoidforge/gamesim.hpp"
#include "avoidforge/gens.hpp"
#include "avoidforge/parred.hpp"

using namespace avoidforge;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kBudget = 3 };

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::BudgetExceeded:
    case ErrorKind::DTooLarge:
    case ErrorKind::SparsityTooLarge:
    case ErrorKind::WeightTooLarge: return kBudget;
    case ErrorKind::ProofInvalid:
    case ErrorKind::ReductionInvalid:
    case ErrorKind::BoundViolated:
    case ErrorKind::StretchViolation: return kVerifyFailed;
    default: return kUsage;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorKind::Io, "cannot write " + path);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string tok; std::getline(is, tok, sep);)
    if (!tok.empty()) out.push_back(tok);
  return out;
}

// Keyed parameters that come from a flag or from the subcommand's config section.
class Params {
 public:
  Params(CLI::App* app, std::string section, const std::shared_ptr<std::optional<Config>>& cfg)
      : app_(app), section_(std::move(section)), cfg_(cfg) {}

  Params& add(const std::string& key, const std::string& help) {
    auto& slot = values_[key];
    opts_[key] = app_->add_option("--" + key, slot, help);
    return *this;
  }

  void check_config() const {
    if (!*cfg_) return;
    std::set<std::string> allowed;
    for (const auto& [k, v] : values_) allowed.insert(k);
    (*cfg_)->check_section(section_, allowed, {});
  }

  bool given(const std::string& key) const {
    return opts_.at(key)->count() > 0 || (*cfg_ && (*cfg_)->has(section_, key));
  }

  std::string str(const std::string& key) const {
    if (opts_.at(key)->count() > 0) return values_.at(key);
    if (*cfg_ && (*cfg_)->has(section_, key)) return (*cfg_)->get(section_, key);
    throw Error(ErrorKind::BadArgument, "missing --" + key + " (or [" + section_ + "] " + key + " in the config)");
  }

  std::uint64_t u64(const std::string& key) const {
    const auto v = str(key);
    try {
      std::size_t used = 0;
      const auto out = std::stoull(v, &used);
      if (used == v.size() && v.front() != '-') return out;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::BadArgument, "--" + key + " must be an unsigned integer");
  }

  std::uint64_t u64_or(const std::string& key, std::uint64_t fallback) const { return given(key) ? u64(key) : fallback; }

 private:
  CLI::App* app_;
  std::string section_;
  std::shared_ptr<std::optional<Config>> cfg_;
  std::map<std::string, std::string> values_;
  std::map<std::string, CLI::Option*> opts_;
};

Gf2Circuit load_circuit(const std::string& path) { return parse_netlist(read_file(path)); }

BitVec hex_arg(const std::string& hex, std::size_t len) { return from_hex(hex, len); }

std::vector<BitVec> hex_lines(const std::string& text, std::size_t len) {
  std::vector<BitVec> out;
  for (const auto& tok : split(text, '\n')) {
    for (const auto& part : split(tok, ',')) {
      std::string t;
      for (char c : part)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
      if (!t.empty() && t.front() != '#') out.push_back(from_hex(t, len));
    }
  }
  return out;
}

struct StudentArgs {
  std::string kind = "bruteforce";
  std::string constants;
  std::vector<std::string> circuits;
};

void add_student_options(CLI::App* app, StudentArgs& s) {
  app->add_option("--student", s.kind, "lex | random | bruteforce | constant | circuits")
      ->check(CLI::IsMember({"lex", "random", "bruteforce", "constant", "circuits"}));
  app->add_option("--constants", s.constants, "comma-separated hex proposals for a constant student");
  app->add_option("--circuit", s.circuits, "netlist for B_i, repeat for each round");
}

StudentHandle make_student(const StudentArgs& s, std::size_t m, const Params& p) {
  if (s.kind == "lex") return lex_student();
  if (s.kind == "random") return random_student(p.u64("student-seed"));
  if (s.kind == "bruteforce") return bruteforce_student();
  if (s.kind == "constant") {
    auto ys = hex_lines(s.constants, m);
    if (ys.empty()) throw Error(ErrorKind::BadArgument, "constant student needs --constants");
    return constant_student(ys);
  }
  std::vector<Gf2Circuit> cs;
  for (const auto& f : s.circuits) cs.push_back(load_circuit(f));
  if (cs.empty()) throw Error(ErrorKind::BadArgument, "circuit student needs --circuit");
  return circuit_student(std::move(cs));
}

Sampling key_sampling(const Params& p, bool exhaustive) {
  if (exhaustive) return Sampling{true, 0, 0};
  return Sampling{false, p.u64("keys"), p.u64("seed")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"avoidforge: range avoidance desk experiments"};
  app.require_subcommand(1);
  auto cfg = std::make_shared<std::optional<Config>>();
  std::string config_path, out;
  std::function<int()> action;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, const std::string& section) {
    auto* sub = parent->add_subcommand(name, help);
    sub->add_option("--config", config_path, "INI config file");
    sub->add_option("--out", out, "output file (default stdout)");
    auto params = std::make_shared<Params>(sub, section, cfg);
    return std::pair{sub, params};
  };
  auto group = [&](const std::string& name, const std::string& help) {
    auto* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };

  // gen ----------------------------------------------------------------------
  auto* gen = group("gen", "build generator circuits");
  std::string hyper_out, params_out, tt_desc;
  {
    auto [sub, p] = leaf(gen, "goldreich", "Goldreich generator with the XOR-AND predicate", "goldreich");
    p->add("n", "seed length").add("m", "output length").add("seed", "hypergraph seed");
    sub->add_option("--hypergraph-out", hyper_out, "also write the hypergraph");
    sub->callback([&, p = p] {
      action = [&, p] {
        p->check_config();
        const auto g = sample_hypergraph(p->u64("n"), p->u64("m"), 5, p->u64("seed"));
        if (!hyper_out.empty()) write_out(hyper_out, emit_hypergraph(g));
        auto c = build_goldreich(g, mst06_predicate());
        write_out(out, emit_netlist(c));
        return kOk;
      };
    });
  }
  {
    auto [sub, p] = leaf(gen, "lpn", "LPN generator with sparse noise encoder", "lpn");
    p->add("n", "secret length").add("m", "equations").add("mu", "noise rate p/q").add("d", "encoder degree");
    p->add("seed", "matrix seed");
    sub->add_option("--params-out", params_out, "also write the LPN parameters");
    sub->callback([&, p = p] {
      action = [&, p] {
        p->check_config();
        const auto mu = split(p->str("mu"), '/');
        if (mu.size() != 2) throw Error(ErrorKind::BadArgument, "--mu must be p/q");
        const auto lp = sample_lpn_params(p->u64("n"), p->u64("m"), std::stoull(mu[0]), std::stoull(mu[1]), p->u64("d"),
                                          p->u64("seed"));
        if (!params_out.empty()) write_out(params_out, emit_lpn_params(lp));
        write_out(out, emit_netlist(build_lpn_generator(lp)));
        return kOk;
      };
    });
  }
  {
    auto [sub, p] = leaf(gen, "tt", "truth-table generator", "tt");
    p->add("n", "table inputs").add("s", "gates per description");
    sub->add_option("--desc", tt_desc, "hex description to evaluate");
    sub->callback([&, p = p] {
      action = [&, p] {
        p->check_config();
        const auto spec = build_tt_generator(p->u64("n"), p->u64("s"));
        Record r;
        r.add("n_in", std::uint64_t{spec.n_in}).add("n_out", std::uint64_t{spec.n_out});
        if (!tt_desc.empty()) r.add("table", to_hex(spec.evaluate(hex_arg(tt_desc, spec.n_in))));
        std::vector<Record> rs{r};
        write_out(out, emit_report(rs));
        return kOk;
      };
    });
  }
  {
    auto [sub, p] = leaf(gen, "planted", "random stretching circuit", "planted");
    p->add("n", "inputs").add("N", "outputs").add("budget", "gate budget").add("seed", "circuit seed");
    sub->callback([&, p = p] {
      action = [&, p] {
        p->check_config();
        write_out(out, emit_netlist(build_planted_generator(p->u64("n"), p->u64("N"), p->u64("seed"), p->u64("budget"))));
        return kOk;
      };
    });
  }

  // ext ----------------------------------------------------------------------
  auto* ext = group("ext", "Toeplitz extractor");
  std::string key_path, input_hex;
  {
    auto [sub, p] = leaf(ext, "keygen", "sample a Toeplitz key", "extract");
    p->add("N", "input length").add("m", "output length").add("seed", "key seed");
    sub->callback([&, p = p] {
      action = [&, p] {
        p->check_config();
        write_out(out, emit_key(sample_key(p->u64("N"), p->u64("m"), p->u64("seed"))));
        return kOk;
      };
    });
  }
  {
    auto [sub, p] = leaf(ext, "test", "apply a key, scan universality or estimate extraction distance", "extract");
    p->add("N", "input length").add("m", "output length").add("seed", "trial seed");
    p->add("trials", "sampled keys for the distance estimate").add("support-log2", "flat source size exponent");
    sub->add_option("--key", key_path, "key file");
    sub->add_option("--input", input_hex, "hex input for --key");
    sub->callback([&, p = p] {
      action = [&, p] {
        p->check_config();
        Record r;
        if (!key_path.empty()) {
          const auto key = parse_key(read_file(key_path));
          r.add("N", std::uint64_t{key.N}).add("m", std::uint64_t{key.m});
          r.add("output", to_hex(toeplitz_apply(key, hex_arg(input_hex, key.N))));
        } else {
          const auto N = p->u64("N"), m = p->u64("m");
          r.add("N", N).add("m", m);
          if (p->given("trials")) {
            const auto seed = p->u64("seed");
            const auto member = random_dense_set(N, std::uint64_t{1} << p->u64("support-log2"), seed);
            std::vector<std::uint64_t> support;
            for (std::uint64_t x = 0; x < member.size(); ++x)
              if (member[x]) support.push_back(x);
            const auto est = extraction_distance_estimate(N, m, support, p->u64("trials"), seed + 1);
            r.add("seed", seed).add("trials", est.trials).add("distance", est.distance);
          } else {
            r.add("max_collision", universality_scan(N, m));
          }
        }
        std::vector<Record> rs{r};
        write_out(out, emit_report(rs));
        return kOk;
      };
    });
  }

  // compose / ilango / avoid ----------------------------------------------------
  std::string gen_path, shifts_out;
  {
    auto [sub, p] = leaf(&app, "compose", "C_r = T_r o G", "compose");
    sub->add_option("--gen", gen_path, "generator netlist")->required();
    sub->add_option("--key", key_path, "key file")->required();
    sub->callback([&, p = p] {
      action = [&, p] {
        p->check_config();
        auto inst = compose_instance(load_circuit(gen_path), parse_key(read_file(key_path)));
        write_out(out, emit_netlist(inst.circuit));
        return kOk;
      };
    });
  }
  {
    auto [sub, p] = leaf(&app, "ilango", "random-shift instance", "ilango");
    p->add("t", "shift count").add("seed", "shift seed");
    sub->add_option("--gen", gen_path, "generator netlist")->required();
    sub->add_option("--shifts-out", shifts_out, "write the shifts as hex lines");
    sub->callback([&, p = p] {
      action = [&, p] {
        p->check_config();
        const auto G = load_circuit(gen_path);
        Rng rng(p->u64("seed"));
        std::vector<BitVec> shifts;
        for (std::uint64_t i = 0; i < p->u64("t"); ++i) shifts.push_back(rng.bits(G.m));
        auto inst = ilango_instance(G, shifts);
        if (!shifts_out.empty()) {
          std::string text;
          for (const auto& s : shifts) text += to_hex(s) + "\n";
          write_out(shifts_out, text);
        }
        write_out(out, emit_netlist(inst.circuit));
        return kOk;
      };
    });
  }
  std::string circuit_path;
  {
    auto [sub, p] = leaf(&app, "avoid", "lexicographically first non-range string", "avoid");
    sub->add_option("--circuit", circuit_path, "netlist")->required();
    sub->callback([&, p = p] {
      action = [&, p] {
        p->check_config();
        write_out(out, to_hex(brute_force_avoid(load_circuit(circuit_path))) + "\n");
        return kOk;
      };
    });
  }

  // cnf ----------------------------------------------------------------------
  auto* cnf = group("cnf", "CNF encodings and SAT");
  std::string b_hex, cnf_path;
  std::vector<std::string> student_paths;
  {
    auto [sub, p] = leaf(cnf, "tau", "tau_b(G) in DIMACS", "cnf");
    sub->add_option("--circuit", circuit_path, "netlist")->required();
    sub->add_option("--b", b_hex, "hex target")->required();
    sub->callback([&, p = p] {
      action = [&, p] {
        p->check_config();
        const auto G = load_circuit(circuit_path);
        write_out(out, emit_dimacs(encode_tau(G, hex_arg(b_hex, G.m))));
        return kOk;
      };
    });
  }
  {
    auto [sub, p] = leaf(cnf, "student-loses", "formula satisfiable iff the student can lose", "cnf");
    sub->add_option("--gen", gen_path, "generator netlist")->required();
    sub->add_option("--student", student_paths, "netlist of B_i, one per round")->required();
    sub->callback([&, p = p] {
      action = [&, p] {
        p->check_config();
        std::vector<Gf2Circuit> B;
        for (const auto& f : student_paths) B.push_back(load_circuit(f));
        write_out(out, emit_dimacs(encode_student_loses(load_circuit(gen_path), B)));
        return kOk;
      };
    });
  }
  {
    auto [sub, p] = leaf(cnf, "sat", "brute-force SAT", "cnf");
    p->add("budget", "free-variable budget");
    sub->add_option("--cnf", cnf_path, "DIMACS file")->required();
    sub->callback([&, p = p] {
      action = [&, p] {
        p->check_config();
        const auto f = parse_dimacs(read_file(cnf_path));
        const auto r = brute_force_sat(f, p->u64_or("budget", 24));
        std::string text = r.sat ? "s SATISFIABLE\nv" : "s UNSATISFIABLE\n";
        if (r.sat) {
          for (std::size_t v = 1; v < r.assignment.size(); ++v)
            text += " " + std::string(r.assignment[v] ? "" : "-") + std::to_string(v);
          text += " 0\n";
        }
        write_out(out, text);
        return kOk;
      };
    });
  }

  // reduce -------------------------------------------------------------------
  auto* reduce = group("reduce", "simple parity reductions");
  std::string y_hex, red_path, from_path, to_path, composed_out;
  {
    auto [sub, p] = leaf(reduce, "build", "canonical reduction from tau_y(G) to tau_z(C_r)", "reduce");
    sub->add_option("--gen", gen_path, "generator netlist")->required();
    sub->add_option("--key", key_path, "key file")->required();
    sub->add_option("--y", y_hex, "hex y")->required();
    sub->add_option("--composed-out", composed_out, "write C_r with the linear layer");
    sub->callback([&, p = p] {
      action = [&, p] {
        p->check_config();
        const auto G = load_circuit(gen_path);
        auto can = build_canonical_reduction(G, parse_key(read_file(key_path)), hex_arg(y_hex, G.m));
        if (!composed_out.empty()) write_out(composed_out, emit_netlist(can.composed));
        std::cerr << "z=" << to_hex(can.z) << "\n";
        write_out(out, emit_reduction(can.red));
        return kOk;
      };
    });
  }
  {
    auto [sub, p] = leaf(reduce, "check", "check a reduction from F to G", "reduce");
    sub->add_option("--reduction", red_path, "reduction file")->required();
    sub->add_option("--from", from_path, "source formula F (DIMACS)")->required();
    sub->add_option("--to", to_path, "target formula G (DIMACS)")->required();
    sub->callback([&, p = p] {
      action = [&, p] {
        p->check_config();
        const auto rc = check_parity_reduction(parse_dimacs(read_file(from_path)), parse_dimacs(read_file(to_path)),
                                               parse_reduction(read_file(red_path)));
        write_out(out, rc.ok() ? "OK\n" : std::string(to_string(rc.fault)) + " clause=" + std::to_string(rc.clause) + "\n");
        return rc.ok() ? kOk : kVerifyFailed;
      };
    });
  }

  // resxor -------------------------------------------------------------------
  auto* resxor = group("resxor", "Res[xor] proofs");
  std::string proof_path, z_hex;
  {
    auto [sub, p] = leaf(resxor, "check", "check a refutation", "resxor");
    sub->add_option("--proof", proof_path, "proof file")->required();
    sub->add_option("--cnf", cnf_path, "DIMACS formula")->required();
    sub->callback([&, p = p] {
      action = [&, p] {
        p->check_config();
        const auto pc = check_resxor_proof(parse_dimacs(read_file(cnf_path)), parse_proof(read_file(proof_path)));
        write_out(out, pc.ok() ? "OK\n" : std::string(to_string(pc.fault)) + " line=" + std::to_string(pc.line) + "\n");
        return pc.ok() ? kOk : kVerifyFailed;
      };
    });
  }
  {
    auto [sub, p] = leaf(resxor, "transform", "pull a refutation of G back to F", "resxor");
    sub->add_option("--proof", proof_path, "refutation of G")->required();
    sub->add_option("--reduction", red_path, "reduction from F to G")->required();
    sub->add_option("--from", from_path, "F (DIMACS)")->required();
    sub->add_option("--to", to_path, "G (DIMACS)")->required();
    sub->callback([&, p = p] {
      action = [&, p] {
        p->check_config();
        const auto F = parse_dimacs(read_file(from_path));
        const auto out_proof = transform_resxor_proof(parse_proof(read_file(proof_path)), parse_dimacs(read_file(to_path)),
                                                      F, parse_reduction(read_file(red_path)));
        write_out(out, emit_proof(out_proof));
        return check_resxor_proof(F, out_proof).ok() ? kOk : kVerifyFailed;
      };
    });
  }
  {
    auto [sub, p] = leaf(resxor, "refute-linear", "refute tau_z(L) for a linear circuit L", "resxor");
    sub->add_option("--circuit", circuit_path, "XOR/NOT/CONST netlist")->required();
    sub->add_option("--z", z_hex, "hex target")->required();
    sub->callback([&, p = p] {
      action = [&, p] {
        p->check_config();
        const auto L = load_circuit(circuit_path);
        const auto r = refute_linear_tau(L, hex_arg(z_hex, L.m));
        if (const auto* proof = std::get_if<ResXorProof>(&r)) {
          write_out(out, emit_proof(*proof));
          return kOk;
        }
        const auto& w = std::get<std::vector<std::uint8_t>>(r);
        std::cerr << "z is in the range; satisfying assignment:";
        for (std::size_t v = 1; v < w.size(); ++v) std::cerr << ' ' << int(w[v]);
        std::cerr << "\n";
        return kVerifyFailed;
      };
    });
  }

  // game ---------------------------------------------------------------------
  auto* game = group("game", "Student-Teacher game");
  StudentArgs student;
  std::string teacher = "lex", trace_path, prefix_hex;
  bool exhaustive = false;
  {
    auto [sub, p] = leaf(game, "run", "play k rounds", "game");
    p->add("k", "rounds").add("student-seed", "seed for the random student").add("teacher-seed", "seed for the random teacher");
    sub->add_option("--gen", gen_path, "instance netlist")->required();
    add_student_options(sub, student);
    sub->add_option("--teacher", teacher, "lex | random")->check(CLI::IsMember({"lex", "random"}));
    sub->callback([&, p = p] {
      action = [&, p] {
        p->check_config();
        const auto G = load_circuit(gen_path);
        TeacherHandle t;
        if (teacher == "random") t = TeacherHandle{TeacherHandle::Kind::SeededRandom, p->u64("teacher-seed")};
        const auto trace = run_game(G, make_student(student, G.m, *p), t, p->u64("k"));
        write_out(out, trace.log());
        return kOk;
      };
    });
  }
  {
    auto [sub, p] = leaf(game, "trace-prob", "fraction of keys on which a trace is valid", "game");
    p->add("m", "key output length").add("keys", "sampled keys").add("seed", "key seed").add("student-seed", "random student seed");
    sub->add_option("--gen", gen_path, "generator netlist")->required();
    sub->add_option("--trace", trace_path, "hex lines s_1..s_j")->required();
    sub->add_flag("--exhaustive", exhaustive, "enumerate every key");
    add_student_options(sub, student);
    sub->callback([&, p = p] {
      action = [&, p] {
        p->check_config();
        const auto G = load_circuit(gen_path);
        const auto m = p->u64("m");
        const auto trace = hex_lines(read_file(trace_path), G.n);
        const auto est = trace_success_probability(make_student(student, m, *p).as_function(), G, m,
                                                   key_sampling(*p, exhaustive), trace);
        Record r;
        r.add("j", std::uint64_t{trace.size()}).add("exhaustive", est.exhaustive).add("p", est.p);
        if (!exhaustive) r.add("seed", p->u64("seed"));
        std::vector<Record> rs{r};
        write_out(out, emit_report(rs));
        return kOk;
      };
    });
  }
  {
    auto [sub, p] = leaf(game, "gs", "set lower-bound protocol", "gs");
    p->add("s", "claimed size").add("reps", "repetitions").add("seed", "protocol seed").add("hash-length", "override l");
    sub->add_option("--pred", circuit_path, "set predicate netlist")->required();
    sub->callback([&, p = p] {
      action = [&, p] {
        p->check_config();
        std::optional<std::size_t> l;
        if (p->given("hash-length")) l = p->u64("hash-length");
        const auto o = gs_setsize_protocol(load_circuit(circuit_path), p->u64("s"), p->u64("reps"), p->u64("seed"), l);
        Record r;
        r.add("s", p->u64("s")).add("seed", p->u64("seed")).add("hash_length", std::uint64_t{o.hash_length});
        r.add("successes", Rational{o.successes, o.reps}).add("verdict", o.accept ? "ACCEPT" : "REJECT");
        std::vector<Record> rs{r};
        write_out(out, emit_report(rs));
        return kOk;
      };
    });
  }
  {
    auto [sub, p] = leaf(game, "am-trial", "one round of the Algorithm-1 test", "game");
    p->add("m", "key output length").add("j", "round").add("keys", "sampled keys").add("seed", "key seed");
    p->add("student-seed", "random student seed");
    sub->add_option("--gen", gen_path, "generator netlist")->required();
    sub->add_option("--y", y_hex, "hex y")->required();
    sub->add_option("--prefix", prefix_hex, "comma-separated hex s_1..s_{j-1}");
    sub->add_flag("--exhaustive", exhaustive, "enumerate every key");
    add_student_options(sub, student);
    sub->callback([&, p = p] {
      action = [&, p] {
        p->check_config();
        const auto G = load_circuit(gen_path);
        const auto m = p->u64("m");
        const auto prefix = hex_lines(prefix_hex, G.n);
        const auto t = am_round_trial(make_student(student, m, *p).as_function(), G, m, key_sampling(*p, exhaustive),
                                      p->u64("j"), prefix, hex_arg(y_hex, G.m));
        Record r;
        r.add("j", p->u64("j")).add("p", t.p.p).add("exhaustive", t.p.exhaustive).add("verdict", to_string(t.verdict));
        std::vector<Record> rs{r};
        write_out(out, emit_report(rs));
        return kOk;
      };
    });
  }

  // report -------------------------------------------------------------------
  std::string criteria;
  {
    auto* sub = app.add_subcommand("report", "run acceptance criteria and emit a report");
    sub->add_option("--config", config_path, "INI config with [c1]..[c13]")->required();
    sub->add_option("--out", out, "report file (default stdout)");
    auto* crit_opt = sub->add_option("--criteria", criteria, "comma-separated ids (default all)");
    sub->callback([&, crit_opt] {
      action = [&, crit_opt] {
        std::vector<int> ids;
        if (crit_opt->count() == 0)
          for (int i = 1; i <= kCriteriaCount; ++i) ids.push_back(i);
        for (const auto& tok : split(criteria, ',')) {
          try {
            ids.push_back(std::stoi(tok));
          } catch (const std::exception&) {
            throw Error(ErrorKind::BadArgument, "--criteria takes comma-separated ids");
          }
        }
        std::vector<Record> records;
        bool all = true;
        for (int id : ids) {
          auto o = run_criterion(id, **cfg);
          all = all && o.pass;
          records.push_back(o.record);
        }
        write_out(out, emit_report(records));
        return all ? kOk : kVerifyFailed;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  try {
    if (!config_path.empty()) *cfg = Config::load(config_path);
    return action ? action() : kUsage;
  } catch (const Error& e) {
    std::cerr << "avoidforge: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "avoidforge: " << e.what() << "\n";
    return kUsage;
  }
}
