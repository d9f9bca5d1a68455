#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "cofill/error.hpp"
#include "cofill/foxcalc.hpp"
#include "cofill/parallel.hpp"

namespace cofill::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string group;
  std::string presentation;
  std::string oracle = "auto";
  std::string table;
  int radius = 3;
  int max_len = 0;
  std::string mode = "exhaustive";
  std::string format;
  std::uint64_t budget = 0;
  int threads = 0;
  std::string output;
  std::string manifest;
  std::string word;
  bool integer = false;
  bool real = false;
  bool full = false;
  std::string ns;
  std::string lambda = "1";
  std::string alpha;
  std::string bounds;
  std::string bound;
  std::optional<std::uint64_t> seed;
  std::string complex;
  int degree = 2;
  std::string cochain;
  int limit = 20;
  std::string replay_path;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string str(const Rational& q) { return to_string(q); }

GroupSpec load_group(const Options& o) {
  if (!o.group.empty() && !o.presentation.empty()) throw UsageError("give either --group or --presentation, not both");
  if (!o.group.empty()) {
    try {
      return builtin_group(o.group);
    } catch (const Error&) {
      throw UsageError("unknown group '" + o.group + "' (expected z2, free2, surface2 or heisenberg)");
    }
  }
  if (o.presentation.empty()) throw UsageError("no group: pass --group NAME or --presentation FILE ('-' for stdin)");
  const Presentation p = parse_presentation(read_file(o.presentation));
  if (o.oracle == "table") {
    if (o.table.empty()) throw UsageError("--oracle table needs --table FILE");
    const json t = json::parse(read_file(o.table));
    return {p, make_finite_table_oracle(p, t.at("table").get<std::vector<std::vector<int>>>(),
                                        t.at("images").get<std::vector<int>>())};
  }
  if (o.oracle != "auto") return {p, make_oracle(parse_oracle_kind(o.oracle), p)};
  if (p.num_relators() == 0) return {p, make_free_group_oracle(p)};
  try {
    return {p, make_abelian_oracle(p)};
  } catch (const InvalidOracle&) {
  }
  try {
    return {p, make_dehn_oracle(p)};
  } catch (const InvalidOracle&) {
  }
  throw UsageError("no built-in oracle fits this presentation; pass --oracle (free, abelian, dehn, heisenberg, table)");
}

json edge_values_json(const std::map<int, Rational>& values, const CayleyBall& ball) {
  json a = json::array();
  const auto& names = ball.presentation().generator_names();
  for (const auto& [id, v] : values) {
    const Edge& e = ball.edge(id);
    a.push_back({ball.presentation().format(ball.word(e.src)), names[static_cast<std::size_t>(e.gen)], str(v)});
  }
  return a;
}

json chain_json(const GroupRingVec& z, const CayleyBall& ball) {
  json a = json::array();
  const auto& names = ball.presentation().generator_names();
  for (const auto& [key, v] : z.entries()) {
    a.push_back({ball.presentation().format(ball.word(key.first)), names[static_cast<std::size_t>(key.second)], str(v)});
  }
  return a;
}

json certificate_json(const FillCertificate& c, const CayleyBall& ball) {
  json a = json::array();
  for (const FillTerm& t : c.terms()) a.push_back({ball.presentation().format(ball.word(t.vertex)), t.relator, str(t.coefficient)});
  return a;
}

json violation_json(const Violation& v, const CayleyBall& ball) {
  return {{"base", ball.presentation().format(ball.word(v.base))},
          {"word", ball.presentation().format(v.word)},
          {"lhs", str(v.lhs)},
          {"rhs", str(v.rhs)}};
}

std::vector<std::string> rational_strings(const std::vector<Rational>& xs) {
  std::vector<std::string> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(str(x));
  return out;
}

json farkas_json(const lp::FarkasCertificate& f) {
  return {{"rows", rational_strings(f.rows)}, {"lower", rational_strings(f.lower)}, {"upper", rational_strings(f.upper)}};
}

struct Result {
  std::string text;
  int code = kOk;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Word parse_required_word(const Options& o, const Presentation& p) {
  if (o.word.empty()) throw UsageError(o.command + " needs --word \"...\"");
  return p.parse_word(o.word);
}

void require_json(const Options& o) {
  if (!o.format.empty() && o.format != "json") throw UsageError(o.command + " only writes JSON");
}

Result cmd_ball(const Options& o, const CayleyBall& ball) {
  const CellTable cells(ball);
  std::vector<int> spheres(static_cast<std::size_t>(ball.radius()) + 1, 0);
  for (int v = 0; v < ball.num_vertices(); ++v) ++spheres[static_cast<std::size_t>(ball.length(v))];
  if (o.format == "csv") {
    std::ostringstream s;
    s << "radius,vertices,edges,cells\n"
      << ball.radius() << ',' << ball.num_vertices() << ',' << ball.num_edges() << ',' << cells.num_cells() << '\n';
    return {s.str()};
  }
  json j;
  j["radius"] = ball.radius();
  j["oracle"] = to_string(ball.oracle().kind());
  j["vertices"] = ball.num_vertices();
  j["edges"] = ball.num_edges();
  j["cells"] = cells.num_cells();
  j["sphere_sizes"] = spheres;
  if (o.full) {
    const json b = json::parse(ball.to_json());
    j["vertex_words"] = b["vertices"];
    j["edge_list"] = b["edges"];
  }
  return {dump(j)};
}

Result cmd_fill(const Options& o, const CayleyBall& ball) {
  require_json(o);
  const Word w = parse_required_word(o, ball.presentation());
  const GroupRingVec z = cycle_of_relation(w, ball);
  const CellTable cells(ball);
  FillOptions fo;
  if (o.budget) fo.node_budget = o.budget;
  const FillReport r = o.integer ? fill_int(z, cells, fo) : fill_real(z, cells, fo);
  json j;
  j["word"] = ball.presentation().format(w);
  j["kind"] = o.integer ? "integer" : "real";
  j["radius"] = r.radius;
  if (!r.complete) {
    j["status"] = "BudgetExhausted";
  } else {
    j["status"] = r.feasible ? "Optimal" : "Infeasible";
  }
  if (r.feasible) {
    j["value"] = str(r.value);
    j["certificate"] = certificate_json(r.certificate, ball);
  }
  j["lower_bound"] = str(r.lower_bound);
  j["complete"] = r.complete;
  j["truncated"] = r.truncated;
  if (!r.feasible && r.complete) j["farkas"] = edge_values_json(r.farkas.values, ball);
  return {dump(j), r.complete ? kOk : kBudget};
}

Result cmd_dual_check(const Options& o, const CayleyBall& ball) {
  require_json(o);
  const Word w = parse_required_word(o, ball.presentation());
  const Rational lambda = parse_rational(o.lambda);
  if (lambda <= 0) throw UsageError("--lambda must be positive");
  const CellTable cells(ball);
  const DualCheck d = dual_norm_check(w, cells, lambda);
  json j;
  j["word"] = ball.presentation().format(w);
  j["radius"] = ball.radius();
  j["lambda"] = str(lambda);
  j["status"] = d.feasible ? "Optimal" : "Infeasible";
  if (d.feasible) {
    j["primal"] = str(d.primal);
    j["dual"] = str(d.dual);
    j["duality_holds"] = d.dual == lambda * d.primal;
    j["cochain"] = edge_values_json(d.cochain.values, ball);
  }
  j["rounds"] = d.rounds;
  return {dump(j)};
}

Result cmd_growth(const Options& o, const CayleyBall& ball, int threads) {
  if (o.ns.empty()) throw UsageError(o.command + " needs --n (e.g. 4, 4,8,12 or 1..10)");
  const std::vector<int> ns = parse_int_list(o.ns);
  GrowthOptions go;
  go.mode = parse_enumeration_mode(o.mode);
  if (o.budget) {
    go.walk_budget = o.budget;
    go.fill.node_budget = o.budget;
  }
  go.threads = threads;
  go.real = o.real;
  if (o.real && o.command != "dehn") throw UsageError("--real only applies to dehn");
  const GrowthTable t = o.command == "dehn" ? dehn_ab(ball, ns, go) : cof(ball, ns, go);
  const int code = t.partial ? kBudget : kOk;
  if (o.format == "json") {
    json rows = json::array();
    for (const GrowthRow& r : t.rows) {
      rows.push_back({{"n", r.n},
                      {"value", str(r.value)},
                      {"witness", ball.presentation().format(r.witness)},
                      {"radius", r.radius},
                      {"truncated", r.truncated}});
    }
    json j{{"invariant", o.command == "dehn" ? (o.real ? "dehn_ab_real" : "dehn_ab") : "cof"},
           {"rows", rows},
           {"relations", t.relations},
           {"partial", t.partial}};
    return {dump(j), code};
  }
  std::ostringstream s;
  s << "n,value,witness,radius,truncated\n";
  for (const GrowthRow& r : t.rows) {
    s << r.n << ',' << str(r.value) << ",\"" << (r.witness.empty() ? "" : ball.presentation().format(r.witness)) << "\","
      << r.radius << ',' << (r.truncated ? "true" : "false") << '\n';
  }
  return {s.str(), code};
}

Thm4Instance load_cocycle(const Options& o, const CayleyBall& ball) {
  if (o.seed) {
    if (!o.alpha.empty() || !o.bounds.empty() || !o.bound.empty()) {
      throw UsageError("--seed generates alpha0 and F; drop --alpha/--bounds/--bound");
    }
    return random_thm4_instance(ball, *o.seed);
  }
  if (o.bounds.empty() && o.bound.empty()) throw UsageError(o.command + " needs --bound VALUE, --bounds FILE or --seed N");
  Thm4Instance inst;
  if (!o.alpha.empty()) {
    const auto a = parse_cochain(read_file(o.alpha), ball.num_edges());
    for (int e = 0; e < ball.num_edges(); ++e) inst.cd.alpha0.set(e, a[static_cast<std::size_t>(e)]);
  }
  const Bound fallback = o.bound.empty() ? Bound::infinite() : parse_bound(o.bound);
  if (o.bounds.empty()) {
    inst.F = BoundFunction::constant(ball.num_vertices(), fallback);
  } else {
    inst.F.values = parse_bounds(read_file(o.bounds), ball.num_vertices(), fallback);
  }
  return inst;
}

Result cmd_primitive(const Options& o, const CayleyBall& ball) {
  require_json(o);
  const Thm4Instance inst = load_cocycle(o, ball);
  const PrimitiveResult r = find_primitive(inst.cd, inst.F, ball);
  json j;
  j["radius"] = ball.radius();
  j["status"] = r.feasible ? "Feasible" : "Infeasible";
  if (r.feasible) {
    json m = json::array();
    for (int v = 0; v < ball.num_vertices(); ++v) m.push_back({ball.presentation().format(ball.word(v)), str(r.m.at(v))});
    j["m"] = m;
  } else {
    j["farkas_verified"] = r.farkas && lp::verify_farkas(r.problem, *r.farkas);
    j["violating_cycle"] = chain_json(r.violating_cycle, ball);
    json d = json::array();
    for (const CycleTerm& t : r.decomposition) {
      d.push_back({str(t.coefficient), ball.presentation().format(ball.word(t.base)), ball.presentation().format(t.word)});
    }
    j["decomposition"] = d;
    j["weighted_lhs"] = str(r.weighted_lhs);
    j["weighted_rhs"] = str(r.weighted_rhs);
  }
  return {dump(j)};
}

// max_j |psi2(f_j)|_1, reported alongside (ii); null when a cone leaves the ball.
json cone_bound(const CayleyBall& ball) {
  Rational m = 0;
  try {
    for (int j = 0; j < ball.presentation().num_relators(); ++j) {
      Rational norm = 0;
      for (const BarTerm& t : psi2(j, ball)) norm += abs_value(t.coefficient);
      m = std::max(m, norm);
    }
  } catch (const Error&) {
    return nullptr;
  }
  return str(m);
}

Result cmd_check_ii(const Options& o, const CayleyBall& ball, int threads) {
  require_json(o);
  const Thm4Instance inst = load_cocycle(o, ball);
  const int max_len = o.max_len > 0 ? o.max_len : 2 * ball.radius();
  const ConditionIIReport r = check_condition_ii(inst.cd, inst.F, ball, max_len, parse_enumeration_mode(o.mode), threads,
                                                 o.budget ? o.budget : 200'000'000);
  json v = json::array();
  for (std::size_t i = 0; i < r.violations.size() && i < static_cast<std::size_t>(o.limit); ++i) {
    v.push_back(violation_json(r.violations[i], ball));
  }
  json j{{"radius", ball.radius()},
         {"max_len", max_len},
         {"holds", r.violations.empty()},
         {"M", cone_bound(ball)},
         {"violation_count", r.violations.size()},
         {"violations", v},
         {"relations", r.relations},
         {"checked", r.checked},
         {"partial", r.partial}};
  return {dump(j), r.partial ? kBudget : kOk};
}

Result cmd_thm4(const Options& o, const CayleyBall& ball, int threads) {
  require_json(o);
  const Thm4Instance inst = load_cocycle(o, ball);
  const int max_len = o.max_len > 0 ? o.max_len : 2 * ball.radius();
  const Thm4Report r = check_thm4_equivalence(inst.cd, inst.F, ball, max_len, threads);
  json j{{"radius", ball.radius()},
         {"max_len", max_len},
         {"lp_feasible", r.lp_feasible},
         {"ii_holds_all_walks", r.ii_holds_all_walks},
         {"ii_holds_enumerated", r.ii_holds_enumerated},
         {"agreement", r.agreement},
         {"truncation_gap", r.truncation_gap},
         {"farkas_verified", r.farkas_verified},
         {"decomposition_violates", r.decomposition_violates},
         {"note", r.note},
         {"M", cone_bound(ball)}};
  if (r.witness) j["witness"] = violation_json(*r.witness, ball);
  return {dump(j), r.agreement ? kOk : kNegative};
}

Result cmd_complex_primitive(const Options& o) {
  require_json(o);
  if (o.complex.empty()) throw UsageError("complex-primitive needs --complex FILE (or --complex octahedron)");
  const FiniteComplex x = o.complex == "octahedron" ? octahedron() : parse_finite_complex(read_file(o.complex));
  x.validate();
  const int q = o.degree;
  if (q < 1 || q >= static_cast<int>(x.dims.size())) throw UsageError("--degree must be between 1 and the top dimension");
  const int rows = x.dims[static_cast<std::size_t>(q)];
  const int cols = x.dims[static_cast<std::size_t>(q - 1)];
  std::vector<Rational> u;
  std::optional<Rational> witness_sup;
  if (o.seed) {
    if (!o.cochain.empty()) throw UsageError("--seed generates the cochain; drop --cochain");
    ExactCochain ec = random_exact_cochain(x, q, *o.seed);
    u = std::move(ec.u);
    witness_sup = ec.sup;
  } else {
    if (o.cochain.empty()) throw UsageError("complex-primitive needs --cochain FILE or --seed N");
    u = parse_cochain(read_file(o.cochain), rows);
  }
  Bound fallback = Bound::infinite();
  if (!o.bound.empty()) {
    fallback = parse_bound(o.bound);
  } else if (witness_sup) {
    fallback = Bound::finite(*witness_sup);
  } else if (o.bounds.empty()) {
    throw UsageError("complex-primitive needs --bound VALUE or --bounds FILE");
  }
  const std::vector<Bound> f =
      o.bounds.empty() ? std::vector<Bound>(static_cast<std::size_t>(cols), fallback) : parse_bounds(read_file(o.bounds), cols, fallback);
  const ComplexPrimitiveResult r = complex_primitive(x, q, u, f);
  json j;
  j["degree"] = q;
  j["cochain"] = rational_strings(u);
  if (witness_sup) j["witness_sup"] = str(*witness_sup);
  j["status"] = r.feasible ? "Feasible" : "Infeasible";
  if (r.feasible) {
    j["t"] = rational_strings(r.t);
    j["verified"] = coboundary(x, q, r.t) == u;
  } else {
    j["farkas"] = farkas_json(*r.farkas);
    j["farkas_verified"] = lp::verify_farkas(r.problem, *r.farkas);
  }
  return {dump(j)};
}

Result execute(const Options& o) {
  if (o.command == "complex-primitive") return cmd_complex_primitive(o);
  if (o.radius < 0) throw UsageError("--radius must be nonnegative");
  try {
    parse_enumeration_mode(o.mode);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (!o.format.empty() && o.format != "json" && o.format != "csv") throw UsageError("--format must be json or csv");
  const int threads = o.threads > 0 ? o.threads : threads_from_environment();
  const GroupSpec g = load_group(o);
  const CayleyBall ball = build_ball(g.presentation, g.oracle, o.radius);
  if (o.command == "ball") return cmd_ball(o, ball);
  if (o.command == "fill") return cmd_fill(o, ball);
  if (o.command == "dual-check") return cmd_dual_check(o, ball);
  if (o.command == "dehn" || o.command == "cof") return cmd_growth(o, ball, threads);
  if (o.command == "primitive") return cmd_primitive(o, ball);
  if (o.command == "check-ii") return cmd_check_ii(o, ball, threads);
  if (o.command == "thm4") return cmd_thm4(o, ball, threads);
  throw UsageError("unknown command '" + o.command + "'");
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  std::ostringstream s;
  s << std::hex;
  s.width(16);
  s.fill('0');
  s << h;
  return s.str();
}

json params_json(const Options& o) {
  json p{{"group", o.group},   {"presentation", o.presentation}, {"oracle", o.oracle}, {"radius", o.radius},
         {"max_len", o.max_len}, {"mode", o.mode},              {"format", o.format}, {"budget", o.budget},
         {"word", o.word},     {"integer", o.integer},           {"real", o.real},     {"n", o.ns},
         {"lambda", o.lambda}, {"alpha", o.alpha},               {"bounds", o.bounds}, {"bound", o.bound},
         {"complex", o.complex}, {"degree", o.degree},           {"cochain", o.cochain}, {"limit", o.limit},
         {"full", o.full}};
  return p;
}

std::optional<std::string> hash_for(const Options& o) {
  if (o.command == "complex-primitive") {
    try {
      return hex64(fnv1a(to_json(o.complex == "octahedron" ? octahedron() : parse_finite_complex(read_file(o.complex)))));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  try {
    return presentation_hash(load_group(o));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// Strips --manifest/--output (and their values) so the recorded argv names
// only what determines the output bytes.
std::vector<std::string> replayable_args(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--manifest" || a == "--output") {
      ++i;
      continue;
    }
    if (a.rfind("--manifest=", 0) == 0 || a.rfind("--output=", 0) == 0) continue;
    out.push_back(a);
  }
  return out;
}

void write_output(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + o.output + "'");
  f << text;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != s.size() || v < 0) throw UsageError("bad integer list '" + text + "'");
    return v;
  };
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(item));
      continue;
    }
    const int lo = to_int(item.substr(0, dots));
    const int hi = to_int(item.substr(dots + 2));
    if (hi < lo) throw UsageError("empty range '" + item + "'");
    for (int n = lo; n <= hi; ++n) out.push_back(n);
  }
  if (out.empty()) throw UsageError("empty integer list");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string presentation_hash(const GroupSpec& group) {
  return hex64(fnv1a(group.presentation.to_text() + "\noracle " + to_string(group.oracle->kind())));
}

Thm4Instance random_thm4_instance(const CayleyBall& ball, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto frac = [&](long lo, long span, long den) {
    Rational r(static_cast<long>(rng() % static_cast<unsigned long>(span)) + lo, static_cast<long>(rng() % static_cast<unsigned long>(den)) + 1);
    r.canonicalize();
    return r;
  };
  std::vector<Rational> m(static_cast<std::size_t>(ball.num_vertices()));
  for (auto& x : m) x = frac(-5, 11, 3);
  m[0] = 0;
  Thm4Instance inst;
  for (int id = 0; id < ball.num_edges(); ++id) {
    const Edge& e = ball.edge(id);
    Rational a = m[static_cast<std::size_t>(e.dst)] - m[static_cast<std::size_t>(e.src)];
    if (rng() % 6 == 0) a += frac(-3, 7, 2);
    inst.cd.alpha0.set(id, a);
  }
  inst.F.values.resize(static_cast<std::size_t>(ball.num_vertices()));
  for (auto& f : inst.F.values) f = rng() % 10 == 0 ? Bound::infinite() : Bound::finite(frac(0, 4, 4));
  return inst;
}

ExactCochain random_exact_cochain(const FiniteComplex& x, int q, std::uint64_t seed) {
  if (q < 1 || q >= static_cast<int>(x.dims.size())) throw DimensionMismatch("degree out of range");
  std::mt19937_64 rng(seed);
  ExactCochain ec;
  ec.witness.resize(static_cast<std::size_t>(x.dims[static_cast<std::size_t>(q - 1)]));
  ec.sup = 0;
  for (auto& t : ec.witness) {
    t = Rational(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 3) + 1);
    t.canonicalize();
    ec.sup = std::max(ec.sup, abs_value(t));
  }
  ec.u = coboundary(x, q, ec.witness);
  return ec;
}

namespace {

// -1 when parsing succeeded, else the exit code.
int parse_args(const std::vector<std::string>& args, Options& o, std::ostream& out, std::ostream& err) {
  CLI::App app{"cofill: filling and cofilling invariants of finitely presented groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.add_option("--group", o.group, "built-in group: z2, free2, surface2, heisenberg");
  app.add_option("--presentation", o.presentation, "presentation file ('-' reads stdin)");
  app.add_option("--oracle", o.oracle, "auto, free, abelian, dehn, heisenberg or table");
  app.add_option("--table", o.table, "JSON {table, images} for --oracle table");
  app.add_option("--radius", o.radius, "ball radius");
  app.add_option("--max-len", o.max_len, "longest relation to enumerate (default 2*radius)");
  app.add_option("--mode", o.mode, "exhaustive or sample:COUNT:SEED");
  app.add_option("--format", o.format, "json or csv");
  app.add_option("--budget", o.budget, "walk budget for enumeration and node budget for integer fills");
  app.add_option("--threads", o.threads, "worker threads (default COFILL_THREADS or 1)");
  app.add_option("--output", o.output, "write results here instead of stdout");
  app.add_option("--manifest", o.manifest, "write a run manifest here");
  app.add_option("--word", o.word, "a relation, e.g. \"a b a^-1 b^-1\"");
  app.add_flag("--int", o.integer, "integer filling (fill)");
  app.add_flag("--real", o.real, "real filling in the Dehn table (dehn)");
  app.add_flag("--full", o.full, "include vertex words and edges (ball)");
  app.add_option("--n", o.ns, "n values: 4 | 4,8,12 | 1..10");
  app.add_option("--lambda", o.lambda, "cell bound for the dual (dual-check)");
  app.add_option("--alpha", o.alpha, "JSON edge-index -> \"p/q\" for alpha0");
  app.add_option("--bounds", o.bounds, "JSON index -> \"p/q\"|\"inf\" bound function");
  app.add_option("--bound", o.bound, "constant bound (\"p/q\" or \"inf\"); fallback for --bounds");
  app.add_option("--seed", o.seed, "generate a random instance");
  app.add_option("--complex", o.complex, "finite complex JSON file, or 'octahedron'");
  app.add_option("--degree", o.degree, "cochain degree q (complex-primitive)");
  app.add_option("--cochain", o.cochain, "JSON cell-index -> \"p/q\" (complex-primitive)");
  app.add_option("--limit", o.limit, "violations to print (check-ii)");
  app.fallthrough();

  const std::vector<std::pair<std::string, std::string>> commands{
      {"ball", "Cayley ball statistics"},
      {"fill", "filling norm of a relation (--word)"},
      {"dehn", "abelianized Dehn function table (--n)"},
      {"cof", "cofilling function table (--n)"},
      {"dual-check", "primal filling LP against its dual (--word)"},
      {"primitive", "bounded primitive m of alpha0 with |alpha0 + dm| <= F"},
      {"check-ii", "condition (ii) over enumerated relations"},
      {"thm4", "LP feasibility against condition (ii)"},
      {"complex-primitive", "bounded primitive on a finite complex"},
      {"replay", "re-run a manifest"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->callback([&o, name = name] { o.command = name; });
    if (name == "replay") sub->add_option("manifest", o.replay_path, "manifest file")->required();
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  return -1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  if (const int code = parse_args(args, o, out, err); code >= 0) return code;

  try {
    if (o.command == "replay") {
      const json m = json::parse(read_file(o.replay_path));
      std::vector<std::string> again = m.at("argv").get<std::vector<std::string>>();
      Options recorded;
      if (const int code = parse_args(again, recorded, out, err); code >= 0) return code;
      if (recorded.command == "replay") throw UsageError("a manifest cannot replay another manifest");
      const auto h = hash_for(recorded);
      const json expected = m.value("presentation_hash", json(nullptr));
      if (h && expected.is_string() && *h != expected.get<std::string>()) {
        err << "presentation hash mismatch: manifest has " << expected.get<std::string>() << ", input now hashes to " << *h
            << "\n";
        return kNegative;
      }
      if (!o.output.empty()) {
        again.push_back("--output");
        again.push_back(o.output);
      }
      return run(again, out, err);
    }
    const auto start = std::chrono::steady_clock::now();
    const Result r = execute(o);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    write_output(o, r.text, out);
    if (!o.manifest.empty()) {
      json m;
      m["command"] = o.command;
      m["argv"] = replayable_args(args);
      m["params"] = params_json(o);
      std::optional<std::uint64_t> seed = o.seed;
      if (!seed && o.mode != "exhaustive") seed = parse_enumeration_mode(o.mode).seed;
      m["seed"] = seed ? json(*seed) : json(nullptr);
      const auto h = hash_for(o);
      m["presentation_hash"] = h ? json(*h) : json(nullptr);
      m["version"] = kVersion;
      m["wall_time_ms"] = ms;
      m["exit_code"] = r.code;
      std::ofstream f(o.manifest, std::ios::binary);
      if (!f) throw UsageError("cannot write '" + o.manifest + "'");
      f << m.dump(2) << '\n';
    }
    return r.code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const DimensionMismatch& e) {
    err << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidOracle& e) {
    err << "oracle error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const NotARelation& e) {
    err << "not a relation: " << e.what() << "\n";
    return kNegative;
  } catch (const EscapesBall& e) {
    err << "escapes ball: " << e.what() << " (try a larger --radius)\n";
    return kNegative;
  } catch (const NotExact& e) {
    err << "not exact: " << e.what() << "\n";
    return kNegative;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kNegative;
  } catch (const nlohmann::json::exception& e) {
    err << "json error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "bad value: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace cofill::cli
