#include "cofill/primitive.hpp"

#include <algorithm>

#include <json.hpp>

#include "cofill/error.hpp"
#include "cofill/foxcalc.hpp"
#include "cofill/parallel.hpp"

namespace cofill {

CocycleNorm cocycle_norm(const CocycleData& cd, const CayleyBall& ball) {
  CocycleNorm out;
  const Presentation& p = ball.presentation();
  for (int g = 0; g < ball.num_vertices(); ++g) {
    Rational best = 0;
    bool fits = true;
    for (int j = 0; j < p.num_relators() && fits; ++j) {
      const auto path = ball.walk(g, p.relator(j));
      if (!path) {
        fits = false;
        break;
      }
      Rational sum = 0;
      const Word& r = p.relator(j);
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i].sign > 0) {
          sum += cd.alpha0.at(ball.edge_from((*path)[i], r[i].gen));
        } else {
          sum -= cd.alpha0.at(ball.edge_from((*path)[i + 1], r[i].gen));
        }
      }
      best = std::max(best, abs_value(sum));
    }
    if (fits) {
      out.values[g] = best;
    } else {
      out.omitted.push_back(g);
    }
  }
  return out;
}

std::optional<IIValue> condition_ii_value(const CocycleData& cd, const BoundFunction& F, const CayleyBall& ball,
                                          int base, const Word& w) {
  IIValue value;
  Rational rhs = 0;
  bool finite = true;
  int v = base;
  for (const Letter& x : w) {
    const int u = ball.step(v, x);
    if (u < 0) return std::nullopt;
    const int tail = x.sign > 0 ? v : u;
    const Rational& a = cd.alpha0.at(ball.edge_from(tail, x.gen));
    if (x.sign > 0) {
      value.signed_sum += a;
    } else {
      value.signed_sum -= a;
    }
    const Bound& b = F.at(tail);
    if (b.is_infinite()) {
      finite = false;
    } else {
      rhs += *b.value;
    }
    v = u;
  }
  value.lhs = abs_value(value.signed_sum);
  if (finite) value.rhs = rhs;
  return value;
}

ConditionIIReport check_condition_ii(const CocycleData& cd, const BoundFunction& F, const CayleyBall& ball,
                                     int max_len, const EnumerationMode& mode, int threads,
                                     std::uint64_t walk_budget) {
  ConditionIIReport report;
  EnumerationOptions eo;
  eo.max_len = max_len;
  eo.mode = mode;
  eo.walk_budget = walk_budget;
  const RelationEnumeration rels = enumerate_relations(ball, eo);
  report.partial = !rels.complete;
  report.relations = rels.relations.size();
  const auto values = evaluate_ii(cd, F, ball, rels.relations, threads);
  const std::size_t V = static_cast<std::size_t>(ball.num_vertices());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i]) continue;
    ++report.checked;
    if (values[i]->violated()) {
      report.violations.push_back(
          Violation{static_cast<int>(i % V), rels.relations[i / V], values[i]->lhs, *values[i]->rhs});
    }
  }
  return report;
}

PrimitiveResult find_primitive(const CocycleData& cd, const BoundFunction& F, const CayleyBall& ball) {
  if (static_cast<int>(F.values.size()) != ball.num_vertices()) {
    throw DimensionMismatch("bound function size does not match the ball");
  }
  PrimitiveResult result;
  lp::Problem& problem = result.problem;
  for (int v = 0; v < ball.num_vertices(); ++v) {
    if (v == 0) {
      problem.add_variable(0, Rational(0), Rational(0));
    } else {
      problem.add_variable(0, std::nullopt, std::nullopt);
    }
  }
  std::vector<int> edge_of_row;
  for (int id = 0; id < ball.num_edges(); ++id) {
    const Edge& e = ball.edge(id);
    const Bound& b = F.at(e.src);
    if (b.is_infinite()) continue;
    const Rational& a = cd.alpha0.at(id);
    problem.add_row({{e.dst, 1}, {e.src, -1}}, lp::Sense::LessEqual, *b.value - a);
    problem.add_row({{e.dst, 1}, {e.src, -1}}, lp::Sense::GreaterEqual, -*b.value - a);
    edge_of_row.push_back(id);
    edge_of_row.push_back(id);
  }
  const lp::Solution s = lp::solve(problem);
  if (s.status == lp::Status::Optimal) {
    result.feasible = true;
    for (int v = 0; v < ball.num_vertices(); ++v) {
      const Rational& m = s.primal[static_cast<std::size_t>(v)];
      if (m != 0) result.m.values[v] = m;
    }
    return result;
  }
  if (s.status != lp::Status::Infeasible) throw Error("primitive LP unbounded (solver defect)");
  result.farkas = s.farkas;
  for (std::size_t r = 0; r < edge_of_row.size(); ++r) {
    const Rational& y = s.farkas->rows[r];
    if (y == 0) continue;
    const Edge& e = ball.edge(edge_of_row[r]);
    result.violating_cycle.add(e.src, e.gen, -y);
  }
  result.decomposition = decompose_cycle(result.violating_cycle, ball);
  for (const CycleTerm& t : result.decomposition) {
    const auto value = condition_ii_value(cd, F, ball, t.base, t.word);
    if (!value || !value->rhs) throw Error("Farkas cycle leaves the constrained edges (internal defect)");
    result.weighted_lhs += t.coefficient * value->signed_sum;
    result.weighted_rhs += t.coefficient * *value->rhs;
  }
  return result;
}

std::optional<NegativeCycle> find_negative_cycle(const CocycleData& cd, const BoundFunction& F,
                                                 const CayleyBall& ball) {
  struct Arc {
    int from;
    int to;
    Letter letter;
    Rational weight;
  };
  std::vector<Arc> arcs;
  for (int id = 0; id < ball.num_edges(); ++id) {
    const Edge& e = ball.edge(id);
    const Bound& b = F.at(e.src);
    if (b.is_infinite()) continue;
    const Rational& a = cd.alpha0.at(id);
    arcs.push_back(Arc{e.src, e.dst, Letter{e.gen, 1}, *b.value - a});
    arcs.push_back(Arc{e.dst, e.src, Letter{e.gen, -1}, *b.value + a});
  }
  const int V = ball.num_vertices();
  std::vector<Rational> dist(static_cast<std::size_t>(V), Rational(0));
  std::vector<int> parent(static_cast<std::size_t>(V), -1);
  int last = -1;
  for (int round = 0; round < V; ++round) {
    last = -1;
    for (std::size_t k = 0; k < arcs.size(); ++k) {
      const Arc& arc = arcs[k];
      const Rational candidate = dist[static_cast<std::size_t>(arc.from)] + arc.weight;
      if (candidate < dist[static_cast<std::size_t>(arc.to)]) {
        dist[static_cast<std::size_t>(arc.to)] = candidate;
        parent[static_cast<std::size_t>(arc.to)] = static_cast<int>(k);
        last = arc.to;
      }
    }
    if (last < 0) return std::nullopt;
  }
  // Still relaxing after V rounds: back up V steps to land on the cycle.
  int v = last;
  for (int i = 0; i < V; ++i) v = arcs[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])].from;
  NegativeCycle cycle;
  cycle.base = v;
  int u = v;
  do {
    const Arc& arc = arcs[static_cast<std::size_t>(parent[static_cast<std::size_t>(u)])];
    cycle.word.push_back(arc.letter);
    u = arc.from;
  } while (u != v);
  std::reverse(cycle.word.begin(), cycle.word.end());
  return cycle;
}

Thm4Report check_thm4_equivalence(const CocycleData& cd, const BoundFunction& F, const CayleyBall& ball, int max_len,
                                  int threads) {
  Thm4Report report;
  const PrimitiveResult primitive = find_primitive(cd, F, ball);
  report.lp_feasible = primitive.feasible;
  const auto negative = find_negative_cycle(cd, F, ball);
  report.ii_holds_all_walks = !negative;
  const ConditionIIReport enumerated =
      check_condition_ii(cd, F, ball, max_len, EnumerationMode::exhaustive(), threads);
  report.ii_holds_enumerated = enumerated.violations.empty();
  report.agreement = report.lp_feasible == report.ii_holds_all_walks && !(report.lp_feasible && !report.ii_holds_enumerated);
  report.truncation_gap = !report.lp_feasible && report.ii_holds_enumerated;
  if (!enumerated.violations.empty()) {
    report.witness = enumerated.violations.front();
  } else if (negative) {
    const auto value = condition_ii_value(cd, F, ball, negative->base, negative->word);
    report.witness = Violation{negative->base, negative->word, value->lhs, value->rhs.value_or(Rational(0))};
  }
  if (!primitive.feasible) {
    report.farkas_verified = primitive.farkas && lp::verify_farkas(primitive.problem, *primitive.farkas);
    bool single = false;
    for (const CycleTerm& t : primitive.decomposition) {
      const auto value = condition_ii_value(cd, F, ball, t.base, t.word);
      single = single || (value && value->violated());
    }
    report.decomposition_violates = primitive.weighted_lhs > primitive.weighted_rhs && single;
  }
  if (!report.agreement) {
    report.note = "disagreement between the LP and condition (ii)";
  } else if (report.truncation_gap) {
    report.note = "truncation: every violating closed walk is longer than max_len " + std::to_string(max_len);
  }
  return report;
}

// ---- finite complexes ----

void FiniteComplex::validate() const {
  for (int d : dims) {
    if (d < 0) throw DimensionMismatch("negative cell count");
  }
  for (const auto& [q, entries] : boundaries) {
    if (q < 1 || q >= static_cast<int>(dims.size())) throw DimensionMismatch("boundary degree " + std::to_string(q) + " out of range");
    for (const auto& [row, col, val] : entries) {
      if (row < 0 || row >= dims[static_cast<std::size_t>(q - 1)] || col < 0 || col >= dims[static_cast<std::size_t>(q)]) {
        throw DimensionMismatch("boundary entry out of range in degree " + std::to_string(q));
      }
      (void)val;
    }
  }
  for (const auto& [q, upper] : boundaries) {
    auto lower_it = boundaries.find(q - 1);
    if (lower_it == boundaries.end()) continue;
    std::map<long long, std::vector<std::pair<long long, long long>>> lower_cols;
    for (const auto& [row, col, val] : lower_it->second) lower_cols[col].emplace_back(row, val);
    std::map<long long, std::map<long long, long long>> product;  // q-cell -> (q-2)-cell -> value
    for (const auto& [mid, cell, val] : upper) {
      auto it = lower_cols.find(mid);
      if (it == lower_cols.end()) continue;
      for (const auto& [low, v2] : it->second) product[cell][low] += val * v2;
    }
    for (const auto& [cell, entries] : product) {
      for (const auto& [low, v] : entries) {
        if (v != 0) throw Error("boundary of boundary is nonzero in degree " + std::to_string(q));
      }
    }
  }
}

FiniteComplex parse_finite_complex(const std::string& json_text) {
  FiniteComplex x;
  try {
    const auto j = nlohmann::json::parse(json_text);
    x.dims = j.at("dims").get<std::vector<int>>();
    if (j.contains("boundaries")) {
      for (const auto& [key, entries] : j.at("boundaries").items()) {
        const int q = std::stoi(key);
        auto& list = x.boundaries[q];
        for (const auto& e : entries) list.push_back({e.at(0).get<long long>(), e.at(1).get<long long>(), e.at(2).get<long long>()});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("complex JSON: ") + e.what());
  }
  x.validate();
  return x;
}

std::string to_json(const FiniteComplex& x) {
  nlohmann::json j;
  j["dims"] = x.dims;
  auto& b = j["boundaries"] = nlohmann::json::object();
  for (const auto& [q, entries] : x.boundaries) {
    auto& list = b[std::to_string(q)] = nlohmann::json::array();
    for (const auto& [row, col, val] : entries) list.push_back({row, col, val});
  }
  return j.dump();
}

namespace {

template <typename T, typename Convert>
std::vector<T> parse_cell_map(const std::string& json_text, int size, T fallback, Convert convert) {
  std::vector<T> out(static_cast<std::size_t>(size), fallback);
  try {
    const auto j = nlohmann::json::parse(json_text);
    if (!j.is_object()) throw Error("cochain JSON must be an object of cell-index -> value");
    for (const auto& [key, value] : j.items()) {
      std::size_t used = 0;
      const int cell = std::stoi(key, &used);
      if (used != key.size()) throw Error("bad cell index '" + key + "'");
      if (cell < 0 || cell >= size) throw DimensionMismatch("cell index " + key + " out of range");
      const std::string text = value.is_string() ? value.template get<std::string>() : value.dump();
      out[static_cast<std::size_t>(cell)] = convert(text);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("cochain JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(std::string("cochain JSON: ") + e.what());
  }
  return out;
}

}  // namespace

std::vector<Rational> parse_cochain(const std::string& json_text, int size) {
  return parse_cell_map<Rational>(json_text, size, Rational(0), [](const std::string& s) { return parse_rational(s); });
}

std::vector<Bound> parse_bounds(const std::string& json_text, int size, const Bound& fallback) {
  return parse_cell_map<Bound>(json_text, size, fallback, [](const std::string& s) { return parse_bound(s); });
}

FiniteComplex octahedron() {
  FiniteComplex x;
  x.dims = {6, 12, 8};
  // Vertices +x -x +y -y +z -z; an edge joins every non-antipodal pair.
  std::map<std::pair<int, int>, int> edge_id;
  auto& d1 = x.boundaries[1];
  for (int a = 0; a < 6; ++a) {
    for (int b = a + 1; b < 6; ++b) {
      if (a / 2 == b / 2) continue;
      const int e = static_cast<int>(edge_id.size());
      edge_id[{a, b}] = e;
      d1.push_back({b, e, 1});
      d1.push_back({a, e, -1});
    }
  }
  auto& d2 = x.boundaries[2];
  int t = 0;
  for (int a : {0, 1}) {
    for (int b : {2, 3}) {
      for (int c : {4, 5}) {
        d2.push_back({edge_id.at({b, c}), t, 1});
        d2.push_back({edge_id.at({a, c}), t, -1});
        d2.push_back({edge_id.at({a, b}), t, 1});
        ++t;
      }
    }
  }
  x.validate();
  return x;
}

FiniteComplex ball_complex(const CellTable& cells) {
  const CayleyBall& ball = cells.ball();
  FiniteComplex x;
  x.dims = {ball.num_vertices(), ball.num_edges(), cells.num_cells()};
  auto& d1 = x.boundaries[1];
  for (int id = 0; id < ball.num_edges(); ++id) {
    const Edge& e = ball.edge(id);
    d1.push_back({e.dst, id, 1});
    d1.push_back({e.src, id, -1});
  }
  auto& d2 = x.boundaries[2];
  for (int c = 0; c < cells.num_cells(); ++c) {
    for (const auto& [e, k] : cells.cell(c).edges) d2.push_back({e, c, k});
  }
  return x;
}

std::vector<Rational> coboundary(const FiniteComplex& x, int q, const std::vector<Rational>& t) {
  if (q < 1 || q >= static_cast<int>(x.dims.size())) throw DimensionMismatch("degree out of range");
  if (static_cast<int>(t.size()) != x.dims[static_cast<std::size_t>(q - 1)]) throw DimensionMismatch("cochain size mismatch");
  std::vector<Rational> out(static_cast<std::size_t>(x.dims[static_cast<std::size_t>(q)]));
  auto it = x.boundaries.find(q);
  if (it == x.boundaries.end()) return out;
  for (const auto& [row, col, val] : it->second) {
    out[static_cast<std::size_t>(col)] += Rational(static_cast<long>(val)) * t[static_cast<std::size_t>(row)];
  }
  return out;
}

ComplexPrimitiveResult complex_primitive(const FiniteComplex& x, int q, const std::vector<Rational>& u,
                                         const std::vector<Bound>& f) {
  if (q < 1 || q >= static_cast<int>(x.dims.size())) throw DimensionMismatch("degree out of range");
  const int n_low = x.dims[static_cast<std::size_t>(q - 1)];
  const int n_high = x.dims[static_cast<std::size_t>(q)];
  if (static_cast<int>(u.size()) != n_high) throw DimensionMismatch("u has the wrong number of cells");
  if (static_cast<int>(f.size()) != n_low) throw DimensionMismatch("f has the wrong number of cells");
  for (const Bound& b : f) {
    if (!b.is_infinite() && *b.value < 0) throw Error("bound function must be nonnegative");
  }
  std::vector<std::vector<std::pair<int, Rational>>> rows(static_cast<std::size_t>(n_high));
  auto it = x.boundaries.find(q);
  if (it != x.boundaries.end()) {
    for (const auto& [row, col, val] : it->second) {
      rows[static_cast<std::size_t>(col)].emplace_back(static_cast<int>(row), Rational(static_cast<long>(val)));
    }
  }
  auto build = [&](bool bounded) {
    lp::Problem p;
    for (int i = 0; i < n_low; ++i) {
      const Bound& b = f[static_cast<std::size_t>(i)];
      if (bounded && !b.is_infinite()) {
        p.add_variable(0, Rational(-*b.value), *b.value);
      } else {
        p.add_variable(0, std::nullopt, std::nullopt);
      }
    }
    for (int s = 0; s < n_high; ++s) p.add_row(rows[static_cast<std::size_t>(s)], lp::Sense::Equal, u[static_cast<std::size_t>(s)]);
    return p;
  };
  if (!lp::feasibility(build(false)).feasible) throw NotExact("u is not a coboundary");
  ComplexPrimitiveResult result;
  result.problem = build(true);
  const lp::Feasibility feas = lp::feasibility(result.problem);
  result.feasible = feas.feasible;
  if (feas.feasible) {
    result.t = feas.point;
  } else {
    result.farkas = feas.farkas;
  }
  return result;
}

}  // namespace cofill
