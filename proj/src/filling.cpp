#include "cofill/filling.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "cofill/error.hpp"
#include "cofill/foxcalc.hpp"
#include "cofill/parallel.hpp"
#include "cofill/ratlp.hpp"

namespace cofill {

CellTable::CellTable(const CayleyBall& ball) : ball_(&ball) {
  const Presentation& p = ball.presentation();
  on_edge_.resize(static_cast<std::size_t>(ball.num_edges()));
  for (int v = 0; v < ball.num_vertices(); ++v) {
    for (int j = 0; j < p.num_relators(); ++j) {
      const auto path = ball.walk(v, p.relator(j));
      if (!path) continue;
      Cell cell;
      cell.vertex = v;
      cell.relator = j;
      for (int u : *path) cell.reach = std::max(cell.reach, ball.length(u));
      std::map<int, int> coeff;
      const Word& r = p.relator(j);
      for (std::size_t i = 0; i < r.size(); ++i) {
        const int a = (*path)[i];
        const int b = (*path)[i + 1];
        const int e = r[i].sign > 0 ? ball.edge_from(a, r[i].gen) : ball.edge_from(b, r[i].gen);
        coeff[e] += r[i].sign;
      }
      for (const auto& [e, c] : coeff) {
        if (c != 0) cell.edges.emplace_back(e, c);
      }
      const int id = static_cast<int>(cells_.size());
      for (const auto& [e, c] : cell.edges) on_edge_[static_cast<std::size_t>(e)].push_back(id);
      cells_.push_back(std::move(cell));
    }
  }
}

int CellTable::find(int vertex, int relator) const {
  auto it = std::lower_bound(cells_.begin(), cells_.end(), std::make_pair(vertex, relator),
                             [](const Cell& c, const std::pair<int, int>& key) {
                               return std::make_pair(c.vertex, c.relator) < key;
                             });
  if (it == cells_.end() || it->vertex != vertex || it->relator != relator) return -1;
  return static_cast<int>(it - cells_.begin());
}

std::map<int, Rational> to_edge_map(const GroupRingVec& z, const CayleyBall& ball) {
  std::map<int, Rational> out;
  for (const auto& [key, c] : z.entries()) {
    const int e = ball.edge_from(key.first, key.second);
    if (e < 0) throw EscapesBall("chain has an edge outside the ball");
    out[e] = c;
  }
  return out;
}

namespace {

struct Branch {
  int cell = 0;
  bool upper = true;  // x_cell <= bound, else x_cell >= bound
  Rational bound;
};

struct LpOutcome {
  bool feasible = false;
  Rational value;
  std::map<int, Rational> x;      // cell -> nonzero value
  std::map<int, Rational> duals;  // edge -> optimal dual, or Farkas multiplier
  std::vector<int> columns;
  std::size_t solves = 0;
};

// min sum |x_c| s.t. sum_c x_c d(cell c) = target, over cells with
// reach <= reach_limit, by column generation from `columns`. Restricting the
// columns never changes the answer once no excluded column prices out.
LpOutcome solve_fill_lp(const CellTable& table, const std::map<int, Rational>& target, int reach_limit,
                        const std::vector<Branch>& branches, std::vector<int> columns) {
  auto allowed = [&](int c) { return table.cell(c).reach <= reach_limit; };
  if (columns.empty()) {
    for (const auto& [e, v] : target) {
      for (int c : table.cells_on_edge(e)) {
        if (allowed(c)) columns.push_back(c);
      }
    }
  }
  for (const Branch& b : branches) columns.push_back(b.cell);
  LpOutcome out;
  for (;;) {
    std::sort(columns.begin(), columns.end());
    columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
    std::map<int, int> row_of;
    for (const auto& [e, v] : target) row_of.emplace(e, 0);
    for (int c : columns) {
      for (const auto& [e, k] : table.cell(c).edges) row_of.emplace(e, 0);
    }
    std::vector<int> edge_of_row;
    for (auto& [e, r] : row_of) {
      r = static_cast<int>(edge_of_row.size());
      edge_of_row.push_back(e);
    }
    lp::Problem problem;
    std::vector<std::vector<std::pair<int, Rational>>> rows(edge_of_row.size());
    std::map<int, int> var_of;
    for (int c : columns) {
      const int plus = problem.add_variable(1);
      problem.add_variable(1);
      var_of[c] = plus;
      for (const auto& [e, k] : table.cell(c).edges) {
        auto& row = rows[static_cast<std::size_t>(row_of.at(e))];
        row.emplace_back(plus, k);
        row.emplace_back(plus + 1, -k);
      }
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      auto it = target.find(edge_of_row[r]);
      problem.add_row(std::move(rows[r]), lp::Sense::Equal, it == target.end() ? Rational(0) : it->second);
    }
    for (const Branch& b : branches) {
      const int plus = var_of.at(b.cell);
      problem.add_row({{plus, 1}, {plus + 1, -1}}, b.upper ? lp::Sense::LessEqual : lp::Sense::GreaterEqual, b.bound);
    }
    const lp::Solution s = lp::solve(problem);
    ++out.solves;
    if (s.status == lp::Status::Unbounded) throw Error("filling LP unbounded (solver defect)");
    out.feasible = s.status == lp::Status::Optimal;
    const std::vector<Rational>& y = out.feasible ? s.row_duals : s.farkas->rows;
    out.duals.clear();
    for (std::size_t r = 0; r < edge_of_row.size(); ++r) {
      if (y[r] != 0) out.duals[edge_of_row[r]] = y[r];
    }
    // Price the excluded cells that meet an edge with a nonzero multiplier.
    std::set<int> candidates;
    for (const auto& [e, v] : out.duals) {
      for (int c : table.cells_on_edge(e)) {
        if (allowed(c) && !std::binary_search(columns.begin(), columns.end(), c)) candidates.insert(c);
      }
    }
    bool added = false;
    for (int c : candidates) {
      Rational price = 0;
      for (const auto& [e, k] : table.cell(c).edges) {
        auto it = out.duals.find(e);
        if (it != out.duals.end()) price += k * it->second;
      }
      if (out.feasible ? abs_value(price) > 1 : price != 0) {
        columns.push_back(c);
        added = true;
      }
    }
    if (added) continue;
    out.columns = columns;
    if (out.feasible) {
      out.value = s.objective;
      for (const auto& [c, plus] : var_of) {
        Rational v = s.primal[static_cast<std::size_t>(plus)] - s.primal[static_cast<std::size_t>(plus + 1)];
        if (v != 0) out.x[c] = v;
      }
    }
    return out;
  }
}

void verify_certificate(const CellTable& table, const std::map<int, Rational>& x, const std::map<int, Rational>& target) {
  std::map<int, Rational> sum;
  for (const auto& [c, v] : x) {
    for (const auto& [e, k] : table.cell(c).edges) {
      sum[e] += k * v;
    }
  }
  for (auto it = sum.begin(); it != sum.end();) {
    it = it->second == 0 ? sum.erase(it) : std::next(it);
  }
  if (sum != target) throw Error("filling certificate does not reproduce the target (internal defect)");
}

FillCertificate certificate_of(const CellTable& table, const std::map<int, Rational>& x, std::uint64_t target_hash) {
  FillCertificate cert;
  for (const auto& [c, v] : x) cert.add(table.cell(c).vertex, table.cell(c).relator, v);
  cert.target_hash = target_hash;
  return cert;
}

bool inside_sub_ball(const CayleyBall& ball, const std::map<int, Rational>& target, int radius) {
  for (const auto& [e, v] : target) {
    const Edge& edge = ball.edge(e);
    if (ball.length(edge.src) > radius || ball.length(edge.dst) > radius) return false;
  }
  return true;
}

EdgeCochain cochain_of(const std::map<int, Rational>& duals) {
  EdgeCochain a;
  for (const auto& [e, v] : duals) a.set(e, v);
  return a;
}

Rational ceil_rational(const Rational& q) { return Rational(ceil_of(q)); }

}  // namespace

FillReport fill_real(const GroupRingVec& z, const CellTable& cells, const FillOptions& options) {
  const CayleyBall& ball = cells.ball();
  FillReport report;
  report.radius = ball.radius();
  const auto target = to_edge_map(z, ball);
  if (target.empty()) {
    report.feasible = true;
    report.certificate.target_hash = z.hash();
    return report;
  }
  LpOutcome out = solve_fill_lp(cells, target, ball.radius(), {}, {});
  report.lp_solves = out.solves;
  report.feasible = out.feasible;
  if (!out.feasible) {
    report.farkas = cochain_of(out.duals);
    report.truncated = true;
    return report;
  }
  verify_certificate(cells, out.x, target);
  report.value = out.value;
  report.lower_bound = out.value;
  report.certificate = certificate_of(cells, out.x, z.hash());
  if (options.check_truncation && ball.radius() >= 1) {
    report.truncated = true;
    if (inside_sub_ball(ball, target, ball.radius() - 1)) {
      const LpOutcome sub = solve_fill_lp(cells, target, ball.radius() - 1, {}, {});
      report.lp_solves += sub.solves;
      report.truncated = !(sub.feasible && sub.value == out.value);
    }
  }
  return report;
}

FillReport fill_real(const GroupRingVec& z, const CayleyBall& ball, const FillOptions& options) {
  const CellTable cells(ball);
  return fill_real(z, cells, options);
}

namespace {

struct IntSearch {
  const CellTable& table;
  const std::map<int, Rational>& target;
  int reach_limit;
  std::size_t budget;
  std::size_t nodes = 0;
  std::size_t solves = 0;
  bool exhausted = false;
  std::optional<Rational> best_value;
  std::map<int, Rational> best_x;

  void explore(std::vector<Branch>& branches, const std::vector<int>& columns) {
    if (nodes >= budget) {
      exhausted = true;
      return;
    }
    ++nodes;
    const LpOutcome out = solve_fill_lp(table, target, reach_limit, branches, columns);
    solves += out.solves;
    if (!out.feasible) return;
    if (best_value && ceil_rational(out.value) >= *best_value) return;
    int pick = -1;
    Rational pick_frac = 0;
    for (const auto& [c, v] : out.x) {
      const Rational a = abs_value(v);
      const Rational frac = a - Rational(floor_of(a));
      if (frac > pick_frac) {
        pick = c;
        pick_frac = frac;
      }
    }
    if (pick < 0) {
      best_value = out.value;
      best_x = out.x;
      return;
    }
    const Rational down(floor_of(out.x.at(pick)));
    branches.push_back(Branch{pick, true, down});
    explore(branches, out.columns);
    branches.back() = Branch{pick, false, down + 1};
    explore(branches, out.columns);
    branches.pop_back();
  }
};

}  // namespace

FillReport fill_int(const GroupRingVec& z, const CellTable& cells, const FillOptions& options) {
  const CayleyBall& ball = cells.ball();
  FillReport report;
  report.radius = ball.radius();
  const auto target = to_edge_map(z, ball);
  if (target.empty()) {
    report.feasible = true;
    report.certificate.target_hash = z.hash();
    return report;
  }
  auto run = [&](int reach_limit, FillReport& into) {
    IntSearch search{cells, target, reach_limit, options.node_budget, 0, 0, false, std::nullopt, {}};
    const LpOutcome root = solve_fill_lp(cells, target, reach_limit, {}, {});
    search.solves += root.solves;
    if (!root.feasible) {
      into.feasible = false;
      into.farkas = cochain_of(root.duals);
      into.lp_solves += search.solves;
      return;
    }
    std::vector<Branch> branches;
    search.explore(branches, root.columns);
    into.lp_solves += search.solves;
    into.complete = !search.exhausted;
    into.lower_bound = ceil_rational(root.value);
    if (!search.best_value && !search.exhausted) {
      // Real fillings exist but no integer one does.
      into.feasible = false;
      return;
    }
    if (!search.best_value) {
      // Budget ran out before any integer point was found.
      into.feasible = true;
      into.value = into.lower_bound;
      into.complete = false;
      return;
    }
    verify_certificate(cells, search.best_x, target);
    into.feasible = true;
    into.value = *search.best_value;
    if (into.complete) into.lower_bound = into.value;
    into.certificate = certificate_of(cells, search.best_x, z.hash());
  };
  run(ball.radius(), report);
  if (!report.feasible) {
    report.truncated = true;
    return report;
  }
  if (options.check_truncation && ball.radius() >= 1) {
    report.truncated = true;
    if (inside_sub_ball(ball, target, ball.radius() - 1)) {
      FillReport sub;
      run(ball.radius() - 1, sub);
      report.lp_solves += sub.lp_solves;
      report.truncated = !(sub.feasible && sub.complete && sub.value == report.value);
    }
  }
  return report;
}

FillReport fill_int(const GroupRingVec& z, const CayleyBall& ball, const FillOptions& options) {
  const CellTable cells(ball);
  return fill_int(z, cells, options);
}

std::vector<StableFillRow> stable_fill(const Word& w, const CellTable& cells, int n_max, const FillOptions& options) {
  std::vector<StableFillRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    const GroupRingVec z = cycle_of_relation(power(w, n), cells.ball(), 0);
    const FillReport real = fill_real(z, cells, options);
    const FillReport integer = fill_int(z, cells, options);
    if (!real.feasible || !integer.feasible) throw Error("stable_fill: relation has no filling inside the ball");
    rows.push_back(StableFillRow{n, real.value / n, integer.value / n});
  }
  return rows;
}

namespace {

GrowthTable growth(const CayleyBall& ball, const std::vector<int>& ns, const GrowthOptions& options, bool per_length,
                   bool integer) {
  GrowthTable table;
  if (ns.empty()) return table;
  std::vector<int> sorted_ns = ns;
  std::sort(sorted_ns.begin(), sorted_ns.end());
  sorted_ns.erase(std::unique(sorted_ns.begin(), sorted_ns.end()), sorted_ns.end());
  EnumerationOptions eo;
  eo.max_len = sorted_ns.back();
  eo.mode = options.mode;
  eo.walk_budget = options.walk_budget;
  RelationEnumeration rels = enumerate_relations(ball, eo);
  table.partial = !rels.complete;
  std::vector<Word> relations = std::move(rels.relations);
  std::sort(relations.begin(), relations.end(), [](const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return least_rotation_class_key(a) < least_rotation_class_key(b);
  });
  table.relations = relations.size();
  const CellTable cells(ball);
  const std::vector<FillReport> reports =
      fill_relations(cells, relations, integer ? FillKind::Integer : FillKind::Real, options.fill, options.threads);

  Rational best = 0;
  Word witness;
  bool witness_truncated = false;
  std::size_t next = 0;
  for (int n : sorted_ns) {
    while (next < relations.size() && static_cast<int>(relations[next].size()) <= n) {
      const FillReport& r = reports[next];
      if (!r.feasible) {
        table.partial = true;
      } else {
        if (!r.complete) table.partial = true;
        const Rational v = per_length ? Rational(r.value / static_cast<long>(relations[next].size())) : r.value;
        if (v > best) {
          best = v;
          witness = relations[next];
          witness_truncated = r.truncated;
        }
      }
      ++next;
    }
    table.rows.push_back(GrowthRow{n, best, witness, ball.radius(), witness_truncated});
  }
  return table;
}

}  // namespace

GrowthTable dehn_ab(const CayleyBall& ball, const std::vector<int>& ns, const GrowthOptions& options) {
  return growth(ball, ns, options, false, !options.real);
}

GrowthTable cof(const CayleyBall& ball, const std::vector<int>& ns, const GrowthOptions& options) {
  return growth(ball, ns, options, true, false);
}

DualCheck dual_norm_check(const GroupRingVec& z, const CellTable& cells, const Rational& lambda) {
  if (lambda <= 0) throw Error("dual bound must be positive");
  const CayleyBall& ball = cells.ball();
  const auto target = to_edge_map(z, ball);
  DualCheck check;
  if (target.empty()) {
    check.feasible = true;
    return check;
  }
  std::vector<int> columns;
  for (;;) {
    ++check.rounds;
    const LpOutcome primal = solve_fill_lp(cells, target, ball.radius(), {}, columns);
    if (!primal.feasible) return check;
    columns = primal.columns;

    // The dual LP over the cells in play: a on their edges, free.
    std::map<int, int> var_of;
    for (const auto& [e, v] : target) var_of.emplace(e, 0);
    for (int c : columns) {
      for (const auto& [e, k] : cells.cell(c).edges) var_of.emplace(e, 0);
    }
    lp::Problem dual;
    dual.direction = lp::Direction::Maximize;
    for (auto& [e, var] : var_of) {
      auto it = target.find(e);
      var = dual.add_variable(it == target.end() ? Rational(0) : it->second, std::nullopt, std::nullopt);
    }
    for (int c : columns) {
      std::vector<std::pair<int, Rational>> coeffs;
      for (const auto& [e, k] : cells.cell(c).edges) coeffs.emplace_back(var_of.at(e), k);
      dual.add_row(coeffs, lp::Sense::LessEqual, lambda);
      dual.add_row(std::move(coeffs), lp::Sense::GreaterEqual, -lambda);
    }
    const lp::Solution s = lp::solve(dual);
    if (s.status != lp::Status::Optimal) throw Error("dual filling LP not optimal although the primal is feasible");
    EdgeCochain a;
    for (const auto& [e, var] : var_of) a.set(e, s.primal[static_cast<std::size_t>(var)]);

    // Check the dual optimum against every ball cell.
    bool added = false;
    for (int c = 0; c < cells.num_cells(); ++c) {
      Rational value = 0;
      for (const auto& [e, k] : cells.cell(c).edges) value += k * a.at(e);
      if (abs_value(value) > lambda) {
        columns.push_back(c);
        added = true;
      }
    }
    if (added) continue;
    check.feasible = true;
    check.primal = primal.value;
    check.dual = s.objective;
    check.cochain = std::move(a);
    return check;
  }
}

DualCheck dual_norm_check(const Word& w, const CellTable& cells, const Rational& lambda) {
  return dual_norm_check(cycle_of_relation(w, cells.ball(), 0), cells, lambda);
}

std::vector<CycleTerm> decompose_cycle(const GroupRingVec& x, const CayleyBall& ball, std::size_t budget) {
  if (!boundary1(x, ball).empty()) throw Error("decompose_cycle: chain is not a cycle");
  std::map<int, Rational> work = to_edge_map(x, ball);
  std::vector<CycleTerm> out;
  const int P = ball.num_generators();
  while (!work.empty()) {
    if (out.size() >= budget) throw BudgetExceeded("decompose_cycle: round budget exhausted");
    // Smallest |tau|; ties by vertex then generator, i.e. by edge id.
    auto pick = work.begin();
    for (auto it = work.begin(); it != work.end(); ++it) {
      if (abs_value(it->second) < abs_value(pick->second)) pick = it;
    }
    const Edge& e = ball.edge(pick->first);
    const Rational tau = abs_value(pick->second);
    const bool forward = pick->second > 0;
    const int start = forward ? e.src : e.dst;
    const int next = forward ? e.dst : e.src;
    const Letter first{e.gen, static_cast<std::int8_t>(forward ? 1 : -1)};

    // Breadth-first search along the flow from `next` back to `start`.
    std::map<int, std::pair<int, Letter>> parent;  // vertex -> (previous vertex, letter)
    std::deque<int> queue{next};
    parent.emplace(next, std::make_pair(-1, Letter{}));
    while (!queue.empty() && !parent.count(start)) {
      const int v = queue.front();
      queue.pop_front();
      for (int key = 0; key < 2 * P; ++key) {
        const Letter l{key / 2, static_cast<std::int8_t>(key % 2 ? -1 : 1)};
        const int u = ball.step(v, l);
        if (u < 0 || parent.count(u)) continue;
        const int edge = l.sign > 0 ? ball.edge_from(v, l.gen) : ball.edge_from(u, l.gen);
        auto it = work.find(edge);
        if (it == work.end() || (it->second > 0) != (l.sign > 0)) continue;
        parent.emplace(u, std::make_pair(v, l));
        queue.push_back(u);
      }
    }
    if (!parent.count(start)) throw Error("decompose_cycle: flow trace failed (chain is not a cycle)");
    Word word;
    for (int v = start; v != next;) {
      const auto& [prev, l] = parent.at(v);
      word.push_back(l);
      v = prev;
    }
    word.push_back(first);
    std::reverse(word.begin(), word.end());
    int v = start;
    for (const Letter& l : word) {
      const int u = ball.step(v, l);
      const int edge = l.sign > 0 ? ball.edge_from(v, l.gen) : ball.edge_from(u, l.gen);
      auto it = work.find(edge);
      it->second -= l.sign > 0 ? tau : Rational(-tau);
      if (it->second == 0) work.erase(it);
      v = u;
    }
    out.push_back(CycleTerm{tau, start, std::move(word)});
  }
  return out;
}

}  // namespace cofill
