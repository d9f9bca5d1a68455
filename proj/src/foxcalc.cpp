#include "cofill/foxcalc.hpp"

#include "cofill/error.hpp"
#include "cofill/filling.hpp"

namespace cofill {

namespace {

int located(const CayleyBall& ball, int base, const Word& prefix) {
  const int v = ball.vertex_of(concat(ball.word(base), prefix));
  if (v < 0) throw EscapesBall("prefix " + ball.presentation().format(prefix) + " leaves the ball");
  return v;
}

}  // namespace

GroupRingVec fox_theta(const Word& w, const CayleyBall& ball, int base) {
  GroupRingVec out;
  Word prefix;
  for (const Letter& x : w) {
    const int gi = located(ball, base, prefix);
    prefix.push_back(x);
    if (x.sign > 0) {
      out.add(gi, x.gen, Rational(1));
    } else {
      out.add(located(ball, base, prefix), x.gen, Rational(-1));
    }
  }
  return out;
}

GroupRingVec translate(int g, const GroupRingVec& x, const CayleyBall& ball) {
  GroupRingVec out;
  for (const auto& [key, c] : x.entries()) {
    const int v = ball.translate(g, key.first);
    if (v < 0) throw EscapesBall("translate leaves the ball");
    out.add(v, key.second, c);
  }
  return out;
}

GroupRingVec eta(const GroupRingVec& x, const CayleyBall& ball) {
  for (const auto& [key, c] : x.entries()) {
    if (ball.edge_from(key.first, key.second) < 0) throw EscapesBall("edge leaves the ball");
  }
  return x;
}

GroupRingVec chain_of_walk(const Word& w, const CayleyBall& ball, int base) {
  GroupRingVec out;
  int v = base;
  for (const Letter& x : w) {
    const int u = ball.step(v, x);
    if (u < 0) throw EscapesBall("walk of " + ball.presentation().format(w) + " leaves the ball");
    const Edge& e = ball.edge(x.sign > 0 ? ball.edge_from(v, x.gen) : ball.edge_from(u, x.gen));
    out.add(e.src, e.gen, Rational(x.sign));
    v = u;
  }
  return out;
}

GroupRingVec cycle_of_relation(const Word& w, const CayleyBall& ball, int base) {
  if (!ball.oracle().is_identity(w)) {
    throw NotARelation(ball.presentation().format(w) + " is not a relation");
  }
  return chain_of_walk(w, ball, base);
}

GroupRingScalar boundary1(const GroupRingVec& x, const CayleyBall& ball) {
  GroupRingScalar out;
  for (const auto& [key, c] : x.entries()) {
    const int target = ball.step(key.first, Letter{key.second, 1});
    if (target < 0) throw EscapesBall("boundary target leaves the ball");
    out.add(target, c);
    out.add(key.first, -c);
  }
  return out;
}

GroupRingVec relator_cell(int vertex, int relator, const CayleyBall& ball) {
  return chain_of_walk(ball.presentation().relator(relator), ball, vertex);
}

GroupRingVec boundary2(const FillCertificate& c, const CayleyBall& ball) {
  GroupRingVec out;
  for (const FillTerm& t : c.terms()) out += t.coefficient * relator_cell(t.vertex, t.relator, ball);
  return out;
}

BarCochain constant_bar_cochain(Rational value) {
  return [value](int, int) -> std::optional<Rational> { return value; };
}

BarCochain vertex_coboundary(VertexFunction m) {
  return [m = std::move(m)](int g, int h) -> std::optional<Rational> { return m.at(h) - m.at(g); };
}

BarCochain edge_bar_cochain(EdgeCochain alpha, const CayleyBall& ball) {
  return [alpha = std::move(alpha), &ball](int g, int h) -> std::optional<Rational> {
    for (int s = 0; s < ball.num_generators(); ++s) {
      if (ball.step(g, Letter{s, 1}) == h) return alpha.at(ball.edge_from(g, s));
      if (ball.step(h, Letter{s, 1}) == g) return Rational(-alpha.at(ball.edge_from(h, s)));
    }
    return std::nullopt;
  };
}

Rational bar_coboundary(const BarCochain& a, int g0, int g1, int g2) {
  const auto a12 = a(g1, g2);
  const auto a02 = a(g0, g2);
  const auto a01 = a(g0, g1);
  if (!a12 || !a02 || !a01) throw Error("bar cochain is not defined on every face of the triple");
  return *a12 - *a02 + *a01;
}

std::vector<BarTerm> psi2(int relator, const CayleyBall& ball) {
  const Word& r = ball.presentation().relator(relator);
  if (r.empty()) throw Error("empty relator");
  const auto path = ball.walk(0, r);
  if (!path) throw EscapesBall("relator walk leaves the ball");
  std::vector<BarTerm> out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const int letter = ball.step(0, r[i]);
    if (letter < 0) throw EscapesBall("generator outside the ball");
    out.push_back(BarTerm{Rational(1), (*path)[i], letter});
  }
  return out;
}

BarChain1 bar_boundary2(const std::vector<BarTerm>& chain, const CayleyBall& ball) {
  BarChain1 out;
  auto add = [&out](int x, int y, const Rational& c) {
    auto& slot = out[{x, y}];
    slot += c;
    if (slot == 0) out.erase({x, y});
  };
  for (const BarTerm& t : chain) {
    const int gh = ball.vertex_of(concat(ball.word(t.g), ball.word(t.h)));
    if (gh < 0) throw EscapesBall("bar simplex leaves the ball");
    // d(1, g, gh) = (g, gh) - (1, gh) + (1, g)
    add(t.g, gh, t.coefficient);
    add(0, gh, -t.coefficient);
    add(0, t.g, t.coefficient);
  }
  return out;
}

GroupRingVec pairs_to_edges(const BarChain1& chain, const CayleyBall& ball) {
  GroupRingVec out;
  for (const auto& [pair, c] : chain) {
    const auto [g, h] = pair;
    bool matched = false;
    for (int s = 0; s < ball.num_generators() && !matched; ++s) {
      if (ball.step(g, Letter{s, 1}) == h) {
        out.add(g, s, c);
        matched = true;
      } else if (ball.step(h, Letter{s, 1}) == g) {
        out.add(h, s, -c);
        matched = true;
      }
    }
    if (!matched) throw Error("pair is not an edge of the Cayley graph");
  }
  return out;
}

GroupRingVec chi1(int g, const CayleyBall& ball) { return fox_theta(ball.word(g), ball, 0); }

FillCertificate chi2(int g, int h, const CayleyBall& ball, std::size_t budget) {
  const int gh = ball.vertex_of(concat(ball.word(g), ball.word(h)));
  if (gh < 0) throw EscapesBall("product leaves the ball");
  Word w = ball.word(g);
  w.insert(w.end(), ball.word(h).begin(), ball.word(h).end());
  const Word back = invert(ball.word(gh));
  w.insert(w.end(), back.begin(), back.end());
  const GroupRingVec z = cycle_of_relation(w, ball, 0);
  const CellTable cells(ball);
  FillOptions options;
  options.node_budget = budget;
  options.check_truncation = false;
  const FillReport report = fill_int(z, cells, options);
  if (!report.feasible) throw Error("no filling of the chi2 relation inside the ball");
  if (!report.complete) throw BudgetExceeded("chi2 branch-and-bound budget exhausted");
  return report.certificate;
}

}  // namespace cofill
