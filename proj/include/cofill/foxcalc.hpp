#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cofill/cayley.hpp"
#include "cofill/chains.hpp"

namespace cofill {

// theta(w) = sum_{eps=+1} g_i e_{s_i} - sum_{eps=-1} g_{i+1} e_{s_i}, with the
// prefixes g_i located through the oracle and read from `base`.
// Throws EscapesBall when a needed prefix is outside the ball.
GroupRingVec fox_theta(const Word& w, const CayleyBall& ball, int base = 0);

// Left translation by the group element of vertex g.
GroupRingVec translate(int g, const GroupRingVec& x, const CayleyBall& ball);

// Slot (g, s) -> edge g -> g s; checks the edge exists in the ball.
GroupRingVec eta(const GroupRingVec& x, const CayleyBall& ball);

// Signed edge chain of the closed walk of w from base.
// Throws NotARelation or EscapesBall.
GroupRingVec cycle_of_relation(const Word& w, const CayleyBall& ball, int base = 0);

// Same walk without the closedness requirement.
GroupRingVec chain_of_walk(const Word& w, const CayleyBall& ball, int base = 0);

// d1(g e_s) = g s - g.
GroupRingScalar boundary1(const GroupRingVec& x, const CayleyBall& ball);

// The g-translate of relator cell f_j as a 1-chain.
GroupRingVec relator_cell(int vertex, int relator, const CayleyBall& ball);

GroupRingVec boundary2(const FillCertificate& c, const CayleyBall& ball);

// ---- bar complex, q <= 2 ----

// An inhomogeneous bar 1-cochain evaluated on homogeneous pairs (g, h) of ball
// vertices; nullopt where it is not defined.
using BarCochain = std::function<std::optional<Rational>(int, int)>;

BarCochain constant_bar_cochain(Rational value);
// (g, h) -> m(h) - m(g).
BarCochain vertex_coboundary(VertexFunction m);
// Defined on edge pairs: (g, g s) -> alpha(e), (g s, g) -> -alpha(e).
BarCochain edge_bar_cochain(EdgeCochain alpha, const CayleyBall& ball);

// a(g1,g2) - a(g0,g2) + a(g0,g1). Throws Error on an unevaluable pair.
Rational bar_coboundary(const BarCochain& a, int g0, int g1, int g2);

// coefficient * [g | h], i.e. the homogeneous simplex (1, g, g h).
struct BarTerm {
  Rational coefficient;
  int g = 0;
  int h = 0;
  friend bool operator==(const BarTerm&, const BarTerm&) = default;
};

// Homogeneous 1-chain: (g, h) -> coefficient.
using BarChain1 = std::map<std::pair<int, int>, Rational>;

// Cone(I_{r_j}) = sum_i [g_i | s_i^{eps_i}].
std::vector<BarTerm> psi2(int relator, const CayleyBall& ball);

BarChain1 bar_boundary2(const std::vector<BarTerm>& chain, const CayleyBall& ball);

// Edge/pair dictionary. Throws Error on a pair that is not an edge.
GroupRingVec pairs_to_edges(const BarChain1& chain, const CayleyBall& ball);

// d(nu(g)) for the oracle normal form nu(g) = ball.word(g).
GroupRingVec chi1(int g, const CayleyBall& ball);

// Minimal integer filling of nu(g) nu(h) nu(gh)^-1. Throws BudgetExceeded,
// EscapesBall, or Error when the relation has no filling inside the ball.
FillCertificate chi2(int g, int h, const CayleyBall& ball, std::size_t budget = 100000);

}  // namespace cofill
