#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cofill/cayley.hpp"
#include "cofill/chains.hpp"
#include "cofill/filling.hpp"
#include "cofill/ratlp.hpp"

namespace cofill {

// alpha0 on ball edges; the cocycle is its coboundary on relator cells.
struct CocycleData {
  EdgeCochain alpha0;
};

// Per-vertex bound, possibly +inf.
struct BoundFunction {
  std::vector<Bound> values;

  static BoundFunction constant(int size, const Bound& b) { return BoundFunction{std::vector<Bound>(static_cast<std::size_t>(size), b)}; }
  const Bound& at(int i) const { return values.at(static_cast<std::size_t>(i)); }
};

struct CocycleNorm {
  std::map<int, Rational> values;  // vertex -> max_j |a(g I_{r_j})|
  std::vector<int> omitted;        // vertices with a translate leaving the ball
};

CocycleNorm cocycle_norm(const CocycleData& cd, const CayleyBall& ball);

// Both sides of the (ii) inequality for the closed walk of w from base:
// lhs = |sum_{eps=1} alpha0(g_i, s_i) - sum_{eps=-1} alpha0(g_{i+1}, s_i)|,
// rhs = sum of F at the tail of every traversed edge (nullopt when infinite).
struct IIValue {
  Rational signed_sum;
  Rational lhs;
  std::optional<Rational> rhs;
  bool violated() const { return rhs && lhs > *rhs; }
};

// nullopt when the walk leaves the ball.
std::optional<IIValue> condition_ii_value(const CocycleData& cd, const BoundFunction& F, const CayleyBall& ball,
                                          int base, const Word& w);

struct Violation {
  int base = 0;
  Word word;
  Rational lhs;
  Rational rhs;
};

struct ConditionIIReport {
  std::vector<Violation> violations;  // ordered by (relation, base)
  std::size_t relations = 0;
  std::size_t checked = 0;            // (relation, base) pairs whose walk fits the ball
  bool partial = false;
};

ConditionIIReport check_condition_ii(const CocycleData& cd, const BoundFunction& F, const CayleyBall& ball,
                                     int max_len, const EnumerationMode& mode, int threads = 1,
                                     std::uint64_t walk_budget = 200'000'000);

struct PrimitiveResult {
  bool feasible = false;
  VertexFunction m;                            // with m(identity) = 0
  std::optional<lp::FarkasCertificate> farkas;
  lp::Problem problem;                         // for re-verification
  GroupRingVec violating_cycle;                // net Farkas flow on edges
  std::vector<CycleTerm> decomposition;        // of violating_cycle
  Rational weighted_lhs;                       // sum coeff * signed (ii) sum
  Rational weighted_rhs;                       // sum coeff * (ii) right side
};

// |alpha0(g,s) + m(g s) - m(g)| <= F(g) on every edge with finite F(g).
PrimitiveResult find_primitive(const CocycleData& cd, const BoundFunction& F, const CayleyBall& ball);

// Every closed walk in the ball satisfies (ii) iff the difference-constraint
// graph has no negative cycle; returns a violating closed walk otherwise.
struct NegativeCycle {
  int base = 0;
  Word word;
};
std::optional<NegativeCycle> find_negative_cycle(const CocycleData& cd, const BoundFunction& F, const CayleyBall& ball);

struct Thm4Report {
  bool lp_feasible = false;
  bool ii_holds_all_walks = false;     // Bellman-Ford over every closed walk in the ball
  bool ii_holds_enumerated = false;    // enumerated relations up to max_len
  bool agreement = false;              // lp_feasible == ii_holds_all_walks
  bool truncation_gap = false;         // LP infeasible, yet no enumerated relation violates
  bool farkas_verified = true;
  bool decomposition_violates = true;  // weighted (ii) violated and some single cycle violates
  std::optional<Violation> witness;
  std::string note;
};

Thm4Report check_thm4_equivalence(const CocycleData& cd, const BoundFunction& F, const CayleyBall& ball, int max_len,
                                  int threads = 1);

// ---- Question 2 on finite complexes ----

struct FiniteComplex {
  std::vector<int> dims;  // cells per dimension
  // boundaries[q] is the (dims[q-1] x dims[q]) matrix of d_q as (row, col, value).
  std::map<int, std::vector<std::array<long long, 3>>> boundaries;

  // Throws DimensionMismatch or Error unless every d_{q-1} d_q = 0.
  void validate() const;
};

FiniteComplex parse_finite_complex(const std::string& json_text);
std::string to_json(const FiniteComplex& x);
// JSON object cell-index -> "p/q"; missing cells are zero.
std::vector<Rational> parse_cochain(const std::string& json_text, int size);
// JSON object cell-index -> "p/q" | "inf"; missing cells are `fallback`.
std::vector<Bound> parse_bounds(const std::string& json_text, int size, const Bound& fallback = Bound::infinite());

// Boundary of the octahedron: 6 vertices, 12 edges, 8 triangles.
FiniteComplex octahedron();
// The ball as a 2-complex: vertices, edges, and ball-supported relator cells.
FiniteComplex ball_complex(const CellTable& cells);

struct ComplexPrimitiveResult {
  bool feasible = false;
  std::vector<Rational> t;
  std::optional<lp::FarkasCertificate> farkas;
  lp::Problem problem;
};

// t on (q-1)-cells with dt = u and |t| <= f. Throws NotExact when dt = u has no
// solution at all, DimensionMismatch, or Error on negative bounds.
ComplexPrimitiveResult complex_primitive(const FiniteComplex& x, int q, const std::vector<Rational>& u,
                                         const std::vector<Bound>& f);

// (d t)(sigma) for a (q-1)-cochain t.
std::vector<Rational> coboundary(const FiniteComplex& x, int q, const std::vector<Rational>& t);

}  // namespace cofill
