#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cofill/cayley.hpp"
#include "cofill/chains.hpp"

namespace cofill {

// All translates g f_j whose boundary walk stays in the ball, with their
// boundaries as sparse edge vectors. Built once per ball and shared.
class CellTable {
 public:
  struct Cell {
    int vertex = 0;
    int relator = 0;
    int reach = 0;  // largest word length met by the boundary walk
    std::vector<std::pair<int, int>> edges;  // (edge id, coefficient), merged, sorted
  };

  explicit CellTable(const CayleyBall& ball);

  const CayleyBall& ball() const { return *ball_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(int id) const { return cells_.at(static_cast<std::size_t>(id)); }
  int num_cells() const { return static_cast<int>(cells_.size()); }
  // Cells whose boundary uses the edge.
  const std::vector<int>& cells_on_edge(int edge) const { return on_edge_.at(static_cast<std::size_t>(edge)); }
  // Cell id of the (vertex, relator) translate, or -1.
  int find(int vertex, int relator) const;

 private:
  const CayleyBall* ball_;
  std::vector<Cell> cells_;
  std::vector<std::vector<int>> on_edge_;
};

struct FillOptions {
  std::size_t node_budget = 100000;  // branch-and-bound nodes for fill_int
  bool check_truncation = true;      // re-solve on the radius r-1 sub-ball
};

struct FillReport {
  bool feasible = false;
  int radius = 0;
  Rational value;                 // optimal (or best found) l1 value
  Rational lower_bound;           // equals value unless the budget ran out
  bool complete = true;           // false when fill_int ran out of budget
  FillCertificate certificate;
  bool truncated = false;         // value differs on the radius r-1 sub-ball
  EdgeCochain farkas;             // when infeasible: a with a(cells) = 0, a(z) != 0
  std::size_t lp_solves = 0;
};

// Edge-id form of a 1-chain. Throws EscapesBall for slots without an edge.
std::map<int, Rational> to_edge_map(const GroupRingVec& z, const CayleyBall& ball);

// Ball-truncated real filling norm of z (l1-minimal real 2-chain).
FillReport fill_real(const GroupRingVec& z, const CellTable& cells, const FillOptions& options = {});
FillReport fill_real(const GroupRingVec& z, const CayleyBall& ball, const FillOptions& options = {});

// Integer version by depth-first branch and bound over fill_real bounds.
FillReport fill_int(const GroupRingVec& z, const CellTable& cells, const FillOptions& options = {});
FillReport fill_int(const GroupRingVec& z, const CayleyBall& ball, const FillOptions& options = {});

struct StableFillRow {
  int n = 0;
  Rational real_per_n;  // fill_real(I_{w^n}) / n
  Rational int_per_n;   // fill_int(I_{w^n}) / n
};

std::vector<StableFillRow> stable_fill(const Word& w, const CellTable& cells, int n_max, const FillOptions& options = {});

struct GrowthRow {
  int n = 0;
  Rational value;
  Word witness;     // empty when no relation of length <= n exists
  int radius = 0;
  bool truncated = false;
};

struct GrowthTable {
  std::vector<GrowthRow> rows;
  bool partial = false;  // enumeration budget ran out or a fill was incomplete
  std::size_t relations = 0;
};

struct GrowthOptions {
  EnumerationMode mode;
  std::uint64_t walk_budget = 200'000'000;
  FillOptions fill;
  int threads = 1;
  bool real = false;  // dehn_ab only: sup of fill_real instead of fill_int
};

// sup over enumerated relations w with |w| <= n of fill(I_w) (dehn_ab) or
// fill_real(I_w)/|w| (cof), one row per n in `ns`.
GrowthTable dehn_ab(const CayleyBall& ball, const std::vector<int>& ns, const GrowthOptions& options = {});
GrowthTable cof(const CayleyBall& ball, const std::vector<int>& ns, const GrowthOptions& options = {});

struct DualCheck {
  bool feasible = false;
  Rational primal;
  Rational dual;
  EdgeCochain cochain;  // optimal a with |a(g I_{r_j})| <= lambda on every ball cell
  std::size_t rounds = 0;
};

// Solves the primal filling LP and, separately, the dual
// max a(z) s.t. |a(cell)| <= lambda, then checks the dual optimum against every
// cell of the ball.
DualCheck dual_norm_check(const GroupRingVec& z, const CellTable& cells, const Rational& lambda = 1);
DualCheck dual_norm_check(const Word& w, const CellTable& cells, const Rational& lambda = 1);

struct CycleTerm {
  Rational coefficient;  // > 0
  int base = 0;
  Word word;             // a closed walk from base
};

// Cancellation trace: peel off closed paths through the smallest-|tau| term
// until x is exhausted. Throws Error when boundary1(x) != 0, BudgetExceeded
// after `budget` rounds.
std::vector<CycleTerm> decompose_cycle(const GroupRingVec& x, const CayleyBall& ball, std::size_t budget = 1000000);

}  // namespace cofill
