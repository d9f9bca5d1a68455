#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cofill/rational.hpp"

namespace cofill::lp {

enum class Sense { LessEqual, Equal, GreaterEqual };
enum class Direction { Minimize, Maximize };
enum class Status { Optimal, Infeasible, Unbounded };

std::string to_string(Status s);

struct Row {
  std::vector<std::pair<int, Rational>> coefficients;  // (variable, value)
  Sense sense = Sense::Equal;
  Rational rhs;
};

// Exact LP: optimize objective·x subject to rows and per-variable bounds.
// Absent bounds mean unbounded in that direction.
struct Problem {
  Direction direction = Direction::Minimize;
  std::vector<Rational> objective;
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;
  std::vector<Row> rows;

  int num_variables() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  int add_variable(Rational cost, std::optional<Rational> lo = Rational(0), std::optional<Rational> hi = std::nullopt);
  int add_row(std::vector<std::pair<int, Rational>> coefficients, Sense sense, Rational rhs);
};

// Multipliers proving infeasibility. Sign convention: row multipliers are >= 0
// on >= rows, <= 0 on <= rows, free on = rows; lower-bound multipliers >= 0,
// upper-bound multipliers <= 0. A certificate is valid when
//   sum_i y_i a_i + lower + upper = 0   (as a vector over variables)
//   sum_i y_i b_i + sum_j lower_j l_j + sum_j upper_j u_j > 0.
struct FarkasCertificate {
  std::vector<Rational> rows;
  std::vector<Rational> lower;
  std::vector<Rational> upper;
};

struct Solution {
  Status status = Status::Infeasible;
  std::vector<Rational> primal;
  // Optimal only. Same sign convention as FarkasCertificate for minimization
  // (flipped for maximization); objective = b·y + l·lower + u·upper exactly.
  std::vector<Rational> row_duals;
  std::vector<Rational> lower_duals;
  std::vector<Rational> upper_duals;
  Rational objective;
  Rational dual_objective;
  std::optional<FarkasCertificate> farkas;
  std::size_t pivots = 0;
};

// Two-phase dense-tableau simplex over exact rationals, Bland's rule.
// Throws DimensionMismatch on malformed problems.
Solution solve(const Problem& problem);

// Exact re-checks, independent of the solver internals.
bool verify_farkas(const Problem& problem, const FarkasCertificate& certificate);
bool is_primal_feasible(const Problem& problem, const std::vector<Rational>& x);
// Primal feasibility, dual sign conditions, stationarity and equal objectives.
bool verify_optimal(const Problem& problem, const Solution& solution);

struct SparseMatrix {
  int num_rows = 0;
  int num_cols = 0;
  std::vector<std::vector<std::pair<int, Rational>>> rows;  // row -> (col, value)
};

struct L1Result {
  Status status = Status::Infeasible;
  Rational value;
  std::vector<Rational> x;
  std::vector<Rational> duals;  // optimal y with |A^T y|_inf <= 1, b·y = value
  std::optional<FarkasCertificate> farkas;
  Problem problem;  // the split formulation, for re-verification
};

// min sum |x_i| s.t. A x = b, through x = x+ - x-.
L1Result min_l1(const SparseMatrix& a, const std::vector<Rational>& b);

struct Feasibility {
  bool feasible = false;
  std::vector<Rational> point;
  std::optional<FarkasCertificate> farkas;
};

// Phase one only (zero objective).
Feasibility feasibility(const Problem& problem);

// Plain-text listing with exact "p/q" rationals.
std::string dump(const Problem& problem);

}  // namespace cofill::lp
