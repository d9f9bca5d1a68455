#include "cofill/ratlp.hpp"

#include <sstream>

#include "cofill/error.hpp"

namespace cofill::lp {

std::string to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
  }
  return "?";
}

int Problem::add_variable(Rational cost, std::optional<Rational> lo, std::optional<Rational> hi) {
  objective.push_back(std::move(cost));
  lower.push_back(std::move(lo));
  upper.push_back(std::move(hi));
  return num_variables() - 1;
}

int Problem::add_row(std::vector<std::pair<int, Rational>> coefficients, Sense sense, Rational rhs) {
  rows.push_back(Row{std::move(coefficients), sense, std::move(rhs)});
  return num_rows() - 1;
}

namespace {

void validate(const Problem& p) {
  const int n = p.num_variables();
  if (static_cast<int>(p.lower.size()) != n || static_cast<int>(p.upper.size()) != n) {
    throw DimensionMismatch("bound vectors do not match the number of variables");
  }
  for (const Row& row : p.rows) {
    for (const auto& [var, value] : row.coefficients) {
      if (var < 0 || var >= n) throw DimensionMismatch("row references variable " + std::to_string(var));
    }
  }
}

// How an original variable maps onto nonnegative tableau columns.
struct VariableMap {
  enum class Kind { Shift, Reflect, Split } kind = Kind::Shift;
  int column = -1;        // x = l + x'  |  x = u - x'  |  x = x+ - x-
  int minus_column = -1;  // Split only
  int upper_row = -1;     // standardized row index of x' <= u - l, or -1
};

class Tableau {
 public:
  Tableau(int rows, int cols) : m_(rows), n_(cols), t_(static_cast<std::size_t>(rows) * cols), rhs_(rows), basis_(rows, -1) {}

  Rational& at(int r, int c) { return t_[static_cast<std::size_t>(r) * n_ + c]; }
  const Rational& at(int r, int c) const { return t_[static_cast<std::size_t>(r) * n_ + c]; }
  Rational& rhs(int r) { return rhs_[r]; }
  int& basis(int r) { return basis_[r]; }
  int rows() const { return m_; }
  int cols() const { return n_; }

  // Reduced costs d = c - c_B^T B^-1 A and value z = c_B^T B^-1 b for the current basis.
  void price(const std::vector<Rational>& cost) {
    cost_ = cost;
    d_ = cost;
    z_ = 0;
    for (int r = 0; r < m_; ++r) {
      const Rational& cb = cost_[basis_[r]];
      if (cb == 0) continue;
      for (int j = 0; j < n_; ++j) {
        if (sgn(at(r, j)) != 0) d_[j] -= cb * at(r, j);
      }
      z_ += cb * rhs_[r];
    }
  }

  const std::vector<Rational>& reduced_costs() const { return d_; }
  const Rational& value() const { return z_; }

  void pivot(int pr, int pc) {
    nz_.clear();
    for (int j = 0; j < n_; ++j) {
      if (sgn(at(pr, j)) != 0) nz_.push_back(j);
    }
    const Rational inv = 1 / at(pr, pc);
    for (int j : nz_) at(pr, j) *= inv;
    rhs_[pr] *= inv;
    for (int r = 0; r < m_; ++r) {
      if (r == pr || sgn(at(r, pc)) == 0) continue;
      factor_ = at(r, pc);
      for (int j : nz_) {
        mpq_mul(tmp_.get_mpq_t(), factor_.get_mpq_t(), at(pr, j).get_mpq_t());
        mpq_sub(at(r, j).get_mpq_t(), at(r, j).get_mpq_t(), tmp_.get_mpq_t());
      }
      mpq_mul(tmp_.get_mpq_t(), factor_.get_mpq_t(), rhs_[pr].get_mpq_t());
      mpq_sub(rhs_[r].get_mpq_t(), rhs_[r].get_mpq_t(), tmp_.get_mpq_t());
    }
    if (sgn(d_[pc]) != 0) {
      factor_ = d_[pc];
      for (int j : nz_) d_[j] -= factor_ * at(pr, j);
      z_ += factor_ * rhs_[pr];
    }
    basis_[pr] = pc;
    ++pivots_;
  }

  // Bland's rule over columns [0, allowed). Returns false when unbounded.
  bool run(int allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < allowed; ++j) {
        if (sgn(d_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int r = 0; r < m_; ++r) {
        if (sgn(at(r, enter)) <= 0) continue;
        Rational ratio = rhs_[r] / at(r, enter);
        if (leave < 0 || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = std::move(ratio);
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  std::size_t pivots() const { return pivots_; }

 private:
  int m_;
  int n_;
  std::vector<Rational> t_;
  std::vector<Rational> rhs_;
  std::vector<int> basis_;
  std::vector<Rational> cost_;
  std::vector<Rational> d_;
  Rational z_;
  std::vector<int> nz_;
  Rational factor_;
  Rational tmp_;
  std::size_t pivots_ = 0;
};

}  // namespace

Solution solve(const Problem& problem) {
  validate(problem);
  const int n = problem.num_variables();
  const int m0 = problem.num_rows();
  const bool maximize = problem.direction == Direction::Maximize;

  // ---- standardize variables ----
  std::vector<VariableMap> vars(static_cast<std::size_t>(n));
  int structural = 0;
  int upper_rows = 0;
  for (int j = 0; j < n; ++j) {
    VariableMap& v = vars[static_cast<std::size_t>(j)];
    const auto& lo = problem.lower[static_cast<std::size_t>(j)];
    const auto& hi = problem.upper[static_cast<std::size_t>(j)];
    if (lo) {
      v.kind = VariableMap::Kind::Shift;
      v.column = structural++;
      if (hi) v.upper_row = m0 + upper_rows++;
    } else if (hi) {
      v.kind = VariableMap::Kind::Reflect;
      v.column = structural++;
    } else {
      v.kind = VariableMap::Kind::Split;
      v.column = structural++;
      v.minus_column = structural++;
    }
  }
  const int m = m0 + upper_rows;

  // Dense standardized rows over structural columns.
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(m), std::vector<Rational>(static_cast<std::size_t>(structural)));
  std::vector<Rational> b(static_cast<std::size_t>(m));
  std::vector<Sense> sense(static_cast<std::size_t>(m), Sense::LessEqual);
  for (int i = 0; i < m0; ++i) {
    const Row& row = problem.rows[static_cast<std::size_t>(i)];
    sense[static_cast<std::size_t>(i)] = row.sense;
    b[static_cast<std::size_t>(i)] = row.rhs;
    auto& ai = a[static_cast<std::size_t>(i)];
    for (const auto& [j, value] : row.coefficients) {
      const VariableMap& v = vars[static_cast<std::size_t>(j)];
      switch (v.kind) {
        case VariableMap::Kind::Shift:
          ai[static_cast<std::size_t>(v.column)] += value;
          b[static_cast<std::size_t>(i)] -= value * *problem.lower[static_cast<std::size_t>(j)];
          break;
        case VariableMap::Kind::Reflect:
          ai[static_cast<std::size_t>(v.column)] -= value;
          b[static_cast<std::size_t>(i)] -= value * *problem.upper[static_cast<std::size_t>(j)];
          break;
        case VariableMap::Kind::Split:
          ai[static_cast<std::size_t>(v.column)] += value;
          ai[static_cast<std::size_t>(v.minus_column)] -= value;
          break;
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    const VariableMap& v = vars[static_cast<std::size_t>(j)];
    if (v.upper_row < 0) continue;
    a[static_cast<std::size_t>(v.upper_row)][static_cast<std::size_t>(v.column)] = 1;
    b[static_cast<std::size_t>(v.upper_row)] = *problem.upper[static_cast<std::size_t>(j)] - *problem.lower[static_cast<std::size_t>(j)];
  }

  // ---- slacks, row normalization, initial basis ----
  std::vector<int> slack_sign(static_cast<std::size_t>(m), 0);
  std::vector<bool> negated(static_cast<std::size_t>(m), false);
  int slacks = 0;
  for (int i = 0; i < m; ++i) {
    if (sense[static_cast<std::size_t>(i)] == Sense::LessEqual) slack_sign[static_cast<std::size_t>(i)] = 1;
    if (sense[static_cast<std::size_t>(i)] == Sense::GreaterEqual) slack_sign[static_cast<std::size_t>(i)] = -1;
    if (slack_sign[static_cast<std::size_t>(i)] != 0) ++slacks;
    if (b[static_cast<std::size_t>(i)] < 0) negated[static_cast<std::size_t>(i)] = true;
  }
  std::vector<int> slack_column(static_cast<std::size_t>(m), -1);
  std::vector<int> init_column(static_cast<std::size_t>(m), -1);
  int next = structural;
  for (int i = 0; i < m; ++i) {
    if (slack_sign[static_cast<std::size_t>(i)] != 0) slack_column[static_cast<std::size_t>(i)] = next++;
  }
  const int first_artificial = next;
  std::vector<int> artificial_rows;
  for (int i = 0; i < m; ++i) {
    const int effective = slack_sign[static_cast<std::size_t>(i)] * (negated[static_cast<std::size_t>(i)] ? -1 : 1);
    if (effective == 1) {
      init_column[static_cast<std::size_t>(i)] = slack_column[static_cast<std::size_t>(i)];
    } else {
      init_column[static_cast<std::size_t>(i)] = next++;
      artificial_rows.push_back(i);
    }
  }
  const int total = next;

  Tableau t(m, total);
  for (int i = 0; i < m; ++i) {
    const Rational sign = negated[static_cast<std::size_t>(i)] ? -1 : 1;
    for (int j = 0; j < structural; ++j) {
      const Rational& v = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (v != 0) t.at(i, j) = sign * v;
    }
    if (slack_column[static_cast<std::size_t>(i)] >= 0) {
      t.at(i, slack_column[static_cast<std::size_t>(i)]) = sign * slack_sign[static_cast<std::size_t>(i)];
    }
    if (init_column[static_cast<std::size_t>(i)] >= first_artificial) t.at(i, init_column[static_cast<std::size_t>(i)]) = 1;
    t.rhs(i) = sign * b[static_cast<std::size_t>(i)];
    t.basis(i) = init_column[static_cast<std::size_t>(i)];
  }

  // Map normalized-row multipliers back to original rows / upper rows and fill
  // bound multipliers from the residual c - A^T y.
  auto unnormalize = [&](const std::vector<Rational>& y_norm) {
    std::vector<Rational> y(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      y[static_cast<std::size_t>(i)] = negated[static_cast<std::size_t>(i)] ? Rational(-y_norm[static_cast<std::size_t>(i)]) : y_norm[static_cast<std::size_t>(i)];
    }
    return y;
  };
  // Bound multipliers so that cost_j = sum_i y_i a_ij + lower_j + upper_j.
  auto split_bounds = [&](const std::vector<Rational>& y, const std::vector<Rational>& cost,
                          std::vector<Rational>& row_out, std::vector<Rational>& lower_out,
                          std::vector<Rational>& upper_out) {
    row_out.assign(y.begin(), y.begin() + m0);
    lower_out.assign(static_cast<std::size_t>(n), Rational(0));
    upper_out.assign(static_cast<std::size_t>(n), Rational(0));
    std::vector<Rational> residual(cost);
    for (int i = 0; i < m0; ++i) {
      const Rational& yi = y[static_cast<std::size_t>(i)];
      if (yi == 0) continue;
      for (const auto& [j, value] : problem.rows[static_cast<std::size_t>(i)].coefficients) {
        residual[static_cast<std::size_t>(j)] -= yi * value;
      }
    }
    for (int j = 0; j < n; ++j) {
      const VariableMap& v = vars[static_cast<std::size_t>(j)];
      Rational r = residual[static_cast<std::size_t>(j)];
      if (v.upper_row >= 0) {
        upper_out[static_cast<std::size_t>(j)] = y[static_cast<std::size_t>(v.upper_row)];
        r -= y[static_cast<std::size_t>(v.upper_row)];
      }
      if (v.kind == VariableMap::Kind::Shift) lower_out[static_cast<std::size_t>(j)] = r;
      if (v.kind == VariableMap::Kind::Reflect) upper_out[static_cast<std::size_t>(j)] = r;
    }
  };

  Solution sol;

  // ---- phase one ----
  if (!artificial_rows.empty()) {
    std::vector<Rational> phase1(static_cast<std::size_t>(total));
    for (int i : artificial_rows) phase1[static_cast<std::size_t>(init_column[static_cast<std::size_t>(i)])] = 1;
    t.price(phase1);
    t.run(first_artificial);
    if (t.value() > 0) {
      std::vector<Rational> y_norm(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) {
        const int c = init_column[static_cast<std::size_t>(i)];
        y_norm[static_cast<std::size_t>(i)] = phase1[static_cast<std::size_t>(c)] - t.reduced_costs()[static_cast<std::size_t>(c)];
      }
      // Phase-one duals: y·b > 0 with A^T y <= 0 on the nonnegative columns.
      std::vector<Rational> y = unnormalize(y_norm);
      FarkasCertificate cert;
      split_bounds(y, std::vector<Rational>(static_cast<std::size_t>(n)), cert.rows, cert.lower, cert.upper);
      sol.status = Status::Infeasible;
      sol.farkas = std::move(cert);
      sol.pivots = t.pivots();
      return sol;
    }
    // Drive zero-level artificials out of the basis where possible.
    for (int r = 0; r < m; ++r) {
      if (t.basis(r) < first_artificial) continue;
      for (int j = 0; j < first_artificial; ++j) {
        if (sgn(t.at(r, j)) != 0) {
          t.pivot(r, j);
          break;
        }
      }
    }
  }

  // ---- phase two ----
  std::vector<Rational> cost(static_cast<std::size_t>(total));
  Rational constant = 0;
  for (int j = 0; j < n; ++j) {
    const VariableMap& v = vars[static_cast<std::size_t>(j)];
    const Rational c = maximize ? Rational(-problem.objective[static_cast<std::size_t>(j)]) : problem.objective[static_cast<std::size_t>(j)];
    switch (v.kind) {
      case VariableMap::Kind::Shift:
        cost[static_cast<std::size_t>(v.column)] = c;
        constant += c * *problem.lower[static_cast<std::size_t>(j)];
        break;
      case VariableMap::Kind::Reflect:
        cost[static_cast<std::size_t>(v.column)] = -c;
        constant += c * *problem.upper[static_cast<std::size_t>(j)];
        break;
      case VariableMap::Kind::Split:
        cost[static_cast<std::size_t>(v.column)] = c;
        cost[static_cast<std::size_t>(v.minus_column)] = -c;
        break;
    }
  }
  t.price(cost);
  const bool bounded = t.run(first_artificial);
  sol.pivots = t.pivots();

  std::vector<Rational> column_value(static_cast<std::size_t>(total));
  for (int r = 0; r < m; ++r) column_value[static_cast<std::size_t>(t.basis(r))] = t.rhs(r);
  sol.primal.assign(static_cast<std::size_t>(n), Rational(0));
  for (int j = 0; j < n; ++j) {
    const VariableMap& v = vars[static_cast<std::size_t>(j)];
    const Rational& xc = column_value[static_cast<std::size_t>(v.column)];
    switch (v.kind) {
      case VariableMap::Kind::Shift: sol.primal[static_cast<std::size_t>(j)] = *problem.lower[static_cast<std::size_t>(j)] + xc; break;
      case VariableMap::Kind::Reflect: sol.primal[static_cast<std::size_t>(j)] = *problem.upper[static_cast<std::size_t>(j)] - xc; break;
      case VariableMap::Kind::Split:
        sol.primal[static_cast<std::size_t>(j)] = xc - column_value[static_cast<std::size_t>(v.minus_column)];
        break;
    }
  }
  if (!bounded) {
    sol.status = Status::Unbounded;
    return sol;
  }
  sol.status = Status::Optimal;
  sol.objective = 0;
  for (int j = 0; j < n; ++j) sol.objective += problem.objective[static_cast<std::size_t>(j)] * sol.primal[static_cast<std::size_t>(j)];

  std::vector<Rational> y_norm(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const int c = init_column[static_cast<std::size_t>(i)];
    y_norm[static_cast<std::size_t>(i)] = cost[static_cast<std::size_t>(c)] - t.reduced_costs()[static_cast<std::size_t>(c)];
  }
  std::vector<Rational> y = unnormalize(y_norm);
  std::vector<Rational> min_cost(problem.objective);
  if (maximize) {
    for (auto& c : min_cost) c = -c;
  }
  split_bounds(y, min_cost, sol.row_duals, sol.lower_duals, sol.upper_duals);
  if (maximize) {
    for (auto& v : sol.row_duals) v = -v;
    for (auto& v : sol.lower_duals) v = -v;
    for (auto& v : sol.upper_duals) v = -v;
  }
  sol.dual_objective = 0;
  for (int i = 0; i < m0; ++i) sol.dual_objective += sol.row_duals[static_cast<std::size_t>(i)] * problem.rows[static_cast<std::size_t>(i)].rhs;
  for (int j = 0; j < n; ++j) {
    if (problem.lower[static_cast<std::size_t>(j)]) sol.dual_objective += sol.lower_duals[static_cast<std::size_t>(j)] * *problem.lower[static_cast<std::size_t>(j)];
    if (problem.upper[static_cast<std::size_t>(j)]) sol.dual_objective += sol.upper_duals[static_cast<std::size_t>(j)] * *problem.upper[static_cast<std::size_t>(j)];
  }
  return sol;
}

bool verify_farkas(const Problem& problem, const FarkasCertificate& cert) {
  const int n = problem.num_variables();
  if (static_cast<int>(cert.rows.size()) != problem.num_rows() || static_cast<int>(cert.lower.size()) != n ||
      static_cast<int>(cert.upper.size()) != n) {
    return false;
  }
  std::vector<Rational> combo(static_cast<std::size_t>(n));
  Rational value = 0;
  for (int i = 0; i < problem.num_rows(); ++i) {
    const Row& row = problem.rows[static_cast<std::size_t>(i)];
    const Rational& y = cert.rows[static_cast<std::size_t>(i)];
    if (row.sense == Sense::GreaterEqual && y < 0) return false;
    if (row.sense == Sense::LessEqual && y > 0) return false;
    if (y == 0) continue;
    for (const auto& [j, a] : row.coefficients) combo[static_cast<std::size_t>(j)] += y * a;
    value += y * row.rhs;
  }
  for (int j = 0; j < n; ++j) {
    const Rational& lo = cert.lower[static_cast<std::size_t>(j)];
    const Rational& hi = cert.upper[static_cast<std::size_t>(j)];
    if (lo < 0 || hi > 0) return false;
    if (lo != 0) {
      if (!problem.lower[static_cast<std::size_t>(j)]) return false;
      value += lo * *problem.lower[static_cast<std::size_t>(j)];
    }
    if (hi != 0) {
      if (!problem.upper[static_cast<std::size_t>(j)]) return false;
      value += hi * *problem.upper[static_cast<std::size_t>(j)];
    }
    if (combo[static_cast<std::size_t>(j)] + lo + hi != 0) return false;
  }
  return value > 0;
}

bool is_primal_feasible(const Problem& problem, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != problem.num_variables()) return false;
  for (int j = 0; j < problem.num_variables(); ++j) {
    if (problem.lower[static_cast<std::size_t>(j)] && x[static_cast<std::size_t>(j)] < *problem.lower[static_cast<std::size_t>(j)]) return false;
    if (problem.upper[static_cast<std::size_t>(j)] && x[static_cast<std::size_t>(j)] > *problem.upper[static_cast<std::size_t>(j)]) return false;
  }
  for (const Row& row : problem.rows) {
    Rational lhs = 0;
    for (const auto& [j, a] : row.coefficients) lhs += a * x[static_cast<std::size_t>(j)];
    if (row.sense == Sense::LessEqual && lhs > row.rhs) return false;
    if (row.sense == Sense::GreaterEqual && lhs < row.rhs) return false;
    if (row.sense == Sense::Equal && lhs != row.rhs) return false;
  }
  return true;
}

bool verify_optimal(const Problem& problem, const Solution& s) {
  if (s.status != Status::Optimal) return false;
  if (!is_primal_feasible(problem, s.primal)) return false;
  const int n = problem.num_variables();
  if (static_cast<int>(s.row_duals.size()) != problem.num_rows() || static_cast<int>(s.lower_duals.size()) != n ||
      static_cast<int>(s.upper_duals.size()) != n) {
    return false;
  }
  const int flip = problem.direction == Direction::Maximize ? -1 : 1;
  std::vector<Rational> combo(static_cast<std::size_t>(n));
  Rational dual_value = 0;
  for (int i = 0; i < problem.num_rows(); ++i) {
    const Row& row = problem.rows[static_cast<std::size_t>(i)];
    const Rational y = flip * s.row_duals[static_cast<std::size_t>(i)];
    if (row.sense == Sense::GreaterEqual && y < 0) return false;
    if (row.sense == Sense::LessEqual && y > 0) return false;
    for (const auto& [j, a] : row.coefficients) combo[static_cast<std::size_t>(j)] += s.row_duals[static_cast<std::size_t>(i)] * a;
    dual_value += s.row_duals[static_cast<std::size_t>(i)] * row.rhs;
  }
  Rational primal_value = 0;
  for (int j = 0; j < n; ++j) {
    const Rational lo = flip * s.lower_duals[static_cast<std::size_t>(j)];
    const Rational hi = flip * s.upper_duals[static_cast<std::size_t>(j)];
    if (lo < 0 || hi > 0) return false;
    if (lo != 0) {
      if (!problem.lower[static_cast<std::size_t>(j)]) return false;
      dual_value += s.lower_duals[static_cast<std::size_t>(j)] * *problem.lower[static_cast<std::size_t>(j)];
    }
    if (hi != 0) {
      if (!problem.upper[static_cast<std::size_t>(j)]) return false;
      dual_value += s.upper_duals[static_cast<std::size_t>(j)] * *problem.upper[static_cast<std::size_t>(j)];
    }
    if (combo[static_cast<std::size_t>(j)] + s.lower_duals[static_cast<std::size_t>(j)] + s.upper_duals[static_cast<std::size_t>(j)] !=
        problem.objective[static_cast<std::size_t>(j)]) {
      return false;
    }
    primal_value += problem.objective[static_cast<std::size_t>(j)] * s.primal[static_cast<std::size_t>(j)];
  }
  return primal_value == dual_value && primal_value == s.objective;
}

L1Result min_l1(const SparseMatrix& a, const std::vector<Rational>& b) {
  if (static_cast<int>(b.size()) != a.num_rows || static_cast<int>(a.rows.size()) != a.num_rows) {
    throw DimensionMismatch("min_l1: right-hand side length does not match matrix rows");
  }
  L1Result out;
  Problem& p = out.problem;
  for (int k = 0; k < a.num_cols; ++k) {
    p.add_variable(1);
    p.add_variable(1);
  }
  for (int i = 0; i < a.num_rows; ++i) {
    std::vector<std::pair<int, Rational>> coeffs;
    for (const auto& [k, v] : a.rows[static_cast<std::size_t>(i)]) {
      if (k < 0 || k >= a.num_cols) throw DimensionMismatch("min_l1: column index out of range");
      coeffs.emplace_back(2 * k, v);
      coeffs.emplace_back(2 * k + 1, -v);
    }
    p.add_row(std::move(coeffs), Sense::Equal, b[static_cast<std::size_t>(i)]);
  }
  Solution s = solve(p);
  out.status = s.status;
  if (s.status == Status::Infeasible) {
    out.farkas = std::move(s.farkas);
    return out;
  }
  if (s.status != Status::Optimal) throw Error("min_l1: objective unbounded below zero (solver defect)");
  out.value = s.objective;
  out.x.resize(static_cast<std::size_t>(a.num_cols));
  for (int k = 0; k < a.num_cols; ++k) out.x[static_cast<std::size_t>(k)] = s.primal[static_cast<std::size_t>(2 * k)] - s.primal[static_cast<std::size_t>(2 * k + 1)];
  out.duals = std::move(s.row_duals);
  return out;
}

Feasibility feasibility(const Problem& problem) {
  Problem zero = problem;
  std::fill(zero.objective.begin(), zero.objective.end(), Rational(0));
  Solution s = solve(zero);
  Feasibility f;
  f.feasible = s.status != Status::Infeasible;
  if (f.feasible) {
    f.point = std::move(s.primal);
  } else {
    f.farkas = std::move(s.farkas);
  }
  return f;
}

std::string dump(const Problem& problem) {
  std::ostringstream out;
  out << (problem.direction == Direction::Minimize ? "minimize:" : "maximize:");
  bool any = false;
  for (int j = 0; j < problem.num_variables(); ++j) {
    if (problem.objective[static_cast<std::size_t>(j)] == 0) continue;
    out << (any ? " + " : " ") << cofill::to_string(problem.objective[static_cast<std::size_t>(j)]) << " x" << j;
    any = true;
  }
  if (!any) out << " 0";
  out << "\n";
  for (int i = 0; i < problem.num_rows(); ++i) {
    const Row& row = problem.rows[static_cast<std::size_t>(i)];
    out << "c" << i << ":";
    if (row.coefficients.empty()) out << " 0";
    for (std::size_t k = 0; k < row.coefficients.size(); ++k) {
      out << (k ? " + " : " ") << cofill::to_string(row.coefficients[k].second) << " x" << row.coefficients[k].first;
    }
    out << (row.sense == Sense::LessEqual ? " <= " : row.sense == Sense::Equal ? " = " : " >= ") << cofill::to_string(row.rhs) << "\n";
  }
  for (int j = 0; j < problem.num_variables(); ++j) {
    const auto& lo = problem.lower[static_cast<std::size_t>(j)];
    const auto& hi = problem.upper[static_cast<std::size_t>(j)];
    out << "bound x" << j << ": " << (lo ? cofill::to_string(*lo) : "-inf") << " <= x" << j << " <= " << (hi ? cofill::to_string(*hi) : "inf") << "\n";
  }
  return out.str();
}

}  // namespace cofill::lp
