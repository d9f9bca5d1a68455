#include <doctest.h>

#include <cstdlib>
#include <random>

#include "cofill/foxcalc.hpp"
#include "cofill/parallel.hpp"
#include "cofill/primitive.hpp"
#include "support.hpp"

using namespace cofill;

namespace {

bool same(const FillReport& a, const FillReport& b) {
  return a.feasible == b.feasible && a.value == b.value && a.lower_bound == b.lower_bound && a.complete == b.complete &&
         a.certificate == b.certificate && a.truncated == b.truncated && a.farkas.values == b.farkas.values;
}

}  // namespace

TEST_CASE("fill_relations matches the serial loop") {
  const GroupSpec z2 = builtin_group("z2");
  const CayleyBall b = build_ball(z2.presentation, z2.oracle, 4);
  const CellTable cells(b);
  EnumerationOptions eo;
  eo.max_len = 8;
  const auto rels = enumerate_relations(b, eo).relations;
  REQUIRE(rels.size() > 4);
  for (const FillKind kind : {FillKind::Real, FillKind::Integer}) {
    const auto serial = fill_relations_serial(cells, rels, kind, {});
    for (int threads : {1, 2, 4}) {
      const auto par = fill_relations(cells, rels, kind, {}, threads);
      REQUIRE(par.size() == serial.size());
      for (std::size_t i = 0; i < par.size(); ++i) CHECK(same(par[i], serial[i]));
    }
  }
}

TEST_CASE("fill_relations propagates errors") {
  const GroupSpec z2 = builtin_group("z2");
  const CayleyBall b = build_ball(z2.presentation, z2.oracle, 2);
  const CellTable cells(b);
  const std::vector<Word> rels{z2.presentation.parse_word("a b a^-1 b^-1"), z2.presentation.parse_word("a b")};
  CHECK_THROWS(fill_relations(cells, rels, FillKind::Real, {}, 2));
  CHECK_THROWS(fill_relations_serial(cells, rels, FillKind::Real, {}));
}

TEST_CASE("evaluate_ii matches the serial loop") {
  const GroupSpec h = builtin_group("heisenberg");
  const CayleyBall b = build_ball(h.presentation, h.oracle, 3);
  std::mt19937_64 rng(6);
  CocycleData cd;
  for (int e = 0; e < b.num_edges(); ++e) cd.alpha0.set(e, testing::q(static_cast<long>(rng() % 9) - 4, 3));
  BoundFunction F = BoundFunction::constant(b.num_vertices(), Bound::finite(testing::q(1, 2)));
  F.values[3] = Bound::infinite();
  EnumerationOptions eo;
  eo.max_len = 6;
  const auto rels = enumerate_relations(b, eo).relations;
  const auto serial = evaluate_ii_serial(cd, F, b, rels);
  REQUIRE(serial.size() == rels.size() * static_cast<std::size_t>(b.num_vertices()));
  for (int threads : {1, 3}) {
    const auto par = evaluate_ii(cd, F, b, rels, threads);
    REQUIRE(par.size() == serial.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      REQUIRE(par[i].has_value() == serial[i].has_value());
      if (!par[i]) continue;
      CHECK(par[i]->signed_sum == serial[i]->signed_sum);
      CHECK(par[i]->rhs == serial[i]->rhs);
    }
  }
  // Row i is relation i / V read from base i % V.
  const std::size_t V = static_cast<std::size_t>(b.num_vertices());
  for (std::size_t i = 0; i < serial.size(); i += 17) {
    const auto direct = condition_ii_value(cd, F, b, static_cast<int>(i % V), rels[i / V]);
    REQUIRE(direct.has_value() == serial[i].has_value());
    if (direct) CHECK(direct->lhs == serial[i]->lhs);
  }
}

TEST_CASE("thread count from the environment") {
  ::unsetenv("COFILL_THREADS");
  CHECK(threads_from_environment() == 1);
  ::setenv("COFILL_THREADS", "3", 1);
  CHECK(threads_from_environment() == 3);
  ::setenv("COFILL_THREADS", "zero", 1);
  CHECK(threads_from_environment() == 1);
  ::unsetenv("COFILL_THREADS");
}
