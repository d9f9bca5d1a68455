#include <doctest.h>

#include <set>

#include "cofill/cayley.hpp"
#include "cofill/error.hpp"
#include "cofill/foxcalc.hpp"
#include "support.hpp"

using namespace cofill;
using cofill::testing::reduced_words;

namespace {

// Classes of cyclically reduced relations of length <= n whose walk from the
// identity stays within distance `radius`, found by listing every reduced word.
std::set<Word> brute_relation_classes(const GroupSpec& g, int n, int radius) {
  const OraclePtr& o = g.oracle;
  const int p = g.presentation.num_generators();
  std::set<Word> near;  // normal forms of elements at distance <= radius
  for (const Word& w : reduced_words(p, radius)) near.insert(o->normal_form(w));
  std::set<Word> classes;
  for (const Word& w : reduced_words(p, n)) {
    if (w.empty() || !is_cyclically_reduced(w) || !o->is_identity(w)) continue;
    bool inside = true;
    Word prefix;
    for (const Letter& x : w) {
      prefix.push_back(x);
      if (!near.count(o->normal_form(prefix))) inside = false;
    }
    if (inside) classes.insert(least_rotation_class_key(w));
  }
  return classes;
}

}  // namespace

TEST_CASE("ball sizes") {
  const GroupSpec z2 = builtin_group("z2");
  const GroupSpec f2 = builtin_group("free2");
  CHECK(build_ball(z2.presentation, z2.oracle, 0).num_vertices() == 1);
  CHECK(build_ball(z2.presentation, z2.oracle, 1).num_vertices() == 5);
  CHECK(build_ball(z2.presentation, z2.oracle, 2).num_vertices() == 13);
  CHECK(build_ball(f2.presentation, f2.oracle, 2).num_vertices() == 17);
  for (int r = 0; r <= 6; ++r) {
    CHECK(build_ball(z2.presentation, z2.oracle, r).num_vertices() == 2 * r * r + 2 * r + 1);
  }
}

TEST_CASE("ball sizes match distinct normal forms of short words") {
  for (const char* name : {"z2", "free2", "heisenberg", "surface2"}) {
    const GroupSpec g = builtin_group(name);
    const int r = std::string(name) == "surface2" ? 3 : 4;
    std::set<Word> forms;
    for (const Word& w : reduced_words(g.presentation.num_generators(), r)) forms.insert(g.oracle->normal_form(w));
    CHECK_MESSAGE(build_ball(g.presentation, g.oracle, r).num_vertices() == static_cast<int>(forms.size()), name);
  }
}

TEST_CASE("ball structure invariants") {
  const GroupSpec h = builtin_group("heisenberg");
  const CayleyBall b = build_ball(h.presentation, h.oracle, 3);
  CHECK(b.word(0).empty());
  CHECK(b.length(0) == 0);
  for (const Edge& e : b.edges()) {
    Word w = b.word(e.src);
    w.push_back(Letter{e.gen, 1});
    CHECK(h.oracle->normal_form(w) == b.word(e.dst));
    CHECK(std::abs(b.length(e.src) - b.length(e.dst)) <= 1);
  }
  for (int v = 1; v < b.num_vertices(); ++v) CHECK(b.length(v - 1) <= b.length(v));
  const CayleyBall bigger = build_ball(h.presentation, h.oracle, 4);
  for (int v = 0; v < b.num_vertices(); ++v) CHECK(bigger.word(v) == b.word(v));
}

TEST_CASE("vertex budget") {
  const GroupSpec f2 = builtin_group("free2");
  BallOptions opts;
  opts.max_vertices = 10;
  CHECK_THROWS_AS(build_ball(f2.presentation, f2.oracle, 3, opts), BudgetExceeded);
}

TEST_CASE("ball json") {
  const GroupSpec z2 = builtin_group("z2");
  const std::string json = build_ball(z2.presentation, z2.oracle, 1).to_json();
  CHECK(json.find("\"radius\":1") != std::string::npos);
  CHECK(json.find("\"edges\"") != std::string::npos);
}

TEST_CASE("enumeration examples") {
  const GroupSpec f2 = builtin_group("free2");
  const CayleyBall bf = build_ball(f2.presentation, f2.oracle, 3);
  EnumerationOptions eo;
  eo.max_len = 6;
  CHECK(enumerate_relations(bf, eo).relations.empty());

  const GroupSpec z2 = builtin_group("z2");
  const CayleyBall b = build_ball(z2.presentation, z2.oracle, 3);
  eo.max_len = 4;
  const auto rels = enumerate_relations(b, eo).relations;
  REQUIRE(rels.size() == 1);
  CHECK(least_rotation_class_key(rels[0]) == least_rotation_class_key(z2.presentation.relator(0)));
}

TEST_CASE("enumeration agrees with brute force") {
  // The brute-force list contradicts the claim that Z^2 has a single class up
  // to length 6: a^2 b a^-2 b^-1 and friends are cyclically reduced relations.
  struct Case {
    const char* group;
    int radius;
    int max_len;
  };
  for (const Case c : {Case{"z2", 3, 6}, Case{"z2", 2, 8}, Case{"heisenberg", 3, 8}, Case{"surface2", 3, 6}}) {
    const GroupSpec g = builtin_group(c.group);
    const CayleyBall b = build_ball(g.presentation, g.oracle, c.radius);
    EnumerationOptions eo;
    eo.max_len = c.max_len;
    const RelationEnumeration e = enumerate_relations(b, eo);
    CHECK(e.complete);
    std::set<Word> got;
    for (const Word& w : e.relations) {
      CHECK(g.oracle->is_identity(w));
      CHECK(is_cyclically_reduced(w));
      CHECK(static_cast<int>(w.size()) <= c.max_len);
      CHECK(got.insert(least_rotation_class_key(w)).second);
    }
    const std::set<Word> expected = brute_relation_classes(g, c.max_len, c.radius);
    CHECK_MESSAGE(got == expected, c.group, " r=", c.radius, " n=", c.max_len);
  }
}

TEST_CASE("z2 length 6 classes") {
  const GroupSpec z2 = builtin_group("z2");
  const CayleyBall b = build_ball(z2.presentation, z2.oracle, 3);
  EnumerationOptions eo;
  eo.max_len = 6;
  const auto rels = enumerate_relations(b, eo).relations;
  // [a,b], a^2 b a^-2 b^-1, a b^2 a^-1 b^-2.
  CHECK(rels.size() == 3);
}

TEST_CASE("surface group relations up to length 12") {
  const GroupSpec g = builtin_group("surface2");
  const CayleyBall b = build_ball(g.presentation, g.oracle, 4);
  EnumerationOptions eo;
  eo.max_len = 12;
  const auto rels = enumerate_relations(b, eo).relations;
  REQUIRE(rels.size() == 1);
  CHECK(least_rotation_class_key(rels[0]) == least_rotation_class_key(g.presentation.relator(0)));
}

TEST_CASE("sampled enumeration") {
  const GroupSpec z2 = builtin_group("z2");
  const CayleyBall b = build_ball(z2.presentation, z2.oracle, 4);
  EnumerationOptions eo;
  eo.max_len = 8;
  eo.mode = EnumerationMode::sample(6, 7);
  const auto first = enumerate_relations(b, eo);
  const auto second = enumerate_relations(b, eo);
  CHECK(first.relations == second.relations);
  CHECK(!first.relations.empty());
  std::set<Word> keys;
  for (const Word& w : first.relations) {
    CHECK(z2.oracle->is_identity(w));
    CHECK(is_cyclically_reduced(w));
    CHECK(w.size() <= 8);
    CHECK(keys.insert(least_rotation_class_key(w)).second);
  }
  CHECK(first.complete);
  // Only 17 classes exist at this size; asking for more stops short.
  eo.mode = EnumerationMode::sample(40, 7);
  const auto greedy = enumerate_relations(b, eo);
  CHECK_FALSE(greedy.complete);
  CHECK(greedy.relations.size() <= 17);
  CHECK(parse_enumeration_mode("sample:20:7").count == 20);
  CHECK(parse_enumeration_mode("sample:20:7").seed == 7);
  CHECK(parse_enumeration_mode("exhaustive").kind == EnumerationMode::Kind::Exhaustive);
  CHECK(parse_enumeration_mode(eo.mode.to_string()).count == 40);
  CHECK_THROWS(parse_enumeration_mode("sample:x"));
}

TEST_CASE("walk budget marks enumeration incomplete") {
  const GroupSpec z2 = builtin_group("z2");
  const CayleyBall b = build_ball(z2.presentation, z2.oracle, 4);
  EnumerationOptions eo;
  eo.max_len = 8;
  eo.walk_budget = 50;
  CHECK_FALSE(enumerate_relations(b, eo).complete);
}

TEST_CASE("cycle basis") {
  const GroupSpec f2 = builtin_group("free2");
  CHECK(cycle_basis(build_ball(f2.presentation, f2.oracle, 2)).empty());

  const GroupSpec z2 = builtin_group("z2");
  // Radius 1 is a star: 4 edges, 5 vertices, no cycles.
  const CayleyBall b1 = build_ball(z2.presentation, z2.oracle, 1);
  CHECK(b1.num_edges() == 4);
  CHECK(cycle_basis(b1).empty());
  const CayleyBall b2 = build_ball(z2.presentation, z2.oracle, 2);
  CHECK(b2.num_edges() == 16);
  CHECK(cycle_basis(b2).size() == 4);

  for (const char* name : {"z2", "heisenberg", "surface2"}) {
    const GroupSpec g = builtin_group(name);
    const CayleyBall b = build_ball(g.presentation, g.oracle, 3);
    const auto basis = cycle_basis(b);
    CHECK(static_cast<int>(basis.size()) == b.num_edges() - b.num_vertices() + 1);
    for (const GroupRingVec& z : basis) CHECK(boundary1(z, b).empty());

    // Spanning: the coefficient of each non-tree edge determines the combination.
    const auto tree = spanning_tree(b);
    std::set<int> tree_edges(tree.begin(), tree.end());
    std::vector<int> nontree;
    for (int e = 0; e < b.num_edges(); ++e) {
      if (!tree_edges.count(e)) nontree.push_back(e);
    }
    REQUIRE(nontree.size() == basis.size());
    EnumerationOptions eo;
    eo.max_len = 8;
    for (const Word& w : enumerate_relations(b, eo).relations) {
      const GroupRingVec z = cycle_of_relation(w, b);
      GroupRingVec sum;
      for (std::size_t i = 0; i < nontree.size(); ++i) {
        const Edge& e = b.edge(nontree[i]);
        const Rational c = z.coefficient(e.src, e.gen);
        const Rational base = basis[i].coefficient(e.src, e.gen);
        REQUIRE(abs_value(base) == 1);
        if (c != 0) sum += (c / base) * basis[i];
      }
      CHECK(sum == z);
    }
  }
}
