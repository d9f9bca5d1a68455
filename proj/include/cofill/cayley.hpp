#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cofill/chains.hpp"
#include "cofill/presentation.hpp"

namespace cofill {

struct Edge {
  int src = 0;
  int gen = 0;
  int dst = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct BallOptions {
  std::size_t max_vertices = 1'000'000;
};

// The ball B_S(radius) of the Cayley graph. Vertex 0 is the identity; vertices
// are numbered breadth-first, each layer sorted by canonical word. Immutable
// once built.
class CayleyBall {
 public:
  int radius() const { return radius_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_generators() const { return presentation_.num_generators(); }
  const Presentation& presentation() const { return presentation_; }
  const NormalFormOracle& oracle() const { return *oracle_; }
  const OraclePtr& oracle_ptr() const { return oracle_; }

  const Word& word(int vertex) const { return vertices_.at(static_cast<std::size_t>(vertex)); }
  int length(int vertex) const { return lengths_.at(static_cast<std::size_t>(vertex)); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_.at(static_cast<std::size_t>(id)); }

  // Vertex id of a canonical word, or -1.
  int vertex_of_canonical(const Word& canonical) const;
  // Normal-forms an arbitrary word first.
  int vertex_of(const Word& w) const { return vertex_of_canonical(oracle_->normal_form(w)); }

  // Neighbor v·x, or -1 when it lies outside the ball.
  int step(int vertex, Letter x) const {
    return steps_[static_cast<std::size_t>(vertex) * 2 * static_cast<std::size_t>(num_generators()) +
                  static_cast<std::size_t>(x.key())];
  }
  // Edge id of g -> g s, or -1.
  int edge_from(int vertex, int gen) const {
    const int dst = step(vertex, Letter{gen, 1});
    return dst < 0 ? -1 : out_edges_[static_cast<std::size_t>(vertex) * static_cast<std::size_t>(num_generators()) +
                                     static_cast<std::size_t>(gen)];
  }

  // Vertices visited reading w from base (size |w|+1), or nullopt if the walk
  // leaves the ball.
  std::optional<std::vector<int>> walk(int base, const Word& w) const;

  // Left translation g·v of a ball vertex, or -1.
  int translate(int g, int vertex) const { return vertex_of(concat(word(g), word(vertex))); }

  // {"radius":r,"vertices":[...],"edges":[[src,gen,dst],...]}
  std::string to_json() const;

 private:
  friend CayleyBall build_ball(const Presentation&, OraclePtr, int, const BallOptions&);

  int radius_ = 0;
  Presentation presentation_;
  OraclePtr oracle_;
  std::vector<Word> vertices_;
  std::vector<int> lengths_;
  std::vector<Edge> edges_;
  std::unordered_map<Word, int, WordHash> index_;
  std::vector<int> steps_;      // vertex * 2p + letter key
  std::vector<int> out_edges_;  // vertex * p + gen
};

// Breadth-first closure from the identity. Throws BudgetExceeded when the
// vertex count passes options.max_vertices.
CayleyBall build_ball(const Presentation& p, OraclePtr oracle, int radius, const BallOptions& options = {});

struct EnumerationMode {
  enum class Kind { Exhaustive, Sample } kind = Kind::Exhaustive;
  std::size_t count = 0;
  std::uint64_t seed = 0;

  static EnumerationMode exhaustive() { return {}; }
  static EnumerationMode sample(std::size_t count, std::uint64_t seed) { return {Kind::Sample, count, seed}; }
  std::string to_string() const;
};

// "exhaustive" or "sample:COUNT:SEED".
EnumerationMode parse_enumeration_mode(const std::string& text);

struct RelationEnumeration {
  std::vector<Word> relations;  // closed walks at the identity, one per class
  bool complete = true;         // false when the walk budget ran out or sampling stalled
  std::uint64_t nodes_visited = 0;
};

struct EnumerationOptions {
  int max_len = 0;
  EnumerationMode mode;
  std::uint64_t walk_budget = 200'000'000;
};

// Freely and cyclically reduced closed walks at the identity, confined to the
// ball, of length <= max_len; one representative per class under rotation and
// inversion, in depth-first discovery order (exhaustive mode).
RelationEnumeration enumerate_relations(const CayleyBall& ball, const EnumerationOptions& options);

// Fundamental cycles of the non-tree edges over the breadth-first spanning tree.
std::vector<GroupRingVec> cycle_basis(const CayleyBall& ball);

// Breadth-first spanning tree: parent edge id per vertex (-1 at the identity).
std::vector<int> spanning_tree(const CayleyBall& ball);

}  // namespace cofill
