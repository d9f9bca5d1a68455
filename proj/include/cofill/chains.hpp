#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "cofill/rational.hpp"

namespace cofill {

// Sparse element of R[G]^p restricted to a ball: (vertex, generator) -> coefficient.
// Under the edge dictionary the slot (g, s) is the edge g -> g s, so the same
// type carries 1-chains of the Cayley graph.
class GroupRingVec {
 public:
  using Key = std::pair<int, int>;  // (vertex id, generator index)
  using Map = std::map<Key, Rational>;

  GroupRingVec() = default;

  void add(int vertex, int gen, const Rational& coefficient);
  Rational coefficient(int vertex, int gen) const;
  const Map& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  Rational l1_norm() const;

  GroupRingVec& operator+=(const GroupRingVec& other);
  GroupRingVec& operator-=(const GroupRingVec& other);
  GroupRingVec& operator*=(const Rational& scale);
  friend GroupRingVec operator+(GroupRingVec a, const GroupRingVec& b) { return a += b; }
  friend GroupRingVec operator-(GroupRingVec a, const GroupRingVec& b) { return a -= b; }
  friend GroupRingVec operator*(const Rational& s, GroupRingVec a) { return a *= s; }
  friend bool operator==(const GroupRingVec& a, const GroupRingVec& b) { return a.entries_ == b.entries_; }

  std::uint64_t hash() const;

 private:
  Map entries_;
};

// Sparse element of R[G] on ball vertices.
class GroupRingScalar {
 public:
  using Map = std::map<int, Rational>;

  void add(int vertex, const Rational& coefficient);
  Rational coefficient(int vertex) const;
  const Map& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  friend bool operator==(const GroupRingScalar& a, const GroupRingScalar& b) { return a.entries_ == b.entries_; }

 private:
  Map entries_;
};

struct FillTerm {
  Rational coefficient;
  int vertex = 0;
  int relator = 0;
  friend bool operator==(const FillTerm&, const FillTerm&) = default;
};

// sum of coefficient * (vertex-translate of relator cell f_j).
class FillCertificate {
 public:
  FillCertificate() = default;
  explicit FillCertificate(std::vector<FillTerm> terms);

  // Merges duplicate (vertex, relator) pairs, drops zeros, sorts.
  void add(int vertex, int relator, const Rational& coefficient);
  const std::vector<FillTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  Rational l1_value() const;

  // Hash of the 1-chain this certificate is meant to fill.
  std::uint64_t target_hash = 0;

  friend bool operator==(const FillCertificate& a, const FillCertificate& b) { return a.terms_ == b.terms_; }

 private:
  std::vector<FillTerm> terms_;
};

// Values on ball edges, indexed by edge id; absent entries read as zero.
struct EdgeCochain {
  std::map<int, Rational> values;

  Rational at(int edge) const {
    auto it = values.find(edge);
    return it == values.end() ? Rational(0) : it->second;
  }
  void set(int edge, const Rational& v) {
    if (v == 0) {
      values.erase(edge);
    } else {
      values[edge] = v;
    }
  }
};

// Rational function on ball vertices (m, F finite parts, ...); absent = 0.
struct VertexFunction {
  std::map<int, Rational> values;

  Rational at(int vertex) const {
    auto it = values.find(vertex);
    return it == values.end() ? Rational(0) : it->second;
  }
};

}  // namespace cofill
