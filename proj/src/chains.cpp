#include "cofill/chains.hpp"

#include <algorithm>
#include <functional>

namespace cofill {

void GroupRingVec::add(int vertex, int gen, const Rational& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = entries_.try_emplace(Key{vertex, gen}, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) entries_.erase(it);
  }
}

Rational GroupRingVec::coefficient(int vertex, int gen) const {
  auto it = entries_.find(Key{vertex, gen});
  return it == entries_.end() ? Rational(0) : it->second;
}

Rational GroupRingVec::l1_norm() const {
  Rational sum = 0;
  for (const auto& [key, c] : entries_) sum += abs_value(c);
  return sum;
}

GroupRingVec& GroupRingVec::operator+=(const GroupRingVec& other) {
  for (const auto& [key, c] : other.entries_) add(key.first, key.second, c);
  return *this;
}

GroupRingVec& GroupRingVec::operator-=(const GroupRingVec& other) {
  for (const auto& [key, c] : other.entries_) add(key.first, key.second, -c);
  return *this;
}

GroupRingVec& GroupRingVec::operator*=(const Rational& scale) {
  if (scale == 0) {
    entries_.clear();
    return *this;
  }
  for (auto& [key, c] : entries_) c *= scale;
  return *this;
}

std::uint64_t GroupRingVec::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  for (const auto& [key, c] : entries_) {
    mix(static_cast<std::uint64_t>(key.first));
    mix(static_cast<std::uint64_t>(key.second));
    for (char ch : to_string(c)) mix(static_cast<unsigned char>(ch));
  }
  return h;
}

void GroupRingScalar::add(int vertex, const Rational& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = entries_.try_emplace(vertex, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) entries_.erase(it);
  }
}

Rational GroupRingScalar::coefficient(int vertex) const {
  auto it = entries_.find(vertex);
  return it == entries_.end() ? Rational(0) : it->second;
}

FillCertificate::FillCertificate(std::vector<FillTerm> terms) {
  for (const FillTerm& t : terms) add(t.vertex, t.relator, t.coefficient);
}

void FillCertificate::add(int vertex, int relator, const Rational& coefficient) {
  if (coefficient == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), std::pair{vertex, relator},
                             [](const FillTerm& t, const std::pair<int, int>& key) {
                               return std::pair{t.vertex, t.relator} < key;
                             });
  if (it != terms_.end() && it->vertex == vertex && it->relator == relator) {
    it->coefficient += coefficient;
    if (it->coefficient == 0) terms_.erase(it);
  } else {
    terms_.insert(it, FillTerm{coefficient, vertex, relator});
  }
}

Rational FillCertificate::l1_value() const {
  Rational sum = 0;
  for (const FillTerm& t : terms_) sum += abs_value(t.coefficient);
  return sum;
}

}  // namespace cofill
