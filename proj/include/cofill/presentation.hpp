#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace cofill {

// A generator index with an exponent of +1 or -1.
struct Letter {
  std::int32_t gen = 0;
  std::int8_t sign = 1;

  Letter inverse() const { return Letter{gen, static_cast<std::int8_t>(-sign)}; }

  // Ordering a < a^-1 < b < b^-1 < ...
  int key() const { return 2 * gen + (sign < 0 ? 1 : 0); }
  friend bool operator==(const Letter&, const Letter&) = default;
  friend std::strong_ordering operator<=>(const Letter& x, const Letter& y) { return x.key() <=> y.key(); }
};

using Word = std::vector<Letter>;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

// ---- free group word algebra ----

Word free_reduce(const Word& w);
Word invert(const Word& w);
// Reduces across the seam.
Word concat(const Word& u, const Word& v);
// Strips conjugating letters after free reduction: b a b^-1 -> a.
Word cyclic_reduce(const Word& w);
Word power(const Word& w, int n);
bool is_freely_reduced(const Word& w);
bool is_cyclically_reduced(const Word& w);
// Lexicographically least word among all rotations of w and of w^-1.
Word least_rotation_class_key(const Word& w);
std::vector<long long> exponent_sums(const Word& w, int num_generators);

// Word-level commutator u v u^-1 v^-1 (not reduced).
Word commutator(const Word& u, const Word& v);

class Presentation {
 public:
  Presentation() = default;
  // Validates names and reduces relators; throws cofill::Error on violations.
  Presentation(std::vector<std::string> generator_names, std::vector<Word> relators);

  int num_generators() const { return static_cast<int>(names_.size()); }
  int num_relators() const { return static_cast<int>(relators_.size()); }
  const std::vector<std::string>& generator_names() const { return names_; }
  const std::vector<Word>& relators() const { return relators_; }
  const Word& relator(int j) const { return relators_.at(j); }

  // -1 when the name is not a generator.
  int generator_index(std::string_view name) const;

  // "a b^-1 c"; the empty word prints as "1".
  std::string format(const Word& w) const;
  // Parses a single word with the presentation grammar's atom syntax.
  Word parse_word(std::string_view text) const;

  std::string to_text() const;

 private:
  std::vector<std::string> names_;
  std::vector<Word> relators_;
};

// Grammar: `gens <id> ...` then `rels <word> ; <word> ; ...`; `#` starts a
// comment. Throws ParseError with line/column.
Presentation parse_presentation(std::string_view text);

// ---- word-problem oracles ----

enum class OracleKind { FreeGroup, Abelianized, DehnSmallCancellation, FiniteTable, Heisenberg };

std::string to_string(OracleKind kind);
OracleKind parse_oracle_kind(std::string_view name);

// Canonical normal forms: two words get the same output iff they are equal in
// the group. Implementations are immutable and thread-safe.
class NormalFormOracle {
 public:
  virtual ~NormalFormOracle() = default;
  virtual OracleKind kind() const = 0;
  virtual Word normal_form(const Word& w) const = 0;
  bool is_identity(const Word& w) const { return normal_form(w).empty(); }
  bool equal(const Word& u, const Word& v) const { return is_identity(concat(u, invert(v))); }
};

using OraclePtr = std::shared_ptr<const NormalFormOracle>;

// Valid only for presentations without relators.
OraclePtr make_free_group_oracle(const Presentation& p);
// Free abelian group on the generators; requires every relator to have zero
// exponent sums and every commutator [s_i, s_j] to appear among the relators
// up to rotation and inversion.
OraclePtr make_abelian_oracle(const Presentation& p);
// Dehn's algorithm; refuses relator sets failing C'(1/6).
OraclePtr make_dehn_oracle(const Presentation& p);
// table[x][y] = x*y over elements 0..n-1; generator_images[i] is the element of
// generator i. Checks the group axioms and that relators evaluate to the identity.
OraclePtr make_finite_table_oracle(const Presentation& p, std::vector<std::vector<int>> table,
                                   std::vector<int> generator_images);
// <a,b,c | [a,b]c^-1, [a,c], [b,c]> with normal form a^i b^j c^k.
OraclePtr make_heisenberg_oracle(const Presentation& p);

// Dispatch for the kinds that need no extra data.
OraclePtr make_oracle(OracleKind kind, const Presentation& p);

// Longest piece of the symmetrized closure, as a fraction test: true iff every
// piece is shorter than 1/6 of each relator containing it.
bool satisfies_c_prime_sixth(const Presentation& p);

// Applies Dehn's length-reducing rewrites until none applies.
Word dehn_reduce(const Word& w, const Presentation& p);

struct GroupSpec {
  Presentation presentation;
  OraclePtr oracle;
};

// Built-in library: z2, free2, surface2 (genus two), heisenberg, each with its
// matching oracle.
GroupSpec builtin_group(std::string_view name);

}  // namespace cofill
