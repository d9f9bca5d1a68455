#include "cofill/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "cofill/error.hpp"

namespace cofill {

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (const Letter& x : w) {
    h ^= static_cast<std::size_t>(x.key() + 1);
    h *= 1099511628211ull;
  }
  return h;
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const Letter& x : w) {
    if (!out.empty() && out.back() == x.inverse()) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

Word invert(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word concat(const Word& u, const Word& v) {
  Word out = free_reduce(u);
  for (const Letter& x : v) {
    if (!out.empty() && out.back() == x.inverse()) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return free_reduce(out);
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && r[lo] == r[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo), r.begin() + static_cast<std::ptrdiff_t>(hi));
}

Word power(const Word& w, int n) {
  Word base = n < 0 ? invert(w) : w;
  Word out;
  for (int i = 0; i < std::abs(n); ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

bool is_freely_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] == w[i - 1].inverse()) return false;
  }
  return true;
}

bool is_cyclically_reduced(const Word& w) {
  return is_freely_reduced(w) && (w.size() < 2 || w.front() != w.back().inverse());
}

Word least_rotation_class_key(const Word& w) {
  Word best = w;
  const Word inv = invert(w);
  const std::size_t n = w.size();
  for (const Word* base : {&w, &inv}) {
    for (std::size_t k = 0; k < n; ++k) {
      Word rot(n);
      for (std::size_t i = 0; i < n; ++i) rot[i] = (*base)[(i + k) % n];
      if (rot < best) best = std::move(rot);
    }
  }
  return best;
}

std::vector<long long> exponent_sums(const Word& w, int num_generators) {
  std::vector<long long> sums(static_cast<std::size_t>(num_generators), 0);
  for (const Letter& x : w) sums.at(static_cast<std::size_t>(x.gen)) += x.sign;
  return sums;
}

Word commutator(const Word& u, const Word& v) {
  Word out = u;
  out.insert(out.end(), v.begin(), v.end());
  const Word ui = invert(u);
  const Word vi = invert(v);
  out.insert(out.end(), ui.begin(), ui.end());
  out.insert(out.end(), vi.begin(), vi.end());
  return out;
}

// ---- Presentation ----

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool is_keyword(std::string_view s) { return s == "gens" || s == "rels"; }

constexpr long long kMaxExponent = 1'000'000;

}  // namespace

Presentation::Presentation(std::vector<std::string> generator_names, std::vector<Word> relators)
    : names_(std::move(generator_names)) {
  std::set<std::string> seen;
  for (const std::string& name : names_) {
    if (!is_identifier(name) || is_keyword(name)) throw Error("invalid generator name '" + name + "'");
    if (!seen.insert(name).second) throw Error("duplicate generator name '" + name + "'");
  }
  for (const Word& r : relators) {
    for (const Letter& x : r) {
      if (x.gen < 0 || x.gen >= num_generators() || (x.sign != 1 && x.sign != -1)) {
        throw Error("relator letter out of range");
      }
    }
    Word reduced = cyclic_reduce(r);
    if (reduced.empty()) throw Error("empty relator after reduction");
    relators_.push_back(std::move(reduced));
  }
}

int Presentation::generator_index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::string Presentation::format(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += names_.at(static_cast<std::size_t>(w[i].gen));
    if (w[i].sign < 0) out += "^-1";
  }
  return out;
}

std::string Presentation::to_text() const {
  std::string out = "gens";
  for (const auto& n : names_) out += " " + n;
  out += "\nrels";
  for (std::size_t j = 0; j < relators_.size(); ++j) {
    out += (j ? " ; " : " ") + format(relators_[j]);
  }
  out += "\n";
  return out;
}

namespace {

enum class Tok { Ident, Caret, Int, Semi, Newline, End };

struct Token {
  Tok type;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    i += n;
    col += static_cast<int>(n);
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (c == '\n') {
      out.push_back({Tok::Newline, "\n", line, col});
      ++i;
      ++line;
      col = 1;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == ';') {
      out.push_back({Tok::Semi, ";", line, col});
      advance(1);
    } else if (c == '^') {
      out.push_back({Tok::Caret, "^", line, col});
      advance(1);
    } else if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i + 1 && !std::isdigit(static_cast<unsigned char>(c))) {
        throw ParseError(std::string("expected digits after '") + c + "'", line, col);
      }
      out.push_back({Tok::Int, std::string(text.substr(i, j - i)), line, col});
      advance(j - i);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i + 1;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), line, col});
      advance(j - i);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

long long parse_exponent(const Token& t) {
  long long value = 0;
  std::string_view digits = t.text;
  bool negative = false;
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
    negative = digits[0] == '-';
    digits.remove_prefix(1);
  }
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || value > kMaxExponent) {
    throw ParseError("exponent out of range (|k| <= 1000000): " + t.text, t.line, t.column);
  }
  return negative ? -value : value;
}

// Parses atoms from tokens[pos] until a separator; appends letters to out.
// Returns true if at least one atom was read.
bool parse_atoms(const std::vector<Token>& toks, std::size_t& pos,
                 const std::unordered_map<std::string, int>& index, Word& out) {
  bool any = false;
  while (toks[pos].type == Tok::Ident) {
    const Token& id = toks[pos];
    auto it = index.find(id.text);
    if (it == index.end()) throw ParseError("unknown generator '" + id.text + "'", id.line, id.column);
    ++pos;
    long long k = 1;
    if (toks[pos].type == Tok::Caret) {
      ++pos;
      if (toks[pos].type != Tok::Int) throw ParseError("expected integer exponent", toks[pos].line, toks[pos].column);
      k = parse_exponent(toks[pos]);
      ++pos;
    }
    const Letter x{it->second, static_cast<std::int8_t>(k < 0 ? -1 : 1)};
    for (long long e = 0; e < std::llabs(k); ++e) out.push_back(x);
    any = true;
  }
  return any;
}

}  // namespace

Word Presentation::parse_word(std::string_view text) const {
  std::string trimmed(text);
  const auto first = trimmed.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = trimmed.find_last_not_of(" \t\r\n");
  if (trimmed.substr(first, last - first + 1) == "1") return {};
  auto toks = tokenize(text);
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < names_.size(); ++i) index.emplace(names_[i], static_cast<int>(i));
  std::size_t pos = 0;
  Word out;
  parse_atoms(toks, pos, index, out);
  if (toks[pos].type != Tok::End) {
    throw ParseError("unexpected token '" + toks[pos].text + "' in word", toks[pos].line, toks[pos].column);
  }
  return out;
}

Presentation parse_presentation(std::string_view text) {
  const auto toks = tokenize(text);
  std::size_t pos = 0;
  auto skip_separators = [&] {
    while (toks[pos].type == Tok::Newline || toks[pos].type == Tok::Semi) ++pos;
  };
  skip_separators();
  if (toks[pos].type != Tok::Ident || toks[pos].text != "gens") {
    throw ParseError("expected 'gens'", toks[pos].line, toks[pos].column);
  }
  ++pos;
  std::vector<std::string> names;
  std::unordered_map<std::string, int> index;
  while (toks[pos].type == Tok::Ident && toks[pos].text != "rels") {
    const Token& t = toks[pos];
    if (t.text == "gens") throw ParseError("'gens' is reserved", t.line, t.column);
    if (!index.emplace(t.text, static_cast<int>(names.size())).second) {
      throw ParseError("duplicate generator name '" + t.text + "'", t.line, t.column);
    }
    names.push_back(t.text);
    ++pos;
  }
  if (toks[pos].type != Tok::Newline && toks[pos].type != Tok::Semi && toks[pos].type != Tok::End &&
      !(toks[pos].type == Tok::Ident && toks[pos].text == "rels")) {
    throw ParseError("unexpected token '" + toks[pos].text + "' in generator list", toks[pos].line, toks[pos].column);
  }
  skip_separators();
  std::vector<Word> relators;
  if (toks[pos].type == Tok::Ident && toks[pos].text == "rels") {
    ++pos;
    while (toks[pos].type != Tok::End) {
      if (toks[pos].type == Tok::Newline || toks[pos].type == Tok::Semi) {
        ++pos;
        continue;
      }
      const Token start = toks[pos];
      Word w;
      if (!parse_atoms(toks, pos, index, w)) {
        throw ParseError("unexpected token '" + start.text + "' in relator", start.line, start.column);
      }
      if (toks[pos].type != Tok::Newline && toks[pos].type != Tok::Semi && toks[pos].type != Tok::End) {
        throw ParseError("unexpected token '" + toks[pos].text + "' in relator", toks[pos].line, toks[pos].column);
      }
      if (cyclic_reduce(w).empty()) throw ParseError("empty relator after reduction", start.line, start.column);
      relators.push_back(std::move(w));
    }
  } else if (toks[pos].type != Tok::End) {
    throw ParseError("expected 'rels'", toks[pos].line, toks[pos].column);
  }
  if (names.empty()) throw ParseError("no generators", 1, 1);
  return Presentation(std::move(names), std::move(relators));
}

// ---- oracles ----

std::string to_string(OracleKind kind) {
  switch (kind) {
    case OracleKind::FreeGroup: return "free";
    case OracleKind::Abelianized: return "abelian";
    case OracleKind::DehnSmallCancellation: return "dehn";
    case OracleKind::FiniteTable: return "table";
    case OracleKind::Heisenberg: return "heisenberg";
  }
  return "?";
}

OracleKind parse_oracle_kind(std::string_view name) {
  for (OracleKind k : {OracleKind::FreeGroup, OracleKind::Abelianized, OracleKind::DehnSmallCancellation,
                       OracleKind::FiniteTable, OracleKind::Heisenberg}) {
    if (to_string(k) == name) return k;
  }
  throw Error("unknown oracle '" + std::string(name) + "'");
}

namespace {

class FreeGroupOracle final : public NormalFormOracle {
 public:
  OracleKind kind() const override { return OracleKind::FreeGroup; }
  Word normal_form(const Word& w) const override { return free_reduce(w); }
};

class AbelianOracle final : public NormalFormOracle {
 public:
  explicit AbelianOracle(int p) : p_(p) {}
  OracleKind kind() const override { return OracleKind::Abelianized; }
  Word normal_form(const Word& w) const override {
    const auto sums = exponent_sums(w, p_);
    Word out;
    for (int g = 0; g < p_; ++g) {
      const long long e = sums[static_cast<std::size_t>(g)];
      const Letter x{g, static_cast<std::int8_t>(e < 0 ? -1 : 1)};
      for (long long k = 0; k < std::llabs(e); ++k) out.push_back(x);
    }
    return out;
  }

 private:
  int p_;
};

// Symmetrized closure: all rotations of every relator and its inverse.
std::vector<Word> symmetrize(const Presentation& p) {
  std::set<Word> all;
  for (const Word& r : p.relators()) {
    const Word ri = invert(r);
    for (const Word* base : {&r, &ri}) {
      const std::size_t n = base->size();
      for (std::size_t k = 0; k < n; ++k) {
        Word rot(n);
        for (std::size_t i = 0; i < n; ++i) rot[i] = (*base)[(i + k) % n];
        all.insert(std::move(rot));
      }
    }
  }
  return {all.begin(), all.end()};
}

struct DehnRules {
  std::vector<Word> symmetrized;
  // Indices into symmetrized grouped by first letter key.
  std::map<int, std::vector<std::size_t>> by_first;

  explicit DehnRules(const Presentation& p) : symmetrized(symmetrize(p)) {
    for (std::size_t i = 0; i < symmetrized.size(); ++i) by_first[symmetrized[i].front().key()].push_back(i);
  }

  std::size_t match_length(const Word& w, std::size_t at, const Word& r) const {
    std::size_t len = 0;
    while (at + len < w.size() && len < r.size() && w[at + len] == r[len]) ++len;
    return len;
  }

  // Replaces w[at, at+len) (a prefix of r of length len) by the inverse of r's suffix.
  static Word substitute(const Word& w, std::size_t at, std::size_t len, const Word& r) {
    Word out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(at));
    for (std::size_t k = r.size(); k > len; --k) out.push_back(r[k - 1].inverse());
    out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(at + len), w.end());
    return free_reduce(out);
  }

  Word reduce(Word w) const {
    w = free_reduce(w);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t at = 0; at < w.size() && !changed; ++at) {
        auto it = by_first.find(w[at].key());
        if (it == by_first.end()) continue;
        for (std::size_t idx : it->second) {
          const Word& r = symmetrized[idx];
          const std::size_t len = match_length(w, at, r);
          if (2 * len > r.size()) {
            w = substitute(w, at, len, r);
            changed = true;
            break;
          }
        }
      }
    }
    return w;
  }
};

class DehnOracle final : public NormalFormOracle {
 public:
  explicit DehnOracle(const Presentation& p) : rules_(p) {}
  OracleKind kind() const override { return OracleKind::DehnSmallCancellation; }

  // Dehn-reduce, then close under length-preserving half-relator swaps (again
  // Dehn-reducing after each swap); the lexicographically least word of the
  // shortest component is the normal form.
  Word normal_form(const Word& w) const override {
    Word current = rules_.reduce(w);
    for (;;) {
      std::set<Word> seen{current};
      std::deque<Word> queue{current};
      bool shortened = false;
      while (!queue.empty() && !shortened) {
        const Word x = std::move(queue.front());
        queue.pop_front();
        for (std::size_t at = 0; at < x.size() && !shortened; ++at) {
          auto it = rules_.by_first.find(x[at].key());
          if (it == rules_.by_first.end()) continue;
          for (std::size_t idx : it->second) {
            const Word& r = rules_.symmetrized[idx];
            if (r.size() % 2 != 0) continue;
            const std::size_t half = r.size() / 2;
            if (rules_.match_length(x, at, r) < half) continue;
            Word y = rules_.reduce(DehnRules::substitute(x, at, half, r));
            if (y.size() < current.size()) {
              current = std::move(y);
              shortened = true;
              break;
            }
            if (seen.insert(y).second) queue.push_back(std::move(y));
          }
        }
      }
      if (!shortened) return *seen.begin();
    }
  }

 private:
  DehnRules rules_;
};

class FiniteTableOracle final : public NormalFormOracle {
 public:
  FiniteTableOracle(int p, std::vector<std::vector<int>> table, std::vector<int> images, int identity,
                    std::vector<int> inverse)
      : table_(std::move(table)), images_(std::move(images)), identity_(identity), inverse_(std::move(inverse)) {
    // Shortlex-least words by breadth-first search with letters in order.
    const int n = static_cast<int>(table_.size());
    words_.assign(static_cast<std::size_t>(n), Word{});
    std::vector<bool> reached(static_cast<std::size_t>(n), false);
    reached[static_cast<std::size_t>(identity_)] = true;
    std::deque<int> queue{identity_};
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int g = 0; g < p; ++g) {
        for (std::int8_t s : {std::int8_t{1}, std::int8_t{-1}}) {
          const int y = table_[static_cast<std::size_t>(x)][static_cast<std::size_t>(element_of(Letter{g, s}))];
          if (reached[static_cast<std::size_t>(y)]) continue;
          reached[static_cast<std::size_t>(y)] = true;
          words_[static_cast<std::size_t>(y)] = words_[static_cast<std::size_t>(x)];
          words_[static_cast<std::size_t>(y)].push_back(Letter{g, s});
          queue.push_back(y);
        }
      }
    }
  }

  OracleKind kind() const override { return OracleKind::FiniteTable; }

  Word normal_form(const Word& w) const override { return words_[static_cast<std::size_t>(evaluate(w))]; }

  int evaluate(const Word& w) const {
    int x = identity_;
    for (const Letter& l : w) x = table_[static_cast<std::size_t>(x)][static_cast<std::size_t>(element_of(l))];
    return x;
  }

 private:
  int element_of(const Letter& l) const {
    const int e = images_[static_cast<std::size_t>(l.gen)];
    return l.sign > 0 ? e : inverse_[static_cast<std::size_t>(e)];
  }

  std::vector<std::vector<int>> table_;
  std::vector<int> images_;
  int identity_;
  std::vector<int> inverse_;
  std::vector<Word> words_;
};

struct HeisenbergElement {
  long long i = 0, j = 0, k = 0;
};

// (i,j,k)(i',j',k') = (i+i', j+j', k+k' - j i') in the a^i b^j c^k model.
HeisenbergElement heisenberg_multiply(const HeisenbergElement& x, const HeisenbergElement& y) {
  return {x.i + y.i, x.j + y.j, x.k + y.k - x.j * y.i};
}

HeisenbergElement heisenberg_evaluate(const Word& w) {
  HeisenbergElement x;
  for (const Letter& l : w) {
    HeisenbergElement g;
    if (l.gen == 0) g = {l.sign, 0, 0};
    if (l.gen == 1) g = {0, l.sign, 0};
    if (l.gen == 2) g = {0, 0, l.sign};
    x = heisenberg_multiply(x, g);
  }
  return x;
}

class HeisenbergOracle final : public NormalFormOracle {
 public:
  OracleKind kind() const override { return OracleKind::Heisenberg; }
  Word normal_form(const Word& w) const override {
    const HeisenbergElement e = heisenberg_evaluate(w);
    Word out;
    auto emit = [&out](int gen, long long exp) {
      const Letter x{gen, static_cast<std::int8_t>(exp < 0 ? -1 : 1)};
      for (long long t = 0; t < std::llabs(exp); ++t) out.push_back(x);
    };
    emit(0, e.i);
    emit(1, e.j);
    emit(2, e.k);
    return out;
  }
};

}  // namespace

OraclePtr make_free_group_oracle(const Presentation& p) {
  if (p.num_relators() != 0) throw InvalidOracle("free-group oracle requires a presentation without relators");
  return std::make_shared<FreeGroupOracle>();
}

OraclePtr make_abelian_oracle(const Presentation& p) {
  const int n = p.num_generators();
  std::set<Word> classes;
  for (const Word& r : p.relators()) {
    for (long long e : exponent_sums(r, n)) {
      if (e != 0) throw InvalidOracle("abelian oracle: relator " + p.format(r) + " has nonzero exponent sum");
    }
    classes.insert(least_rotation_class_key(r));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Word c = commutator(Word{Letter{i, 1}}, Word{Letter{j, 1}});
      if (!classes.count(least_rotation_class_key(c))) {
        throw InvalidOracle("abelian oracle: commutator of generators " + p.generator_names()[static_cast<std::size_t>(i)] +
                            ", " + p.generator_names()[static_cast<std::size_t>(j)] + " is not a relator");
      }
    }
  }
  return std::make_shared<AbelianOracle>(n);
}

bool satisfies_c_prime_sixth(const Presentation& p) {
  const auto sym = symmetrize(p);
  for (std::size_t x = 0; x < sym.size(); ++x) {
    for (std::size_t y = x + 1; y < sym.size(); ++y) {
      const Word& u = sym[x];
      const Word& v = sym[y];
      std::size_t len = 0;
      while (len < u.size() && len < v.size() && u[len] == v[len]) ++len;
      if (6 * len >= u.size() || 6 * len >= v.size()) return false;
    }
  }
  return true;
}

OraclePtr make_dehn_oracle(const Presentation& p) {
  if (p.num_relators() == 0) throw InvalidOracle("dehn oracle needs at least one relator");
  if (!satisfies_c_prime_sixth(p)) throw InvalidOracle("dehn oracle: relators fail the C'(1/6) piece condition");
  return std::make_shared<DehnOracle>(p);
}

Word dehn_reduce(const Word& w, const Presentation& p) { return DehnRules(p).reduce(w); }

OraclePtr make_finite_table_oracle(const Presentation& p, std::vector<std::vector<int>> table,
                                   std::vector<int> generator_images) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw InvalidOracle("empty multiplication table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw InvalidOracle("multiplication table is not square");
    for (int v : row) {
      if (v < 0 || v >= n) throw InvalidOracle("multiplication table entry out of range");
    }
  }
  auto at = [&](int x, int y) { return table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; };
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        if (at(at(x, y), z) != at(x, at(y, z))) throw InvalidOracle("multiplication table is not associative");
      }
    }
  }
  int identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = at(e, x) == x && at(x, e) == x;
    if (ok) identity = e;
  }
  if (identity < 0) throw InvalidOracle("multiplication table has no identity");
  std::vector<int> inverse(static_cast<std::size_t>(n), -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (at(x, y) == identity && at(y, x) == identity) inverse[static_cast<std::size_t>(x)] = y;
    }
    if (inverse[static_cast<std::size_t>(x)] < 0) throw InvalidOracle("multiplication table lacks inverses");
  }
  if (static_cast<int>(generator_images.size()) != p.num_generators()) {
    throw InvalidOracle("finite table oracle: one image per generator required");
  }
  for (int g : generator_images) {
    if (g < 0 || g >= n) throw InvalidOracle("generator image out of range");
  }
  auto oracle = std::make_shared<FiniteTableOracle>(p.num_generators(), std::move(table), std::move(generator_images),
                                                    identity, std::move(inverse));
  for (const Word& r : p.relators()) {
    if (oracle->evaluate(r) != identity) throw InvalidOracle("relator " + p.format(r) + " is not trivial in the table");
  }
  return oracle;
}

OraclePtr make_heisenberg_oracle(const Presentation& p) {
  if (p.num_generators() != 3) throw InvalidOracle("heisenberg oracle needs generators a b c");
  for (const Word& r : p.relators()) {
    const HeisenbergElement e = heisenberg_evaluate(r);
    if (e.i != 0 || e.j != 0 || e.k != 0) {
      throw InvalidOracle("relator " + p.format(r) + " is not trivial in the Heisenberg group");
    }
  }
  return std::make_shared<HeisenbergOracle>();
}

OraclePtr make_oracle(OracleKind kind, const Presentation& p) {
  switch (kind) {
    case OracleKind::FreeGroup: return make_free_group_oracle(p);
    case OracleKind::Abelianized: return make_abelian_oracle(p);
    case OracleKind::DehnSmallCancellation: return make_dehn_oracle(p);
    case OracleKind::Heisenberg: return make_heisenberg_oracle(p);
    case OracleKind::FiniteTable: break;
  }
  throw InvalidOracle("finite table oracle needs a multiplication table");
}

GroupSpec builtin_group(std::string_view name) {
  if (name == "z2") {
    Presentation p = parse_presentation("gens a b\nrels a b a^-1 b^-1\n");
    return {p, make_abelian_oracle(p)};
  }
  if (name == "free2") {
    Presentation p = parse_presentation("gens a b\nrels\n");
    return {p, make_free_group_oracle(p)};
  }
  if (name == "surface2") {
    Presentation p = parse_presentation("gens a1 b1 a2 b2\nrels a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1\n");
    return {p, make_dehn_oracle(p)};
  }
  if (name == "heisenberg") {
    Presentation p = parse_presentation("gens a b c\nrels a b a^-1 b^-1 c^-1 ; a c a^-1 c^-1 ; b c b^-1 c^-1\n");
    return {p, make_heisenberg_oracle(p)};
  }
  throw Error("unknown group '" + std::string(name) + "' (expected z2, free2, surface2 or heisenberg)");
}

}  // namespace cofill
