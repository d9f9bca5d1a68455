#pragma once

#include <random>
#include <vector>

#include "cofill/cayley.hpp"
#include "cofill/presentation.hpp"

namespace cofill::testing {

// Canonical p/q (mpq_class(p, q) alone is not reduced).
inline Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

inline Letter random_letter(std::mt19937_64& rng, int gens) {
  return Letter{static_cast<std::int32_t>(rng() % static_cast<unsigned>(gens)),
                static_cast<std::int8_t>(rng() % 2 ? 1 : -1)};
}

inline Word random_word(std::mt19937_64& rng, int gens, int len) {
  Word w;
  for (int i = 0; i < len; ++i) w.push_back(random_letter(rng, gens));
  return w;
}

// Product of `factors` random conjugates u r^{+-1} u^{-1}, freely reduced.
inline Word random_relation(std::mt19937_64& rng, const Presentation& p, int factors, int conj_len) {
  Word w;
  for (int i = 0; i < factors; ++i) {
    const Word u = random_word(rng, p.num_generators(), static_cast<int>(rng() % static_cast<unsigned>(conj_len + 1)));
    Word r = p.relator(static_cast<int>(rng() % static_cast<unsigned>(p.num_relators())));
    if (rng() % 2) r = invert(r);
    w = concat(w, concat(concat(u, r), invert(u)));
  }
  return free_reduce(w);
}

// A random relation whose walk from the identity stays inside the ball.
inline Word random_relation_in_ball(std::mt19937_64& rng, const CayleyBall& ball, int factors, int conj_len) {
  for (;;) {
    const Word w = random_relation(rng, ball.presentation(), factors, conj_len);
    if (ball.walk(0, w)) return w;
  }
}

// All freely reduced words of length <= n over p generators, shortest first.
inline std::vector<Word> reduced_words(int p, int n) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (int len = 1; len <= n; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (int key = 0; key < 2 * p; ++key) {
        const Letter x{key / 2, static_cast<std::int8_t>(key % 2 ? -1 : 1)};
        if (!out[i].empty() && out[i].back() == x.inverse()) continue;
        Word w = out[i];
        w.push_back(x);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

}  // namespace cofill::testing
