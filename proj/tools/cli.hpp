#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cofill/primitive.hpp"

namespace cofill::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;  // the mathematics said no (not a relation, not exact, ...)
inline constexpr int kUsage = 2;
inline constexpr int kBudget = 3;

// Runs one command line (without the program name). Results go to `out`
// (or --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "4", "4,8,12", "8..12", or mixtures; sorted and deduplicated.
std::vector<int> parse_int_list(const std::string& text);

// FNV-1a over the presentation text and oracle kind, as 16 hex digits.
std::string presentation_hash(const GroupSpec& group);

// Seeded instance generators shared by the CLI and the acceptance suite.
struct Thm4Instance {
  CocycleData cd;
  BoundFunction F;
};
// alpha0 = coboundary of a random vertex function plus sparse noise; F random
// nonnegative with occasional +inf.
Thm4Instance random_thm4_instance(const CayleyBall& ball, std::uint64_t seed);

struct ExactCochain {
  std::vector<Rational> witness;  // t0 on (q-1)-cells
  std::vector<Rational> u;        // d t0
  Rational sup;                   // max |t0|
};
ExactCochain random_exact_cochain(const FiniteComplex& x, int q, std::uint64_t seed);

}  // namespace cofill::cli
