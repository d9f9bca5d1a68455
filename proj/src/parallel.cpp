#include "cofill/parallel.hpp"

#include <cstdlib>
#include <exception>
#include <string>

#include <omp.h>

#include "cofill/foxcalc.hpp"
#include "cofill/primitive.hpp"

namespace cofill {

namespace {

FillReport fill_one(const CellTable& cells, const Word& w, FillKind kind, const FillOptions& options) {
  const GroupRingVec z = cycle_of_relation(w, cells.ball(), 0);
  return kind == FillKind::Real ? fill_real(z, cells, options) : fill_int(z, cells, options);
}

}  // namespace

std::vector<FillReport> fill_relations_serial(const CellTable& cells, const std::vector<Word>& relations,
                                              FillKind kind, const FillOptions& options) {
  std::vector<FillReport> out;
  out.reserve(relations.size());
  for (const Word& w : relations) out.push_back(fill_one(cells, w, kind, options));
  return out;
}

std::vector<FillReport> fill_relations(const CellTable& cells, const std::vector<Word>& relations, FillKind kind,
                                       const FillOptions& options, int threads) {
  if (threads <= 1) return fill_relations_serial(cells, relations, kind, options);
  std::vector<FillReport> out(relations.size());
  std::exception_ptr failure;
  const long n = static_cast<long>(relations.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fill_one(cells, relations[static_cast<std::size_t>(i)], kind, options);
    } catch (...) {
#pragma omp critical(cofill_fill_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<std::optional<IIValue>> evaluate_ii_serial(const CocycleData& cd, const BoundFunction& F,
                                                       const CayleyBall& ball, const std::vector<Word>& relations) {
  std::vector<std::optional<IIValue>> out;
  out.reserve(relations.size() * static_cast<std::size_t>(ball.num_vertices()));
  for (const Word& w : relations) {
    for (int g = 0; g < ball.num_vertices(); ++g) out.push_back(condition_ii_value(cd, F, ball, g, w));
  }
  return out;
}

std::vector<std::optional<IIValue>> evaluate_ii(const CocycleData& cd, const BoundFunction& F, const CayleyBall& ball,
                                                const std::vector<Word>& relations, int threads) {
  if (threads <= 1) return evaluate_ii_serial(cd, F, ball, relations);
  const long V = ball.num_vertices();
  const long n = static_cast<long>(relations.size()) * V;
  std::vector<std::optional<IIValue>> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        condition_ii_value(cd, F, ball, static_cast<int>(i % V), relations[static_cast<std::size_t>(i / V)]);
  }
  return out;
}

int threads_from_environment() {
  const char* text = std::getenv("COFILL_THREADS");
  if (!text || !*text) return 1;
  try {
    const int n = std::stoi(text);
    return n < 1 ? 1 : n;
  } catch (const std::exception&) {
    return 1;
  }
}

}  // namespace cofill
