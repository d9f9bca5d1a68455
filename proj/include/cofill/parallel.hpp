#pragma once

#include <vector>

#include "cofill/filling.hpp"

namespace cofill {

struct CocycleData;
struct BoundFunction;
struct IIValue;

enum class FillKind { Real, Integer };

// Fill every relation's cycle I_w independently. The OpenMP version uses a
// dynamic schedule; results land in input order, so both are byte-identical.
std::vector<FillReport> fill_relations(const CellTable& cells, const std::vector<Word>& relations, FillKind kind,
                                       const FillOptions& options, int threads);
std::vector<FillReport> fill_relations_serial(const CellTable& cells, const std::vector<Word>& relations,
                                              FillKind kind, const FillOptions& options);

// (ii) values for every (relation, base vertex) pair, row-major by relation;
// nullopt where the walk leaves the ball.
std::vector<std::optional<IIValue>> evaluate_ii(const CocycleData& cd, const BoundFunction& F, const CayleyBall& ball,
                                                const std::vector<Word>& relations, int threads);
std::vector<std::optional<IIValue>> evaluate_ii_serial(const CocycleData& cd, const BoundFunction& F,
                                                       const CayleyBall& ball, const std::vector<Word>& relations);

// COFILL_THREADS, defaulting to 1.
int threads_from_environment();

}  // namespace cofill
