// Serial reference loops against the OpenMP kernels.
//   cofill_bench [threads] [radius]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>

#include "cofill/parallel.hpp"
#include "cofill/primitive.hpp"

using namespace cofill;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, std::size_t items, double serial, double parallel, bool same) {
  std::printf("%-22s %8zu %10.3f %10.3f %8.2fx %s\n", name, items, serial, parallel, parallel > 0 ? serial / parallel : 0.0,
              same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int threads = argc > 1 ? std::atoi(argv[1]) : std::max(2, threads_from_environment());
  const int radius = argc > 2 ? std::atoi(argv[2]) : 4;
  const GroupSpec z2 = builtin_group("z2");
  const CayleyBall ball = build_ball(z2.presentation, z2.oracle, radius);
  const CellTable cells(ball);
  EnumerationOptions eo;
  eo.max_len = 2 * radius;
  const auto rels = enumerate_relations(ball, eo).relations;

  std::printf("z2 radius %d: %d vertices, %zu relations, %d threads\n", radius, ball.num_vertices(), rels.size(), threads);
  std::printf("%-22s %8s %10s %10s %9s\n", "kernel", "items", "serial s", "omp s", "speedup");

  std::vector<FillReport> a, b;
  const double s1 = seconds([&] { a = fill_relations_serial(cells, rels, FillKind::Real, {}); });
  const double p1 = seconds([&] { b = fill_relations(cells, rels, FillKind::Real, {}, threads); });
  bool same = a.size() == b.size();
  for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].value == b[i].value && a[i].certificate == b[i].certificate;
  row("fill_real", rels.size(), s1, p1, same);

  std::mt19937_64 rng(1);
  CocycleData cd;
  for (int e = 0; e < ball.num_edges(); ++e) {
    Rational v(static_cast<long>(rng() % 7) - 3, 2);
    v.canonicalize();
    cd.alpha0.set(e, v);
  }
  const BoundFunction F = BoundFunction::constant(ball.num_vertices(), Bound::finite(Rational(1)));
  std::vector<std::optional<IIValue>> x, y;
  const double s2 = seconds([&] { x = evaluate_ii_serial(cd, F, ball, rels); });
  const double p2 = seconds([&] { y = evaluate_ii(cd, F, ball, rels, threads); });
  same = x.size() == y.size();
  for (std::size_t i = 0; same && i < x.size(); ++i) {
    same = x[i].has_value() == y[i].has_value() && (!x[i] || x[i]->signed_sum == y[i]->signed_sum);
  }
  row("condition (ii) rows", x.size(), s2, p2, same);
  return 0;
}
