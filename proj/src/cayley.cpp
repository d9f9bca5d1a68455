#include "cofill/cayley.hpp"

#include <deque>
#include <random>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "cofill/error.hpp"

namespace cofill {

int CayleyBall::vertex_of_canonical(const Word& canonical) const {
  auto it = index_.find(canonical);
  return it == index_.end() ? -1 : it->second;
}

std::optional<std::vector<int>> CayleyBall::walk(int base, const Word& w) const {
  std::vector<int> path;
  path.reserve(w.size() + 1);
  path.push_back(base);
  int v = base;
  for (const Letter& x : w) {
    v = step(v, x);
    if (v < 0) return std::nullopt;
    path.push_back(v);
  }
  return path;
}

std::string CayleyBall::to_json() const {
  nlohmann::json j;
  j["radius"] = radius_;
  auto& verts = j["vertices"] = nlohmann::json::array();
  for (const Word& w : vertices_) verts.push_back(presentation_.format(w));
  auto& es = j["edges"] = nlohmann::json::array();
  for (const Edge& e : edges_) es.push_back({e.src, e.gen, e.dst});
  return j.dump();
}

CayleyBall build_ball(const Presentation& p, OraclePtr oracle, int radius, const BallOptions& options) {
  if (radius < 0) throw Error("ball radius must be nonnegative");
  if (!oracle) throw InvalidOracle("no oracle");
  CayleyBall b;
  b.radius_ = radius;
  b.presentation_ = p;
  b.oracle_ = std::move(oracle);
  const int P = p.num_generators();
  const std::size_t letters = 2 * static_cast<std::size_t>(P);

  auto add_vertex = [&](Word w, int length) {
    if (b.vertices_.size() >= options.max_vertices) {
      throw BudgetExceeded("ball vertex budget exceeded (" + std::to_string(options.max_vertices) + ")");
    }
    b.index_.emplace(w, static_cast<int>(b.vertices_.size()));
    b.vertices_.push_back(std::move(w));
    b.lengths_.push_back(length);
  };
  auto letter_of_key = [](std::size_t key) {
    return Letter{static_cast<std::int32_t>(key / 2), static_cast<std::int8_t>(key % 2 ? -1 : 1)};
  };

  add_vertex(Word{}, 0);
  std::size_t layer_begin = 0;
  for (int k = 0;; ++k) {
    const std::size_t layer_end = b.vertices_.size();
    std::vector<Word> neighbor_words((layer_end - layer_begin) * letters);
    std::set<Word> fresh;
    for (std::size_t v = layer_begin; v < layer_end; ++v) {
      for (std::size_t key = 0; key < letters; ++key) {
        Word w = b.vertices_[v];
        w.push_back(letter_of_key(key));
        Word nf = b.oracle_->normal_form(w);
        if (k < radius && !b.index_.count(nf)) fresh.insert(nf);
        neighbor_words[(v - layer_begin) * letters + key] = std::move(nf);
      }
    }
    for (const Word& w : fresh) add_vertex(w, k + 1);
    b.steps_.resize(b.vertices_.size() * letters, -1);
    for (std::size_t v = layer_begin; v < layer_end; ++v) {
      for (std::size_t key = 0; key < letters; ++key) {
        b.steps_[v * letters + key] = b.vertex_of_canonical(neighbor_words[(v - layer_begin) * letters + key]);
      }
    }
    if (k == radius) break;
    layer_begin = layer_end;
  }

  b.out_edges_.assign(b.vertices_.size() * static_cast<std::size_t>(P), -1);
  for (int v = 0; v < b.num_vertices(); ++v) {
    for (int g = 0; g < P; ++g) {
      const int dst = b.step(v, Letter{g, 1});
      if (dst < 0) continue;
      b.out_edges_[static_cast<std::size_t>(v) * static_cast<std::size_t>(P) + static_cast<std::size_t>(g)] =
          static_cast<int>(b.edges_.size());
      b.edges_.push_back(Edge{v, g, dst});
    }
  }
  return b;
}

std::string EnumerationMode::to_string() const {
  if (kind == Kind::Exhaustive) return "exhaustive";
  return "sample:" + std::to_string(count) + ":" + std::to_string(seed);
}

EnumerationMode parse_enumeration_mode(const std::string& text) {
  if (text == "exhaustive") return EnumerationMode::exhaustive();
  if (text.rfind("sample:", 0) == 0) {
    const auto second = text.find(':', 7);
    if (second != std::string::npos) {
      try {
        std::size_t used = 0;
        const std::string count_text = text.substr(7, second - 7);
        const std::string seed_text = text.substr(second + 1);
        const unsigned long long count = std::stoull(count_text, &used);
        if (used == count_text.size()) {
          const unsigned long long seed = std::stoull(seed_text, &used);
          if (used == seed_text.size()) return EnumerationMode::sample(count, seed);
        }
      } catch (const std::exception&) {
      }
    }
  }
  throw Error("bad mode '" + text + "' (expected exhaustive or sample:COUNT:SEED)");
}

namespace {

struct ExhaustiveSearch {
  const CayleyBall& ball;
  int max_len;
  std::uint64_t budget;
  RelationEnumeration& out;
  std::unordered_set<Word, WordHash> seen;
  Word path;
  int letters;

  // Returns false once the budget is exhausted.
  bool visit(int v) {
    if (++out.nodes_visited > budget) {
      out.complete = false;
      return false;
    }
    const int depth = static_cast<int>(path.size());
    if (depth > 0 && v == 0 && path.front() != path.back().inverse()) {
      if (seen.insert(least_rotation_class_key(path)).second) out.relations.push_back(path);
    }
    if (depth == max_len) return true;
    const int remaining = max_len - depth - 1;
    for (int key = 0; key < letters; ++key) {
      const Letter x{key / 2, static_cast<std::int8_t>(key % 2 ? -1 : 1)};
      if (depth > 0 && path.back() == x.inverse()) continue;
      const int u = ball.step(v, x);
      if (u < 0 || ball.length(u) > remaining) continue;
      path.push_back(x);
      const bool keep_going = visit(u);
      path.pop_back();
      if (!keep_going) return false;
    }
    return true;
  }
};

void sample_relations(const CayleyBall& ball, const EnumerationOptions& options, RelationEnumeration& out) {
  std::mt19937_64 rng(options.mode.seed);
  std::unordered_set<Word, WordHash> seen;
  std::vector<int> position(static_cast<std::size_t>(ball.num_vertices()), -1);
  const int letters = 2 * ball.num_generators();
  const int walk_length = 4 * std::max(options.max_len, 1);
  // Loop erasure only produces simple cycles, so some classes are unreachable;
  // give up after a long run without a new class.
  const std::uint64_t stall_limit = 1'000'000;
  std::uint64_t last_new = 0;
  while (out.relations.size() < options.mode.count) {
    if (out.nodes_visited - last_new > stall_limit) {
      out.complete = false;
      return;
    }
    std::vector<int> path{0};
    Word labels;
    position[0] = 0;
    for (int step = 0; step < walk_length; ++step) {
      if (++out.nodes_visited > options.walk_budget) {
        out.complete = false;
        for (int v : path) position[static_cast<std::size_t>(v)] = -1;
        return;
      }
      std::vector<Letter> choices;
      for (int key = 0; key < letters; ++key) {
        const Letter x{key / 2, static_cast<std::int8_t>(key % 2 ? -1 : 1)};
        if (!labels.empty() && labels.back() == x.inverse()) continue;
        if (ball.step(path.back(), x) >= 0) choices.push_back(x);
      }
      if (choices.empty()) break;
      const Letter x = choices[static_cast<std::size_t>(rng() % choices.size())];
      const int u = ball.step(path.back(), x);
      const int hit = position[static_cast<std::size_t>(u)];
      if (hit < 0) {
        position[static_cast<std::size_t>(u)] = static_cast<int>(path.size());
        path.push_back(u);
        labels.push_back(x);
        continue;
      }
      // Loop erasure: the cycle from path[hit] back to u.
      Word cycle(labels.begin() + hit, labels.end());
      cycle.push_back(x);
      for (std::size_t i = static_cast<std::size_t>(hit) + 1; i < path.size(); ++i) {
        position[static_cast<std::size_t>(path[i])] = -1;
      }
      path.resize(static_cast<std::size_t>(hit) + 1);
      labels.resize(static_cast<std::size_t>(hit));
      if (static_cast<int>(cycle.size()) <= options.max_len && is_cyclically_reduced(cycle)) {
        auto at_identity = ball.walk(0, cycle);
        if (at_identity && at_identity->back() == 0 && seen.insert(least_rotation_class_key(cycle)).second) {
          out.relations.push_back(std::move(cycle));
          last_new = out.nodes_visited;
          if (out.relations.size() >= options.mode.count) break;
        }
      }
    }
    for (int v : path) position[static_cast<std::size_t>(v)] = -1;
  }
}

}  // namespace

RelationEnumeration enumerate_relations(const CayleyBall& ball, const EnumerationOptions& options) {
  RelationEnumeration out;
  if (options.max_len <= 0) return out;
  if (options.mode.kind == EnumerationMode::Kind::Exhaustive) {
    ExhaustiveSearch search{ball, options.max_len, options.walk_budget, out, {}, {}, 2 * ball.num_generators()};
    search.visit(0);
  } else {
    sample_relations(ball, options, out);
  }
  return out;
}

std::vector<int> spanning_tree(const CayleyBall& ball) {
  std::vector<int> parent(static_cast<std::size_t>(ball.num_vertices()), -1);
  std::vector<bool> reached(static_cast<std::size_t>(ball.num_vertices()), false);
  reached[0] = true;
  std::deque<int> queue{0};
  const int P = ball.num_generators();
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int key = 0; key < 2 * P; ++key) {
      const Letter x{key / 2, static_cast<std::int8_t>(key % 2 ? -1 : 1)};
      const int u = ball.step(v, x);
      if (u < 0 || reached[static_cast<std::size_t>(u)]) continue;
      reached[static_cast<std::size_t>(u)] = true;
      parent[static_cast<std::size_t>(u)] = x.sign > 0 ? ball.edge_from(v, x.gen) : ball.edge_from(u, x.gen);
      queue.push_back(u);
    }
  }
  return parent;
}

std::vector<GroupRingVec> cycle_basis(const CayleyBall& ball) {
  const std::vector<int> parent = spanning_tree(ball);
  std::vector<bool> in_tree(static_cast<std::size_t>(ball.num_edges()), false);
  for (int e : parent) {
    if (e >= 0) in_tree[static_cast<std::size_t>(e)] = true;
  }
  // Chain of the tree path identity -> v, accumulated into out with a sign.
  auto add_root_path = [&](int v, const Rational& sign, GroupRingVec& out) {
    while (v != 0) {
      const Edge& e = ball.edge(parent[static_cast<std::size_t>(v)]);
      if (e.dst == v) {
        out.add(e.src, e.gen, sign);
        v = e.src;
      } else {
        out.add(e.src, e.gen, -sign);
        v = e.dst;
      }
    }
  };
  std::vector<GroupRingVec> basis;
  for (int id = 0; id < ball.num_edges(); ++id) {
    if (in_tree[static_cast<std::size_t>(id)]) continue;
    const Edge& e = ball.edge(id);
    GroupRingVec z;
    add_root_path(e.src, Rational(1), z);
    z.add(e.src, e.gen, Rational(1));
    add_root_path(e.dst, Rational(-1), z);
    basis.push_back(std::move(z));
  }
  return basis;
}

}  // namespace cofill
