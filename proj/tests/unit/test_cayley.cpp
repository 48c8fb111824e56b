#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "oracle.hpp"
#include "splitter/cayley.hpp"
#include "splitter/error.hpp"

using namespace splitter;
using namespace splitter::cayley;

namespace {

std::vector<u64> primes_in(u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 n = lo; n <= hi; ++n) {
    if (oracle::is_prime(n)) out.push_back(n);
  }
  return out;
}

u64 alpha(u64 p, u64 k1, u64 k2) {
  const auto r = max_splitter(SplitterInstance(p, k1, k2), SearchMode::exact);
  REQUIRE(r.exact);
  return r.size;
}

}  // namespace

TEST_CASE("quotient sets") {
  const auto g7 = build_graph(SplitterInstance(7, 0, 3));
  CHECK(g7.prime_path());
  CHECK(g7.quotient_set() == std::vector<u64>{2, 3, 4, 5});
  const auto g11 = build_graph(SplitterInstance(11, 0, 3));
  CHECK(g11.quotient_set() == std::vector<u64>{2, 3, 4, 6, 7, 8});

  const auto g5 = build_graph(SplitterInstance(5, 0, 1));
  CHECK(g5.quotient_set().empty());
  CHECK(g5.edge_count() == 0);
  CHECK(alpha(5, 0, 1) == 4);

  CHECK_FALSE(build_graph(SplitterInstance(40, 3, 3)).prime_path());
}

TEST_CASE("prime-path graphs are regular with components the size of <M>") {
  for (u64 p : primes_in(7, 200)) {
    for (const auto& [k1, k2] : std::vector<std::pair<u64, u64>>{{0, 2}, {0, 3}, {1, 3}, {2, 4}}) {
      if (p <= k1 + k2 + 1) continue;
      const auto g = build_graph(SplitterInstance(p, k1, k2));
      REQUIRE(g.prime_path());
      for (std::size_t i = 0; i < g.size(); ++i) CHECK(g.degree(i) == g.quotient_set().size());

      std::vector<u64> m;
      for (u64 x = 1; x <= k2; ++x) m.push_back(x);
      for (u64 x = 1; x <= k1; ++x) m.push_back(p - x);
      const auto sub = oracle::subgroup(p, m);

      // Component of 1 by breadth-first search.
      std::vector<char> seen(g.size(), 0);
      std::queue<std::size_t> todo;
      const std::size_t one = *g.index_of(1);
      seen[one] = 1;
      todo.push(one);
      std::set<u64> comp;
      while (!todo.empty()) {
        const std::size_t v = todo.front();
        todo.pop();
        comp.insert(g.vertices()[v]);
        for (std::size_t w = 0; w < g.size(); ++w) {
          if (g.adjacent(v, w) && !seen[w]) {
            seen[w] = 1;
            todo.push(w);
          }
        }
      }
      CHECK(comp == sub);
    }
  }
}

TEST_CASE("is_independent agrees with verify") {
  const auto g37 = build_graph(SplitterInstance(37, 0, 3));
  const auto r37 = max_splitter(SplitterInstance(37, 0, 3), SearchMode::exact);
  CHECK(is_independent(g37, r37.witness.elements()));
  CHECK(is_independent(g37, {}));
  CHECK_FALSE(is_independent(build_graph(SplitterInstance(13, 0, 3)), {1, 2}));

  std::mt19937_64 rng(5);
  for (u64 q = 3; q <= 500; ++q) {
    for (const auto& [k1, k2] : std::vector<std::pair<u64, u64>>{{0, 3}, {1, 3}, {2, 2}}) {
      const SplitterInstance inst(q, k1, k2);
      const auto g = build_graph(inst);
      const int trials = q <= 100 ? 40 : 4;
      for (int t = 0; t < trials; ++t) {
        std::set<u64> pick;
        const std::size_t n = 1 + rng() % 4;
        while (pick.size() < std::min<std::size_t>(n, g.size())) pick.insert(g.vertices()[rng() % g.size()]);
        const std::vector<u64> B(pick.begin(), pick.end());
        INFO("q=" << q << " k1=" << k1 << " k2=" << k2);
        CHECK(is_independent(g, B) == oracle::verify(q, k1, k2, B));
      }
    }
  }
  CHECK_THROWS_AS(is_independent(build_graph(SplitterInstance(10, 0, 5)), {2}), PreconditionError);
}

TEST_CASE("independence numbers") {
  CHECK(alpha(11, 0, 3) == 2);
  CHECK(alpha(23, 0, 3) == 4);
  CHECK(alpha(37, 0, 3) == 12);
  CHECK(alpha(40, 3, 3) == 6);
  CHECK(alpha(18, 3, 3) == 2);
  CHECK(alpha(4, 0, 1) == 3);
  CHECK(max_splitter(SplitterInstance(4, 0, 1), SearchMode::exact).witness.elements() == std::vector<u64>{1, 2, 3});

  const auto bound = [](u64 p) { return max_splitter(SplitterInstance(p, 0, 3), SearchMode::bound).size; };
  CHECK(bound(7) == 2);
  CHECK(bound(17) == 3);
  CHECK(bound(29) == 5);
  for (u64 p : primes_in(7, 100)) {
    const auto b = max_splitter(SplitterInstance(p, 0, 3), SearchMode::bound);
    REQUIRE(b.bound);
    CHECK(verify(b.witness).valid);
    CHECK(alpha(p, 0, 3) >= b.size);
  }
  CHECK_THROWS_AS(max_splitter(SplitterInstance(40, 3, 3), SearchMode::bound), UnsupportedError);
}

TEST_CASE("exact search against full enumeration, q <= 30") {
  for (const auto& [k1, k2] : std::vector<std::pair<u64, u64>>{{0, 3}, {1, 3}, {2, 2}, {0, 4}, {3, 3}}) {
    for (u64 q = 2; q <= 30; ++q) {
      const auto r = max_splitter(SplitterInstance(q, k1, k2), SearchMode::exact);
      INFO("q=" << q << " k1=" << k1 << " k2=" << k2);
      CHECK(r.exact);
      CHECK(oracle::verify(q, k1, k2, r.witness.elements()));
      CHECK(r.size == oracle::max_by_enumeration(q, k1, k2));
    }
  }
}

TEST_CASE("exact search against the clique oracle, q <= 60") {
  for (const auto& [k1, k2] : std::vector<std::pair<u64, u64>>{{0, 2}, {1, 2}, {0, 5}, {2, 4}, {4, 4}}) {
    for (u64 q = 2; q <= 60; ++q) {
      if (q <= k2) continue;
      const auto r = max_splitter(SplitterInstance(q, k1, k2), SearchMode::exact);
      INFO("q=" << q << " k1=" << k1 << " k2=" << k2);
      CHECK(r.exact);
      CHECK(verify(r.witness).valid);
      CHECK(r.size == oracle::max_splitter(q, k1, k2));
    }
  }
}

TEST_CASE("greedy witnesses are valid") {
  for (u64 q = 5; q <= 150; ++q) {
    const SplitterInstance inst(q, 1, 3);
    const auto g = build_graph(inst);
    const auto B = greedy_independent(g);
    CHECK(is_independent(g, B));
    CHECK(oracle::verify(q, 1, 3, B));
  }
}

TEST_CASE("adjacency export") {
  std::ostringstream out;
  write_adjacency(build_graph(SplitterInstance(7, 0, 2)), out);
  // S = {2, 4}: x is joined to 2x and 4x.
  CHECK(out.str() == "1: 2 4\n2: 1 4\n3: 5 6\n4: 1 2\n5: 3 6\n6: 3 5\n");
}

TEST_CASE("size limits") {
  CHECK_THROWS_AS(build_graph(SplitterInstance(kMaxGraphVertices + 2, 0, 3)), UnsupportedError);
  ExactOptions small;
  small.max_vertices = 10;
  CHECK_THROWS_AS(max_independent_exact(build_graph(SplitterInstance(37, 0, 3)), small), UnsupportedError);
}
