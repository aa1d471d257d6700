#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tmac/errors.hpp"
#include "tmac/pddl.hpp"
#include "tmac/shortest_paths.hpp"

using namespace tmac;
using namespace tmac::testing;

namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(TMAC_TEST_DATA_DIR) + "/" + name);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("a line of two edges gains the direct long hop") {
  LiftedDomain d = parse_domain(read_data("travel.pddl"));
  Problem p = parse_problem(read_data("travel-p1.pddl"), d);
  MoveSpec spec{"drive", "?from", "?to", "road"};

  auto [d2, p2] = shortest_path_closure(d, p, spec, {});
  CHECK(d2.find_schema("drive") == nullptr);
  REQUIRE(d2.find_schema("drive-p1-p3") != nullptr);
  CHECK(d2.find_schema("drive-p1-p3")->dur == Rat(2));  // 1 + 1
  CHECK(d2.find_schema("drive-p1-p2")->dur == Rat(1));
  CHECK(d2.find_schema("drive-p3-p1") == nullptr);  // roads are directed
  // road conditions are discharged by construction
  for (const auto& s : d2.schemas) {
    for (const auto& c : s.conds) CHECK(c.atom.pred != "road");
  }
}

TEST_CASE("sidecar edge durations override the schema duration") {
  LiftedDomain d = parse_domain(read_data("travel.pddl"));
  Problem p = parse_problem(read_data("travel-p1.pddl"), d);
  MoveSpec spec{"drive", "?from", "?to", "road"};
  std::vector<EdgeDuration> table{{"p1", "p2", Rat::of(1, 2)}};

  auto [d2, p2] = shortest_path_closure(d, p, spec, table);
  CHECK(d2.find_schema("drive-p1-p2")->dur == Rat::of(1, 2));
  CHECK(d2.find_schema("drive-p1-p3")->dur == Rat::of(3, 2));
}

TEST_CASE("a complete graph within the triangle inequality is unchanged") {
  std::vector<std::tuple<std::size_t, std::size_t, Rat>> edges;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (i != j) edges.emplace_back(i, j, Rat(1));
    }
  }
  auto d = all_pairs_shortest(4, edges);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j) continue;
      CHECK(*d[i][j] == Rat(1));
    }
  }
}

TEST_CASE("closure distances equal the simple-path oracle on random graphs") {
  std::mt19937 rng(31337);
  for (int round = 0; round < 50; ++round) {
    std::size_t n = 2 + rng() % 5;  // up to 6 nodes
    std::vector<std::tuple<std::size_t, std::size_t, Rat>> edges;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || rng() % 100 >= 45) continue;
        edges.emplace_back(i, j, Rat(1 + static_cast<long long>(rng() % 8),
                                     1 + static_cast<long long>(rng() % 4)));
      }
    }
    auto dist = all_pairs_shortest(n, edges);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        auto expect = simple_path_oracle(n, edges, u, v);
        REQUIRE(dist[u][v].has_value() == expect.has_value());
        if (expect) CHECK(*dist[u][v] == *expect);
      }
    }
  }
}

TEST_CASE("closure output satisfies the triangle inequality") {
  std::mt19937 rng(777);
  for (int round = 0; round < 20; ++round) {
    std::size_t n = 3 + rng() % 4;
    std::vector<std::tuple<std::size_t, std::size_t, Rat>> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && rng() % 2) edges.emplace_back(i, j, Rat(1 + static_cast<long long>(rng() % 5)));
    auto d = all_pairs_shortest(n, edges);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          if (!d[i][k] || !d[k][j]) continue;
          REQUIRE(d[i][j].has_value());
          CHECK(*d[i][j] <= *d[i][k] + *d[k][j]);
        }
  }
}

TEST_CASE("a missing or unsuitable move schema is rejected") {
  LiftedDomain d = parse_domain(read_data("travel.pddl"));
  Problem p = parse_problem(read_data("travel-p1.pddl"), d);
  CHECK_THROWS_AS(static_cast<void>(shortest_path_closure(d, p, {"fly", "?from", "?to", "road"}, {})),
                  Error);
  CHECK_THROWS_AS(
      static_cast<void>(shortest_path_closure(d, p, {"drive", "?from", "?nope", "road"}, {})),
      Error);
  CHECK_THROWS_AS(
      static_cast<void>(shortest_path_closure(d, p, {"drive", "?from", "?to", "pos"}, {})),
      Error);
}
