#include <catch_amalgamated.hpp>

#include <regex>

#include "support.hpp"

using namespace kgraph;
using namespace testing;

namespace {
  Skeleton bouquet() {
    Skeleton sk(2);
    sk.add_vertex("v");
    sk.add_edge("d", "v", "v", 1);
    sk.add_edge("e", "v", "v", 1);
    sk.add_edge("a", "v", "v", 2);
    sk.add_edge("b", "v", "v", 2);
    sk.add_edge("c", "v", "v", 2);
    return sk;
  }
}  // namespace

TEST_CASE("vertices and edges are named uniquely", "[skeleton]") {
  Skeleton sk(2);
  sk.add_vertex("v");
  CHECK(sk.num_vertices() == 1);
  CHECK_THROWS_MATCHES(sk.add_vertex("v"), error,
                       Catch::Matchers::Predicate<error>([](error const& e) {
                         return e.code() == errc::duplicate_name;
                       }));
  sk.add_edge("a", "v", "v", 1);
  CHECK_THROWS_AS(sk.add_vertex("a"), error);
  CHECK_THROWS_AS(sk.add_edge("v", "v", "v", 1), error);
}

TEST_CASE("add_edge checks endpoints and color", "[skeleton]") {
  Skeleton sk(2);
  sk.add_vertex("v");
  sk.add_vertex("w");
  auto code = [&](auto&& fn) {
    try {
      fn();
    } catch (error const& e) {
      return e.code();
    }
    return errc::parse_error;
  };
  CHECK(code([&] { sk.add_edge("x", "v", "q", 1); }) == errc::unknown_vertex);
  CHECK(code([&] { sk.add_edge("x", "v", "v", 3); }) == errc::bad_color);
  CHECK(code([&] { sk.add_edge("x", "v", "v", 0); }) == errc::bad_color);
  auto f = sk.add_edge("f", "v", "w", 2);
  CHECK(sk.range(f) == sk.vertex("v"));
  CHECK(sk.source(f) == sk.vertex("w"));
  CHECK(path_degree(sk, EdgePath(sk, {f})) == Degree{0, 1});
  auto a = sk.add_edge("a", "v", "v", 1);
  CHECK(path_degree(sk, EdgePath(sk, {a})) == Degree{1, 0});
}

TEST_CASE("paths follow the composition order", "[skeleton]") {
  Skeleton sk(1);
  sk.add_vertex("u");
  sk.add_vertex("v");
  sk.add_vertex("w");
  auto x = sk.add_edge("x", "u", "v", 1);  // u <- v
  auto y = sk.add_edge("y", "v", "w", 1);  // v <- w
  EdgePath xy(sk, {x, y});
  CHECK(xy.range() == sk.vertex("u"));
  CHECK(xy.source() == sk.vertex("w"));
  CHECK_THROWS_AS(EdgePath(sk, {y, x}), error);

  auto id = EdgePath::identity(sk.vertex("v"));
  CHECK(path_degree(sk, id) == Degree{0});
  CHECK(compose_path(sk, EdgePath(sk, {x}), id) == EdgePath(sk, {x}));
  CHECK(compose_path(sk, EdgePath(sk, {x}), EdgePath(sk, {y})) == xy);
  CHECK_THROWS_AS(compose_path(sk, EdgePath(sk, {y}), EdgePath(sk, {x})), error);
  CHECK(path_to_string(sk, id) == "1_v");
  CHECK(path_to_string(sk, xy) == "x y");
}

TEST_CASE("degree is additive on all short paths", "[skeleton]") {
  auto const sk = bouquet();
  for (std::size_t n = 1; n <= 2; ++n) {
    for (auto const& p : oracle::all_paths(sk, n)) {
      for (auto const& q : oracle::all_paths(sk, 4 - n)) {
        EdgePath pq = compose_path(sk, EdgePath(sk, p), EdgePath(sk, q));
        CHECK(path_degree(sk, pq) == path_degree(sk, EdgePath(sk, p)) + path_degree(sk, EdgePath(sk, q)));
        auto all = p;
        all.insert(all.end(), q.begin(), q.end());
        CHECK(path_degree(sk, pq) == oracle::degree_of(sk, all));
      }
    }
  }
}

TEST_CASE("composable orthogonal pairs are exhaustive", "[skeleton]") {
  auto const sk    = bouquet();
  auto       pairs = composable_orthogonal_pairs(sk, 1, 2);
  REQUIRE(pairs.size() == 6);
  CHECK(sk.edge(pairs.front().first).name == "d");
  CHECK(sk.edge(pairs.front().second).name == "a");
  CHECK(composable_orthogonal_pairs(sk, 2, 1).size() == 6);
  CHECK_THROWS_AS(composable_orthogonal_pairs(sk, 1, 1), error);

  // Recount on the second fixture by brute force over all edge pairs.
  auto const file = load_fixture("second_example.kg");
  for (auto [i, j] : {std::pair{1, 2}, std::pair{2, 1}}) {
    std::set<std::pair<std::string, std::string>> expected, got;
    for (auto const& p : oracle::all_paths(file.skeleton, 2)) {
      if (file.skeleton.color(p[0]) == std::size_t(i) && file.skeleton.color(p[1]) == std::size_t(j)) {
        expected.emplace(file.skeleton.edge(p[0]).name, file.skeleton.edge(p[1]).name);
      }
    }
    for (auto [e, f] : composable_orthogonal_pairs(file.skeleton, i, j)) {
      got.emplace(file.skeleton.edge(e).name, file.skeleton.edge(f).name);
    }
    CHECK(got == expected);
  }
}

TEST_CASE("connected components match a union-find recount", "[skeleton]") {
  CHECK(connected_components(bouquet()).size() == 1);

  Skeleton two(1);
  two.add_vertex("p");
  two.add_vertex("q");
  CHECK(connected_components(two).size() == 2);

  auto const          file = load_fixture("second_example.kg");
  Skeleton const&     sk   = file.skeleton;
  oracle::UnionFind   uf(sk.num_vertices());
  for (std::uint32_t e = 0; e < sk.num_edges(); ++e) {
    uf.unite(sk.source(EdgeId{e}).value, sk.range(EdgeId{e}).value);
  }
  std::set<std::size_t> roots;
  for (std::uint32_t v = 0; v < sk.num_vertices(); ++v) {
    roots.insert(uf.find(v));
  }
  CHECK(connected_components(sk).size() == roots.size());
  CHECK(roots.size() == 1);
}

TEST_CASE("DOT export is deterministic and well formed", "[skeleton]") {
  Skeleton empty(1);
  CHECK(export_dot(empty) == "digraph kgraph {\n}\n");

  Skeleton loop(1);
  loop.add_vertex("v");
  loop.add_edge("x", "v", "v", 1);
  CHECK(export_dot(loop)
        == "digraph kgraph {\n  \"v\";\n  \"v\" -> \"v\" [label=\"x\", kcolor=1, color=red];\n}\n");

  auto const sk  = bouquet();
  auto const dot = export_dot(sk);
  CHECK(dot == export_dot(sk));
  // Minimal grammar: header, node statements, edge statements, footer.
  std::regex const        stmt(R"re(  "[^"]*"( -> "[^"]*" \[label="[^"]*", kcolor=[0-9]+, color=[a-z]+\])?;)re");
  std::istringstream      in(dot);
  std::string             line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    lines.push_back(line);
  }
  REQUIRE(lines.size() == 2 + sk.num_vertices() + sk.num_edges());
  CHECK(lines.front() == "digraph kgraph {");
  CHECK(lines.back() == "}");
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    CHECK(std::regex_match(lines[i], stmt));
  }
}
