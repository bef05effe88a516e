#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace kgraph;
using namespace testing;

namespace {
  std::pair<std::size_t, std::size_t> location(std::string const& text) {
    try {
      parse_kgraph(text);
    } catch (parse_error const& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  }

  bool same(KGraphFile const& a, KGraphFile const& b) {
    return print_kgraph(a) == print_kgraph(b) && a.squares == b.squares
           && a.skeleton.num_vertices() == b.skeleton.num_vertices()
           && a.skeleton.num_edges() == b.skeleton.num_edges();
  }
}  // namespace

TEST_CASE("parsing the fixtures", "[io]") {
  auto f = load_fixture("five_loops.kg");
  CHECK(f.skeleton.rank() == 2);
  CHECK(f.skeleton.num_vertices() == 1);
  CHECK(f.skeleton.num_edges() == 5);
  CHECK(f.squares.size() == 6);
  CHECK(validate(f.skeleton, f.squares).ok);
  auto const& sk = f.skeleton;
  CHECK(sk.color(sk.edge_id("d")) == 1);
  CHECK(sk.color(sk.edge_id("a")) == 2);
}

TEST_CASE("parse errors carry a location", "[io]") {
  std::string const head = "rank 2\nvertex v\nedge a : v <- v color 1\nedge d : v <- v color 2\n";
  CHECK(location(head + "square a d = d") == std::pair<std::size_t, std::size_t>{5, 15});
  CHECK(location(head + "square a d = d q") == std::pair<std::size_t, std::size_t>{5, 16});
  CHECK(location(head + "square a a = a a") == std::pair<std::size_t, std::size_t>{5, 8});
  CHECK(location(head + "square a d - d a") == std::pair<std::size_t, std::size_t>{5, 12});
  CHECK(location("vertex v") == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(location("rank 0") == std::pair<std::size_t, std::size_t>{1, 6});
  CHECK(location("rank 1\nrank 1") == std::pair<std::size_t, std::size_t>{2, 1});
  CHECK(location("rank 1\n  vertex v\n  vertex v") == std::pair<std::size_t, std::size_t>{3, 10});
  CHECK(location("rank 1\nvertex v\nedge x : v <- w color 1") == std::pair<std::size_t, std::size_t>{3, 15});
  CHECK(location("rank 1\nvertex v\nedge x : v <- v color 2") == std::pair<std::size_t, std::size_t>{3, 23});
  CHECK(location("rank 1\nvertex v\nedge x : v <- v colour 1") == std::pair<std::size_t, std::size_t>{3, 17});
  CHECK(location("rank 1\nvertex edge") == std::pair<std::size_t, std::size_t>{2, 8});
  CHECK(location("rank 1\nloop v") == std::pair<std::size_t, std::size_t>{2, 1});
  CHECK(location("") == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(location("# only a comment\nrank 1 # trailing\n\n   \n") == std::pair<std::size_t, std::size_t>{0, 0});
}

TEST_CASE("print and parse round trip", "[io]") {
  for (auto name : {"five_loops.kg", "five_loops_swapped.kg", "torus.kg", "second_example.kg", "cube_inconsistent.kg",
                    "loops.kg"}) {
    auto f     = load_fixture(name);
    auto again = parse_kgraph(print_kgraph(f));
    INFO(name);
    CHECK(same(f, again));
    CHECK(print_kgraph(again) == print_kgraph(f));
  }
}

TEST_CASE("2-complex export", "[io]") {
  auto torus = load_fixture("torus.kg");
  auto j     = export_complex(torus.complex());
  CHECK(j["vertices"] == nlohmann::json::array({"v"}));
  CHECK(j["edges"].size() == 2);
  REQUIRE(j["cells"].size() == 1);
  CHECK(j["cells"][0]["boundary"] == nlohmann::json::array({"f", "g", "f^-1", "g^-1"}));

  auto ex = load_fixture("five_loops.kg");
  auto je = export_complex(ex.complex());
  CHECK(je["cells"].size() == 6);
  CHECK(je.dump() == export_complex(ex.complex()).dump());
  // The text is strict JSON.
  CHECK(nlohmann::json::parse(je.dump(2)) == nlohmann::json::parse(je.dump()));

  auto loops = load_fixture("loops.kg");
  CHECK(export_complex(loops.complex())["cells"].empty());

  // Every boundary is a closed reduced word.
  auto second = load_fixture("second_example.kg");
  for (auto const& cell : export_complex(second.complex())["cells"]) {
    std::string text;
    for (auto const& token : cell["boundary"]) {
      text += token.get<std::string>() + " ";
    }
    auto w = parse_word(second.skeleton, text);
    CHECK(w.range() == w.source());
    CHECK(w.is_reduced());
  }
}
