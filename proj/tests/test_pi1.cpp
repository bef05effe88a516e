#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace kgraph;
using namespace testing;

namespace {
  GroupPresentation presentation(std::vector<std::string> gens, std::vector<GroupPresentation::Relator> rels) {
    return GroupPresentation{std::move(gens), std::move(rels)};
  }

  // Exponent sums of a relator, keyed by generator name.
  std::map<std::string, int> exponents(GroupPresentation const& p, GroupPresentation::Relator const& r) {
    std::map<std::string, int> out;
    for (auto const& g : p.generators) {
      out[g] = 0;
    }
    for (int x : r) {
      out[p.generators[std::abs(x) - 1]] += x > 0 ? 1 : -1;
    }
    return out;
  }
}  // namespace

TEST_CASE("spanning trees", "[pi1]") {
  auto kg = load_kgraph("five_loops.kg");
  CHECK(spanning_tree(kg.skeleton(), kg.skeleton().vertex("v")).edges().empty());

  auto        f  = load_fixture("second_example.kg");
  auto const& sk = f.skeleton;
  for (auto base : {"X", "W"}) {
    auto tree = spanning_tree(sk, sk.vertex(base));
    CHECK(tree.edges().size() == 3);
    CHECK(tree.edges() == spanning_tree(sk, sk.vertex(base)).edges());
    // Acyclic and spanning: the tree edges join the 4 vertices.
    oracle::UnionFind uf(sk.num_vertices());
    for (EdgeId e : tree.edges()) {
      CHECK(uf.find(sk.source(e).value) != uf.find(sk.range(e).value));
      uf.unite(sk.source(e).value, sk.range(e).value);
    }
    for (VertexId v : sk.vertices()) {
      auto p = tree.path_to_base(v);
      CHECK(p.source() == v);
      CHECK(p.range() == sk.vertex(base));
    }
  }
  CHECK_THROWS_AS(spanning_tree(sk, VertexId{9}), error);
}

TEST_CASE("presentations", "[pi1]") {
  auto kg = load_kgraph("five_loops.kg");
  auto p  = group_presentation(kg, kg.skeleton().vertex("v"));
  CHECK(p.generators == std::vector<std::string>{"d", "e", "a", "b", "c"});
  REQUIRE(p.relators.size() == 6);
  // The square c d = e a gives the row (-1, 0, 1, 1, -1) over (a, b, c, d, e).
  CHECK(exponents(p, p.relators[1])
        == std::map<std::string, int>{{"a", -1}, {"b", 0}, {"c", 1}, {"d", 1}, {"e", -1}});

  auto torus = load_kgraph("torus.kg");
  CHECK(to_string(group_presentation(torus, torus.skeleton().vertex("v"))) == "<f, g | f g f^-1 g^-1>");

  Skeleton bouquet(1);
  bouquet.add_vertex("v");
  for (auto name : {"x", "y", "z"}) {
    bouquet.add_edge(name, "v", "v", 1);
  }
  auto free = group_presentation(SquareComplex(bouquet, {}), bouquet.vertex("v"));
  CHECK(free.generators.size() == 3);
  CHECK(free.relators.empty());
  CHECK(abelianization(free) == AbelianInvariants{3, {}});
}

TEST_CASE("Tietze simplification", "[pi1]") {
  auto kg = load_kgraph("five_loops.kg");
  auto p  = group_presentation(kg, kg.skeleton().vertex("v"));
  auto t  = tietze_simplify(p);
  CHECK(to_string(t) == "<d, a | d^-1 a d a^-1>");
  CHECK(abelianization(t) == abelianization(p));

  auto x = presentation({"x"}, {});
  CHECK(to_string(tietze_simplify(x)) == "<x |>");
  auto xy = tietze_simplify(presentation({"x", "y"}, {{1, -2}}));
  CHECK(xy.generators.size() == 1);
  CHECK(xy.relators.empty());
  CHECK(tietze_simplify(presentation({"x"}, {{}, {1, -1}})).relators.empty());
  auto z2 = presentation({"x"}, {{1, 1}});
  CHECK(to_string(tietze_simplify(z2)) == "<x | x x>");
}

TEST_CASE("abelianization", "[pi1]") {
  for (auto name : {"five_loops.kg", "five_loops_swapped.kg"}) {
    auto kg = load_kgraph(name);
    auto ab = abelianization(group_presentation(kg, kg.skeleton().vertex("v")));
    CHECK(ab.free_rank == 2);
    CHECK(ab.torsion.empty());
    CHECK(to_string(ab) == "Z^2");
  }
  CHECK(to_string(abelianization(presentation({"x"}, {{1, 1}}))) == "Z/2");
  CHECK(to_string(abelianization(presentation({"x", "y"}, {{1, 1, 1}}))) == "Z x Z/3");
  CHECK(to_string(abelianization(presentation({"x"}, {{1}}))) == "0");

  // Rank one: the first Betti number of the graph.
  auto loops = load_kgraph("loops.kg");
  auto sk    = loops.skeleton();
  auto p     = group_presentation(loops, sk.vertex("v"));
  CHECK(abelianization(p).free_rank == sk.num_edges() - (sk.num_vertices() - 1));

  // Base point independence on a connected complex.
  auto f = load_fixture("second_example.kg");
  auto a = abelianization(group_presentation(f.complex(), f.skeleton.vertex("X")));
  for (auto base : {"Y", "Z", "W"}) {
    CHECK(abelianization(group_presentation(f.complex(), f.skeleton.vertex(base))) == a);
  }
}

TEST_CASE("abelian images", "[pi1]") {
  auto        kg   = load_kgraph("five_loops.kg");
  auto const& sk   = kg.skeleton();
  auto        tree = spanning_tree(sk, sk.vertex("v"));
  auto        p    = group_presentation(kg.complex(), tree);
  RowLattice  lattice(exponent_matrix(p));
  CHECK(lattice.contains(abelian_image(sk, tree, GWord::identity(sk.vertex("v")))));
  auto a = abelian_image(sk, tree, word(sk, "a"));
  auto b = abelian_image(sk, tree, word(sk, "b"));
  CHECK(lattice.coset_key(a) == lattice.coset_key(b));
  CHECK(lattice.coset_key(a) != lattice.coset_key(abelian_image(sk, tree, word(sk, "a a"))));
}
