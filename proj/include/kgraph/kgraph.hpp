#ifndef KGRAPH_KGRAPH_HPP_
#define KGRAPH_KGRAPH_HPP_

// k-graphs presented as a 1-skeleton plus commuting squares: validation of
// the unique factorization property, color-ordered normal forms,
// composition, factorization and enumeration of hom-sets.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "degree.hpp"
#include "error.hpp"
#include "skeleton.hpp"

namespace kgraph {

  //! The relation e∘f = g∘h, where color(e) = color(h) != color(f) = color(g).
  struct Square {
    EdgeId e;
    EdgeId f;
    EdgeId g;
    EdgeId h;
    friend bool operator==(Square const&, Square const&) = default;
  };

  namespace detail {
    inline std::uint64_t pair_key(EdgeId a, EdgeId b) noexcept {
      return (std::uint64_t(a.value) << 32) | b.value;
    }
    inline std::pair<EdgeId, EdgeId> unpack_pair(std::uint64_t key) noexcept {
      return {EdgeId{static_cast<std::uint32_t>(key >> 32)},
              EdgeId{static_cast<std::uint32_t>(key & 0xffffffffu)}};
    }
  }  // namespace detail

  inline std::string square_to_string(Skeleton const& sk, Square const& sq) {
    return sk.edge(sq.e).name + " " + sk.edge(sq.f).name + " = "
           + sk.edge(sq.g).name + " " + sk.edge(sq.h).name;
  }

  //! Throws MalformedSquare unless ef and gh are parallel paths with the
  //! orthogonal colors interchanged.
  inline void check_square(Skeleton const& sk, Square const& sq) {
    auto const text = square_to_string(sk, sq);
    if (sk.color(sq.e) != sk.color(sq.h) || sk.color(sq.f) != sk.color(sq.g)
        || sk.color(sq.e) == sk.color(sq.f)) {
      throw error(errc::malformed_square, "colors of \"" + text + "\"");
    }
    if (sk.source(sq.e) != sk.range(sq.f) || sk.source(sq.g) != sk.range(sq.h)
        || sk.source(sq.f) != sk.source(sq.h)
        || sk.range(sq.e) != sk.range(sq.g)) {
      throw error(errc::malformed_square, "endpoints of \"" + text + "\"");
    }
  }

  //! A skeleton together with a list of well-formed squares, not necessarily
  //! satisfying the factorization axioms. This is the data of a 2-complex,
  //! and all that the groupoid presentation needs.
  class SquareComplex {
   public:
    SquareComplex(Skeleton sk, std::vector<Square> squares)
        : skeleton_(std::move(sk)), squares_(std::move(squares)) {
      for (auto const& sq : squares_) {
        check_square(skeleton_, sq);
        add_partner(sq.e, sq.f, sq.g, sq.h);
        add_partner(sq.g, sq.h, sq.e, sq.f);
      }
    }

    Skeleton const& skeleton() const noexcept {
      return skeleton_;
    }
    std::vector<Square> const& squares() const noexcept {
      return squares_;
    }
    std::size_t rank() const noexcept {
      return skeleton_.rank();
    }

    //! Every word gh related to ef by some declared square, either way round.
    std::span<std::pair<EdgeId, EdgeId> const> partners(EdgeId e, EdgeId f) const {
      auto it = partners_.find(detail::pair_key(e, f));
      if (it == partners_.end()) {
        return {};
      }
      return it->second;
    }

   private:
    void add_partner(EdgeId e, EdgeId f, EdgeId g, EdgeId h) {
      auto& list = partners_[detail::pair_key(e, f)];
      std::pair<EdgeId, EdgeId> p{g, h};
      if (std::find(list.begin(), list.end(), p) == list.end()) {
        list.push_back(p);
      }
    }

    Skeleton                                                             skeleton_;
    std::vector<Square>                                                  squares_;
    std::unordered_map<std::uint64_t, std::vector<std::pair<EdgeId, EdgeId>>> partners_;
  };

  struct Finding {
    enum class Kind {
      missing_square,
      duplicate_square,
      broken_involution,
      cube_inconsistency
    };

    Kind kind;
    // (e, f) for missing/duplicate, the square's e f g h for a broken
    // involution, the triple for a cube.
    std::vector<EdgeId> subject;
    // Cube only: the two words reached by the two swap orders.
    std::vector<EdgeId> first_result;
    std::vector<EdgeId> second_result;
  };

  inline std::string_view to_string(Finding::Kind kind) noexcept {
    switch (kind) {
      case Finding::Kind::missing_square: return "MissingSquare";
      case Finding::Kind::duplicate_square: return "DuplicateSquare";
      case Finding::Kind::broken_involution: return "BrokenInvolution";
      case Finding::Kind::cube_inconsistency: return "CubeInconsistency";
    }
    return "";
  }

  struct ValidationReport {
    bool                 ok = true;
    std::vector<Finding> failures;

    bool has(Finding::Kind kind) const {
      return std::any_of(failures.begin(), failures.end(),
                         [kind](Finding const& f) { return f.kind == kind; });
    }
  };

  inline std::string names_of(Skeleton const& sk, std::span<EdgeId const> edges,
                              char sep = ',') {
    std::string out;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (i != 0) {
        out += sep;
      }
      out += sk.edge(edges[i]).name;
    }
    return out;
  }

  inline std::string describe(Skeleton const& sk, Finding const& f) {
    std::string out(to_string(f.kind));
    out += "(" + names_of(sk, f.subject) + ")";
    if (f.kind == Finding::Kind::cube_inconsistency) {
      out += ": " + names_of(sk, f.first_result, ' ') + " vs "
             + names_of(sk, f.second_result, ' ');
    }
    return out;
  }

  namespace detail {
    // Rewrites three letters to the reversed color order along one of the
    // two hexagon routes; `swap` must be total on orthogonal pairs.
    template <typename Swap>
    std::vector<EdgeId> hexagon(std::vector<EdgeId> w, bool first_left, Swap&& swap) {
      for (int step = 0; step < 3; ++step) {
        std::size_t const i = ((step % 2 == 0) == first_left) ? 0 : 1;
        std::tie(w[i], w[i + 1]) = swap(w[i], w[i + 1]);
      }
      return w;
    }
  }  // namespace detail

  //! Checks that the squares present a k-graph: every orthogonal composable
  //! word ef is related to exactly one other word, the relation is an
  //! involution, no relation is declared twice, and for k >= 3 the commuting
  //! cubes are consistent. Malformed squares throw instead of being reported.
  inline ValidationReport validate(SquareComplex const& sc) {
    Skeleton const&  sk = sc.skeleton();
    ValidationReport report;

    std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> declared;
    for (auto const& sq : sc.squares()) {
      auto a = detail::pair_key(sq.e, sq.f);
      auto b = detail::pair_key(sq.g, sq.h);
      if (++declared[std::minmax(a, b)] == 2) {
        report.failures.push_back(
            {Finding::Kind::duplicate_square, {sq.e, sq.f}, {}, {}});
      }
    }

    for (auto const& sq : sc.squares()) {
      auto lhs = sc.partners(sq.e, sq.f);
      auto rhs = sc.partners(sq.g, sq.h);
      if (lhs.size() != 1 || rhs.size() != 1) {
        report.failures.push_back(
            {Finding::Kind::broken_involution, {sq.e, sq.f, sq.g, sq.h}, {}, {}});
      }
    }

    for (std::size_t i = 1; i <= sk.rank(); ++i) {
      for (std::size_t j = 1; j <= sk.rank(); ++j) {
        if (i == j) {
          continue;
        }
        for (auto [e, f] : composable_orthogonal_pairs(sk, i, j)) {
          if (sc.partners(e, f).empty()) {
            report.failures.push_back(
                {Finding::Kind::missing_square, {e, f}, {}, {}});
          }
        }
      }
    }

    // Cubes only make sense once the swap map is a well-defined bijection.
    if (report.failures.empty() && sk.rank() >= 3) {
      auto swap = [&sc](EdgeId x, EdgeId y) { return sc.partners(x, y).front(); };
      auto const edges = sk.sorted_edges();
      for (EdgeId e : edges) {
        for (EdgeId f : edges) {
          if (sk.source(e) != sk.range(f) || sk.color(e) == sk.color(f)) {
            continue;
          }
          for (EdgeId g : edges) {
            if (sk.source(f) != sk.range(g) || sk.color(g) == sk.color(e)
                || sk.color(g) == sk.color(f)) {
              continue;
            }
            auto a = detail::hexagon({e, f, g}, true, swap);
            auto b = detail::hexagon({e, f, g}, false, swap);
            if (a != b) {
              report.failures.push_back({Finding::Kind::cube_inconsistency,
                                         {e, f, g},
                                         std::move(a),
                                         std::move(b)});
            }
          }
        }
      }
    }

    report.ok = report.failures.empty();
    return report;
  }

  inline ValidationReport validate(Skeleton const& sk, std::vector<Square> const& squares) {
    return validate(SquareComplex(sk, squares));
  }

  //! A validated k-graph. The only way to obtain one is through a successful
  //! validation, so every operation may assume total, involutive swaps.
  class KGraph {
   public:
    explicit KGraph(SquareComplex sc) : complex_(std::move(sc)) {
      auto report = validate(complex_);
      if (!report.ok) {
        std::string msg;
        for (auto const& f : report.failures) {
          msg += (msg.empty() ? "" : "; ") + describe(complex_.skeleton(), f);
        }
        throw error(errc::invalid_kgraph, msg);
      }
    }

    KGraph(Skeleton sk, std::vector<Square> squares)
        : KGraph(SquareComplex(std::move(sk), std::move(squares))) {}

    Skeleton const& skeleton() const noexcept {
      return complex_.skeleton();
    }
    SquareComplex const& complex() const noexcept {
      return complex_;
    }
    std::size_t rank() const noexcept {
      return complex_.rank();
    }

    //! The unique (g, h) with ef = gh and the colors interchanged.
    std::pair<EdgeId, EdgeId> swap(EdgeId e, EdgeId f) const {
      Skeleton const& sk = skeleton();
      if (sk.color(e) == sk.color(f)) {
        throw error(errc::not_orthogonal,
                    sk.edge(e).name + " and " + sk.edge(f).name + " share a color");
      }
      if (sk.source(e) != sk.range(f)) {
        throw error(errc::not_composable, sk.edge(e).name + " " + sk.edge(f).name);
      }
      return complex_.partners(e, f).front();
    }

   private:
    SquareComplex complex_;
  };

  //! The color-ascending edge word of an element of Λ: all color-1 edges
  //! first (at the range end), then color 2, and so on. Two normal forms are
  //! equal exactly when they represent the same element.
  class NormalForm {
   public:
    NormalForm(VertexId range, VertexId source, Degree degree, std::vector<EdgeId> edges)
        : range_(range),
          source_(source),
          degree_(std::move(degree)),
          edges_(std::move(edges)) {}

    VertexId range() const noexcept {
      return range_;
    }
    VertexId source() const noexcept {
      return source_;
    }
    Degree const& degree() const noexcept {
      return degree_;
    }
    std::vector<EdgeId> const& edges() const noexcept {
      return edges_;
    }

    //! The color-i edges, in composition order.
    std::span<EdgeId const> block(std::size_t color) const {
      std::size_t offset = 0;
      for (std::size_t c = 1; c < color; ++c) {
        offset += degree_[c];
      }
      return std::span<EdgeId const>(edges_).subspan(offset, degree_[color]);
    }

    EdgePath path(Skeleton const& sk) const {
      return EdgePath(sk, range_, edges_);
    }

    friend bool operator==(NormalForm const&, NormalForm const&) = default;

   private:
    VertexId            range_;
    VertexId            source_;
    Degree              degree_;
    std::vector<EdgeId> edges_;
  };

  inline std::string to_string(Skeleton const& sk, NormalForm const& nf) {
    return path_to_string(sk, nf.path(sk));
  }

  namespace detail {
    // Reorders a path by square swaps until its color sequence equals
    // `target` (a permutation of the current color sequence). Adjacent
    // letters of equal color never cross, so the result is unique.
    inline std::vector<EdgeId> reorder(KGraph const&            kg,
                                       std::vector<EdgeId>        word,
                                       std::vector<std::size_t> const& target) {
      Skeleton const&          sk = kg.skeleton();
      std::vector<std::size_t> slot(word.size());
      {
        std::map<std::size_t, std::vector<std::size_t>> positions;
        for (std::size_t i = 0; i < target.size(); ++i) {
          positions[target[i]].push_back(i);
        }
        std::map<std::size_t, std::size_t> seen;
        for (std::size_t i = 0; i < word.size(); ++i) {
          auto c  = sk.color(word[i]);
          slot[i] = positions.at(c).at(seen[c]++);
        }
      }
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < word.size(); ++i) {
          if (slot[i] > slot[i + 1]) {
            std::tie(word[i], word[i + 1]) = kg.swap(word[i], word[i + 1]);
            std::swap(slot[i], slot[i + 1]);
            changed = true;
          }
        }
      }
      return word;
    }

    inline std::vector<std::size_t> ascending_colors(Degree const& d) {
      std::vector<std::size_t> out;
      for (std::size_t c = 1; c <= d.rank(); ++c) {
        out.insert(out.end(), d[c], c);
      }
      return out;
    }
  }  // namespace detail

  inline NormalForm normalize(KGraph const& kg, EdgePath const& p) {
    Degree d     = path_degree(kg.skeleton(), p);
    auto   edges = detail::reorder(kg, p.edges(), detail::ascending_colors(d));
    return NormalForm(p.range(), p.source(), std::move(d), std::move(edges));
  }

  inline NormalForm identity(KGraph const& kg, VertexId v) {
    return NormalForm(v, v, Degree(kg.rank()), {});
  }

  //! The single-edge element.
  inline NormalForm edge_element(KGraph const& kg, EdgeId e) {
    Skeleton const& sk = kg.skeleton();
    return NormalForm(sk.range(e), sk.source(e),
                      Degree::basis(sk.rank(), sk.color(e)), {e});
  }

  //! λ∘μ; requires s(λ) = r(μ).
  inline NormalForm compose(KGraph const& kg, NormalForm const& lambda, NormalForm const& mu) {
    Skeleton const& sk = kg.skeleton();
    return normalize(kg, compose_path(sk, lambda.path(sk), mu.path(sk)));
  }

  //! The unique (β, γ) with λ = β∘γ and d(β) = m.
  inline std::pair<NormalForm, NormalForm> factorize(KGraph const&     kg,
                                                     NormalForm const& lambda,
                                                     Degree const&     m) {
    Degree const& d = lambda.degree();
    if (m.rank() != d.rank()) {
      throw error(errc::rank_mismatch, "factorization degree");
    }
    if (!m.le(d)) {
      throw error(errc::degree_too_large,
                  m.to_string() + " is not below " + d.to_string());
    }
    Degree rest   = d - m;
    auto   target = detail::ascending_colors(m);
    auto   tail   = detail::ascending_colors(rest);
    target.insert(target.end(), tail.begin(), tail.end());

    auto        word = detail::reorder(kg, lambda.edges(), target);
    auto const  cut  = static_cast<std::ptrdiff_t>(m.total());
    std::vector<EdgeId> head(word.begin(), word.begin() + cut);
    std::vector<EdgeId> back(word.begin() + cut, word.end());

    Skeleton const& sk  = kg.skeleton();
    VertexId        mid = head.empty() ? lambda.range() : sk.source(head.back());
    return {NormalForm(lambda.range(), mid, m, std::move(head)),
            NormalForm(mid, lambda.source(), std::move(rest), std::move(back))};
  }

  //! Calls fn on every element of uΛ^n v (range u, source v), ordered
  //! lexicographically by the edge names of the normal form.
  template <typename Fn>
  void for_each_hom(KGraph const& kg, VertexId u, VertexId v, Degree const& n, Fn&& fn) {
    Skeleton const& sk = kg.skeleton();
    if (n.rank() != sk.rank()) {
      throw error(errc::rank_mismatch, "hom degree");
    }
    // Outgoing-at-range index: edges with a given range and color, by name.
    std::map<std::pair<std::uint32_t, std::size_t>, std::vector<EdgeId>> by_range;
    for (EdgeId e : sk.sorted_edges()) {
      by_range[{sk.range(e).value, sk.color(e)}].push_back(e);
    }
    for (auto& [key, list] : by_range) {
      std::sort(list.begin(), list.end(), [&sk](EdgeId a, EdgeId b) {
        return sk.edge(a).name < sk.edge(b).name;
      });
    }
    auto const                pattern = detail::ascending_colors(n);
    std::vector<EdgeId>       word;
    std::function<void(VertexId)> extend = [&](VertexId at) {
      if (word.size() == pattern.size()) {
        if (at == v) {
          fn(NormalForm(u, v, n, word));
        }
        return;
      }
      auto it = by_range.find({at.value, pattern[word.size()]});
      if (it == by_range.end()) {
        return;
      }
      for (EdgeId e : it->second) {
        word.push_back(e);
        extend(sk.source(e));
        word.pop_back();
      }
    };
    extend(u);
  }

  inline std::vector<NormalForm> hom(KGraph const& kg, VertexId u, VertexId v, Degree const& n) {
    std::vector<NormalForm> out;
    for_each_hom(kg, u, v, n, [&out](NormalForm const& nf) { out.push_back(nf); });
    return out;
  }

  //! Calls fn on every element of degree <= bound exactly once: degrees in
  //! lexicographic order, then ranges and sources by vertex name.
  template <typename Fn>
  void for_each_element(KGraph const& kg, Degree const& bound, Fn&& fn) {
    auto const vertices = kg.skeleton().sorted_vertices();
    for_each_degree_below(bound, [&](Degree const& n) {
      for (VertexId u : vertices) {
        for (VertexId v : vertices) {
          for_each_hom(kg, u, v, n, fn);
        }
      }
    });
  }

  inline std::vector<NormalForm> elements_up_to(KGraph const& kg, Degree const& bound) {
    std::vector<NormalForm> out;
    for_each_element(kg, bound, [&out](NormalForm const& nf) { out.push_back(nf); });
    return out;
  }

  //! The 1-graph Λ_i = d^{-1}(N n_i): all vertices and the color-i edges,
  //! recolored to 1, with no squares.
  inline KGraph component_1graph(KGraph const& kg, std::size_t color) {
    Skeleton const& sk = kg.skeleton();
    if (color < 1 || color > sk.rank()) {
      throw error(errc::bad_color, "color " + std::to_string(color));
    }
    Skeleton out(1);
    for (VertexId v : sk.vertices()) {
      out.add_vertex(sk.vertex_name(v));
    }
    for (EdgeId e : sk.sorted_edges()) {
      if (sk.color(e) == color) {
        auto const& edge = sk.edge(e);
        out.add_edge(edge.name, sk.vertex_name(edge.range), sk.vertex_name(edge.source), 1);
      }
    }
    return KGraph(std::move(out), {});
  }

}  // namespace kgraph

#endif  // KGRAPH_KGRAPH_HPP_
