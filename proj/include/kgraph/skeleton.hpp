#ifndef KGRAPH_SKELETON_HPP_
#define KGRAPH_SKELETON_HPP_

// Colored directed multigraphs and paths in their free path categories.
//
// Composition order: a path is written e_1 e_2 ... e_n with s(e_i) = r(e_{i+1}),
// so the word reads right to left along the arrows, like composition of
// functions. Every format and every word in this library uses this order.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "degree.hpp"
#include "error.hpp"

namespace kgraph {

  struct VertexId {
    std::uint32_t value = 0;
    friend auto operator<=>(VertexId, VertexId) = default;
  };

  struct EdgeId {
    std::uint32_t value = 0;
    friend auto operator<=>(EdgeId, EdgeId) = default;
  };

  struct Edge {
    std::string name;
    VertexId    source;
    VertexId    range;
    std::size_t color = 1;
  };

  class Skeleton {
   public:
    explicit Skeleton(std::size_t rank) : rank_(rank) {
      if (rank == 0) {
        throw error(errc::bad_color, "rank must be at least 1");
      }
    }

    std::size_t rank() const noexcept {
      return rank_;
    }

    VertexId add_vertex(std::string const& name) {
      if (name.empty()) {
        throw error(errc::duplicate_name, "empty vertex name");
      }
      if (names_.contains(name)) {
        throw error(errc::duplicate_name, "\"" + name + "\" already used");
      }
      VertexId id{static_cast<std::uint32_t>(vertices_.size())};
      vertices_.push_back(name);
      names_.emplace(name, Name{true, id.value});
      return id;
    }

    EdgeId add_edge(std::string const& name,
                    std::string const& range,
                    std::string const& source,
                    std::size_t        color) {
      return add_edge(name, vertex(range), vertex(source), color);
    }

    EdgeId add_edge(std::string const& name,
                    VertexId           range,
                    VertexId           source,
                    std::size_t        color) {
      if (name.empty() || names_.contains(name)) {
        throw error(errc::duplicate_name, "\"" + name + "\" already used");
      }
      if (range.value >= vertices_.size() || source.value >= vertices_.size()) {
        throw error(errc::unknown_vertex, "endpoint of edge \"" + name + "\"");
      }
      if (color < 1 || color > rank_) {
        throw error(errc::bad_color,
                    "edge \"" + name + "\" has color " + std::to_string(color)
                        + " outside 1.." + std::to_string(rank_));
      }
      EdgeId id{static_cast<std::uint32_t>(edges_.size())};
      edges_.push_back(Edge{name, source, range, color});
      names_.emplace(name, Name{false, id.value});
      return id;
    }

    std::size_t num_vertices() const noexcept {
      return vertices_.size();
    }
    std::size_t num_edges() const noexcept {
      return edges_.size();
    }

    std::string const& vertex_name(VertexId v) const {
      return vertices_.at(v.value);
    }
    Edge const& edge(EdgeId e) const {
      return edges_.at(e.value);
    }

    bool has_vertex(std::string const& name) const {
      auto it = names_.find(name);
      return it != names_.end() && it->second.is_vertex;
    }
    bool has_edge(std::string const& name) const {
      auto it = names_.find(name);
      return it != names_.end() && !it->second.is_vertex;
    }

    VertexId vertex(std::string const& name) const {
      auto it = names_.find(name);
      if (it == names_.end() || !it->second.is_vertex) {
        throw error(errc::unknown_vertex, "\"" + name + "\"");
      }
      return VertexId{it->second.index};
    }

    EdgeId edge_id(std::string const& name) const {
      auto it = names_.find(name);
      if (it == names_.end() || it->second.is_vertex) {
        throw error(errc::unknown_edge, "\"" + name + "\"");
      }
      return EdgeId{it->second.index};
    }

    VertexId source(EdgeId e) const {
      return edge(e).source;
    }
    VertexId range(EdgeId e) const {
      return edge(e).range;
    }
    std::size_t color(EdgeId e) const {
      return edge(e).color;
    }

    //! Vertices in insertion order.
    std::vector<VertexId> vertices() const {
      std::vector<VertexId> out(vertices_.size());
      for (std::uint32_t i = 0; i < out.size(); ++i) {
        out[i] = VertexId{i};
      }
      return out;
    }

    //! Vertices sorted by name.
    std::vector<VertexId> sorted_vertices() const {
      auto out = vertices();
      std::sort(out.begin(), out.end(), [this](VertexId a, VertexId b) {
        return vertices_[a.value] < vertices_[b.value];
      });
      return out;
    }

    //! Edges sorted by (color, name); the canonical order everywhere.
    std::vector<EdgeId> sorted_edges() const {
      std::vector<EdgeId> out(edges_.size());
      for (std::uint32_t i = 0; i < out.size(); ++i) {
        out[i] = EdgeId{i};
      }
      std::sort(out.begin(), out.end(), [this](EdgeId a, EdgeId b) {
        return edge_less(a, b);
      });
      return out;
    }

    bool edge_less(EdgeId a, EdgeId b) const {
      auto const& x = edges_[a.value];
      auto const& y = edges_[b.value];
      return std::tie(x.color, x.name) < std::tie(y.color, y.name);
    }

   private:
    struct Name {
      bool          is_vertex;
      std::uint32_t index;
    };

    std::size_t                 rank_;
    std::vector<std::string>    vertices_;
    std::vector<Edge>           edges_;
    std::map<std::string, Name> names_;
  };

  //! An element of the free path category P(E). The anchor is the vertex an
  //! empty path stands for; for nonempty paths it equals the range.
  class EdgePath {
   public:
    EdgePath() = default;

    static EdgePath identity(VertexId v) {
      EdgePath p;
      p.anchor_ = v;
      return p;
    }

    EdgePath(Skeleton const& sk, std::vector<EdgeId> edges)
        : edges_(std::move(edges)) {
      if (edges_.empty()) {
        throw error(errc::not_composable,
                    "an empty path needs an explicit anchor vertex");
      }
      for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
        if (sk.source(edges_[i]) != sk.range(edges_[i + 1])) {
          throw error(errc::not_composable,
                      "s(" + sk.edge(edges_[i]).name + ") != r("
                          + sk.edge(edges_[i + 1]).name + ")");
        }
      }
      anchor_ = sk.range(edges_.front());
      source_ = sk.source(edges_.back());
    }

    EdgePath(Skeleton const& sk, VertexId anchor, std::vector<EdgeId> edges)
        : EdgePath(edges.empty() ? identity(anchor)
                                 : EdgePath(sk, std::move(edges))) {
      if (edges_.empty()) {
        source_ = anchor;
      } else if (anchor_ != anchor) {
        throw error(errc::not_composable, "anchor does not match the range");
      }
    }

    VertexId range() const noexcept {
      return anchor_;
    }
    VertexId source() const noexcept {
      return edges_.empty() ? anchor_ : source_;
    }
    bool empty() const noexcept {
      return edges_.empty();
    }
    std::size_t size() const noexcept {
      return edges_.size();
    }
    std::vector<EdgeId> const& edges() const noexcept {
      return edges_;
    }

    friend bool operator==(EdgePath const& a, EdgePath const& b) {
      return a.anchor_ == b.anchor_ && a.source() == b.source()
             && a.edges_ == b.edges_;
    }

   private:
    VertexId            anchor_{};
    VertexId            source_{};
    std::vector<EdgeId> edges_;
  };

  //! p followed by q in composition order, i.e. p∘q; requires s(p) = r(q).
  inline EdgePath compose_path(Skeleton const& sk,
                               EdgePath const& p,
                               EdgePath const& q) {
    if (p.source() != q.range()) {
      throw error(errc::not_composable,
                  "s(p) = " + sk.vertex_name(p.source()) + " but r(q) = "
                      + sk.vertex_name(q.range()));
    }
    if (p.empty()) {
      return q;
    }
    if (q.empty()) {
      return p;
    }
    std::vector<EdgeId> edges = p.edges();
    edges.insert(edges.end(), q.edges().begin(), q.edges().end());
    return EdgePath(sk, std::move(edges));
  }

  inline Degree path_degree(Skeleton const& sk, std::span<EdgeId const> edges) {
    Degree d(sk.rank());
    for (EdgeId e : edges) {
      d[sk.color(e)] += 1;
    }
    return d;
  }

  inline Degree path_degree(Skeleton const& sk, EdgePath const& p) {
    return path_degree(sk, p.edges());
  }

  inline std::string path_to_string(Skeleton const& sk, EdgePath const& p) {
    if (p.empty()) {
      return "1_" + sk.vertex_name(p.range());
    }
    std::string out;
    for (EdgeId e : p.edges()) {
      if (!out.empty()) {
        out += ' ';
      }
      out += sk.edge(e).name;
    }
    return out;
  }

  //! All (e, f) with color(e) = i, color(f) = j and s(e) = r(f), i.e. all
  //! composable words ef of degree n_i + n_j, sorted by the names of e then f.
  inline std::vector<std::pair<EdgeId, EdgeId>>
  composable_orthogonal_pairs(Skeleton const& sk, std::size_t i, std::size_t j) {
    if (i == j) {
      throw error(errc::same_color, "colors " + std::to_string(i) + " and "
                                        + std::to_string(j));
    }
    if (i < 1 || i > sk.rank() || j < 1 || j > sk.rank()) {
      throw error(errc::bad_color, "color outside 1.." + std::to_string(sk.rank()));
    }
    auto const                             sorted = sk.sorted_edges();
    std::vector<std::pair<EdgeId, EdgeId>> out;
    for (EdgeId e : sorted) {
      if (sk.color(e) != i) {
        continue;
      }
      for (EdgeId f : sorted) {
        if (sk.color(f) == j && sk.source(e) == sk.range(f)) {
          out.emplace_back(e, f);
        }
      }
    }
    return out;
  }

  //! Partition of the vertices under undirected reachability. Components are
  //! listed by their smallest vertex name, members sorted by name.
  inline std::vector<std::vector<VertexId>>
  connected_components(Skeleton const& sk) {
    std::vector<std::uint32_t> parent(sk.num_vertices());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](std::uint32_t x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x         = parent[x];
      }
      return x;
    };
    for (std::uint32_t e = 0; e < sk.num_edges(); ++e) {
      auto a = find(sk.source(EdgeId{e}).value);
      auto b = find(sk.range(EdgeId{e}).value);
      if (a != b) {
        parent[std::max(a, b)] = std::min(a, b);
      }
    }
    std::map<std::uint32_t, std::vector<VertexId>> groups;
    for (VertexId v : sk.sorted_vertices()) {
      groups[find(v.value)].push_back(v);
    }
    std::vector<std::vector<VertexId>> out;
    for (auto& [root, members] : groups) {
      out.push_back(std::move(members));
    }
    std::sort(out.begin(), out.end(), [&sk](auto const& a, auto const& b) {
      return sk.vertex_name(a.front()) < sk.vertex_name(b.front());
    });
    return out;
  }

  namespace detail {
    inline std::string dot_quote(std::string const& s) {
      std::string out = "\"";
      for (char c : s) {
        if (c == '"' || c == '\\') {
          out += '\\';
        }
        out += c;
      }
      return out + "\"";
    }
  }  // namespace detail

  //! Graphviz rendering. Arrows point from source to range; the k-color is
  //! stored in the kcolor attribute and also mapped to a display color.
  inline std::string export_dot(Skeleton const& sk) {
    static constexpr char const* palette[]
        = {"black", "red", "blue", "darkgreen", "orange", "purple", "brown"};
    std::string out = "digraph kgraph {\n";
    for (VertexId v : sk.sorted_vertices()) {
      out += "  " + detail::dot_quote(sk.vertex_name(v)) + ";\n";
    }
    for (EdgeId e : sk.sorted_edges()) {
      auto const& edge = sk.edge(e);
      out += "  " + detail::dot_quote(sk.vertex_name(edge.source)) + " -> "
             + detail::dot_quote(sk.vertex_name(edge.range))
             + " [label=" + detail::dot_quote(edge.name)
             + ", kcolor=" + std::to_string(edge.color) + ", color="
             + palette[edge.color % std::size(palette)] + "];\n";
    }
    return out + "}\n";
  }

}  // namespace kgraph

#endif  // KGRAPH_SKELETON_HPP_
