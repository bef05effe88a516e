#ifndef KGRAPH_IO_HPP_
#define KGRAPH_IO_HPP_

// The .kg text format and the 2-complex JSON export.
//
//   rank 2
//   vertex v
//   edge a : v <- v color 2      # name : range <- source
//   square a d = d a             # a∘d = d∘a, composition order
//
// Edges are written range <- source so that a word reads like a chain of
// arrows: in "a d" the edge d is traversed first and a second.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "kgraph.hpp"
#include "skeleton.hpp"

namespace kgraph {

  struct KGraphFile {
    Skeleton            skeleton{1};
    std::vector<Square> squares;

    SquareComplex complex() const {
      return SquareComplex(skeleton, squares);
    }
  };

  namespace detail {
    struct Token {
      std::string text;
      std::size_t column;  // 1-based
    };

    inline std::vector<Token> tokenize(std::string_view line) {
      std::vector<Token> out;
      std::size_t        i = 0;
      auto space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
      while (i < line.size() && line[i] != '#') {
        if (space(line[i])) {
          ++i;
          continue;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != '#' && !space(line[j])) {
          ++j;
        }
        out.push_back({std::string(line.substr(i, j - i)), i + 1});
        i = j;
      }
      return out;
    }

    inline bool valid_name(std::string_view s) {
      static constexpr std::string_view reserved[] = {
          "rank", "vertex", "edge", "square", "color", ":", "<-", "="};
      return !s.empty() && !s.ends_with("^-1")
             && std::find(std::begin(reserved), std::end(reserved), s) == std::end(reserved);
    }

    class LineParser {
     public:
      LineParser(std::size_t line, std::vector<Token> tokens)
          : line_(line), tokens_(std::move(tokens)) {}

      std::size_t size() const noexcept {
        return tokens_.size();
      }
      std::string const& operator[](std::size_t i) const {
        return tokens_[i].text;
      }

      parse_error fail(std::size_t index, std::string const& msg) const {
        std::size_t col = index < tokens_.size()
                              ? tokens_[index].column
                              : tokens_.back().column + tokens_.back().text.size();
        return parse_error(line_, col, msg);
      }

      void arity(std::size_t n, std::string_view shape) const {
        if (tokens_.size() != n) {
          throw fail(std::min(n, tokens_.size()), "expected `" + std::string(shape) + "`");
        }
      }
      void keyword(std::size_t i, std::string_view word) const {
        if (tokens_[i].text != word) {
          throw fail(i, "expected `" + std::string(word) + "`, found `" + tokens_[i].text + "`");
        }
      }
      std::string const& name(std::size_t i) const {
        if (!valid_name(tokens_[i].text)) {
          throw fail(i, "invalid name `" + tokens_[i].text + "`");
        }
        return tokens_[i].text;
      }
      std::size_t number(std::size_t i) const {
        auto const& s = tokens_[i].text;
        if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string::npos) {
          throw fail(i, "expected a number, found `" + s + "`");
        }
        return std::stoul(s);
      }

     private:
      std::size_t        line_;
      std::vector<Token> tokens_;
    };
  }  // namespace detail

  //! Parses the .kg format. Every problem, including a duplicate name, an
  //! unknown vertex or edge, a bad color or a malformed square, is a
  //! parse_error located at the offending token.
  inline KGraphFile parse_kgraph(std::string_view text) {
    KGraphFile  file;
    bool        have_rank = false;
    std::size_t line_no   = 0;
    std::size_t start     = 0;
    while (start <= text.size()) {
      std::size_t end = std::min(text.find('\n', start), text.size());
      ++line_no;
      detail::LineParser p(line_no, detail::tokenize(text.substr(start, end - start)));
      start = end + 1;
      if (p.size() == 0) {
        continue;
      }
      auto at = [&p](std::size_t i, auto&& fn) {
        try {
          return fn();
        } catch (parse_error const&) {
          throw;
        } catch (error const& e) {
          throw p.fail(i, e.what());
        }
      };

      if (p[0] == "rank") {
        p.arity(2, "rank <k>");
        if (have_rank) {
          throw p.fail(0, "rank declared twice");
        }
        std::size_t k = p.number(1);
        if (k == 0) {
          throw p.fail(1, "rank must be at least 1");
        }
        file.skeleton = Skeleton(k);
        have_rank     = true;
      } else if (!have_rank) {
        throw p.fail(0, "expected `rank <k>` first");
      } else if (p[0] == "vertex") {
        p.arity(2, "vertex <name>");
        at(1, [&] { return file.skeleton.add_vertex(p.name(1)); });
      } else if (p[0] == "edge") {
        p.arity(8, "edge <name> : <range> <- <source> color <i>");
        p.keyword(2, ":");
        p.keyword(4, "<-");
        p.keyword(6, "color");
        auto const& sk = file.skeleton;
        at(3, [&] { return sk.vertex(p[3]); });
        at(5, [&] { return sk.vertex(p[5]); });
        std::size_t color = p.number(7);
        at(7, [&] { return file.skeleton.add_edge(p.name(1), p[3], p[5], color); });
      } else if (p[0] == "square") {
        p.arity(6, "square <e> <f> = <g> <h>");
        p.keyword(3, "=");
        auto edge = [&](std::size_t i) { return at(i, [&] { return file.skeleton.edge_id(p[i]); }); };
        Square sq{edge(1), edge(2), edge(4), edge(5)};
        at(1, [&] {
          check_square(file.skeleton, sq);
          return 0;
        });
        file.squares.push_back(sq);
      } else {
        throw p.fail(0, "unknown declaration `" + p[0] + "`");
      }
    }
    if (!have_rank) {
      throw parse_error(1, 1, "missing `rank <k>`");
    }
    return file;
  }

  //! The .kg text of a skeleton and squares, in declaration order.
  inline std::string print_kgraph(Skeleton const& sk, std::vector<Square> const& squares) {
    std::string out = "rank " + std::to_string(sk.rank()) + "\n";
    for (VertexId v : sk.vertices()) {
      out += "vertex " + sk.vertex_name(v) + "\n";
    }
    for (std::uint32_t i = 0; i < sk.num_edges(); ++i) {
      auto const& e = sk.edge(EdgeId{i});
      out += "edge " + e.name + " : " + sk.vertex_name(e.range) + " <- "
             + sk.vertex_name(e.source) + " color " + std::to_string(e.color) + "\n";
    }
    for (auto const& sq : squares) {
      out += "square " + square_to_string(sk, sq) + "\n";
    }
    return out;
  }

  inline std::string print_kgraph(KGraphFile const& f) {
    return print_kgraph(f.skeleton, f.squares);
  }

  //! The 2-complex: vertices sorted by name, edges by (color, name), and one
  //! 2-cell per square attached along e f h^-1 g^-1.
  inline nlohmann::ordered_json export_complex(SquareComplex const& sc) {
    Skeleton const&        sk = sc.skeleton();
    nlohmann::ordered_json out;
    out["rank"]     = sk.rank();
    out["vertices"] = nlohmann::ordered_json::array();
    for (VertexId v : sk.sorted_vertices()) {
      out["vertices"].push_back(sk.vertex_name(v));
    }
    out["edges"] = nlohmann::ordered_json::array();
    for (EdgeId e : sk.sorted_edges()) {
      auto const& edge = sk.edge(e);
      out["edges"].push_back({{"name", edge.name},
                              {"source", sk.vertex_name(edge.source)},
                              {"range", sk.vertex_name(edge.range)},
                              {"color", edge.color}});
    }
    out["cells"] = nlohmann::ordered_json::array();
    for (auto const& sq : sc.squares()) {
      auto name = [&sk](EdgeId e) { return sk.edge(e).name; };
      out["cells"].push_back(
          {{"square", square_to_string(sk, sq)},
           {"boundary", {name(sq.e), name(sq.f), name(sq.h) + "^-1", name(sq.g) + "^-1"}}});
    }
    return out;
  }

}  // namespace kgraph

#endif  // KGRAPH_IO_HPP_
