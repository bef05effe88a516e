#ifndef KGRAPH_WORD_HPP_
#define KGRAPH_WORD_HPP_

// Words in the augmented graph E⁺ (edges and their formal inverses), in
// composition order, and free reduction modulo the cancellation relations.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "degree.hpp"
#include "error.hpp"
#include "skeleton.hpp"

namespace kgraph {

  //! An edge or its formal inverse; e⁻¹ has source and range interchanged.
  struct SignedEdge {
    EdgeId edge;
    bool   inverse = false;

    SignedEdge inverted() const noexcept {
      return {edge, !inverse};
    }
    std::uint32_t code() const noexcept {
      return (edge.value << 1) | (inverse ? 1u : 0u);
    }
    static SignedEdge from_code(std::uint32_t c) noexcept {
      return {EdgeId{c >> 1}, (c & 1u) != 0};
    }
    friend auto operator<=>(SignedEdge const&, SignedEdge const&) = default;
  };

  inline VertexId source(Skeleton const& sk, SignedEdge x) {
    return x.inverse ? sk.range(x.edge) : sk.source(x.edge);
  }
  inline VertexId range(Skeleton const& sk, SignedEdge x) {
    return x.inverse ? sk.source(x.edge) : sk.range(x.edge);
  }

  //! A path in E⁺. The anchor is the range (and, for the empty word, also
  //! the source); it is what tells empty words at different vertices apart.
  class GWord {
   public:
    GWord() = default;

    static GWord identity(VertexId v) {
      GWord w;
      w.range_ = w.source_ = v;
      return w;
    }

    GWord(Skeleton const& sk, VertexId anchor, std::vector<SignedEdge> letters)
        : letters_(std::move(letters)) {
      if (letters_.empty()) {
        range_ = source_ = anchor;
        return;
      }
      for (std::size_t i = 0; i + 1 < letters_.size(); ++i) {
        if (kgraph::source(sk, letters_[i]) != kgraph::range(sk, letters_[i + 1])) {
          throw error(errc::not_composable,
                      "letters " + std::to_string(i + 1) + " and "
                          + std::to_string(i + 2) + " do not compose");
        }
      }
      range_  = kgraph::range(sk, letters_.front());
      source_ = kgraph::source(sk, letters_.back());
      if (range_ != anchor) {
        throw error(errc::not_composable, "anchor does not match the range");
      }
    }

    //! A nonempty word; the anchor is read off the first letter.
    GWord(Skeleton const& sk, std::vector<SignedEdge> letters)
        : GWord(sk,
                letters.empty() ? VertexId{} : kgraph::range(sk, letters.front()),
                letters) {
      if (letters_.empty()) {
        throw error(errc::not_composable,
                    "an empty word needs an explicit anchor vertex");
      }
    }

    //! The positive word of an edge path.
    static GWord positive(Skeleton const& sk, EdgePath const& p) {
      std::vector<SignedEdge> letters;
      letters.reserve(p.size());
      for (EdgeId e : p.edges()) {
        letters.push_back({e, false});
      }
      return GWord(sk, p.range(), std::move(letters));
    }

    VertexId range() const noexcept {
      return range_;
    }
    VertexId source() const noexcept {
      return source_;
    }
    bool empty() const noexcept {
      return letters_.empty();
    }
    std::size_t size() const noexcept {
      return letters_.size();
    }
    std::vector<SignedEdge> const& letters() const noexcept {
      return letters_;
    }
    SignedEdge operator[](std::size_t i) const {
      return letters_[i];
    }

    bool is_reduced() const noexcept {
      for (std::size_t i = 0; i + 1 < letters_.size(); ++i) {
        if (letters_[i].inverted() == letters_[i + 1]) {
          return false;
        }
      }
      return true;
    }

    friend bool operator==(GWord const&, GWord const&) = default;

   private:
    VertexId                range_{};
    VertexId                source_{};
    std::vector<SignedEdge> letters_;
  };

  namespace detail {
    // Stack-based free reduction of a raw letter sequence.
    inline std::vector<SignedEdge> reduce_letters(std::span<SignedEdge const> in) {
      std::vector<SignedEdge> out;
      out.reserve(in.size());
      for (SignedEdge x : in) {
        if (!out.empty() && out.back() == x.inverted()) {
          out.pop_back();
        } else {
          out.push_back(x);
        }
      }
      return out;
    }
  }  // namespace detail

  //! The freely reduced representative; the endpoints are preserved, so a
  //! word that cancels completely becomes the empty word at its range.
  inline GWord free_reduce(Skeleton const& sk, GWord const& w) {
    return GWord(sk, w.range(), detail::reduce_letters(w.letters()));
  }

  inline GWord word_inverse(Skeleton const& sk, GWord const& w) {
    std::vector<SignedEdge> letters(w.letters().rbegin(), w.letters().rend());
    for (auto& x : letters) {
      x = x.inverted();
    }
    return GWord(sk, w.source(), std::move(letters));
  }

  //! w1 followed by w2 in composition order (no reduction); s(w1) = r(w2).
  inline GWord word_compose(Skeleton const& sk, GWord const& w1, GWord const& w2) {
    if (w1.source() != w2.range()) {
      throw error(errc::not_composable,
                  "s(w1) = " + sk.vertex_name(w1.source()) + " but r(w2) = "
                      + sk.vertex_name(w2.range()));
    }
    std::vector<SignedEdge> letters = w1.letters();
    letters.insert(letters.end(), w2.letters().begin(), w2.letters().end());
    return GWord(sk, w1.range(), std::move(letters));
  }

  //! The extended degree d′: the signed sum of the letters' basis vectors.
  inline DegreeZ gword_degree(Skeleton const& sk, GWord const& w) {
    DegreeZ d(sk.rank());
    for (SignedEdge x : w.letters()) {
      d[sk.color(x.edge)] += x.inverse ? -1 : 1;
    }
    return d;
  }

  inline std::string letter_to_string(Skeleton const& sk, SignedEdge x) {
    return sk.edge(x.edge).name + (x.inverse ? "^-1" : "");
  }

  //! Tokens separated by spaces; the empty word prints as 1.
  inline std::string word_to_string(Skeleton const& sk, GWord const& w) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    for (SignedEdge x : w.letters()) {
      if (!out.empty()) {
        out += ' ';
      }
      out += letter_to_string(sk, x);
    }
    return out;
  }

  //! Parses whitespace-separated tokens `name` or `name^-1`. An empty text
  //! needs the anchor vertex; for nonempty text the anchor is ignored.
  inline GWord parse_word(Skeleton const& sk, std::string_view text, VertexId anchor = {}) {
    std::istringstream      in{std::string(text)};
    std::vector<SignedEdge> letters;
    std::string             token;
    while (in >> token) {
      bool inverse = false;
      if (token.size() > 3 && token.ends_with("^-1")) {
        inverse = true;
        token.resize(token.size() - 3);
      }
      letters.push_back({sk.edge_id(token), inverse});
    }
    if (letters.empty()) {
      return GWord::identity(anchor);
    }
    return GWord(sk, std::move(letters));
  }

  struct WordHash {
    std::size_t operator()(std::vector<SignedEdge> const& w) const noexcept {
      std::size_t h = 1469598103934665603ull;
      for (auto x : w) {
        h ^= x.code() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      }
      return h;
    }
  };

}  // namespace kgraph

#endif  // KGRAPH_WORD_HPP_
