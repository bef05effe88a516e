#ifndef KGRAPH_GROUPOID_HPP_
#define KGRAPH_GROUPOID_HPP_

// The fundamental groupoid G(Λ), computed as the path category of E⁺
// modulo the cancellation relations and the commuting squares.
//
// Equality of words is semi-decided. Distinctness is certified by
// invariants (endpoints, extended degree, abelianized image, free reduction
// when no square touches the component). Equality is certified by a
// derivation: a chain of words in which consecutive words differ by a single
// relator substitution (replace a piece u of a square's boundary loop uv by
// v⁻¹) or by free reduction. Every derivation can be expanded into
// elementary moves (one square move, one inverted square move, one
// insertion or one cancellation of x x⁻¹) and replayed.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "degree.hpp"
#include "kgraph.hpp"
#include "pi1.hpp"
#include "skeleton.hpp"
#include "smith.hpp"
#include "word.hpp"

namespace kgraph {

  //! Limits for the rewriting search. A max_length of 0 means
  //! 2 * max(|w1|, |w2|) + 4 on the freely reduced inputs.
  struct SearchBudget {
    std::size_t max_length = 0;
    std::size_t max_nodes  = 1'000'000;
  };

  struct EqualityVerdict {
    enum class Kind { equal, distinct, unknown };

    Kind kind = Kind::unknown;
    //! Equal: w1, ..., w2, consecutive words one rewriting step apart.
    std::vector<GWord> derivation;
    //! Distinct: the separating invariant and its two values.
    std::string invariant;
    std::string first_value;
    std::string second_value;
    //! Words generated by the search.
    std::size_t nodes = 0;

    bool is_equal() const noexcept {
      return kind == Kind::equal;
    }
    bool is_distinct() const noexcept {
      return kind == Kind::distinct;
    }
    bool is_unknown() const noexcept {
      return kind == Kind::unknown;
    }
    //! Number of rewriting steps in the derivation.
    std::size_t steps() const noexcept {
      return derivation.empty() ? 0 : derivation.size() - 1;
    }
  };

  inline std::string_view to_string(EqualityVerdict::Kind k) noexcept {
    switch (k) {
      case EqualityVerdict::Kind::equal: return "Equal";
      case EqualityVerdict::Kind::distinct: return "Distinct";
      case EqualityVerdict::Kind::unknown: return "Unknown";
    }
    return "";
  }

  //! "a = d a d^-1 = d e^-1 c = d b e^-1 = b"
  inline std::string derivation_to_string(Skeleton const& sk, std::vector<GWord> const& chain) {
    std::string out;
    for (auto const& w : chain) {
      out += (out.empty() ? "" : " = ") + word_to_string(sk, w);
    }
    return out;
  }

  inline GWord canonical_functor(KGraph const& kg, NormalForm const& lambda) {
    return GWord::positive(kg.skeleton(), lambda.path(kg.skeleton()));
  }

  namespace detail {
    using Letters = std::vector<SignedEdge>;

    inline Letters inverse_letters(Letters const& w) {
      Letters out(w.rbegin(), w.rend());
      for (auto& x : out) {
        x = x.inverted();
      }
      return out;
    }

    inline Letters splice(Letters const& w, std::size_t pos, std::size_t len, Letters const& with) {
      Letters out(w.begin(), w.begin() + pos);
      out.insert(out.end(), with.begin(), with.end());
      out.insert(out.end(), w.begin() + pos + len, w.end());
      return out;
    }

    // The vertex between letters pos-1 and pos; `anchor` is the range.
    inline VertexId vertex_at(Skeleton const& sk, VertexId anchor, Letters const& w, std::size_t pos) {
      return pos == 0 ? anchor : source(sk, w[pos - 1]);
    }

    // All words one elementary move away. If `alphabet` is given, insertions
    // are restricted to its letters.
    inline std::vector<Letters> elementary_neighbors(SquareComplex const&   sc,
                                                     VertexId               anchor,
                                                     Letters const&         w,
                                                     std::vector<SignedEdge> const* alphabet = nullptr) {
      Skeleton const&      sk = sc.skeleton();
      std::vector<Letters> out;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        SignedEdge x = w[i], y = w[i + 1];
        if (!x.inverse && !y.inverse) {
          for (auto [g, h] : sc.partners(x.edge, y.edge)) {
            out.push_back(splice(w, i, 2, {{g, false}, {h, false}}));
          }
        } else if (x.inverse && y.inverse) {
          // x y = f⁻¹ e⁻¹ = (e f)⁻¹
          for (auto [g, h] : sc.partners(y.edge, x.edge)) {
            out.push_back(splice(w, i, 2, {{h, true}, {g, true}}));
          }
        }
        if (y == x.inverted()) {
          out.push_back(splice(w, i, 2, {}));
        }
      }
      std::vector<SignedEdge> all;
      if (alphabet == nullptr) {
        for (std::uint32_t e = 0; e < sk.num_edges(); ++e) {
          all.push_back({EdgeId{e}, false});
          all.push_back({EdgeId{e}, true});
        }
        alphabet = &all;
      }
      for (std::size_t pos = 0; pos <= w.size(); ++pos) {
        VertexId v = vertex_at(sk, anchor, w, pos);
        for (SignedEdge x : *alphabet) {
          if (range(sk, x) == v) {
            out.push_back(splice(w, pos, 0, {x, x.inverted()}));
          }
        }
      }
      return out;
    }

    // Cancels the leftmost adjacent inverse pair, one step at a time.
    inline std::vector<Letters> cancellation_chain(Letters w) {
      std::vector<Letters> chain{w};
      bool                 again = true;
      while (again) {
        again = false;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
          if (w[i + 1] == w[i].inverted()) {
            w     = splice(w, i, 2, {});
            chain.push_back(w);
            again = true;
            break;
          }
        }
      }
      return chain;
    }

    //! Replace `lhs` by `rhs`, where lhs * rhs⁻¹ is a rotation of a square's
    //! boundary loop or of its inverse. An empty lhs inserts the loop rhs.
    struct Rule {
      Letters     lhs;
      Letters     rhs;
      std::size_t square;
    };

    inline Letters boundary(Square const& sq) {
      return {{sq.e, false}, {sq.f, false}, {sq.h, true}, {sq.g, true}};
    }
  }  // namespace detail

  //! All words one elementary move from w: a square move ef -> gh, the
  //! inverted move f⁻¹e⁻¹ -> h⁻¹g⁻¹, the insertion of some x x⁻¹, or the
  //! cancellation of an adjacent x x⁻¹. Sorted, without repeats.
  inline std::vector<GWord> square_neighbors(SquareComplex const& sc, GWord const& w) {
    auto raw = detail::elementary_neighbors(sc, w.range(), w.letters());
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    std::vector<GWord> out;
    out.reserve(raw.size());
    for (auto& letters : raw) {
      out.emplace_back(sc.skeleton(), w.range(), std::move(letters));
    }
    return out;
  }

  //! Decides, or semi-decides, equality in G(Λ) for the words of one
  //! square complex. Holds caches, so use one instance per thread.
  class GroupoidSolver {
   public:
    explicit GroupoidSolver(SquareComplex const& sc) : sc_(&sc) {
      Skeleton const& sk = sc.skeleton();
      for (std::size_t s = 0; s < sc.squares().size(); ++s) {
        auto const loop = detail::boundary(sc.squares()[s]);
        for (auto const& base : {loop, detail::inverse_letters(loop)}) {
          for (std::size_t r = 0; r < base.size(); ++r) {
            detail::Letters rho(base.begin() + r, base.end());
            rho.insert(rho.end(), base.begin(), base.begin() + r);
            for (std::size_t split = 0; split <= rho.size(); ++split) {
              detail::Rule rule;
              rule.lhs.assign(rho.begin(), rho.begin() + split);
              rule.rhs    = detail::inverse_letters(detail::Letters(rho.begin() + split, rho.end()));
              rule.square = s;
              if (detail::reduce_letters(rule.lhs) == rule.lhs
                  && detail::reduce_letters(rule.rhs) == rule.rhs) {
                add_rule(std::move(rule));
              }
            }
          }
        }
      }
      for (auto const& component : connected_components(sk)) {
        Component c{SpanningTree(sk, component.front()), RowLattice(), false};
        auto      p = group_presentation(sc, c.tree);
        for (auto const& sq : sc.squares()) {
          if (c.tree.contains(sk.range(sq.e))) {
            c.has_squares = true;
          }
        }
        c.lattice = RowLattice(exponent_matrix(p));
        for (VertexId v : component) {
          component_of_[v.value] = components_.size();
        }
        components_.push_back(std::move(c));
      }
    }

    SquareComplex const& complex() const noexcept {
      return *sc_;
    }

    //! The first invariant (endpoints, extended degree, abelianized image,
    //! free reduction in a square-free component) that separates the words.
    std::optional<EqualityVerdict> separate(GWord const& w1, GWord const& w2) const {
      Skeleton const& sk = sc_->skeleton();
      auto distinct = [](std::string inv, std::string a, std::string b) {
        EqualityVerdict v;
        v.kind         = EqualityVerdict::Kind::distinct;
        v.invariant    = std::move(inv);
        v.first_value  = std::move(a);
        v.second_value = std::move(b);
        return v;
      };
      if (w1.range() != w2.range() || w1.source() != w2.source()) {
        auto ends = [&sk](GWord const& w) {
          return sk.vertex_name(w.range()) + " <- " + sk.vertex_name(w.source());
        };
        return distinct("endpoints", ends(w1), ends(w2));
      }
      auto d1 = gword_degree(sk, w1);
      auto d2 = gword_degree(sk, w2);
      if (d1 != d2) {
        return distinct("degree", d1.to_string(), d2.to_string());
      }
      auto const& c  = components_.at(component_of_.at(w1.range().value));
      auto        k1 = c.lattice.coset_key(abelian_image(sk, c.tree, w1));
      auto        k2 = c.lattice.coset_key(abelian_image(sk, c.tree, w2));
      if (k1 != k2) {
        return distinct("abelianization", key_string(k1), key_string(k2));
      }
      if (!c.has_squares) {
        auto r1 = free_reduce(sk, w1);
        auto r2 = free_reduce(sk, w2);
        if (r1 != r2) {
          return distinct("free reduction", word_to_string(sk, r1), word_to_string(sk, r2));
        }
      }
      return std::nullopt;
    }

    //! A key that is equal for G-equal words: endpoints, extended degree,
    //! abelianized image and, in square-free components, the reduced word.
    std::string invariant_key(GWord const& w) const {
      Skeleton const& sk  = sc_->skeleton();
      auto const&     c   = components_.at(component_of_.at(w.range().value));
      std::string     key = std::to_string(w.range().value) + "/"
                        + std::to_string(w.source().value) + "/"
                        + gword_degree(sk, w).to_string() + "/"
                        + key_string(c.lattice.coset_key(abelian_image(sk, c.tree, w)));
      if (!c.has_squares) {
        key += "/" + word_to_string(sk, free_reduce(sk, w));
      }
      return key;
    }

    EqualityVerdict equal(GWord const& w1, GWord const& w2, SearchBudget budget = {}) {
      if (auto v = separate(w1, w2)) {
        return *v;
      }
      Skeleton const& sk = sc_->skeleton();
      auto            r1 = free_reduce(sk, w1);
      auto            r2 = free_reduce(sk, w2);

      EqualityVerdict verdict;
      std::vector<GWord> middle;
      if (r1 == r2) {
        middle = {r1};
      } else if (auto chain = congruence(r1, r2, budget)) {
        middle = std::move(*chain);
      } else {
        auto found = search(r1, r2, budget, verdict.nodes);
        if (!found) {
          verdict.kind = EqualityVerdict::Kind::unknown;
          return verdict;
        }
        middle = std::move(*found);
      }
      verdict.kind = EqualityVerdict::Kind::equal;
      if (w1 != middle.front()) {
        verdict.derivation.push_back(w1);
      }
      verdict.derivation.insert(verdict.derivation.end(), middle.begin(), middle.end());
      if (w2 != verdict.derivation.back()) {
        verdict.derivation.push_back(w2);
      }
      return verdict;
    }

    //! Expands one derivation step a -> b into elementary moves, starting
    //! with a and ending with b; nullopt if the step is not justified.
    std::optional<std::vector<GWord>> expand_step(GWord const& a, GWord const& b) {
      Skeleton const& sk = sc_->skeleton();
      if (a.range() != b.range() || a.source() != b.source()) {
        return std::nullopt;
      }
      VertexId const anchor = a.range();
      auto           chain  = expand_forward(anchor, a.letters(), b.letters());
      if (!chain) {
        chain = expand_forward(anchor, b.letters(), a.letters());
        if (chain) {
          std::reverse(chain->begin(), chain->end());
        }
      }
      if (!chain) {
        return std::nullopt;
      }
      std::vector<GWord> out;
      for (auto& letters : *chain) {
        out.emplace_back(sk, anchor, std::move(letters));
      }
      return out;
    }

    //! Expands a whole derivation and checks every elementary step against
    //! square_neighbors.
    bool replay(std::vector<GWord> const& derivation,
                std::vector<GWord>*       elementary = nullptr) {
      if (derivation.empty()) {
        return false;
      }
      std::vector<GWord> full{derivation.front()};
      for (std::size_t i = 0; i + 1 < derivation.size(); ++i) {
        auto chain = expand_step(derivation[i], derivation[i + 1]);
        if (!chain) {
          return false;
        }
        full.insert(full.end(), chain->begin() + 1, chain->end());
      }
      for (std::size_t i = 0; i + 1 < full.size(); ++i) {
        auto next = square_neighbors(*sc_, full[i]);
        if (!std::binary_search(next.begin(), next.end(), full[i + 1], word_less)) {
          return false;
        }
      }
      if (elementary != nullptr) {
        *elementary = std::move(full);
      }
      return true;
    }

   private:
    struct Component {
      SpanningTree tree;
      RowLattice   lattice;
      bool         has_squares;
    };

    static bool word_less(GWord const& a, GWord const& b) {
      return a.letters() < b.letters();
    }

    static std::string key_string(std::vector<Integer> const& key) {
      std::string out = "[";
      for (std::size_t i = 0; i < key.size(); ++i) {
        out += (i == 0 ? "" : ",") + key[i].str();
      }
      return out + "]";
    }

    void add_rule(detail::Rule rule) {
      auto& bucket = rule.lhs.empty() ? insertions_ : rules_[rule.lhs.front().code()];
      for (auto const& r : bucket) {
        if (r.lhs == rule.lhs && r.rhs == rule.rhs) {
          return;
        }
      }
      bucket.push_back(std::move(rule));
    }

    // Calls fn(pos, rule) for every rule applicable to w.
    template <typename Fn>
    void for_each_application(VertexId anchor, detail::Letters const& w, bool insertions, Fn&& fn) const {
      Skeleton const& sk = sc_->skeleton();
      for (std::size_t pos = 0; pos < w.size(); ++pos) {
        auto it = rules_.find(w[pos].code());
        if (it == rules_.end()) {
          continue;
        }
        for (auto const& rule : it->second) {
          std::size_t const len = rule.lhs.size();
          if (pos + len <= w.size() && std::equal(rule.lhs.begin(), rule.lhs.end(), w.begin() + pos)) {
            fn(pos, rule);
          }
        }
      }
      if (insertions) {
        for (std::size_t pos = 0; pos <= w.size(); ++pos) {
          VertexId v = detail::vertex_at(sk, anchor, w, pos);
          for (auto const& rule : insertions_) {
            if (range(sk, rule.rhs.front()) == v) {
              fn(pos, rule);
            }
          }
        }
      }
    }

    // Elementary moves taking a loop to the empty word, using only letters
    // of one square. Memoized per loop.
    std::vector<detail::Letters> const& loop_chain(VertexId anchor, detail::Letters const& loop, std::size_t square) {
      auto it = loop_chains_.find(loop);
      if (it != loop_chains_.end()) {
        return it->second;
      }
      auto const&             sq = sc_->squares()[square];
      std::vector<SignedEdge> alphabet;
      for (EdgeId e : {sq.e, sq.f, sq.g, sq.h}) {
        alphabet.push_back({e, false});
        alphabet.push_back({e, true});
      }
      std::map<detail::Letters, detail::Letters> parent;
      std::deque<detail::Letters>                queue{loop};
      parent.emplace(loop, detail::Letters{});
      while (!queue.empty()) {
        auto w = queue.front();
        queue.pop_front();
        if (w.empty()) {
          std::vector<detail::Letters> chain{w};
          while (chain.back() != loop) {
            chain.push_back(parent.at(chain.back()));
          }
          std::reverse(chain.begin(), chain.end());
          return loop_chains_.emplace(loop, std::move(chain)).first->second;
        }
        for (auto& next : detail::elementary_neighbors(*sc_, anchor, w, &alphabet)) {
          if (next.size() <= loop.size() + 2 && !parent.contains(next)) {
            parent.emplace(next, w);
            queue.push_back(std::move(next));
          }
        }
      }
      throw std::logic_error("boundary loop does not reduce by elementary moves");
    }

    // Elementary moves for a -> a[0,pos) + rule.rhs + a[pos+|lhs|, ...).
    std::vector<detail::Letters> expand_rule(VertexId anchor, detail::Letters const& a,
                                             std::size_t pos, detail::Rule const& rule) {
      std::vector<detail::Letters> chain{a};
      detail::Letters              w = a;
      // Grow rhs rhs⁻¹ in place by nested insertions.
      for (std::size_t k = 0; k < rule.rhs.size(); ++k) {
        w = detail::splice(w, pos + k, 0, {rule.rhs[k], rule.rhs[k].inverted()});
        chain.push_back(w);
      }
      // rhs⁻¹ lhs is a closed loop: remove it.
      std::size_t const start = pos + rule.rhs.size();
      detail::Letters   loop  = detail::inverse_letters(rule.rhs);
      loop.insert(loop.end(), rule.lhs.begin(), rule.lhs.end());
      VertexId const loop_anchor = detail::vertex_at(sc_->skeleton(), anchor, w, start);
      auto const&    local       = loop_chain(loop_anchor, loop, rule.square);
      for (std::size_t j = 1; j < local.size(); ++j) {
        chain.push_back(detail::splice(w, start, loop.size(), local[j]));
      }
      return chain;
    }

    // a -> b where b is free-reduction equivalent to a, or to one rule
    // application on a.
    std::optional<std::vector<detail::Letters>> expand_forward(VertexId anchor,
                                                               detail::Letters const& a,
                                                               detail::Letters const& b) {
      auto const target = detail::reduce_letters(b);
      auto       finish = [&](std::vector<detail::Letters> chain) {
        auto down = detail::cancellation_chain(chain.back());
        chain.insert(chain.end(), down.begin() + 1, down.end());
        auto up = detail::cancellation_chain(b);
        chain.insert(chain.end(), up.rbegin() + 1, up.rend());
        return chain;
      };
      if (detail::reduce_letters(a) == target) {
        return finish({a});
      }
      std::optional<std::vector<detail::Letters>> result;
      for (bool insertions : {false, true}) {
        for_each_application(anchor, a, insertions, [&](std::size_t pos, detail::Rule const& rule) {
          if (result) {
            return;
          }
          auto c = detail::splice(a, pos, rule.lhs.size(), rule.rhs);
          if (detail::reduce_letters(c) == target) {
            result = finish(expand_rule(anchor, a, pos, rule));
          }
        });
        if (result) {
          break;
        }
      }
      return result;
    }

    // Positionwise: if the words have equal length and each pair of letters
    // is G-equal, chain the letter derivations in context.
    std::optional<std::vector<GWord>> congruence(GWord const& r1, GWord const& r2, SearchBudget budget) {
      Skeleton const& sk = sc_->skeleton();
      if (r1.size() < 2 || r1.size() != r2.size()) {
        return std::nullopt;
      }
      std::vector<std::vector<GWord>> pieces(r1.size());
      for (std::size_t i = 0; i < r1.size(); ++i) {
        SignedEdge x = r1[i], y = r2[i];
        if (x == y) {
          continue;
        }
        if (x.inverse != y.inverse || source(sk, x) != source(sk, y) || range(sk, x) != range(sk, y)) {
          return std::nullopt;
        }
        auto key = std::make_pair(x.edge.value, y.edge.value);
        auto it  = letter_cache_.find(key);
        if (it == letter_cache_.end()) {
          GWord a(sk, {{x.edge, false}});
          GWord b(sk, {{y.edge, false}});
          it = letter_cache_.emplace(key, equal(a, b, budget)).first;
        }
        if (!it->second.is_equal()) {
          return std::nullopt;
        }
        for (auto const& w : it->second.derivation) {
          pieces[i].push_back(x.inverse ? word_inverse(sk, w) : w);
        }
      }
      std::vector<GWord> chain{r1};
      detail::Letters    current = r1.letters();
      for (std::size_t i = 0; i < r1.size(); ++i) {
        if (pieces[i].empty()) {
          continue;
        }
        detail::Letters prefix(r2.letters().begin(), r2.letters().begin() + i);
        detail::Letters suffix(r1.letters().begin() + i + 1, r1.letters().end());
        for (std::size_t j = 1; j < pieces[i].size(); ++j) {
          detail::Letters w = prefix;
          w.insert(w.end(), pieces[i][j].letters().begin(), pieces[i][j].letters().end());
          w.insert(w.end(), suffix.begin(), suffix.end());
          chain.emplace_back(sk, r1.range(), std::move(w));
        }
      }
      return chain;
    }

    // Bidirectional breadth-first search over freely reduced words, first
    // without and then with pure loop insertions.
    std::optional<std::vector<GWord>> search(GWord const& r1, GWord const& r2,
                                             SearchBudget budget, std::size_t& nodes) {
      std::size_t const cap = budget.max_length != 0
                                  ? budget.max_length
                                  : 2 * std::max(r1.size(), r2.size()) + 4;
      nodes = 0;
      for (bool insertions : {false, true}) {
        bool exhausted = false;
        auto found     = bfs(r1, r2, cap, budget.max_nodes, insertions, nodes, exhausted);
        if (found || !exhausted) {
          return found;
        }
      }
      return std::nullopt;
    }

    std::optional<std::vector<GWord>> bfs(GWord const& r1, GWord const& r2, std::size_t cap,
                                          std::size_t max_nodes, bool insertions,
                                          std::size_t& nodes, bool& exhausted) {
      using detail::Letters;
      Skeleton const& sk     = sc_->skeleton();
      VertexId const  anchor = r1.range();

      struct Side {
        std::unordered_map<Letters, Letters, WordHash> parent;
        std::vector<Letters>                           frontier;
      };
      Side sides[2];
      sides[0].parent.emplace(r1.letters(), Letters{});
      sides[0].frontier.push_back(r1.letters());
      sides[1].parent.emplace(r2.letters(), Letters{});
      sides[1].frontier.push_back(r2.letters());

      auto trace = [](Side const& side, Letters w, Letters const& root) {
        std::vector<Letters> chain{w};
        while (w != root) {
          w = side.parent.at(w);
          chain.push_back(w);
        }
        return chain;
      };

      while (!sides[0].frontier.empty() && !sides[1].frontier.empty()) {
        int const s = sides[0].frontier.size() <= sides[1].frontier.size() ? 0 : 1;
        Side&     me    = sides[s];
        Side&     other = sides[1 - s];
        std::vector<Letters> next;
        std::optional<std::pair<Letters, Letters>> meet;  // (node on my side, parent)
        for (auto const& w : me.frontier) {
          for_each_application(anchor, w, insertions, [&](std::size_t pos, detail::Rule const& rule) {
            if (meet || nodes >= max_nodes) {
              return;
            }
            auto c = detail::reduce_letters(detail::splice(w, pos, rule.lhs.size(), rule.rhs));
            if (c.size() > cap || me.parent.contains(c)) {
              return;
            }
            ++nodes;
            me.parent.emplace(c, w);
            if (other.parent.contains(c)) {
              meet.emplace(c, w);
              return;
            }
            next.push_back(std::move(c));
          });
          if (meet) {
            auto mine   = trace(me, meet->first, s == 0 ? r1.letters() : r2.letters());
            auto theirs = trace(other, meet->first, s == 0 ? r2.letters() : r1.letters());
            // mine: meet ... my root; theirs: meet ... their root.
            std::vector<Letters> path;
            if (s == 0) {
              path.assign(mine.rbegin(), mine.rend());
              path.insert(path.end(), theirs.begin() + 1, theirs.end());
            } else {
              path.assign(theirs.rbegin(), theirs.rend());
              path.insert(path.end(), mine.begin() + 1, mine.end());
            }
            std::vector<GWord> out;
            for (auto& letters : path) {
              out.emplace_back(sk, anchor, std::move(letters));
            }
            return out;
          }
          if (nodes >= max_nodes) {
            exhausted = false;
            return std::nullopt;
          }
        }
        me.frontier = std::move(next);
      }
      exhausted = true;
      return std::nullopt;
    }

    SquareComplex const*                                       sc_;
    std::unordered_map<std::uint32_t, std::vector<detail::Rule>> rules_;
    std::vector<detail::Rule>                                  insertions_;
    std::vector<Component>                                     components_;
    std::map<std::uint32_t, std::size_t>                       component_of_;
    std::map<detail::Letters, std::vector<detail::Letters>>    loop_chains_;
    std::map<std::pair<std::uint32_t, std::uint32_t>, EqualityVerdict> letter_cache_;
  };

  //! One-shot form of GroupoidSolver::equal.
  inline EqualityVerdict equal_in_g(SquareComplex const& sc, GWord const& w1, GWord const& w2,
                                    SearchBudget budget = {}) {
    return GroupoidSolver(sc).equal(w1, w2, budget);
  }

  inline bool replay_derivation(SquareComplex const& sc, std::vector<GWord> const& derivation) {
    return GroupoidSolver(sc).replay(derivation);
  }

  namespace detail {
    // i-equality classes of the elements of Λ up to a degree bound. Each
    // element is compared with the representatives of the classes in its
    // (range, source, degree, invariant key) bucket only.
    struct Classes {
      std::vector<NormalForm>  elements;
      std::vector<std::size_t> root;  // union-find parent
      std::size_t              searches = 0;
      std::vector<std::pair<std::size_t, std::size_t>> unknown;
      std::optional<std::pair<std::size_t, std::size_t>> first_equal;
      EqualityVerdict                                    first_equal_verdict;
      std::vector<std::vector<GWord>>                    derivations;

      std::size_t find(std::size_t x) {
        while (root[x] != x) {
          root[x] = root[root[x]];
          x       = root[x];
        }
        return x;
      }
    };

    inline Classes i_classes(KGraph const& kg, GroupoidSolver& solver, Degree const& bound,
                             SearchBudget budget) {
      Classes out;
      out.elements = elements_up_to(kg, bound);
      out.root.resize(out.elements.size());
      std::iota(out.root.begin(), out.root.end(), 0);
      std::map<std::string, std::vector<std::size_t>> buckets;
      for (std::size_t i = 0; i < out.elements.size(); ++i) {
        auto key = solver.invariant_key(canonical_functor(kg, out.elements[i]));
        key += "|" + out.elements[i].degree().to_string();
        buckets[key].push_back(i);
      }
      for (auto const& [key, members] : buckets) {
        std::vector<std::size_t> reps;
        for (std::size_t x : members) {
          bool merged = false;
          for (std::size_t rep : reps) {
            ++out.searches;
            auto v = solver.equal(canonical_functor(kg, out.elements[rep]),
                                  canonical_functor(kg, out.elements[x]), budget);
            if (v.is_equal()) {
              out.root[x] = rep;
              out.derivations.push_back(v.derivation);
              if (!out.first_equal) {
                out.first_equal         = std::make_pair(rep, x);
                out.first_equal_verdict = std::move(v);
              }
              merged = true;
              break;
            }
            if (v.is_unknown()) {
              out.unknown.emplace_back(rep, x);
            }
          }
          if (!merged) {
            reps.push_back(x);
          }
        }
      }
      return out;
    }
  }  // namespace detail

  struct InjectivityReport {
    enum class Summary { injective_within_bound, non_injective, inconclusive };

    Summary     summary = Summary::injective_within_bound;
    std::size_t elements = 0;
    std::size_t searches = 0;
    //! Non-injective: the first pair found with i(first) = i(second).
    std::optional<std::pair<NormalForm, NormalForm>> witness;
    EqualityVerdict                                  witness_verdict;
    //! Pairs whose verdict stayed Unknown.
    std::vector<std::pair<NormalForm, NormalForm>> unknown;
    //! Derivations of every Equal verdict found.
    std::vector<std::vector<GWord>> derivations;
  };

  inline std::string_view to_string(InjectivityReport::Summary s) noexcept {
    switch (s) {
      case InjectivityReport::Summary::injective_within_bound: return "InjectiveWithinBound";
      case InjectivityReport::Summary::non_injective: return "NonInjective";
      case InjectivityReport::Summary::inconclusive: return "Inconclusive";
    }
    return "";
  }

  //! Looks for distinct elements of degree <= bound with the same image in
  //! G(Λ). Pairs separated by an invariant are never searched.
  inline InjectivityReport injectivity_report(KGraph const& kg, Degree const& bound,
                                              SearchBudget budget = {}) {
    GroupoidSolver    solver(kg.complex());
    auto              classes = detail::i_classes(kg, solver, bound, budget);
    InjectivityReport out;
    out.elements    = classes.elements.size();
    out.searches    = classes.searches;
    out.derivations = std::move(classes.derivations);
    for (auto [a, b] : classes.unknown) {
      out.unknown.emplace_back(classes.elements[a], classes.elements[b]);
    }
    if (classes.first_equal) {
      out.summary = InjectivityReport::Summary::non_injective;
      out.witness.emplace(classes.elements[classes.first_equal->first],
                          classes.elements[classes.first_equal->second]);
      out.witness_verdict = std::move(classes.first_equal_verdict);
    } else if (!out.unknown.empty()) {
      out.summary = InjectivityReport::Summary::inconclusive;
    }
    return out;
  }

  struct LambdaBarReport {
    enum class Result { holds_within_bound, counterexample, inconclusive };

    Result result = Result::holds_within_bound;
    //! The i-equality classes with more than one element.
    std::vector<std::vector<NormalForm>> classes;
    std::size_t                          unknown_verdicts = 0;
    std::vector<std::pair<NormalForm, NormalForm>> unknown;
    //! Counterexample: alpha = gamma delta, beta = epsilon zeta with
    //! i(alpha) = i(beta), d(gamma) = d(epsilon) and i(gamma) != i(epsilon)
    //! (or the same for the second factors).
    struct Witness {
      NormalForm alpha, beta, gamma, delta, epsilon, zeta;
    };
    std::optional<Witness> witness;
    std::vector<std::vector<GWord>> derivations;
  };

  inline std::string_view to_string(LambdaBarReport::Result r) noexcept {
    switch (r) {
      case LambdaBarReport::Result::holds_within_bound: return "HoldsWithinBound";
      case LambdaBarReport::Result::counterexample: return "Counterexample";
      case LambdaBarReport::Result::inconclusive: return "Inconclusive";
    }
    return "";
  }

  //! Probes whether the image of Λ in G(Λ), with the restricted degree
  //! map, still factorizes uniquely. Evidence within the bound only.
  inline LambdaBarReport lambda_bar_check(KGraph const& kg, Degree const& bound,
                                          SearchBudget budget = {}) {
    GroupoidSolver  solver(kg.complex());
    auto            classes = detail::i_classes(kg, solver, bound, budget);
    LambdaBarReport out;
    out.derivations = classes.derivations;
    for (auto [a, b] : classes.unknown) {
      out.unknown.emplace_back(classes.elements[a], classes.elements[b]);
    }

    std::map<std::size_t, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < classes.elements.size(); ++i) {
      members[classes.find(i)].push_back(i);
    }
    auto index_of = [&classes](NormalForm const& nf) {
      auto it = std::find(classes.elements.begin(), classes.elements.end(), nf);
      return static_cast<std::size_t>(it - classes.elements.begin());
    };
    std::set<std::pair<std::size_t, std::size_t>> probed;
    auto differ = [&](NormalForm const& x, NormalForm const& y) {
      std::size_t a = index_of(x), b = index_of(y);
      if (classes.find(a) == classes.find(b)) {
        return false;
      }
      auto v = solver.equal(canonical_functor(kg, x), canonical_functor(kg, y), budget);
      if (v.is_unknown() && probed.insert(std::minmax(a, b)).second) {
        out.unknown.emplace_back(x, y);
      }
      return v.is_distinct();
    };

    for (auto const& [root, group] : members) {
      if (group.size() < 2) {
        continue;
      }
      std::vector<NormalForm> cls;
      for (std::size_t i : group) {
        cls.push_back(classes.elements[i]);
      }
      out.classes.push_back(cls);
      for (std::size_t p = 0; p < group.size() && !out.witness; ++p) {
        for (std::size_t q = p + 1; q < group.size() && !out.witness; ++q) {
          NormalForm const& alpha = classes.elements[group[p]];
          NormalForm const& beta  = classes.elements[group[q]];
          for_each_degree_below(alpha.degree(), [&](Degree const& m) {
            if (out.witness || m.is_zero() || m == alpha.degree()) {
              return;
            }
            auto [gamma, delta]  = factorize(kg, alpha, m);
            auto [epsilon, zeta] = factorize(kg, beta, m);
            if (differ(gamma, epsilon) || differ(delta, zeta)) {
              out.witness.emplace(LambdaBarReport::Witness{alpha, beta, gamma, delta, epsilon, zeta});
            }
          });
        }
      }
    }
    out.unknown_verdicts = out.unknown.size();
    if (out.witness) {
      out.result = LambdaBarReport::Result::counterexample;
    } else if (!out.unknown.empty()) {
      out.result = LambdaBarReport::Result::inconclusive;
    }
    return out;
  }

}  // namespace kgraph

#endif  // KGRAPH_GROUPOID_HPP_
