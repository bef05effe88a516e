#ifndef KGRAPH_PI1_HPP_
#define KGRAPH_PI1_HPP_

// Fundamental groups at a base vertex: spanning-tree presentations, Tietze
// simplification and abelian invariants.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "kgraph.hpp"
#include "skeleton.hpp"
#include "smith.hpp"
#include "word.hpp"

namespace kgraph {

  //! BFS tree of the component of `base`, edges scanned in (color, name)
  //! order. For every vertex v of the component it records the tree path
  //! from v to the base (source v, range base).
  class SpanningTree {
   public:
    SpanningTree(Skeleton const& sk, VertexId base) : base_(base) {
      if (base.value >= sk.num_vertices()) {
        throw error(errc::unknown_vertex, "base vertex");
      }
      auto const edges = sk.sorted_edges();
      in_tree_.assign(sk.num_edges(), false);
      std::vector<std::optional<std::vector<SignedEdge>>> paths(sk.num_vertices());
      paths[base.value] = std::vector<SignedEdge>{};
      std::deque<VertexId> queue{base};
      while (!queue.empty()) {
        VertexId y = queue.front();
        queue.pop_front();
        members_.push_back(y);
        for (EdgeId e : edges) {
          VertexId s = sk.source(e), r = sk.range(e);
          VertexId x;
          bool     inverse;
          if (r == y && !paths[s.value]) {
            x       = s;
            inverse = false;
          } else if (s == y && !paths[r.value]) {
            x       = r;
            inverse = true;
          } else {
            continue;
          }
          auto letters = *paths[y.value];
          letters.push_back({e, inverse});
          paths[x.value]   = std::move(letters);
          in_tree_[e.value] = true;
          tree_edges_.push_back(e);
          queue.push_back(x);
        }
      }
      for (VertexId v : members_) {
        to_base_.emplace(v.value, GWord(sk, base, *paths[v.value]));
      }
      std::sort(members_.begin(), members_.end());
    }

    VertexId base() const noexcept {
      return base_;
    }
    //! Vertices of the component, by id.
    std::vector<VertexId> const& vertices() const noexcept {
      return members_;
    }
    bool contains(VertexId v) const {
      return to_base_.contains(v.value);
    }
    //! Tree edges in discovery order.
    std::vector<EdgeId> const& edges() const noexcept {
      return tree_edges_;
    }
    bool is_tree_edge(EdgeId e) const {
      return in_tree_.at(e.value);
    }
    GWord const& path_to_base(VertexId v) const {
      auto it = to_base_.find(v.value);
      if (it == to_base_.end()) {
        throw error(errc::unknown_vertex, "vertex outside the tree's component");
      }
      return it->second;
    }

   private:
    VertexId                           base_;
    std::vector<VertexId>              members_;
    std::vector<EdgeId>                tree_edges_;
    std::vector<bool>                  in_tree_;
    std::map<std::uint32_t, GWord>     to_base_;
  };

  inline SpanningTree spanning_tree(Skeleton const& sk, VertexId base) {
    return SpanningTree(sk, base);
  }

  //! A finitely presented group. Letters are +i / -i for generator i
  //! (1-based) and its inverse.
  struct GroupPresentation {
    using Relator = std::vector<int>;

    std::vector<std::string> generators;
    std::vector<Relator>     relators;
  };

  inline std::string relator_to_string(GroupPresentation const& p,
                                       GroupPresentation::Relator const& r) {
    if (r.empty()) {
      return "1";
    }
    std::string out;
    for (int x : r) {
      if (!out.empty()) {
        out += ' ';
      }
      out += p.generators.at(static_cast<std::size_t>(std::abs(x)) - 1);
      if (x < 0) {
        out += "^-1";
      }
    }
    return out;
  }

  inline std::string to_string(GroupPresentation const& p) {
    std::string out = "<";
    for (std::size_t i = 0; i < p.generators.size(); ++i) {
      out += (i == 0 ? "" : ", ") + p.generators[i];
    }
    out += " |";
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      out += (i == 0 ? " " : ", ") + relator_to_string(p, p.relators[i]);
    }
    return out + ">";
  }

  namespace detail {
    inline GroupPresentation::Relator free_reduce(GroupPresentation::Relator const& r) {
      GroupPresentation::Relator out;
      for (int x : r) {
        if (!out.empty() && out.back() == -x) {
          out.pop_back();
        } else {
          out.push_back(x);
        }
      }
      return out;
    }

    inline GroupPresentation::Relator cyclic_reduce(GroupPresentation::Relator r) {
      r = free_reduce(r);
      std::size_t lo = 0, hi = r.size();
      while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
        ++lo;
        --hi;
      }
      return GroupPresentation::Relator(r.begin() + lo, r.begin() + hi);
    }

    inline GroupPresentation::Relator invert(GroupPresentation::Relator const& r) {
      GroupPresentation::Relator out(r.rbegin(), r.rend());
      for (int& x : out) {
        x = -x;
      }
      return out;
    }

    // Least rotation of r or r^-1; equal for relators that define the same
    // normal closure trivially.
    inline GroupPresentation::Relator cyclic_canonical(GroupPresentation::Relator const& r) {
      GroupPresentation::Relator best = r;
      for (auto const& w : {r, invert(r)}) {
        for (std::size_t k = 0; k < w.size(); ++k) {
          GroupPresentation::Relator rot(w.begin() + k, w.end());
          rot.insert(rot.end(), w.begin(), w.begin() + k);
          best = std::min(best, rot);
        }
      }
      return best;
    }

    inline bool relator_less(GroupPresentation::Relator const& a,
                             GroupPresentation::Relator const& b) {
      if (a.size() != b.size()) {
        return a.size() < b.size();
      }
      auto key = [](int x) { return std::pair(std::abs(x), x < 0); };
      return std::lexicographical_compare(
          a.begin(), a.end(), b.begin(), b.end(),
          [&key](int x, int y) { return key(x) < key(y); });
    }

    inline std::vector<GroupPresentation::Relator>
    rotations(GroupPresentation::Relator const& s) {
      std::vector<GroupPresentation::Relator> out;
      for (auto const& w : {s, invert(s)}) {
        for (std::size_t k = 0; k < w.size(); ++k) {
          GroupPresentation::Relator rot(w.begin() + k, w.end());
          rot.insert(rot.end(), w.begin(), w.begin() + k);
          out.push_back(std::move(rot));
        }
      }
      return out;
    }

    // If a cyclic rotation of r starts with more than half of a rotation of
    // another relator s, that piece is replaced by the inverse of the rest of
    // s. Every replacement shortens the total length, so this terminates.
    inline void shorten(std::vector<GroupPresentation::Relator>& rels) {
      using Relator = GroupPresentation::Relator;
      bool changed  = true;
      while (changed) {
        changed = false;
        std::vector<Relator> next;
        for (auto const& r : rels) {
          auto c = cyclic_reduce(r);
          if (!c.empty()) {
            next.push_back(std::move(c));
          }
        }
        std::stable_sort(next.begin(), next.end(),
                         [](Relator const& a, Relator const& b) { return a.size() < b.size(); });
        rels = std::move(next);
        for (std::size_t i = 0; i < rels.size() && !changed; ++i) {
          for (std::size_t j = 0; j < rels.size() && !changed; ++j) {
            if (i == j || rels[j].size() > rels[i].size()) {
              continue;
            }
            std::size_t const n = rels[j].size();
            for (auto const& rho : rotations(rels[j])) {
              for (std::size_t k = n / 2 + 1; k <= n && !changed; ++k) {
                Relator const& r = rels[i];
                for (std::size_t start = 0; start < r.size(); ++start) {
                  Relator rot(r.begin() + start, r.end());
                  rot.insert(rot.end(), r.begin(), r.begin() + start);
                  if (!std::equal(rho.begin(), rho.begin() + k, rot.begin())) {
                    continue;
                  }
                  Relator out = invert(Relator(rho.begin() + k, rho.end()));
                  out.insert(out.end(), rot.begin() + k, rot.end());
                  rels[i] = cyclic_reduce(out);
                  changed = true;
                  break;
                }
              }
              if (changed) {
                break;
              }
            }
          }
        }
      }
      std::erase_if(rels, [](Relator const& r) { return r.empty(); });
    }
  }  // namespace detail

  //! The presentation of π(Λ, base): one generator per non-tree edge of the
  //! component (in (color, name) order) and, for each square ef = gh of the
  //! component, the boundary relator e f h⁻¹ g⁻¹ with tree edges deleted.
  inline GroupPresentation group_presentation(SquareComplex const& sc,
                                              SpanningTree const&  tree) {
    Skeleton const&          sk = sc.skeleton();
    GroupPresentation        p;
    std::vector<int>         gen_of(sk.num_edges(), 0);
    for (EdgeId e : sk.sorted_edges()) {
      if (tree.contains(sk.range(e)) && !tree.is_tree_edge(e)) {
        p.generators.push_back(sk.edge(e).name);
        gen_of[e.value] = static_cast<int>(p.generators.size());
      }
    }
    auto letter = [&](GroupPresentation::Relator& r, EdgeId e, int sign) {
      if (gen_of[e.value] != 0) {
        r.push_back(sign * gen_of[e.value]);
      }
    };
    for (auto const& sq : sc.squares()) {
      if (!tree.contains(sk.range(sq.e))) {
        continue;
      }
      GroupPresentation::Relator r;
      letter(r, sq.e, 1);
      letter(r, sq.f, 1);
      letter(r, sq.h, -1);
      letter(r, sq.g, -1);
      p.relators.push_back(detail::free_reduce(r));
    }
    return p;
  }

  inline GroupPresentation group_presentation(SquareComplex const& sc, VertexId base) {
    return group_presentation(sc, SpanningTree(sc.skeleton(), base));
  }

  inline GroupPresentation group_presentation(KGraph const& kg, VertexId base) {
    return group_presentation(kg.complex(), base);
  }

  //! Simplifies by deleting trivial and repeated relators, shortening
  //! relators by pieces of shorter ones, and eliminating a generator g whenever a relator contains g exactly once, g = w then being
  //! substituted everywhere. Relators are scanned shortest first, then
  //! lexicographically; within a relator the last eligible generator goes.
  inline GroupPresentation tietze_simplify(GroupPresentation p) {
    using Relator = GroupPresentation::Relator;

    auto tidy = [&p]() {
      detail::shorten(p.relators);
      std::vector<Relator> kept;
      std::vector<Relator> seen;
      for (auto const& r : p.relators) {
        auto c = detail::cyclic_reduce(r);
        if (c.empty()) {
          continue;
        }
        auto canon = detail::cyclic_canonical(c);
        if (std::find(seen.begin(), seen.end(), canon) != seen.end()) {
          continue;
        }
        seen.push_back(canon);
        kept.push_back(std::move(c));
      }
      std::stable_sort(kept.begin(), kept.end(), detail::relator_less);
      p.relators = std::move(kept);
    };

    std::size_t const max_rounds = 10 * std::max<std::size_t>(p.generators.size(), 1);
    for (std::size_t round = 0; round < max_rounds; ++round) {
      tidy();
      bool eliminated = false;
      for (std::size_t ri = 0; ri < p.relators.size() && !eliminated; ++ri) {
        Relator const& r = p.relators[ri];
        std::map<int, int> count;
        for (int x : r) {
          ++count[std::abs(x)];
        }
        int gen = 0;
        for (auto [g, c] : count) {
          if (c == 1) {
            gen = std::max(gen, g);
          }
        }
        if (gen == 0) {
          continue;
        }
        // Rotate so that the letter comes first: x w = 1, hence x = w^-1.
        auto pos = static_cast<std::size_t>(
            std::find_if(r.begin(), r.end(), [gen](int x) { return std::abs(x) == gen; })
            - r.begin());
        Relator rest(r.begin() + pos + 1, r.end());
        rest.insert(rest.end(), r.begin(), r.begin() + pos);
        Relator value = r[pos] > 0 ? detail::invert(rest) : rest;

        std::vector<Relator> next;
        for (std::size_t k = 0; k < p.relators.size(); ++k) {
          if (k == ri) {
            continue;
          }
          Relator out;
          for (int x : p.relators[k]) {
            if (std::abs(x) != gen) {
              out.push_back(x);
            } else {
              auto const& sub = x > 0 ? value : detail::invert(value);
              out.insert(out.end(), sub.begin(), sub.end());
            }
          }
          next.push_back(std::move(out));
        }
        // Renumber the generators above the eliminated one.
        for (auto& rel : next) {
          for (int& x : rel) {
            int a = std::abs(x);
            if (a > gen) {
              x = x > 0 ? a - 1 : -(a - 1);
            }
          }
        }
        p.generators.erase(p.generators.begin() + (gen - 1));
        p.relators = std::move(next);
        eliminated = true;
      }
      if (!eliminated) {
        break;
      }
    }
    tidy();
    return p;
  }

  struct AbelianInvariants {
    std::size_t          free_rank = 0;
    std::vector<Integer> torsion;  // invariant factors > 1, each dividing the next
    friend bool operator==(AbelianInvariants const&, AbelianInvariants const&) = default;
  };

  //! "Z^2", "Z/2 x Z/6", "Z x Z/3", or "0" for the trivial group.
  inline std::string to_string(AbelianInvariants const& a) {
    std::string out;
    for (auto const& t : a.torsion) {
      out += (out.empty() ? "" : " x ") + std::string("Z/") + t.str();
    }
    if (a.free_rank > 0) {
      std::string z = a.free_rank == 1 ? "Z" : "Z^" + std::to_string(a.free_rank);
      out = out.empty() ? z : z + " x " + out;
    }
    return out.empty() ? "0" : out;
  }

  //! Rows are relators, columns generators, entries exponent sums.
  inline IntMatrix exponent_matrix(GroupPresentation const& p) {
    IntMatrix m(p.relators.size(), p.generators.size());
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      for (int x : p.relators[i]) {
        m(i, static_cast<std::size_t>(std::abs(x)) - 1) += x > 0 ? 1 : -1;
      }
    }
    return m;
  }

  inline AbelianInvariants abelianization(GroupPresentation const& p) {
    auto const        snf = smith_normal_form(exponent_matrix(p));
    AbelianInvariants out;
    out.free_rank = p.generators.size() - snf.rank;
    for (std::size_t i = 0; i < snf.rank; ++i) {
      if (snf.diagonal[i] > 1) {
        out.torsion.push_back(snf.diagonal[i]);
      }
    }
    return out;
  }

  //! Exponent sums of the non-tree edges of the tree's component, in
  //! (color, name) order. Tree edges contribute nothing, so this is the
  //! image of the tree-conjugated loop in the abelianized fundamental group
  //! before dividing out the relators.
  inline std::vector<Integer> abelian_image(Skeleton const&     sk,
                                            SpanningTree const& tree,
                                            GWord const&        w) {
    std::vector<Integer>     image;
    std::vector<std::size_t> column(sk.num_edges(), SIZE_MAX);
    for (EdgeId e : sk.sorted_edges()) {
      if (tree.contains(sk.range(e)) && !tree.is_tree_edge(e)) {
        column[e.value] = image.size();
        image.emplace_back(0);
      }
    }
    for (SignedEdge x : w.letters()) {
      if (column[x.edge.value] != SIZE_MAX) {
        image[column[x.edge.value]] += x.inverse ? -1 : 1;
      }
    }
    return image;
  }

}  // namespace kgraph

#endif  // KGRAPH_PI1_HPP_
