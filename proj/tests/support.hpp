#ifndef KGRAPH_TESTS_SUPPORT_HPP_
#define KGRAPH_TESTS_SUPPORT_HPP_

// Fixture loading and brute-force oracles. The oracles only use the raw
// skeleton and square list, never the library's normal forms or search.

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <kgraph/all.hpp>

namespace testing {

  using namespace kgraph;

  inline std::string fixture_path(std::string const& name) {
    return std::string(KGRAPH_FIXTURES) + "/" + name;
  }

  inline KGraphFile load_fixture(std::string const& name) {
    std::ifstream     in(fixture_path(name));
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_kgraph(buf.str());
  }

  inline KGraph load_kgraph(std::string const& name) {
    auto f = load_fixture(name);
    return KGraph(f.skeleton, f.squares);
  }

  inline GWord word(Skeleton const& sk, std::string const& text) {
    return parse_word(sk, text);
  }

  namespace oracle {

    using Path = std::vector<EdgeId>;

    // All edge paths with exactly `length` edges.
    inline std::vector<Path> all_paths(Skeleton const& sk, std::size_t length) {
      std::vector<Path> out;
      if (length == 0) {
        return out;
      }
      for (std::uint32_t e = 0; e < sk.num_edges(); ++e) {
        out.push_back({EdgeId{e}});
      }
      for (std::size_t n = 1; n < length; ++n) {
        std::vector<Path> next;
        for (auto const& p : out) {
          for (std::uint32_t e = 0; e < sk.num_edges(); ++e) {
            if (sk.range(EdgeId{e}) == sk.source(p.back())) {
              auto q = p;
              q.push_back(EdgeId{e});
              next.push_back(std::move(q));
            }
          }
        }
        out = std::move(next);
      }
      return out;
    }

    // Every path reachable from p by replacing an adjacent pair ef by gh,
    // for any listed square (ef, gh) read in either direction.
    inline std::set<Path> square_class(std::vector<Square> const& squares, Path const& p) {
      std::set<Path>    seen{p};
      std::vector<Path> stack{p};
      while (!stack.empty()) {
        Path w = stack.back();
        stack.pop_back();
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
          for (auto const& sq : squares) {
            for (int dir = 0; dir < 2; ++dir) {
              EdgeId a = dir == 0 ? sq.e : sq.g, b = dir == 0 ? sq.f : sq.h;
              EdgeId c = dir == 0 ? sq.g : sq.e, d = dir == 0 ? sq.h : sq.f;
              if (w[i] == a && w[i + 1] == b) {
                Path q = w;
                q[i]     = c;
                q[i + 1] = d;
                if (seen.insert(q).second) {
                  stack.push_back(q);
                }
              }
            }
          }
        }
      }
      return seen;
    }

    inline Degree degree_of(Skeleton const& sk, Path const& p) {
      Degree d(sk.rank());
      for (EdgeId e : p) {
        d[sk.color(e)] += 1;
      }
      return d;
    }

    // Free reduction cancelling the leftmost (or rightmost) pair first.
    inline std::vector<SignedEdge> reduce(std::vector<SignedEdge> w, bool leftmost) {
      while (true) {
        std::optional<std::size_t> at;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
          if (w[i + 1] == w[i].inverted()) {
            at = i;
            if (leftmost) {
              break;
            }
          }
        }
        if (!at) {
          return w;
        }
        w.erase(w.begin() + *at, w.begin() + *at + 2);
      }
    }

    // b follows from a by one elementary move: a square move, its inverted
    // form, or inserting/cancelling some x x^-1.
    inline bool elementary_step(SquareComplex const& sc, GWord const& a, GWord const& b) {
      if (a.range() != b.range() || a.source() != b.source()) {
        return false;
      }
      auto const& x = a.letters();
      auto const& y = b.letters();
      auto is_pair_removed = [](std::vector<SignedEdge> const& big, std::vector<SignedEdge> const& small) {
        for (std::size_t p = 0; p + 1 < big.size(); ++p) {
          if (big[p + 1] != big[p].inverted()) {
            continue;
          }
          std::vector<SignedEdge> cut = big;
          cut.erase(cut.begin() + p, cut.begin() + p + 2);
          if (cut == small) {
            return true;
          }
        }
        return false;
      };
      if (y.size() == x.size() + 2) {
        return is_pair_removed(y, x);
      }
      if (x.size() == y.size() + 2) {
        return is_pair_removed(x, y);
      }
      if (x.size() != y.size()) {
        return false;
      }
      for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if (!std::equal(x.begin(), x.begin() + i, y.begin())
            || !std::equal(x.begin() + i + 2, x.end(), y.begin() + i + 2)) {
          continue;
        }
        for (auto const& sq : sc.squares()) {
          for (int dir = 0; dir < 2; ++dir) {
            EdgeId e = dir == 0 ? sq.e : sq.g, f = dir == 0 ? sq.f : sq.h;
            EdgeId g = dir == 0 ? sq.g : sq.e, h = dir == 0 ? sq.h : sq.f;
            std::vector<SignedEdge> pos_from{{e, false}, {f, false}}, pos_to{{g, false}, {h, false}};
            std::vector<SignedEdge> neg_from{{f, true}, {e, true}}, neg_to{{h, true}, {g, true}};
            std::vector<SignedEdge> here(x.begin() + i, x.begin() + i + 2);
            std::vector<SignedEdge> there(y.begin() + i, y.begin() + i + 2);
            if ((here == pos_from && there == pos_to) || (here == neg_from && there == neg_to)) {
              return true;
            }
          }
        }
      }
      return false;
    }

    struct UnionFind {
      std::vector<std::size_t> parent;
      explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
      }
      std::size_t find(std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
      }
      void unite(std::size_t a, std::size_t b) {
        parent[find(a)] = find(b);
      }
    };

    // Fraction-free (Bareiss) determinant.
    inline Integer determinant(std::vector<std::vector<Integer>> a) {
      std::size_t const n = a.size();
      if (n == 0) {
        return 1;
      }
      Integer prev = 1;
      int     sign = 1;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
          std::size_t r = k + 1;
          while (r < n && a[r][k] == 0) {
            ++r;
          }
          if (r == n) {
            return 0;
          }
          std::swap(a[k], a[r]);
          sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
          for (std::size_t j = k + 1; j < n; ++j) {
            a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
          }
        }
        prev = a[k][k];
      }
      return sign * a[n - 1][n - 1];
    }

    inline void combinations(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
      std::vector<std::size_t> c(k);
      std::iota(c.begin(), c.end(), 0);
      if (k > n) {
        return;
      }
      while (true) {
        out.push_back(c);
        std::size_t i = k;
        while (i > 0 && c[i - 1] == n - k + i - 1) {
          --i;
        }
        if (i == 0) {
          return;
        }
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j) {
          c[j] = c[j - 1] + 1;
        }
      }
    }

    // Invariant factors from determinantal divisors: D_k = gcd of the k x k
    // minors and d_k = D_k / D_(k-1).
    inline std::vector<Integer> invariant_factors(IntMatrix const& m) {
      std::size_t const    r = std::min(m.rows(), m.cols());
      std::vector<Integer> out(r, Integer(0));
      Integer              previous = 1;
      for (std::size_t k = 1; k <= r; ++k) {
        std::vector<std::vector<std::size_t>> rows, cols;
        combinations(m.rows(), k, rows);
        combinations(m.cols(), k, cols);
        Integer g = 0;
        for (auto const& rs : rows) {
          for (auto const& cs : cols) {
            std::vector<std::vector<Integer>> minor(k, std::vector<Integer>(k));
            for (std::size_t i = 0; i < k; ++i) {
              for (std::size_t j = 0; j < k; ++j) {
                minor[i][j] = m(rs[i], cs[j]);
              }
            }
            g = gcd(g, abs(determinant(std::move(minor))));
          }
        }
        if (g == 0) {
          break;
        }
        out[k - 1] = g / previous;
        previous   = g;
      }
      return out;
    }

  }  // namespace oracle
}  // namespace testing

#endif  // KGRAPH_TESTS_SUPPORT_HPP_
