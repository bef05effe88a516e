#ifndef KGRAPH_SMITH_HPP_
#define KGRAPH_SMITH_HPP_

// Exact Smith normal form over Z, with the column transformation kept so
// that membership in the row lattice can be decided.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kgraph {

  using Integer = boost::multiprecision::cpp_int;

  class IntMatrix {
   public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t n) {
      IntMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
      }
      return m;
    }

    std::size_t rows() const noexcept {
      return rows_;
    }
    std::size_t cols() const noexcept {
      return cols_;
    }

    Integer& operator()(std::size_t i, std::size_t j) {
      return data_[i * cols_ + j];
    }
    Integer const& operator()(std::size_t i, std::size_t j) const {
      return data_[i * cols_ + j];
    }

    void swap_rows(std::size_t a, std::size_t b) {
      for (std::size_t j = 0; j < cols_; ++j) {
        std::swap((*this)(a, j), (*this)(b, j));
      }
    }
    void swap_cols(std::size_t a, std::size_t b) {
      for (std::size_t i = 0; i < rows_; ++i) {
        std::swap((*this)(i, a), (*this)(i, b));
      }
    }
    // row[dst] += k * row[src]
    void add_row(std::size_t dst, std::size_t src, Integer const& k) {
      for (std::size_t j = 0; j < cols_; ++j) {
        (*this)(dst, j) += k * (*this)(src, j);
      }
    }
    // col[dst] += k * col[src]
    void add_col(std::size_t dst, std::size_t src, Integer const& k) {
      for (std::size_t i = 0; i < rows_; ++i) {
        (*this)(i, dst) += k * (*this)(i, src);
      }
    }

    friend IntMatrix operator*(IntMatrix const& a, IntMatrix const& b) {
      IntMatrix c(a.rows_, b.cols_);
      for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
          if (a(i, k) == 0) {
            continue;
          }
          for (std::size_t j = 0; j < b.cols_; ++j) {
            c(i, j) += a(i, k) * b(k, j);
          }
        }
      }
      return c;
    }

    friend bool operator==(IntMatrix const&, IntMatrix const&) = default;

   private:
    std::size_t          rows_ = 0;
    std::size_t          cols_ = 0;
    std::vector<Integer> data_;
  };

  struct SmithForm {
    //! The diagonal d_1 | d_2 | ... of length min(rows, cols); nonnegative,
    //! with the zeros last.
    std::vector<Integer> diagonal;
    std::size_t          rank = 0;
    //! Unimodular V with U * M * V = diag for some unimodular U.
    IntMatrix column_transform;
  };

  //! Pivots are always chosen of least absolute value to limit entry growth.
  inline SmithForm smith_normal_form(IntMatrix m) {
    std::size_t const rows = m.rows();
    std::size_t const cols = m.cols();
    SmithForm         out;
    out.column_transform = IntMatrix::identity(cols);
    IntMatrix& v         = out.column_transform;

    auto swap_cols = [&](std::size_t a, std::size_t b) {
      m.swap_cols(a, b);
      v.swap_cols(a, b);
    };
    auto add_col = [&](std::size_t dst, std::size_t src, Integer const& k) {
      m.add_col(dst, src, k);
      v.add_col(dst, src, k);
    };

    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      bool        found = false;
      std::size_t pi = t, pj = t;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (m(i, j) != 0 && (!found || abs(m(i, j)) < abs(m(pi, pj)))) {
            found = true;
            pi    = i;
            pj    = j;
          }
        }
      }
      if (!found) {
        break;
      }
      m.swap_rows(t, pi);
      swap_cols(t, pj);

      while (true) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < rows; ++i) {
          if (m(i, t) != 0) {
            Integer q = m(i, t) / m(t, t);
            m.add_row(i, t, -q);
            if (m(i, t) != 0) {
              dirty = true;
            }
          }
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (m(t, j) != 0) {
            Integer q = m(t, j) / m(t, t);
            add_col(j, t, -q);
            if (m(t, j) != 0) {
              dirty = true;
            }
          }
        }
        if (dirty) {
          // A remainder survived: move the smallest one onto the diagonal.
          std::size_t bi = t, bj = t;
          for (std::size_t i = t + 1; i < rows; ++i) {
            if (m(i, t) != 0 && abs(m(i, t)) < abs(m(bi, bj))) {
              bi = i;
              bj = t;
            }
          }
          for (std::size_t j = t + 1; j < cols; ++j) {
            if (m(t, j) != 0 && abs(m(t, j)) < abs(m(bi, bj))) {
              bi = t;
              bj = j;
            }
          }
          m.swap_rows(t, bi);
          swap_cols(t, bj);
          continue;
        }
        // Row and column are clear; enforce divisibility of the block.
        bool fixed = true;
        for (std::size_t i = t + 1; i < rows && fixed; ++i) {
          for (std::size_t j = t + 1; j < cols; ++j) {
            if (m(i, j) % m(t, t) != 0) {
              m.add_row(t, i, 1);
              fixed = false;
              break;
            }
          }
        }
        if (fixed) {
          break;
        }
      }
      if (m(t, t) < 0) {
        m(t, t) = -m(t, t);  // a row operation; V is unaffected
      }
    }
    out.rank = t;
    out.diagonal.assign(std::min(rows, cols), Integer(0));
    for (std::size_t i = 0; i < t; ++i) {
      out.diagonal[i] = m(i, i);
    }
    return out;
  }

  //! The subgroup of Z^n spanned by the rows of a matrix, with canonical
  //! coset representatives of Z^n modulo it.
  class RowLattice {
   public:
    RowLattice() = default;
    explicit RowLattice(IntMatrix const& m) : dim_(m.cols()), smith_(smith_normal_form(m)) {}

    std::size_t dimension() const noexcept {
      return dim_;
    }

    //! Two vectors have the same key iff their difference lies in the lattice.
    std::vector<Integer> coset_key(std::vector<Integer> const& b) const {
      std::vector<Integer> c(dim_);
      for (std::size_t j = 0; j < dim_; ++j) {
        for (std::size_t i = 0; i < dim_; ++i) {
          if (b[i] != 0) {
            c[j] += b[i] * smith_.column_transform(i, j);
          }
        }
      }
      for (std::size_t j = 0; j < smith_.rank; ++j) {
        Integer const& d = smith_.diagonal[j];
        c[j] %= d;
        if (c[j] < 0) {
          c[j] += d;
        }
      }
      return c;
    }

    bool contains(std::vector<Integer> const& b) const {
      auto key = coset_key(b);
      return std::all_of(key.begin(), key.end(), [](Integer const& x) { return x == 0; });
    }

    SmithForm const& smith() const noexcept {
      return smith_;
    }

   private:
    std::size_t dim_ = 0;
    SmithForm   smith_;
  };

}  // namespace kgraph

#endif  // KGRAPH_SMITH_HPP_
