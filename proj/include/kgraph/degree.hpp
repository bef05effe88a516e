#ifndef KGRAPH_DEGREE_HPP_
#define KGRAPH_DEGREE_HPP_

#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace kgraph {

  //! A point of N^k (T unsigned) or Z^k (T signed). The length of the
  //! coordinate vector is the rank of the ambient structure.
  template <typename T>
  class BasicDegree {
   public:
    using value_type = T;

    BasicDegree() = default;
    explicit BasicDegree(std::size_t rank) : coords_(rank, T(0)) {}
    explicit BasicDegree(std::vector<T> coords) : coords_(std::move(coords)) {}
    BasicDegree(std::initializer_list<T> coords) : coords_(coords) {}

    static BasicDegree basis(std::size_t rank, std::size_t color) {
      BasicDegree d(rank);
      d.coords_.at(color - 1) = T(1);
      return d;
    }

    std::size_t rank() const noexcept {
      return coords_.size();
    }

    //! Colors are 1-based, matching the file format.
    T operator[](std::size_t color) const {
      return coords_.at(color - 1);
    }
    T& operator[](std::size_t color) {
      return coords_.at(color - 1);
    }

    std::vector<T> const& coords() const noexcept {
      return coords_;
    }

    bool is_zero() const noexcept {
      for (T c : coords_) {
        if (c != T(0)) {
          return false;
        }
      }
      return true;
    }

    T total() const noexcept {
      T t(0);
      for (T c : coords_) {
        t += c;
      }
      return t;
    }

    BasicDegree& operator+=(BasicDegree const& other) {
      check_rank(other);
      for (std::size_t i = 0; i < coords_.size(); ++i) {
        coords_[i] += other.coords_[i];
      }
      return *this;
    }

    BasicDegree& operator-=(BasicDegree const& other) {
      check_rank(other);
      for (std::size_t i = 0; i < coords_.size(); ++i) {
        coords_[i] -= other.coords_[i];
      }
      return *this;
    }

    friend BasicDegree operator+(BasicDegree lhs, BasicDegree const& rhs) {
      return lhs += rhs;
    }
    friend BasicDegree operator-(BasicDegree lhs, BasicDegree const& rhs) {
      return lhs -= rhs;
    }

    //! Componentwise partial order.
    bool le(BasicDegree const& other) const {
      check_rank(other);
      for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] > other.coords_[i]) {
          return false;
        }
      }
      return true;
    }

    // Lexicographic, used only for deterministic ordering.
    friend auto operator<=>(BasicDegree const&, BasicDegree const&) = default;
    friend bool operator==(BasicDegree const&, BasicDegree const&) = default;

    std::string to_string() const {
      std::string out = "(";
      for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i != 0) {
          out += ",";
        }
        out += std::to_string(coords_[i]);
      }
      return out + ")";
    }

   private:
    void check_rank(BasicDegree const& other) const {
      if (other.coords_.size() != coords_.size()) {
        throw error(errc::rank_mismatch,
                    "degrees of rank " + std::to_string(coords_.size())
                        + " and " + std::to_string(other.coords_.size()));
      }
    }

    std::vector<T> coords_;
  };

  using Degree  = BasicDegree<std::uint32_t>;
  using DegreeZ = BasicDegree<std::int64_t>;

  inline DegreeZ to_signed(Degree const& d) {
    std::vector<std::int64_t> c(d.coords().begin(), d.coords().end());
    return DegreeZ(std::move(c));
  }

  //! Parses "n1,...,nk".
  inline Degree parse_degree(std::string_view text) {
    std::vector<std::uint32_t> coords;
    std::size_t                pos = 0;
    while (pos <= text.size()) {
      auto comma = text.find(',', pos);
      if (comma == std::string_view::npos) {
        comma = text.size();
      }
      auto field = text.substr(pos, comma - pos);
      while (!field.empty() && field.front() == ' ') {
        field.remove_prefix(1);
      }
      while (!field.empty() && field.back() == ' ') {
        field.remove_suffix(1);
      }
      std::uint32_t value = 0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
      if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        throw error(errc::parse_error,
                    "bad degree \"" + std::string(text) + "\"");
      }
      coords.push_back(value);
      pos = comma + 1;
    }
    return Degree(std::move(coords));
  }

  //! Calls fn on every degree m with 0 <= m <= bound, in lexicographic order.
  template <typename Fn>
  void for_each_degree_below(Degree const& bound, Fn&& fn) {
    Degree m(bound.rank());
    while (true) {
      fn(static_cast<Degree const&>(m));
      std::size_t i = bound.rank();
      while (i > 0 && m[i] == bound[i]) {
        m[i] = 0;
        --i;
      }
      if (i == 0) {
        return;
      }
      ++m[i];
    }
  }

}  // namespace kgraph

#endif  // KGRAPH_DEGREE_HPP_
