#ifndef KGRAPH_ERROR_HPP_
#define KGRAPH_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kgraph {

  enum class errc {
    duplicate_name,
    unknown_vertex,
    unknown_edge,
    bad_color,
    same_color,
    not_composable,
    not_orthogonal,
    malformed_square,
    degree_too_large,
    rank_mismatch,
    invalid_kgraph,
    parse_error,
  };

  inline std::string_view to_string(errc code) noexcept {
    switch (code) {
      case errc::duplicate_name: return "DuplicateName";
      case errc::unknown_vertex: return "UnknownVertex";
      case errc::unknown_edge: return "UnknownEdge";
      case errc::bad_color: return "BadColor";
      case errc::same_color: return "SameColor";
      case errc::not_composable: return "NotComposable";
      case errc::not_orthogonal: return "NotOrthogonal";
      case errc::malformed_square: return "MalformedSquare";
      case errc::degree_too_large: return "DegreeTooLarge";
      case errc::rank_mismatch: return "RankMismatch";
      case errc::invalid_kgraph: return "InvalidKGraph";
      case errc::parse_error: return "ParseError";
    }
    return "Unknown";
  }

  //! Every failure raised by the library carries one of the codes above.
  class error : public std::runtime_error {
   public:
    error(errc code, std::string const& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what),
          code_(code) {}

    errc code() const noexcept {
      return code_;
    }

   private:
    errc code_;
  };

  //! Raised by the text format reader; line and column are 1-based.
  class parse_error : public error {
   public:
    parse_error(std::size_t line, std::size_t column, std::string const& msg)
        : error(errc::parse_error,
                "line " + std::to_string(line) + ", column "
                    + std::to_string(column) + ": " + msg),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept {
      return line_;
    }
    std::size_t column() const noexcept {
      return column_;
    }

   private:
    std::size_t line_;
    std::size_t column_;
  };

}  // namespace kgraph

#endif  // KGRAPH_ERROR_HPP_
