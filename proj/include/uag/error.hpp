// Exception types thrown by the uag library.

#ifndef UAG_ERROR_HPP_
#define UAG_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uag {

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Malformed DSL text. Line and column are 1-based.
  class ParseError : public Error {
   public:
    ParseError(std::string const& msg, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": "
                + msg),
          _line(line),
          _column(column) {}

    std::size_t line() const noexcept {
      return _line;
    }
    std::size_t column() const noexcept {
      return _column;
    }

   private:
    std::size_t _line;
    std::size_t _column;
  };

  // Structurally invalid input: arity mismatch, bad table, unknown symbol,
  // unmapped variable, ...
  class InputError : public Error {
   public:
    using Error::Error;
  };

  // A configurable resource bound was hit.
  class CapExceeded : public Error {
   public:
    CapExceeded(std::string const& what, std::size_t reached)
        : Error(what + " (reached " + std::to_string(reached) + ")"),
          _reached(reached) {}

    std::size_t reached() const noexcept {
      return _reached;
    }

   private:
    std::size_t _reached;
  };

  // An algebra expected to lie in the variety does not.
  class OutsideVariety : public Error {
   public:
    using Error::Error;
  };

}  // namespace uag

#endif  // UAG_ERROR_HPP_
