#ifndef MCG_NOTATION_HPP
#define MCG_NOTATION_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "mcg/arith.hpp"

namespace mcg {

/// Thrown by every text parser. `offset` is the byte offset of the offending token.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t offset, std::string token)
      : std::invalid_argument(what + " at byte " + std::to_string(offset) +
                              (token.empty() ? std::string(" (end of input)") : " near '" + token + "'")),
        offset_(offset),
        token_(std::move(token)) {}

  std::size_t offset() const { return offset_; }
  const std::string& token() const { return token_; }

 private:
  std::size_t offset_;
  std::string token_;
};

/// Minimal cursor over the tuple notation. Whitespace is skipped before every token.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  std::size_t pos() const { return pos_; }
  void skip_ws();
  bool at_end();
  char peek();
  bool accept(char c);
  void expect(char c);
  /// Accepts a literal multi-byte token (e.g. the UTF-8 middle dot).
  bool accept(std::string_view token);
  Int integer();
  [[noreturn]] void fail(const std::string& what);

 private:
  std::string current_token();

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace mcg

#endif  // MCG_NOTATION_HPP
