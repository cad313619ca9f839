#include "mcg/notation.hpp"

#include <cctype>
#include <limits>

namespace mcg {

void Cursor::skip_ws() {
  while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
}

bool Cursor::at_end() {
  skip_ws();
  return pos_ >= text_.size();
}

char Cursor::peek() {
  skip_ws();
  return pos_ < text_.size() ? text_[pos_] : '\0';
}

bool Cursor::accept(char c) {
  if (at_end() || peek() != c) return false;
  ++pos_;
  return true;
}

void Cursor::expect(char c) {
  if (!accept(c)) fail(std::string("expected '") + c + "'");
}

bool Cursor::accept(std::string_view token) {
  skip_ws();
  if (text_.substr(pos_, token.size()) != token) return false;
  pos_ += token.size();
  return true;
}

Int Cursor::integer() {
  skip_ws();
  const std::size_t start = pos_;
  bool negative = false;
  if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) negative = text_[pos_++] == '-';
  if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
    pos_ = start;
    fail("expected integer");
  }
  Int value = 0;
  while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
    if (value > (std::numeric_limits<Int>::max() - 9) / 10) {
      pos_ = start;
      fail("integer out of range");
    }
    value = value * 10 + (text_[pos_++] - '0');
  }
  return negative ? -value : value;
}

std::string Cursor::current_token() {
  skip_ws();
  std::size_t end = pos_;
  if (end < text_.size()) {
    if (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '-') {
      ++end;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
    } else {
      ++end;
      while (end < text_.size() && (static_cast<unsigned char>(text_[end]) & 0xC0) == 0x80) ++end;
    }
  }
  return std::string(text_.substr(pos_, end - pos_));
}

void Cursor::fail(const std::string& what) {
  std::string token = current_token();
  throw ParseError(what, pos_, token);
}

}  // namespace mcg
