#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace kgforge::query {

enum class TokenKind {
  Identifier,  // bare or `backtick-quoted`
  String,
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Colon,
  Dot,
  Comma,
  Dash,
  Arrow,  // ->
  Lt,
  Le,
  Gt,
  Ge,
  Eq,
  Ne,
  End,
};

struct Token {
  TokenKind kind;
  std::string text;  // decoded value for strings / quoted identifiers
  std::size_t offset;
  bool quoted = false;  // backtick identifier: never a keyword
};

std::string_view token_kind_name(TokenKind kind) noexcept;

// Throws SyntaxError on unterminated strings or stray characters.
std::vector<Token> tokenize(std::string_view text);

}  // namespace kgforge::query
