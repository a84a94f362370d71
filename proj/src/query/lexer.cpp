#include "kgforge/query/lexer.hpp"

#include <cctype>

#include "kgforge/common/error.hpp"

namespace kgforge::query {

std::string_view token_kind_name(TokenKind kind) noexcept {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::String: return "string";
    case TokenKind::Number: return "number";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::Colon: return "':'";
    case TokenKind::Dot: return "'.'";
    case TokenKind::Comma: return "','";
    case TokenKind::Dash: return "'-'";
    case TokenKind::Arrow: return "'->'";
    case TokenKind::Lt: return "'<'";
    case TokenKind::Le: return "'<='";
    case TokenKind::Gt: return "'>'";
    case TokenKind::Ge: return "'>='";
    case TokenKind::Eq: return "'='";
    case TokenKind::Ne: return "'<>'";
    case TokenKind::End: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](TokenKind k, std::size_t start, std::size_t len) {
    out.push_back({k, std::string(s.substr(start, len)), start});
    i = start + len;
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({TokenKind::Identifier, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i + 1 < s.size() && s[i] == '.' && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      }
      out.push_back({TokenKind::Number, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (c == '"' || c == '\'' || c == '`') {
      std::string value;
      ++i;
      bool closed = false;
      while (i < s.size()) {
        if (s[i] == '\\' && c != '`' && i + 1 < s.size()) {
          const char e = s[i + 1];
          value.push_back(e == 'n' ? '\n' : e == 't' ? '\t' : e);
          i += 2;
          continue;
        }
        if (s[i] == c) {
          closed = true;
          ++i;
          break;
        }
        value.push_back(s[i++]);
      }
      if (!closed) throw SyntaxError(start, {c == '`' ? "closing '`'" : "closing quote"}, "");
      Token t{c == '`' ? TokenKind::Identifier : TokenKind::String, std::move(value), start};
      t.quoted = c == '`';
      out.push_back(std::move(t));
      continue;
    }
    switch (c) {
      case '(': push(TokenKind::LParen, start, 1); continue;
      case ')': push(TokenKind::RParen, start, 1); continue;
      case '[': push(TokenKind::LBracket, start, 1); continue;
      case ']': push(TokenKind::RBracket, start, 1); continue;
      case ':': push(TokenKind::Colon, start, 1); continue;
      case '.': push(TokenKind::Dot, start, 1); continue;
      case ',': push(TokenKind::Comma, start, 1); continue;
      case '=': push(TokenKind::Eq, start, 1); continue;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') push(TokenKind::Arrow, start, 2);
        else push(TokenKind::Dash, start, 1);
        continue;
      case '<':
        if (i + 1 < s.size() && s[i + 1] == '=') push(TokenKind::Le, start, 2);
        else if (i + 1 < s.size() && s[i + 1] == '>') push(TokenKind::Ne, start, 2);
        else push(TokenKind::Lt, start, 1);
        continue;
      case '>':
        if (i + 1 < s.size() && s[i + 1] == '=') push(TokenKind::Ge, start, 2);
        else push(TokenKind::Gt, start, 1);
        continue;
      default:
        throw SyntaxError(start, {"token"}, std::string(1, c));
    }
  }
  out.push_back({TokenKind::End, "", s.size()});
  return out;
}

}  // namespace kgforge::query
