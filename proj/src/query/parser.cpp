#include "kgforge/query/parser.hpp"

#include <algorithm>
#include <map>

#include "kgforge/common/error.hpp"
#include "kgforge/common/text.hpp"
#include "kgforge/query/lexer.hpp"

namespace kgforge::query {
namespace {

constexpr std::string_view kReserved[] = {"match", "where", "return", "as", "and", "in", "order", "by", "limit"};

enum class VarKind { Node, Edge };

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  QuerySpec parse_query() {
    QuerySpec q;
    expect_keyword("MATCH");
    parse_pattern(q);
    if (accept_keyword("WHERE")) q.where = parse_expr();
    expect_keyword("RETURN");
    q.projections.push_back(parse_projection());
    while (accept(TokenKind::Comma)) q.projections.push_back(parse_projection());
    if (accept_keyword("ORDER")) {
      expect_keyword("BY");
      const Token& t = peek();
      std::string key = expect_identifier("ORDER BY key");
      if (accept(TokenKind::Dot)) key += "." + expect_identifier("property name");
      const bool known = std::any_of(q.projections.begin(), q.projections.end(),
                                     [&](const Projection& p) { return p.column == key; });
      if (!known) throw Error(Errc::UnboundVariable, "ORDER BY key '" + key + "' at offset " + std::to_string(t.offset) +
                                                         " is not a returned column");
      q.order_by = key;
    }
    if (accept_keyword("LIMIT")) {
      const Token& t = peek();
      if (t.kind != TokenKind::Number || t.text.find('.') != std::string::npos) fail({"non-negative integer"});
      auto v = text::parse_int(t.text);
      if (!v) fail({"non-negative integer"});
      q.limit = static_cast<std::uint64_t>(*v);
      ++pos_;
    }
    expect(TokenKind::End, "end of query");
    return q;
  }

  ExprPtr parse_standalone_filter(const std::vector<std::string>& node_vars, const std::vector<std::string>& edge_vars) {
    for (const auto& v : node_vars) vars_[v] = VarKind::Node;
    for (const auto& v : edge_vars) vars_[v] = VarKind::Edge;
    auto e = parse_expr();
    expect(TokenKind::End, "end of expression");
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw SyntaxError(t.offset, std::move(expected), t.kind == TokenKind::End ? "" : t.text);
  }

  bool is_keyword(const Token& t, std::string_view kw) const {
    return t.kind == TokenKind::Identifier && !t.quoted && text::to_lower(t.text) == text::to_lower(kw);
  }

  bool accept_keyword(std::string_view kw) {
    if (!is_keyword(peek(), kw)) return false;
    ++pos_;
    return true;
  }

  void expect_keyword(std::string_view kw) {
    if (!accept_keyword(kw)) fail({std::string(kw)});
  }

  bool accept(TokenKind k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  void expect(TokenKind k, std::string_view what) {
    if (!accept(k)) fail({std::string(what)});
  }

  std::string expect_identifier(std::string_view what) {
    const Token& t = peek();
    if (t.kind != TokenKind::Identifier) fail({std::string(what)});
    ++pos_;
    return t.text;
  }

  std::string expect_variable_name() {
    const Token& t = peek();
    if (t.kind != TokenKind::Identifier) fail({"variable"});
    if (!t.quoted) {
      const auto lowered = text::to_lower(t.text);
      for (auto r : kReserved)
        if (lowered == r) fail({"variable"});
    }
    ++pos_;
    return t.text;
  }

  void bind(const std::string& name, VarKind kind, std::size_t offset) {
    if (!vars_.emplace(name, kind).second) throw SyntaxError(offset, {"unique variable name"}, name);
  }

  VarKind require_var(const std::string& name, std::size_t offset) const {
    auto it = vars_.find(name);
    if (it == vars_.end())
      throw Error(Errc::UnboundVariable, "'" + name + "' at offset " + std::to_string(offset));
    return it->second;
  }

  void parse_node_step(QuerySpec& q) {
    expect(TokenKind::LParen, "'('");
    const std::size_t at = peek().offset;
    NodeStep step;
    step.var = expect_variable_name();
    bind(step.var, VarKind::Node, at);
    if (accept(TokenKind::Colon)) step.label = expect_identifier("label");
    expect(TokenKind::RParen, "')'");
    q.nodes.push_back(std::move(step));
  }

  void parse_pattern(QuerySpec& q) {
    parse_node_step(q);
    while (peek().kind == TokenKind::Dash) {
      if (q.nodes.size() == 3) fail({"WHERE", "RETURN"});
      ++pos_;
      expect(TokenKind::LBracket, "'['");
      EdgeStep e;
      if (peek().kind == TokenKind::Identifier) {
        const std::size_t at = peek().offset;
        e.var = expect_variable_name();
        bind(*e.var, VarKind::Edge, at);
      }
      if (accept(TokenKind::Colon)) e.predicate = expect_identifier("predicate");
      expect(TokenKind::RBracket, "']'");
      expect(TokenKind::Arrow, "'->'");
      q.edges.push_back(std::move(e));
      parse_node_step(q);
    }
  }

  PropertyRef parse_property_ref() {
    const std::size_t at = peek().offset;
    PropertyRef ref;
    ref.var = expect_identifier("variable");
    require_var(ref.var, at);
    expect(TokenKind::Dot, "'.'");
    ref.property = expect_identifier("property name");
    return ref;
  }

  Intersect parse_intersect_args() {
    expect(TokenKind::LParen, "'('");
    Intersect x;
    x.left = parse_property_ref();
    expect(TokenKind::Comma, "','");
    x.right = parse_property_ref();
    expect(TokenKind::RParen, "')'");
    return x;
  }

  std::optional<NumericFn> peek_numeric_fn() const {
    if (peek(1).kind != TokenKind::LParen) return std::nullopt;
    if (is_keyword(peek(), "u_fraction")) return NumericFn::UFraction;
    if (is_keyword(peek(), "symbol_fraction")) return NumericFn::SymbolFraction;
    if (is_keyword(peek(), "SIZE")) return NumericFn::Size;
    return std::nullopt;
  }

  NumericCall parse_numeric_call(NumericFn fn) {
    ++pos_;  // function name
    expect(TokenKind::LParen, "'('");
    NumericCall call{fn, {}};
    switch (fn) {
      case NumericFn::UFraction:
        call.args.emplace_back(parse_property_ref());
        break;
      case NumericFn::SymbolFraction: {
        call.args.emplace_back(parse_property_ref());
        expect(TokenKind::Comma, "','");
        const Token& t = peek();
        if (t.kind != TokenKind::String || t.text.size() != 1) fail({"single-character string"});
        call.args.emplace_back(t.text);
        ++pos_;
        break;
      }
      case NumericFn::Size:
        if (is_keyword(peek(), "intersect") && peek(1).kind == TokenKind::LParen) {
          ++pos_;
          call.args.emplace_back(parse_intersect_args());
        } else {
          call.args.emplace_back(parse_property_ref());
        }
        break;
    }
    expect(TokenKind::RParen, "')'");
    return call;
  }

  ExprPtr parse_condition() {
    const Token& t = peek();
    if (t.kind == TokenKind::String) {
      ++pos_;
      expect_keyword("IN");
      MembershipExpr m{t.text, parse_property_ref()};
      return std::make_shared<const Expr>(Expr{std::move(m)});
    }
    if (auto fn = peek_numeric_fn()) {
      NumericCall call = parse_numeric_call(*fn);
      CmpOp op;
      switch (peek().kind) {
        case TokenKind::Lt: op = CmpOp::Lt; break;
        case TokenKind::Le: op = CmpOp::Le; break;
        case TokenKind::Gt: op = CmpOp::Gt; break;
        case TokenKind::Ge: op = CmpOp::Ge; break;
        case TokenKind::Eq: op = CmpOp::Eq; break;
        case TokenKind::Ne: op = CmpOp::Ne; break;
        default: fail({"'<'", "'<='", "'>'", "'>='", "'='", "'<>'"});
      }
      ++pos_;
      const bool negative = accept(TokenKind::Dash);
      if (peek().kind != TokenKind::Number) fail({"number"});
      double rhs = *text::parse_double(peek().text);
      ++pos_;
      CompareExpr c{std::move(call), op, negative ? -rhs : rhs};
      return std::make_shared<const Expr>(Expr{std::move(c)});
    }
    fail({"string", "u_fraction", "symbol_fraction", "SIZE"});
  }

  ExprPtr parse_expr() {
    ExprPtr left = parse_condition();
    while (accept_keyword("AND")) {
      ExprPtr right = parse_condition();
      left = std::make_shared<const Expr>(Expr{AndExpr{left, right}});
    }
    return left;
  }

  static std::string describe(const PropertyRef& r) { return r.var + "." + r.property; }

  static std::string describe(const NumericCall& c) {
    std::string name = c.fn == NumericFn::UFraction ? "u_fraction" : c.fn == NumericFn::SymbolFraction ? "symbol_fraction" : "SIZE";
    std::string out = name + "(";
    for (std::size_t i = 0; i < c.args.size(); ++i) {
      if (i) out += ", ";
      std::visit(
          [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, PropertyRef>) out += describe(a);
            else if constexpr (std::is_same_v<T, Intersect>) out += "intersect(" + describe(a.left) + ", " + describe(a.right) + ")";
            else out += "\"" + a + "\"";
          },
          c.args[i]);
    }
    return out + ")";
  }

  Projection parse_projection() {
    Projection p;
    const Token& t = peek();
    if (t.kind != TokenKind::Identifier) fail({"return item"});
    if (auto fn = peek_numeric_fn()) {
      auto call = parse_numeric_call(*fn);
      p.column = describe(call);
      p.term = std::move(call);
    } else if (peek(1).kind == TokenKind::LParen && (is_keyword(t, "TYPE") || is_keyword(t, "LABELS"))) {
      const bool is_type = is_keyword(t, "TYPE");
      pos_ += 2;
      const std::size_t at = peek().offset;
      std::string var = expect_identifier("variable");
      VarKind kind = require_var(var, at);
      if (is_type && kind != VarKind::Edge) throw SyntaxError(at, {"relationship variable"}, var);
      if (!is_type && kind != VarKind::Node) throw SyntaxError(at, {"node variable"}, var);
      expect(TokenKind::RParen, "')'");
      p.column = (is_type ? "TYPE(" : "LABELS(") + var + ")";
      if (is_type) p.term = TypeTerm{var};
      else p.term = LabelsTerm{var};
    } else if (is_keyword(t, "intersect") && peek(1).kind == TokenKind::LParen) {
      ++pos_;
      Intersect x = parse_intersect_args();
      p.column = "intersect(" + describe(x.left) + ", " + describe(x.right) + ")";
      p.term = std::move(x);
    } else {
      const std::size_t at = t.offset;
      std::string var = expect_identifier("variable");
      require_var(var, at);
      if (accept(TokenKind::Dot)) {
        PropertyRef ref{var, expect_identifier("property name")};
        p.column = describe(ref);
        p.term = std::move(ref);
      } else {
        p.column = var;
        p.term = VarTerm{var};
      }
    }
    if (accept_keyword("AS")) p.column = expect_identifier("alias");
    return p;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::map<std::string, VarKind> vars_;
};

}  // namespace

QuerySpec parse_query(std::string_view text) { return Parser(text).parse_query(); }

ExprPtr parse_filter(std::string_view text, const std::vector<std::string>& node_vars,
                     const std::vector<std::string>& edge_vars) {
  return Parser(text).parse_standalone_filter(node_vars, edge_vars);
}

}  // namespace kgforge::query
