#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace kgforge::query {

struct NodeStep {
  std::string var;
  std::optional<std::string> label;
};

struct EdgeStep {
  std::optional<std::string> var;
  std::optional<std::string> predicate;
};

struct PropertyRef {
  std::string var;
  std::string property;
};

struct Intersect {
  PropertyRef left;
  PropertyRef right;
};

// Argument of a built-in function.
using Argument = std::variant<PropertyRef, Intersect, std::string>;

enum class NumericFn { UFraction, SymbolFraction, Size };

struct NumericCall {
  NumericFn fn;
  std::vector<Argument> args;
};

enum class CmpOp { Lt, Le, Gt, Ge, Eq, Ne };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct AndExpr {
  ExprPtr left;
  ExprPtr right;
};

// "value" IN var.Prop
struct MembershipExpr {
  std::string value;
  PropertyRef list;
};

struct CompareExpr {
  NumericCall call;
  CmpOp op;
  double rhs;
};

struct Expr {
  std::variant<AndExpr, MembershipExpr, CompareExpr> node;
};

// What a RETURN item projects.
struct VarTerm {
  std::string var;
};
struct TypeTerm {
  std::string var;
};
struct LabelsTerm {
  std::string var;
};
using ProjectionTerm = std::variant<VarTerm, PropertyRef, TypeTerm, LabelsTerm, Intersect, NumericCall>;

struct Projection {
  ProjectionTerm term;
  std::string column;  // alias, or the normalized source text
};

struct QuerySpec {
  std::vector<NodeStep> nodes;  // 1..3
  std::vector<EdgeStep> edges;  // nodes.size() - 1
  ExprPtr where;                // may be null
  std::vector<Projection> projections;
  std::optional<std::string> order_by;
  std::optional<std::uint64_t> limit;
};

}  // namespace kgforge::query
