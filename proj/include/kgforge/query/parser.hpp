#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kgforge/query/ast.hpp"

namespace kgforge::query {

// Grammar:
//   query   := MATCH pattern (WHERE expr)? RETURN proj (',' proj)* (ORDER BY key)? (LIMIT int)?
//   pattern := nodepat (edgepat nodepat){0,2}
//   nodepat := '(' var (':' label)? ')'
//   edgepat := '-[' var? (':' predicate)? ']->'
//   expr    := cond (AND cond)*
//   cond    := string IN var.prop | fn '(' args ')' cmp number
//   fn      := u_fraction | symbol_fraction | SIZE
//   proj    := (var | var.prop | TYPE(var) | LABELS(var) | intersect(a.P, b.P) | fn(args)) (AS alias)?
// Keywords are case-insensitive; labels with spaces use backticks.
// Throws SyntaxError or Error(UnboundVariable).
QuerySpec parse_query(std::string_view text);

// A standalone filter expression over the given variables (used by views).
ExprPtr parse_filter(std::string_view text, const std::vector<std::string>& node_vars,
                     const std::vector<std::string>& edge_vars);

}  // namespace kgforge::query
