#include "kgforge/query/evaluator.hpp"

#include <algorithm>
#include <cmath>

#include "kgforge/common/error.hpp"
#include "kgforge/common/text.hpp"
#include "kgforge/query/parser.hpp"

namespace kgforge::query {

using graph::Edge;
using graph::EdgeId;
using graph::Node;
using graph::NodeHandle;
using graph::PropertyGraph;

double symbol_fraction(std::string_view sequence, char symbol) {
  if (sequence.empty()) throw Error(Errc::EmptySequence, "cannot compute a symbol fraction of an empty sequence");
  const auto hits = std::count(sequence.begin(), sequence.end(), symbol);
  return static_cast<double>(hits) / static_cast<double>(sequence.size());
}

double u_fraction(std::string_view sequence) { return symbol_fraction(sequence, 'U'); }

namespace {

const std::vector<std::string> kEmpty;

// Resolved variable: either a node or an edge.
struct Slot {
  const Node* node = nullptr;
  const Edge* edge = nullptr;
};

class Context {
 public:
  virtual ~Context() = default;
  virtual Slot lookup(const std::string& var) const = 0;
};

class ScopeContext final : public Context {
 public:
  explicit ScopeContext(const FilterScope& s) : s_(s) {}
  Slot lookup(const std::string& var) const override {
    for (const auto& [name, h] : s_.nodes)
      if (name == var) return {&s_.graph->node(h), nullptr};
    for (const auto& [name, id] : s_.edges)
      if (name == var) return {nullptr, &s_.graph->edge(id)};
    throw Error(Errc::UnboundVariable, var);
  }

 private:
  const FilterScope& s_;
};

// Reads var.Prop. Nodes expose URI (and id) as pseudo-properties when no
// stored property of that name exists.
std::vector<std::string> read_property(const Context& ctx, const PropertyRef& ref) {
  Slot s = ctx.lookup(ref.var);
  const graph::PropertyMap& props = s.node ? s.node->properties : s.edge->properties;
  if (const auto* v = props.find(ref.property)) return *v;
  if (s.node) {
    if (ref.property == "URI" && !s.node->uri.empty()) return {s.node->uri};
    if (ref.property == "id") return {s.node->curie};
  }
  return {};
}

std::vector<std::string> intersect(const Context& ctx, const Intersect& x) {
  auto left = read_property(ctx, x.left);
  auto right = read_property(ctx, x.right);
  std::vector<std::string> out;
  for (auto& v : left)
    if (std::find(right.begin(), right.end(), v) != right.end()) out.push_back(std::move(v));
  return out;
}

std::optional<double> evaluate_numeric(const Context& ctx, const NumericCall& call) {
  switch (call.fn) {
    case NumericFn::UFraction:
    case NumericFn::SymbolFraction: {
      auto values = read_property(ctx, std::get<PropertyRef>(call.args[0]));
      if (values.empty() || values.front().empty()) return std::nullopt;
      const char symbol = call.fn == NumericFn::UFraction ? 'U' : std::get<std::string>(call.args[1])[0];
      return symbol_fraction(values.front(), symbol);
    }
    case NumericFn::Size:
      if (const auto* x = std::get_if<Intersect>(&call.args[0])) return static_cast<double>(intersect(ctx, *x).size());
      return static_cast<double>(read_property(ctx, std::get<PropertyRef>(call.args[0])).size());
  }
  return std::nullopt;
}

bool compare(double lhs, CmpOp op, double rhs) {
  switch (op) {
    case CmpOp::Lt: return lhs < rhs;
    case CmpOp::Le: return lhs <= rhs;
    case CmpOp::Gt: return lhs > rhs;
    case CmpOp::Ge: return lhs >= rhs;
    case CmpOp::Eq: return lhs == rhs;
    case CmpOp::Ne: return lhs != rhs;
  }
  return false;
}

bool evaluate(const Expr& expr, const Context& ctx) {
  return std::visit(
      [&](const auto& e) -> bool {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, AndExpr>) {
          return evaluate(*e.left, ctx) && evaluate(*e.right, ctx);
        } else if constexpr (std::is_same_v<T, MembershipExpr>) {
          auto values = read_property(ctx, e.list);
          return std::find(values.begin(), values.end(), e.value) != values.end();
        } else {
          auto v = evaluate_numeric(ctx, e.call);
          return v && compare(*v, e.op, e.rhs);
        }
      },
      expr.node);
}

Cell project(const Projection& p, const Context& ctx) {
  return std::visit(
      [&](const auto& t) -> Cell {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, VarTerm>) {
          Slot s = ctx.lookup(t.var);
          return s.node ? s.node->curie : s.edge->predicate;
        } else if constexpr (std::is_same_v<T, PropertyRef>) {
          Slot s = ctx.lookup(t.var);
          const graph::PropertyMap& props = s.node ? s.node->properties : s.edge->properties;
          auto values = read_property(ctx, t);
          const bool stored = props.contains(t.property);
          const bool scalar = stored ? graph::is_scalar_property(t.property) : (s.node && (t.property == "URI" || t.property == "id"));
          if (scalar && values.size() == 1) return values.front();
          return values;
        } else if constexpr (std::is_same_v<T, TypeTerm>) {
          return ctx.lookup(t.var).edge->predicate;
        } else if constexpr (std::is_same_v<T, LabelsTerm>) {
          return ctx.lookup(t.var).node->labels;
        } else if constexpr (std::is_same_v<T, Intersect>) {
          return intersect(ctx, t);
        } else {
          auto v = evaluate_numeric(ctx, t);
          if (!v) return std::vector<std::string>{};
          return text::format_double(*v);
        }
      },
      p.term);
}

// Binding slots: nodes at 0..2, edges at 0..1.
class BindingContext final : public Context {
 public:
  BindingContext(const PropertyGraph& g, const QuerySpec& q) : g_(g) {
    for (std::size_t i = 0; i < q.nodes.size(); ++i) names_.push_back({q.nodes[i].var, true, i});
    for (std::size_t i = 0; i < q.edges.size(); ++i)
      if (q.edges[i].var) names_.push_back({*q.edges[i].var, false, i});
  }

  Slot lookup(const std::string& var) const override {
    for (const auto& n : names_)
      if (n.name == var) return n.is_node ? Slot{&g_.node(nodes[n.index]), nullptr} : Slot{nullptr, &g_.edge(edges[n.index])};
    throw Error(Errc::UnboundVariable, var);
  }

  NodeHandle nodes[3];
  EdgeId edges[2] = {0, 0};

 private:
  struct Name {
    std::string name;
    bool is_node;
    std::size_t index;
  };
  const PropertyGraph& g_;
  std::vector<Name> names_;
};

bool has_label(const Node& n, const std::optional<std::string>& label) {
  return !label || std::find(n.labels.begin(), n.labels.end(), *label) != n.labels.end();
}

std::string sort_key(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  return text::join(std::get<std::vector<std::string>>(c), "|");
}

bool cell_less(const Cell& a, const Cell& b) {
  const std::string ka = sort_key(a), kb = sort_key(b);
  auto na = text::parse_double(ka), nb = text::parse_double(kb);
  if (na && nb) return *na < *nb;
  return ka < kb;
}

}  // namespace

bool evaluate_filter(const Expr& expr, const FilterScope& scope) { return evaluate(expr, ScopeContext(scope)); }

ResultTable run_pattern_query(const PropertyGraph& g, const QuerySpec& spec) {
  if (!g.frozen()) throw Error(Errc::NotFrozen, "queries run on frozen graphs");
  ResultTable table;
  for (const auto& p : spec.projections) table.columns.push_back(p.column);

  BindingContext ctx(g, spec);
  std::vector<NodeHandle> starts;
  if (spec.nodes[0].label) {
    auto it = g.label_index().find(*spec.nodes[0].label);
    if (it != g.label_index().end()) starts.assign(it->second.begin(), it->second.end());
  } else {
    starts = g.node_handles();
  }

  auto emit = [&] {
    if (spec.where && !evaluate(*spec.where, ctx)) return;
    std::vector<Cell> row;
    row.reserve(spec.projections.size());
    for (const auto& p : spec.projections) row.push_back(project(p, ctx));
    table.rows.push_back(std::move(row));
  };

  // Extends the binding from node step `depth`.
  auto extend = [&](auto&& self, std::size_t depth) -> void {
    if (depth + 1 == spec.nodes.size()) {
      emit();
      return;
    }
    const EdgeStep& step = spec.edges[depth];
    for (EdgeId id : g.out_edges(ctx.nodes[depth])) {
      const Edge& e = g.edge(id);
      if (step.predicate && e.predicate != *step.predicate) continue;
      if (!has_label(g.node(e.dst), spec.nodes[depth + 1].label)) continue;
      ctx.edges[depth] = id;
      ctx.nodes[depth + 1] = e.dst;
      self(self, depth + 1);
    }
  };

  const bool early_stop = spec.limit && !spec.order_by;
  for (NodeHandle h : starts) {
    ctx.nodes[0] = h;
    extend(extend, 0);
    if (early_stop && table.rows.size() >= *spec.limit) break;
  }

  if (spec.order_by) {
    const auto col = static_cast<std::size_t>(
        std::find(table.columns.begin(), table.columns.end(), *spec.order_by) - table.columns.begin());
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [col](const auto& a, const auto& b) { return cell_less(a[col], b[col]); });
  }
  if (spec.limit && table.rows.size() > *spec.limit) table.rows.resize(*spec.limit);
  return table;
}

ResultTable run_query(const PropertyGraph& g, std::string_view text) { return run_pattern_query(g, parse_query(text)); }

ResultTable shared_citation_triples(const PropertyGraph& g, const std::array<std::string, 3>& labels) {
  if (!g.frozen()) throw Error(Errc::NotFrozen, "queries run on frozen graphs");
  ResultTable table;
  table.columns = {labels[0], labels[1], labels[2], "common_pmids"};
  auto it = g.label_index().find(labels[0]);
  if (it == g.label_index().end()) return table;
  auto labelled = [&](NodeHandle h, const std::string& l) {
    const auto& ls = g.node(h).labels;
    return std::find(ls.begin(), ls.end(), l) != ls.end();
  };
  auto pmids = [&](EdgeId id) -> const std::vector<std::string>& {
    const auto* v = g.edge(id).properties.find("PubMedID");
    return v ? *v : kEmpty;
  };
  for (NodeHandle a : it->second) {
    for (EdgeId e1 : g.out_edges(a)) {
      const NodeHandle b = g.edge(e1).dst;
      if (!labelled(b, labels[1])) continue;
      const auto& first = pmids(e1);
      if (first.empty()) continue;
      for (EdgeId e2 : g.out_edges(b)) {
        const NodeHandle c = g.edge(e2).dst;
        if (!labelled(c, labels[2])) continue;
        const auto& second = pmids(e2);
        std::vector<std::string> common;
        for (const auto& p : first)
          if (std::find(second.begin(), second.end(), p) != second.end()) common.push_back(p);
        if (common.empty()) continue;
        table.rows.push_back({g.node(a).uri, g.node(b).uri, g.node(c).uri, std::move(common)});
      }
    }
  }
  return table;
}

}  // namespace kgforge::query
