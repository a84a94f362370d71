#include "kgforge/cli/commands.hpp"

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "kgforge/api/server.hpp"
#include "kgforge/api/service.hpp"
#include "kgforge/common/text.hpp"
#include "kgforge/ingest/mapping.hpp"
#include "kgforge/ingest/snapshot.hpp"
#include "kgforge/linkpred/evaluation.hpp"
#include "kgforge/linkpred/reports.hpp"
#include "kgforge/linkpred/timesplit.hpp"
#include "kgforge/prune/pruning.hpp"
#include "kgforge/query/evaluator.hpp"
#include "kgforge/query/views.hpp"

namespace kgforge::cli {

using Json = nlohmann::ordered_json;

ExitCode exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedHeader:
    case Errc::MalformedRow:
    case Errc::InvalidLabelSet:
    case Errc::InvalidSequence:
    case Errc::InvalidCoordinate:
    case Errc::InvalidValue:
    case Errc::InvalidCurie:
    case Errc::IoError:
    case Errc::SnapshotCorrupt:
    case Errc::SyntaxError:
    case Errc::UnboundVariable:
    case Errc::InvalidParams:
    case Errc::InvalidConfig:
    case Errc::ConflictingYear:
      return kInputError;
    case Errc::DuplicateCurie:
    case Errc::UnknownEndpoint:
    case Errc::UnknownSource:
    case Errc::UnmappedIdentifier:
    case Errc::UnknownCurie:
    case Errc::MissingClassNode:
    case Errc::EmptySequence:
    case Errc::EmptySelection:
    case Errc::BothEmpty:
    case Errc::NoEdges:
    case Errc::SequenceTooShort:
    case Errc::GraphTooSmall:
    case Errc::ExhaustedSpace:
    case Errc::CategoryNotFound:
    case Errc::EmptyTestSet:
    case Errc::SelfLoop:
      return kDomainError;
    default:
      return kInternal;
  }
}

namespace {

// Flat `key = value` config with `#` comments. Keys naming a root option go
// to the root; everything else goes to the subcommand being run.
class FlatConfig : public CLI::Config {
 public:
  explicit FlatConfig(const CLI::App* root) : root_(root) {}
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return {}; }
  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    std::string sub;
    for (const auto* s : root_->get_subcommands()) sub = s->get_name();
    std::vector<CLI::ConfigItem> items;
    std::string line;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      CLI::detail::trim(line);
      if (line.empty()) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) throw CLI::ConfigError("config line without '=': " + line);
      std::string key = line.substr(0, eq), value = line.substr(eq + 1);
      CLI::detail::trim(key);
      CLI::detail::trim(value);
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
      CLI::ConfigItem item;
      item.name = key;
      item.inputs = {value};
      if (root_->get_option_no_throw("--" + key) == nullptr && !sub.empty()) item.parents = {sub};
      items.push_back(std::move(item));
    }
    return items;
  }

 private:
  const CLI::App* root_;
};

struct Globals {
  unsigned jobs = 1;
  std::uint64_t seed = 42;
};

struct EmbeddingOptions {
  std::string method = "node2vec";
  std::string norm = "L2";
  linkpred::EmbeddingConfig config;
};

void add_embedding_options(CLI::App* app, EmbeddingOptions& o, bool with_method) {
  if (with_method)
    app->add_option("--method", o.method, "node2vec | line | transe")->capture_default_str();
  auto& c = o.config;
  app->add_option("--dimensions", c.dimensions, "Embedding dimensions")->capture_default_str();
  app->add_option("--epochs", c.epochs, "Training epochs")->capture_default_str();
  app->add_option("--learning-rate", c.learning_rate, "Initial learning rate")->capture_default_str();
  app->add_option("--walks-per-node", c.walks_per_node, "node2vec walks per node (LINE: samples per edge)")
      ->capture_default_str();
  app->add_option("--walk-length", c.walk_length, "node2vec walk length")->capture_default_str();
  app->add_option("--window", c.window, "Skip-gram window")->capture_default_str();
  app->add_option("--negatives", c.negatives, "Negative samples per positive")->capture_default_str();
  app->add_option("--p", c.p, "node2vec return parameter")->capture_default_str();
  app->add_option("--q", c.q, "node2vec in-out parameter")->capture_default_str();
  app->add_option("--line-order", c.line_order, "LINE proximity order (1 or 2)")->capture_default_str();
  app->add_option("--margin", c.margin, "TransE margin")->capture_default_str();
  app->add_option("--norm", o.norm, "TransE distance: L1 | L2")->capture_default_str();
  app->add_flag("--hogwild", c.hogwild, "Lock-free parallel SGD (not reproducible)");
}

linkpred::EmbeddingConfig finish(const EmbeddingOptions& o, const Globals& g, const std::string& method) {
  auto c = o.config;
  c.method = linkpred::parse_method(method);
  if (o.norm == "L1" || o.norm == "l1")
    c.norm = linkpred::Norm::L1;
  else if (o.norm == "L2" || o.norm == "l2")
    c.norm = linkpred::Norm::L2;
  else
    throw Error(Errc::InvalidConfig, "norm must be L1 or L2");
  c.seed = g.seed;
  c.jobs = g.jobs;
  c.validate();
  return c;
}

struct ForestOptions {
  linkpred::ForestConfig config;
};

void add_forest_options(CLI::App* app, ForestOptions& o) {
  app->add_option("--n-estimators", o.config.n_estimators, "Trees in the forest")->capture_default_str();
  app->add_option("--max-depth", o.config.max_depth, "Maximum tree depth")->capture_default_str();
}

linkpred::ForestConfig finish(const ForestOptions& o, const Globals& g) {
  auto c = o.config;
  c.seed = text::mix_seed(g.seed, 0x666f72);
  c.jobs = g.jobs;
  c.validate();
  return c;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::IoError, "cannot write " + path);
  return f;
}

// Writes to `path`, or to `out` when path is empty or "-".
template <class Fn>
void emit(const std::string& path, std::ostream& out, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(out);
    return;
  }
  auto f = open_output(path);
  fn(f);
}

Json stats_json(const graph::PropertyGraph& g) {
  const auto s = g.stats();
  Json j;
  j["node_count"] = s.node_count;
  j["edge_count"] = s.edge_count;
  j["labels"] = s.label_counts;
  j["predicates"] = s.predicate_counts;
  Json hist = Json::object();
  for (const auto& [deg, n] : s.degree_histogram) hist[std::to_string(deg)] = n;
  j["degree_histogram"] = hist;
  j["content_hash"] = ingest::content_hash(g);
  return j;
}

std::atomic<bool> g_stop{false};
std::atomic<bool> g_reload{false};
extern "C" void on_signal(int sig) {
  if (sig == SIGHUP)
    g_reload = true;
  else
    g_stop = true;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Knowledge-graph toolkit: build, query, prune, embed, evaluate and serve property graphs.", "kgforge"};
  app.config_formatter(std::make_shared<FlatConfig>(&app));
  app.set_config("--config", "", "Flat key=value config file (# comments); flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--jobs", globals.jobs, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));
  app.add_option("--seed", globals.seed, "Random seed")->capture_default_str();

  // build
  ingest::BuildInputs build_in;
  std::string build_out, build_report;
  auto* build = app.add_subcommand("build", "Ingest TSV files into a snapshot directory");
  build->add_option("--nodes", build_in.node_files, "Node TSV files")->required()->check(CLI::ExistingFile);
  build->add_option("--edges", build_in.edge_files, "Edge TSV files")->check(CLI::ExistingFile);
  build->add_option("--lookup", build_in.lookup_files, "Identifier lookup tables")->check(CLI::ExistingFile);
  build->add_option("--terms", build_in.term_files, "Ontology term files")->check(CLI::ExistingFile);
  build->add_option("--class-map", build_in.class_map_files, "Instance-to-class maps")->check(CLI::ExistingFile);
  build->add_option("--out", build_out, "Snapshot directory to write")->required();
  build->add_option("--report", build_report, "Write the ingest report JSON here");

  // stats
  std::string snapshot_path;
  auto* stats = app.add_subcommand("stats", "Print snapshot statistics as JSON");
  stats->add_option("--snapshot", snapshot_path, "Snapshot directory")->required()->check(CLI::ExistingDirectory);

  // query
  std::string query_text, query_file, query_format = "csv", shared_citations, query_out;
  auto* qry = app.add_subcommand("query", "Run a MATCH ... RETURN query");
  qry->add_option("--snapshot", snapshot_path, "Snapshot directory")->required()->check(CLI::ExistingDirectory);
  auto* q_text = qry->add_option("--query", query_text, "Query text");
  auto* q_file = qry->add_option("--query-file", query_file, "File holding the query")->check(CLI::ExistingFile);
  auto* q_shared = qry->add_option("--shared-citations", shared_citations,
                                   "Labels A,B,C: A->B->C paths whose edges share a PubMedID");
  q_text->excludes(q_file)->excludes(q_shared);
  q_file->excludes(q_shared);
  qry->add_option("--format", query_format, "csv | json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
  qry->add_option("--out", query_out, "Output file (default stdout)");

  // view
  std::vector<std::string> view_labels, view_predicates;
  std::string view_node_filter, view_edge_filter, view_out;
  bool view_no_props = false;
  auto* view = app.add_subcommand("view", "Export an induced subgraph as nodes.csv and edges.csv");
  view->add_option("--snapshot", snapshot_path, "Snapshot directory")->required()->check(CLI::ExistingDirectory);
  view->add_option("--label", view_labels, "Node label to include (repeatable; none = all)")->delimiter(',');
  view->add_option("--predicate", view_predicates, "Edge predicate to include (repeatable; none = all)")
      ->delimiter(',');
  view->add_option("--node-filter", view_node_filter, "Filter expression over node variable n");
  view->add_option("--edge-filter", view_edge_filter, "Filter expression over edge variable r");
  view->add_flag("--no-properties", view_no_props, "Export only ids, uris and categories");
  view->add_option("--out", view_out, "Output directory")->required();

  // prune
  std::string prune_policy = "above_median", prune_out, prune_report;
  prune::AlignmentParams align;
  auto* prn = app.add_subcommand("prune", "Collapse isomorphic node groups");
  prn->add_option("--snapshot", snapshot_path, "Snapshot directory")->required()->check(CLI::ExistingDirectory);
  prn->add_option("--policy", prune_policy, "all | above_median | above_threshold:<percent>")->capture_default_str();
  prn->add_option("--match", align.match, "Alignment match score")->capture_default_str();
  prn->add_option("--mismatch", align.mismatch, "Alignment mismatch score")->capture_default_str();
  prn->add_option("--gap", align.gap, "Alignment gap score")->capture_default_str();
  prn->add_option("--out", prune_out, "Write the pruned snapshot here");
  prn->add_option("--report", prune_report, "Write the prune report JSON here");

  // embed
  EmbeddingOptions embed_opts;
  std::string embed_out;
  auto* emb = app.add_subcommand("embed", "Train node embeddings and write them as TSV");
  emb->add_option("--snapshot", snapshot_path, "Snapshot directory")->required()->check(CLI::ExistingDirectory);
  add_embedding_options(emb, embed_opts, true);
  emb->add_option("--out", embed_out, "Output TSV (default stdout)");

  // linkpred
  EmbeddingOptions lp_emb;
  ForestOptions lp_forest;
  linkpred::SplitSpec lp_split;
  std::vector<std::string> lp_methods{"node2vec"}, lp_tasks{"Hom"};
  std::string lp_source, lp_target, lp_predicate, lp_out, lp_json;
  bool lp_no_scale_free = false, lp_control = false;
  auto* lp = app.add_subcommand("linkpred", "Evaluate link prediction with Connected Monte Carlo holdouts");
  lp->add_option("--snapshot", snapshot_path, "Snapshot directory")->required()->check(CLI::ExistingDirectory);
  lp->add_option("--source-label", lp_source, "Edge category source label")->required();
  lp->add_option("--target-label", lp_target, "Edge category target label")->required();
  lp->add_option("--predicate", lp_predicate, "Predicate for Het/MHet");
  lp->add_option("--task", lp_tasks, "Hom | MHom | Het | MHet (repeatable)")->delimiter(',')->capture_default_str();
  lp->add_option("--method", lp_methods, "node2vec | line | transe (repeatable)")->delimiter(',')->capture_default_str();
  lp->add_option("--holdouts", lp_split.holdouts, "Number of holdouts")->capture_default_str();
  lp->add_option("--train-size", lp_split.train_size, "Share of node pairs kept for training")->capture_default_str();
  lp->add_option("--unbalance-rate", lp_split.unbalance_rate, "Training negatives per positive")->capture_default_str();
  lp->add_flag("--no-scale-free", lp_no_scale_free, "Draw negative endpoints uniformly instead of by degree");
  lp->add_flag("--control", lp_control, "Also report a shuffled-label control");
  add_embedding_options(lp, lp_emb, false);
  add_forest_options(lp, lp_forest);
  lp->add_option("--out", lp_out, "Table TSV (default stdout)");
  lp->add_option("--json", lp_json, "Per-holdout details as JSON");

  // timesplit
  EmbeddingOptions ts_emb;
  ForestOptions ts_forest;
  std::string ts_years, ts_source, ts_target, ts_predicate, ts_out, ts_task = "Hom";
  int ts_cutoff = 2022;
  auto* ts = app.add_subcommand("timesplit", "Train before a cutoff year, score edges discovered after it");
  ts->add_option("--snapshot", snapshot_path, "Snapshot directory")->required()->check(CLI::ExistingDirectory);
  ts->add_option("--pmid-years", ts_years, "pmid<TAB>year table")->required()->check(CLI::ExistingFile);
  ts->add_option("--cutoff", ts_cutoff, "First test year")->capture_default_str();
  ts->add_option("--source-label", ts_source, "Edge category source label")->required();
  ts->add_option("--target-label", ts_target, "Edge category target label")->required();
  ts->add_option("--predicate", ts_predicate, "Predicate for Het/MHet");
  ts->add_option("--task", ts_task, "Hom | MHom | Het | MHet")->capture_default_str();
  add_embedding_options(ts, ts_emb, true);
  add_forest_options(ts, ts_forest);
  ts->add_option("--out", ts_out, "Report JSON (default stdout)");

  // serve
  std::string serve_addr = "127.0.0.1:8080";
  std::size_t serve_cap = 10000;
  auto* srv = app.add_subcommand("serve", "Serve a snapshot over HTTP under /api/v1/");
  srv->add_option("--snapshot", snapshot_path, "Snapshot directory")
      ->envname("KGFORGE_SNAPSHOT")
      ->required()
      ->check(CLI::ExistingDirectory);
  srv->add_option("--addr", serve_addr, "Listen address host:port")->envname("KGFORGE_ADDR")->capture_default_str();
  srv->add_option("--result-cap", serve_cap, "Maximum /query rows")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const auto* s : app.get_subcommands()) target = s;
    out << target->help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    auto load = [&] { return ingest::load_snapshot(snapshot_path); };

    if (*build) {
      ingest::IngestReport report;
      auto g = ingest::build_graph(build_in, report);
      const auto manifest = ingest::save_snapshot(g, build_out);
      Json j;
      j["snapshot"] = build_out;
      j["node_count"] = manifest.node_count;
      j["edge_count"] = manifest.edge_count;
      j["content_hash"] = manifest.content_hash;
      j["nodes_loaded"] = report.nodes_loaded;
      j["edge_rows"] = report.edge_rows;
      j["edges_created"] = report.edges_created;
      j["terms_enriched"] = report.terms_enriched;
      j["terms_unmatched"] = report.terms_unmatched;
      j["links_added"] = report.links_added;
      Json rejects = Json::array();
      for (const auto& r : report.rejects) rejects.push_back({{"file", r.file}, {"line", r.line}, {"reason", r.reason}});
      j["rejects"] = rejects;
      if (!build_report.empty()) open_output(build_report) << j.dump(2) << "\n";
      out << j.dump(2) << "\n";
      return kOk;
    }

    if (*stats) {
      out << stats_json(load()).dump(2) << "\n";
      return kOk;
    }

    if (*qry) {
      const auto g = load();
      query::ResultTable table;
      if (!shared_citations.empty()) {
        auto parts = text::split(shared_citations, ',');
        if (parts.size() != 3) throw Error(Errc::InvalidValue, "--shared-citations needs three labels");
        table = query::shared_citation_triples(g, {parts[0], parts[1], parts[2]});
      } else {
        if (!query_file.empty()) {
          std::ifstream f(query_file);
          std::stringstream ss;
          ss << f.rdbuf();
          query_text = ss.str();
        }
        if (query_text.empty()) throw Error(Errc::InvalidValue, "one of --query, --query-file, --shared-citations is required");
        table = query::run_query(g, query_text);
      }
      emit(query_out, out, [&](std::ostream& o) {
        if (query_format == "json") {
          Json rows = Json::array();
          for (const auto& row : table.rows) {
            Json r = Json::object();
            for (std::size_t i = 0; i < table.columns.size(); ++i) {
              if (const auto* s = std::get_if<std::string>(&row[i]))
                r[table.columns[i]] = *s;
              else
                r[table.columns[i]] = std::get<std::vector<std::string>>(row[i]);
            }
            rows.push_back(std::move(r));
          }
          o << Json{{"results", rows}}.dump(2) << "\n";
        } else {
          query::write_table_csv(o, table);
        }
      });
      return kOk;
    }

    if (*view) {
      const auto g = load();
      query::ViewSpec spec;
      spec.labels.insert(view_labels.begin(), view_labels.end());
      spec.predicates.insert(view_predicates.begin(), view_predicates.end());
      spec.node_filter = view_node_filter;
      spec.edge_filter = view_edge_filter;
      spec.include_properties = !view_no_props;
      const auto v = query::extract_view(g, spec);
      std::filesystem::create_directories(view_out);
      {
        auto f = open_output((std::filesystem::path(view_out) / "nodes.csv").string());
        query::write_nodes_csv(f, v);
      }
      {
        auto f = open_output((std::filesystem::path(view_out) / "edges.csv").string());
        query::write_edges_csv(f, v);
      }
      out << Json{{"node_count", v.node_count()}, {"edge_count", v.edge_count()}, {"out", view_out}}.dump(2) << "\n";
      return kOk;
    }

    if (*prn) {
      const auto g = load();
      const auto policy = prune::PrunePolicy::parse(prune_policy);
      auto result = prune::prune(g, policy, align, globals.jobs);
      if (!prune_out.empty()) ingest::save_snapshot(result.graph, prune_out);
      const auto j = prune::to_json(result.report);
      if (!prune_report.empty()) open_output(prune_report) << j.dump(2) << "\n";
      out << prune::format_histogram_table(result.report.histogram);
      out << "groups found " << result.report.groups_found << ", scored " << result.report.groups_scored
          << ", collapsed " << result.report.groups_collapsed << "\n";
      out << "nodes " << result.report.nodes_before << " -> " << result.report.nodes_after << ", edges "
          << result.report.edges_before << " -> " << result.report.edges_after << "\n";
      return kOk;
    }

    if (*emb) {
      const auto g = load();
      const auto cfg = finish(embed_opts, globals, embed_opts.method);
      const auto lg = linkpred::LearningGraph::from_graph(g);
      const auto e = linkpred::embed(lg, cfg);
      emit(embed_out, out, [&](std::ostream& o) { linkpred::write_embeddings_tsv(o, lg.ids(), e); });
      return kOk;
    }

    if (*lp) {
      const auto g = load();
      lp_split.scale_free = !lp_no_scale_free;
      const auto forest = finish(lp_forest, globals);
      std::vector<linkpred::EvalResult> results;
      for (const auto& m : lp_methods) {
        const auto cfg = finish(lp_emb, globals, m);
        for (const auto& t : lp_tasks) {
          linkpred::TaskSpec task;
          task.task = linkpred::parse_task(t);
          task.source_label = lp_source;
          task.target_label = lp_target;
          if (!lp_predicate.empty()) task.predicate = lp_predicate;
          if (!task.typed()) task.predicate.reset();
          linkpred::EvalOptions opts;
          opts.seed = globals.seed;
          opts.with_control = lp_control;
          opts.jobs = globals.jobs;
          results.push_back(linkpred::evaluate(g, task, cfg, forest, lp_split, opts));
          // Het rows carry the predicate in their edge name; file them with the category row.
          results.back().edge = lp_source + "-" + lp_target;
        }
      }
      emit(lp_out, out, [&](std::ostream& o) { linkpred::write_eval_report(o, results); });
      if (!lp_json.empty()) {
        Json arr = Json::array();
        for (const auto& r : results) arr.push_back(linkpred::to_json(r));
        open_output(lp_json) << arr.dump(2) << "\n";
      }
      return kOk;
    }

    if (*ts) {
      const auto g = load();
      const auto years = ingest::load_pmid_years(std::filesystem::path(ts_years));
      linkpred::TaskSpec task;
      task.task = linkpred::parse_task(ts_task);
      task.source_label = ts_source;
      task.target_label = ts_target;
      if (!ts_predicate.empty() && task.typed()) task.predicate = ts_predicate;
      linkpred::SplitSpec sampling;
      const auto r = linkpred::evaluate_time_split(g, years, ts_cutoff, task, finish(ts_emb, globals, ts_emb.method),
                                                   finish(ts_forest, globals), sampling, globals.seed);
      const auto lg = linkpred::LearningGraph::from_graph(g);
      emit(ts_out, out, [&](std::ostream& o) { o << linkpred::to_json(r, lg).dump(2) << "\n"; });
      return kOk;
    }

    if (*srv) {
      const auto address = api::parse_listen_address(serve_addr);
      api::ServiceOptions opts;
      opts.result_cap = serve_cap;
      api::ApiService service(std::make_shared<const graph::PropertyGraph>(load()), opts);
      api::HttpServer server(service);
      g_stop = false;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::signal(SIGHUP, on_signal);
      std::thread watcher([&] {
        while (!g_stop) {
          std::this_thread::sleep_for(std::chrono::milliseconds(100));
          if (g_reload.exchange(false)) {
            try {
              service.replace_snapshot(std::make_shared<const graph::PropertyGraph>(load()));
              err << "snapshot reloaded from " << snapshot_path << "\n";
            } catch (const std::exception& e) {
              err << "reload failed: " << e.what() << "\n";
            }
          }
        }
        server.stop();
      });
      err << "serving " << snapshot_path << " on http://" << address.host << ":" << address.port << "/api/v1/\n";
      const bool ok = server.listen(address);
      g_stop = true;
      watcher.join();
      if (!ok) {
        err << "error: cannot listen on " << serve_addr << "\n";
        return kInputError;
      }
      return kOk;
    }
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}

}  // namespace kgforge::cli
