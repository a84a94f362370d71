// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failures.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <tuple>
#include <numeric>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "api_goldens.hpp"
#include "generators.hpp"
#include "json.hpp"
#include "json_schema.hpp"
#include "kgforge/api/service.hpp"
#include "kgforge/common/rng.hpp"
#include "kgforge/ingest/mapping.hpp"
#include "kgforge/ingest/snapshot.hpp"
#include "kgforge/ingest/tsv_io.hpp"
#include "kgforge/linkpred/evaluation.hpp"
#include "kgforge/linkpred/timesplit.hpp"
#include "kgforge/prune/alignment.hpp"
#include "kgforge/prune/isomorphism.hpp"
#include "kgforge/prune/pruning.hpp"
#include "kgforge/query/evaluator.hpp"
#include "kgforge/query/parser.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace kgforge;
using nlohmann::json;

namespace {

// Pinned limits.
constexpr double kAlignmentSeconds = 10;
constexpr double kIsoSeconds = 30;
constexpr double kQuerySeconds = 60;
constexpr double kGradientTolerance = 1e-4;
constexpr double kBenchmarkMinMean = 0.75;
constexpr double kControlCenter = 0.5, kControlHalfWidth = 0.05;
constexpr double kBenchmarkSeconds = 300;
constexpr double kTimeSplitMinFraction = 0.70;
constexpr double kTimeSplitSeconds = 120;

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Check {
 public:
  void fail(const std::string& why) {
    if (first_.empty()) first_ = why;
    ok_ = false;
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
  bool ok() const { return ok_; }
  const std::string& first() const { return first_; }

 private:
  bool ok_ = true;
  std::string first_;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome finish(const Check& c, std::string detail) {
  if (!c.ok()) detail = c.first() + "; " + detail;
  return {c.ok(), detail};
}

// ---- criteria

Outcome alignment_oracle(double& limit) {
  limit = kAlignmentSeconds;
  Check c;
  Rng rng(101);
  const prune::AlignmentParams params;
  std::size_t pairs = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto a = kgtest::random_sequence(rng, rng.below(7));
    auto b = kgtest::random_sequence(rng, rng.below(7));
    if (a.empty() && b.empty()) b = "G";
    const auto dp = prune::needleman_wunsch(a, b, params);
    const auto brute = kgtest::enumerate_alignments(a, b, params.match, params.mismatch, params.gap);
    c.expect(dp.score == brute.score, "score differs on " + a + "/" + b);
    ++pairs;
  }
  return finish(c, std::to_string(pairs) + " pairs");
}

std::vector<std::vector<std::uint32_t>> ordinals(const std::vector<prune::IsoGroup>& groups) {
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& g : groups) {
    std::vector<std::uint32_t> m;
    for (auto h : g.members) m.push_back(h.ordinal);
    std::sort(m.begin(), m.end());
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Outcome iso_oracle(double& limit) {
  limit = kIsoSeconds;
  Check c;
  Rng rng(202);
  std::size_t groups = 0;
  for (int t = 0; t < 50; ++t) {
    const auto g = kgtest::random_graph_with_twins(2000 + t, 20 + rng.below(181));
    const auto found = ordinals(prune::find_isomorphic_groups(g));
    c.expect(found == kgtest::pairwise_isomorphic_groups(g), "graph " + std::to_string(t) + " differs");
    groups += found.size();
  }
  c.expect(groups > 0, "no groups across all graphs");
  return finish(c, "50 graphs, " + std::to_string(groups) + " groups");
}

Outcome pruning_arithmetic(double& limit) {
  limit = 0;
  Check c;
  std::size_t runs = 0;
  for (int t = 0; t < 10; ++t) {
    const auto planted = kgtest::planted_prune_graph(300 + t, 20, 4);
    std::vector<double> scores;
    for (const auto& pg : planted.groups)
      if (pg.percent) scores.push_back(*pg.percent);
    std::sort(scores.begin(), scores.end());
    const double median = scores[(scores.size() - 1) / 2];
    for (const auto& policy :
         {prune::PrunePolicy::all(), prune::PrunePolicy::above_median(), prune::PrunePolicy::above_threshold(60)}) {
      std::size_t removed = 0;
      for (const auto& pg : planted.groups) {
        bool take = policy.kind == prune::PrunePolicy::Kind::All;
        if (policy.kind == prune::PrunePolicy::Kind::AboveMedian) take = pg.percent && *pg.percent > median;
        if (policy.kind == prune::PrunePolicy::Kind::AboveThreshold) take = pg.percent && *pg.percent > 60;
        if (take) removed += pg.members.size() - 1;
      }
      const auto r = prune::prune(planted.graph, policy);
      const auto& h = r.report.histogram;
      const auto bins = std::accumulate(h.groups.begin(), h.groups.end(), std::size_t{0});
      const auto tag = policy.name() + " seed " + std::to_string(300 + t);
      c.expect(r.report.nodes_after == r.report.nodes_before - removed, "node arithmetic, " + tag);
      c.expect(r.graph.node_count() == r.report.nodes_after, "graph size, " + tag);
      c.expect(bins == r.report.groups_scored && r.report.groups_scored == scores.size(), "histogram sum, " + tag);
      ++runs;
    }
  }
  return finish(c, std::to_string(runs) + " prune runs");
}

Outcome query_scan(double& limit) {
  limit = kQuerySeconds;
  Check c;
  Rng rng(404);
  const kgtest::RandomGraphSpec base;
  std::size_t rows = 0;
  for (int t = 0; t < 100; ++t) {
    kgtest::RandomGraphSpec spec;
    spec.nodes = 50 + rng.below(951);
    spec.edges = spec.nodes * (1 + rng.below(2));
    const auto g = kgtest::random_graph(4000 + t, spec);
    const auto q = kgtest::random_query(rng, base.labels, base.predicates, base.values);
    const auto actual = query::run_pattern_query(g, query::parse_query(q.render()));
    c.expect(actual == kgtest::brute_force(g, q), "instance " + std::to_string(t) + ": " + q.render());
    rows += actual.rows.size();
  }
  c.expect(rows > 0, "all instances empty");

  // Uracil share of the documented miR-106a sequence, by character count.
  const std::string seq = "CUGCAAUGUAAGCACUUCUUAC";
  const double by_count = static_cast<double>(std::count(seq.begin(), seq.end(), 'U')) / seq.size();
  c.expect(by_count == 7.0 / 22.0, "character count is not 7/22");
  c.expect(query::u_fraction(seq) == 7.0 / 22.0, "u_fraction != 7/22");
  const auto g = kgtest::mini_graph();
  const auto t = query::run_query(g,
                                  "MATCH (m:miRNA) WHERE u_fraction(m.Sequence) > 0.25 "
                                  "RETURN m.URI AS miRNA, LABELS(m) AS miRNA_type, m.Sequence");
  bool found = false;
  for (const auto& row : t.rows) found = found || std::get<std::string>(row[2]) == seq;
  c.expect(found, "uracil-rich query misses the documented miRNA");
  return finish(c, "100 instances, " + std::to_string(rows) + " rows; u_fraction = 7/22");
}

Outcome balanced_accuracy_unit(double& limit) {
  limit = 0;
  Check c;
  linkpred::Confusion m;
  m.tp = 8;
  m.fn = 2;
  m.tn = 6;
  m.fp = 4;
  const double ba = linkpred::balanced_accuracy(m);
  c.expect(ba == 0.7, "got " + fmt("%.17g", ba));
  return finish(c, "BA = " + fmt("%.6f", ba));
}

Outcome gradient_checks(double& limit) {
  limit = 0;
  Check c;
  double worst_sgns = 0, worst_l1 = 0, worst_l2 = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    worst_sgns = std::max(worst_sgns, kgtest::sgns_gradient_error(7000 + s));
    worst_l1 = std::max(worst_l1, kgtest::transe_gradient_error(8000 + s, true));
    worst_l2 = std::max(worst_l2, kgtest::transe_gradient_error(9000 + s, false));
  }
  c.expect(worst_sgns <= kGradientTolerance, "skip-gram error " + fmt("%.3g", worst_sgns));
  c.expect(worst_l1 <= kGradientTolerance, "TransE L1 error " + fmt("%.3g", worst_l1));
  c.expect(worst_l2 <= kGradientTolerance, "TransE L2 error " + fmt("%.3g", worst_l2));
  return finish(c, "max rel err skip-gram " + fmt("%.2e", worst_sgns) + ", TransE L1 " + fmt("%.2e", worst_l1) +
                       ", L2 " + fmt("%.2e", worst_l2) + " over 100 instances");
}

linkpred::TaskSpec mirna_gene() {
  linkpred::TaskSpec t;
  t.source_label = "miRNA";
  t.target_label = "Gene";
  return t;
}

Outcome linkpred_benchmark(double& limit) {
  limit = kBenchmarkSeconds;
  Check c;
  const auto g = kgtest::two_block_bipartite(11);
  linkpred::EvalOptions opts;
  opts.seed = 11;
  opts.with_control = true;
  const auto r = linkpred::evaluate(g, mirna_gene(), {}, {}, {}, opts);
  c.expect(r.holdouts.size() == 5, "expected 5 holdouts");
  c.expect(r.mean >= kBenchmarkMinMean, "mean " + fmt("%.3f", r.mean));
  c.expect(std::abs(r.control_mean - kControlCenter) <= kControlHalfWidth, "control " + fmt("%.3f", r.control_mean));
  return finish(c, std::to_string(g.node_count()) + " nodes, mean BA " + fmt("%.3f", r.mean) + " sd " +
                       fmt("%.3f", r.stddev) + ", control " + fmt("%.3f", r.control_mean));
}

Outcome time_split(double& limit) {
  limit = kTimeSplitSeconds;
  Check c;
  const int cutoff = 2022;
  const auto f = kgtest::dated_block_graph(12, cutoff, 0.2);
  const auto r = linkpred::evaluate_time_split(f.graph, f.years, cutoff, mirna_gene(), {}, {}, {}, 12);
  std::set<std::pair<std::uint32_t, std::uint32_t>> train;
  for (const auto& d : r.split.train) {
    c.expect(d.year < cutoff, "train edge dated " + std::to_string(d.year));
    train.insert({d.edge.src, d.edge.dst});
  }
  for (const auto& d : r.split.test) {
    c.expect(d.year >= cutoff, "test edge dated " + std::to_string(d.year));
    c.expect(!train.count({d.edge.src, d.edge.dst}), "edge in both sides");
  }
  c.expect(r.split.train.size() == f.planted_pre && r.split.test.size() == f.planted_post, "split sizes differ from plant");
  c.expect(!r.scores.empty(), "nothing scored");
  c.expect(r.fraction_above_half >= kTimeSplitMinFraction, "fraction " + fmt("%.3f", r.fraction_above_half));
  return finish(c, std::to_string(r.split.train.size()) + " train / " + std::to_string(r.split.test.size()) +
                       " test, fraction above 0.5 = " + fmt("%.3f", r.fraction_above_half));
}

Outcome api_conformance(double& limit) {
  limit = 0;
  Check c;
  const auto mini = std::make_shared<const graph::PropertyGraph>(kgtest::mini_graph());
  const auto dir = fs::temp_directory_path() / ("kgforge_accept_api_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  ingest::save_snapshot(*mini, dir);
  api::ApiService built(mini);
  api::ApiService loaded(std::make_shared<const graph::PropertyGraph>(ingest::load_snapshot(dir)));
  fs::remove_all(dir);

  std::set<std::string> endpoints, fields;
  std::function<void(const json&)> collect = [&](const json& j) {
    if (j.is_object())
      for (const auto& [k, v] : j.items()) {
        fields.insert(k);
        if (k != "node_properties" && k != "relationship_properties") collect(v);
      }
    else if (j.is_array())
      for (const auto& v : j) collect(v);
  };
  std::size_t checked = 0;
  for (const auto& g : kgtest::golden_requests()) {
    const auto a = built.handle(g.request);
    c.expect(a.status == 200, g.name + " status " + std::to_string(a.status));
    const auto body = json::parse(a.body);
    const auto errors = kgtest::validate_schema(kgtest::load_schema(g.schema), body);
    c.expect(errors.empty(), g.name + ": " + (errors.empty() ? "" : errors.front()));
    c.expect(loaded.handle(g.request).body == a.body, g.name + " differs after snapshot round trip");
    c.expect(kgtest::read_file(kgtest::golden_path(g)) == a.body, g.name + " differs from stored golden");
    endpoints.insert(g.request.path);
    collect(body);
    ++checked;
  }
  for (const char* p : {"/api/v1/query", "/api/v1/node/id", "/api/v1/relationships/id", "/api/v1/rel_metadata"})
    c.expect(endpoints.count(p), std::string("no golden for ") + p);
  for (const char* f : {"node_uri", "node_id", "node_labels", "node_properties", "relationship_type",
                        "relationship_properties", "total_count"})
    c.expect(fields.count(f), std::string("field never emitted: ") + f);
  return finish(c, std::to_string(checked) + " responses schema-valid and byte-stable");
}

// 10k nodes over RNAcentral, Entrez and MONDO ids with random edges.
ingest::BuildInputs write_large_fixture(const fs::path& dir) {
  Rng rng(1010);
  std::vector<graph::Node> nodes;
  for (std::size_t i = 0; i < 10000; ++i) {
    graph::Node n;
    char buf[64];
    switch (i % 3) {
      case 0:
        std::snprintf(buf, sizeof buf, "URS%010zX_9606", 0x100000 + i);
        n.curie = std::string("RNAcentral:") + buf;
        n.uri = std::string("https://rnacentral.org/rna/") + buf;
        n.labels = {"RNA", "sncRNA", "Small_regulatory_ncRNA", "ncRNA", "miRNA"};
        n.properties.add("Sequence", kgtest::random_sequence(rng, 18 + rng.below(8)));
        break;
      case 1:
        n.curie = "Entrez:" + std::to_string(100000 + i);
        n.uri = "https://www.ncbi.nlm.nih.gov/gene/" + std::to_string(100000 + i);
        n.labels = {"Gene"};
        break;
      default:
        std::snprintf(buf, sizeof buf, "%07zu", 1000000 + i);
        n.curie = std::string("MONDO:") + buf;
        n.uri = std::string("http://purl.obolibrary.org/obo/MONDO_") + buf;
        n.labels = {"Disease"};
    }
    n.properties.add("Label", "entity " + std::to_string(i));
    nodes.push_back(std::move(n));
  }
  std::vector<ingest::EdgeRecord> edges;
  std::set<std::tuple<std::size_t, std::size_t, std::string>> seen;
  const std::vector<std::string> preds = {"regulates_activity_of", "causes_or_contributes_to_condition", "interacts_with"};
  while (edges.size() < 30000) {
    const auto a = rng.below(nodes.size()), b = rng.below(nodes.size());
    const auto& p = preds[rng.below(preds.size())];
    if (a == b || !seen.insert({a, b, p}).second) continue;
    graph::PropertyMap props;
    props.add("Source", rng.uniform() < 0.5 ? "HMDD" : "miRTarBase");
    props.add("PubMedID", std::to_string(20000000 + rng.below(5000)));
    edges.push_back({nodes[a].curie, p, nodes[b].curie, props, 0});
  }
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "nodes.tsv");
    ingest::write_nodes(f, nodes);
  }
  {
    std::ofstream f(dir / "edges.tsv");
    ingest::write_edges(f, edges);
  }
  ingest::BuildInputs in;
  in.node_files = {dir / "nodes.tsv"};
  in.edge_files = {dir / "edges.tsv"};
  return in;
}

Outcome ingest_round_trip(double& limit) {
  limit = 0;
  Check c;
  const auto dir = fs::temp_directory_path() / ("kgforge_accept_ingest_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  ingest::IngestReport report;
  const auto g = ingest::build_graph(write_large_fixture(dir / "src"), report);
  c.expect(report.rejects.empty(), "fixture rows rejected");
  const auto manifest = ingest::save_snapshot(g, dir / "snap");
  const auto loaded = ingest::load_snapshot(dir / "snap");
  ingest::BuildInputs again;
  again.node_files = {dir / "snap" / "nodes.tsv"};
  again.edge_files = {dir / "snap" / "edges.tsv"};
  ingest::IngestReport report2;
  const auto rebuilt = ingest::build_graph(again, report2);
  const auto hash = ingest::content_hash(g);
  c.expect(g.node_count() == 10000, "node count " + std::to_string(g.node_count()));
  c.expect(loaded.stats() == g.stats(), "stats differ after load");
  c.expect(rebuilt.stats() == g.stats(), "stats differ after rebuild");
  c.expect(ingest::content_hash(loaded) == hash && ingest::content_hash(rebuilt) == hash && manifest.content_hash == hash,
           "content hash differs");
  fs::remove_all(dir);
  return finish(c, std::to_string(g.node_count()) + " nodes, " + std::to_string(g.edge_count()) + " edges, hash " +
                       hash.substr(0, 12));
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)(double&);
  };
  const Criterion criteria[] = {
      {"alignment-oracle", alignment_oracle},
      {"isomorphic-group-oracle", iso_oracle},
      {"pruning-arithmetic", pruning_arithmetic},
      {"query-scan-equivalence", query_scan},
      {"balanced-accuracy-unit", balanced_accuracy_unit},
      {"gradient-checks", gradient_checks},
      {"linkpred-benchmark", linkpred_benchmark},
      {"time-stratified-protocol", time_split},
      {"api-schema-conformance", api_conformance},
      {"ingest-round-trip", ingest_round_trip},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    double limit = 0;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = cr.run(limit);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit > 0 && secs >= limit) {
      o.pass = false;
      o.detail += "; over time limit " + fmt("%.0f", limit) + "s";
    }
    failures += !o.pass;
    std::printf("%s %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", cr.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures;
}
