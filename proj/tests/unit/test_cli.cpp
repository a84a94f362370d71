#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "api_goldens.hpp"
#include "generators.hpp"
#include "json.hpp"
#include "kgforge/api/service.hpp"
#include "kgforge/cli/commands.hpp"
#include "kgforge/ingest/snapshot.hpp"
#include "kgforge/prune/pruning.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "kgforge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = kgforge::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("kgforge_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string build_mini() {
    const auto mini = kgtest::fixture_dir() + "/mini/";
    const auto snap = path("mini_snap");
    auto r = run_cli({"build", "--nodes", mini + "nodes.tsv", "--edges", mini + "edges.tsv", "--lookup",
                      mini + "lookup.tsv", "--terms", mini + "terms.tsv", "--class-map", mini + "class_map.tsv",
                      "--out", snap});
    EXPECT_EQ(r.code, 0) << r.err;
    return snap;
  }

  std::string save(const kgforge::graph::PropertyGraph& g, const std::string& name) {
    kgforge::ingest::save_snapshot(g, path(name));
    return path(name);
  }

  void write(const std::string& name, const std::string& content) { std::ofstream(path(name)) << content; }

  fs::path dir_;
};

const std::vector<std::string> kSmallEmbedding = {"--dimensions", "8", "--epochs", "1", "--walks-per-node", "2",
                                                  "--walk-length", "10"};

std::vector<std::string> operator+(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

TEST_F(Cli, HelpMatchesGolden) {
  auto r = run_cli({"--help"});
  ASSERT_EQ(r.code, 0);
  const auto golden = std::string(KGFORGE_TEST_DATA) + "/golden/cli_help.txt";
  if (kgtest::update_goldens_requested()) std::ofstream(golden, std::ios::binary) << r.out;
  EXPECT_EQ(r.out, kgtest::read_file(golden));
  for (const char* sub : {"build", "stats", "query", "view", "prune", "embed", "linkpred", "timesplit", "serve"})
    EXPECT_NE(r.out.find(sub), std::string::npos) << sub;
}

TEST_F(Cli, SubcommandHelp) {
  auto r = run_cli({"linkpred", "--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("--unbalance-rate"), std::string::npos);
  EXPECT_NE(r.out.find("--holdouts"), std::string::npos);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"stats", "--snapshot", path("absent")}).code, 2);
  auto r = run_cli({"build", "--nodes", path("absent.tsv"), "--out", path("x")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("absent.tsv"), std::string::npos);
}

TEST_F(Cli, BuildThenStatsMatchesInProcess) {
  const auto snap = build_mini();
  const auto expected = kgtest::mini_graph();
  auto r = run_cli({"stats", "--snapshot", snap});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  const auto s = expected.stats();
  EXPECT_EQ(j["node_count"], s.node_count);
  EXPECT_EQ(j["edge_count"], s.edge_count);
  EXPECT_EQ(j["labels"], json(s.label_counts));
  EXPECT_EQ(j["predicates"], json(s.predicate_counts));
  EXPECT_EQ(j["content_hash"], kgforge::ingest::content_hash(expected));
  EXPECT_EQ(kgforge::ingest::load_snapshot(snap).stats(), s);
}

TEST_F(Cli, BuildReportsRejects) {
  const auto mini = kgtest::fixture_dir() + "/mini/";
  auto r = run_cli({"build", "--nodes", mini + "nodes.tsv", "--edges", mini + "edges.tsv", "--lookup",
                    mini + "lookup.tsv", "--terms", mini + "terms.tsv", "--class-map", mini + "class_map.tsv", "--out",
                    path("snap"), "--report", path("report.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(kgtest::read_file(path("report.json")));
  EXPECT_EQ(j, json::parse(r.out));
  ASSERT_EQ(j["rejects"].size(), 1u);
  EXPECT_NE(j["rejects"][0]["reason"].get<std::string>().find("NoSuchDatabase"), std::string::npos);
}

TEST_F(Cli, BuildIsDeterministic) {
  const auto a = build_mini();
  const auto mini = kgtest::fixture_dir() + "/mini/";
  auto r = run_cli({"build", "--nodes", mini + "nodes.tsv", "--edges", mini + "edges.tsv", "--lookup",
                    mini + "lookup.tsv", "--terms", mini + "terms.tsv", "--class-map", mini + "class_map.tsv", "--out",
                    path("again")});
  ASSERT_EQ(r.code, 0);
  for (const char* f : {"nodes.tsv", "edges.tsv", "manifest.json"})
    EXPECT_EQ(kgtest::read_file(a + "/" + f), kgtest::read_file(path("again") + "/" + f)) << f;
}

TEST_F(Cli, QueryJsonMatchesApi) {
  const auto snap = build_mini();
  const std::string q = "MATCH (m:miRNA)-[r]->(d:Disease) RETURN m.URI AS miRNA, r.PubMedID, d.URI AS Disease";
  auto r = run_cli({"query", "--snapshot", snap, "--query", q, "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  kgforge::api::ApiService svc(std::make_shared<const kgforge::graph::PropertyGraph>(kgtest::mini_graph()));
  kgforge::api::Request req{"POST", "/api/v1/query", {}, json{{"query", q}}.dump()};
  EXPECT_EQ(r.out, svc.handle(req).body);
}

TEST_F(Cli, QueryCsvAndFileInput) {
  const auto snap = build_mini();
  write("q.txt", "MATCH (c:Cell)-[:develops_from]->(p:Cell)\nRETURN c.URI AS child, p.URI AS parent");
  auto r = run_cli({"query", "--snapshot", snap, "--query-file", path("q.txt"), "--out", path("out.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = kgtest::read_file(path("out.csv"));
  EXPECT_EQ(csv.rfind("child,parent\r\n", 0), 0u);  // RFC 4180 line breaks
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
}

TEST_F(Cli, QueryErrors) {
  const auto snap = build_mini();
  auto r = run_cli({"query", "--snapshot", snap, "--query", "MATCH (n RETURN n"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
  EXPECT_EQ(run_cli({"query", "--snapshot", snap}).code, 2);
  EXPECT_EQ(run_cli({"query", "--snapshot", snap, "--query", "x", "--shared-citations", "A,B,C"}).code, 2);
}

TEST_F(Cli, ViewExportMatchesApi) {
  const auto snap = build_mini();
  auto r = run_cli({"view", "--snapshot", snap, "--label", "miRNA,Disease", "--label", "lncRNA", "--predicate",
                    "causes_or_contributes_to_condition,interacts_with", "--out", path("view")});
  ASSERT_EQ(r.code, 0) << r.err;
  kgforge::api::ApiService svc(std::make_shared<const kgforge::graph::PropertyGraph>(kgtest::mini_graph()));
  const std::string body =
      R"({"labels": ["miRNA", "Disease", "lncRNA"], "predicates": ["causes_or_contributes_to_condition", "interacts_with"]})";
  for (const char* part : {"nodes.csv", "edges.csv"}) {
    auto resp = svc.handle({"POST", std::string("/api/v1/views/") + part, {}, body});
    ASSERT_EQ(resp.status, 200);
    EXPECT_EQ(kgtest::read_file(path("view") + "/" + part), resp.body) << part;
  }
  EXPECT_EQ(run_cli({"view", "--snapshot", snap, "--out", path("empty")}).code, 3);
}

TEST_F(Cli, PruneAllWritesSnapshotAndReport) {
  const auto g = kgtest::random_graph_with_twins(5, 80);
  const auto snap = save(g, "twins");
  auto r = run_cli({"prune", "--snapshot", snap, "--policy", "all", "--out", path("pruned"), "--report",
                    path("prune.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto expected = kgforge::prune::prune(g, kgforge::prune::PrunePolicy::parse("all"));
  ASSERT_GT(expected.report.groups_collapsed, 0u);
  EXPECT_EQ(kgforge::ingest::load_snapshot(path("pruned")).stats(), expected.graph.stats());
  const auto j = json::parse(kgtest::read_file(path("prune.json")));
  EXPECT_EQ(j, json::parse(kgforge::prune::to_json(expected.report).dump()));
  EXPECT_NE(r.out.find("collapsed " + std::to_string(expected.report.groups_collapsed)), std::string::npos);
  EXPECT_EQ(run_cli({"prune", "--snapshot", snap, "--policy", "most"}).code, 2);
}

TEST_F(Cli, EmbedDeterministicAndConfigPrecedence) {
  const auto snap = build_mini();
  auto base = std::vector<std::string>{"embed", "--snapshot", snap} + kSmallEmbedding;
  auto a = run_cli(std::vector<std::string>{"--seed", "7"} + base);
  auto b = run_cli(std::vector<std::string>{"--seed", "7"} + base);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());

  write("cfg.ini", "# shared settings\nseed = 7\ndimensions = 8\n");
  auto from_file = run_cli(std::vector<std::string>{"--config", path("cfg.ini")} + base);
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(from_file.out, a.out);

  auto flag_wins = run_cli(std::vector<std::string>{"--config", path("cfg.ini"), "--seed", "9"} + base);
  auto plain9 = run_cli(std::vector<std::string>{"--seed", "9"} + base);
  EXPECT_EQ(flag_wins.out, plain9.out);
  EXPECT_NE(flag_wins.out, a.out);

  write("sub.ini", "dimensions = 4\n");
  auto sub = run_cli({"--config", path("sub.ini"), "embed", "--snapshot", snap, "--epochs", "1", "--walks-per-node",
                      "2", "--walk-length", "10"});
  ASSERT_EQ(sub.code, 0) << sub.err;
  std::istringstream first_line(sub.out.substr(0, sub.out.find('\n')));
  std::string cell;
  std::size_t cells = 0;
  while (std::getline(first_line, cell, '\t')) ++cells;
  EXPECT_EQ(cells, 5u);  // id + 4 dimensions

  write("bad.ini", "no_such_key = 1\n");
  EXPECT_EQ(run_cli(std::vector<std::string>{"--config", path("bad.ini")} + base).code, 2);
  EXPECT_EQ(run_cli(base + std::vector<std::string>{"--norm", "L3"}).code, 2);
  EXPECT_EQ(run_cli(base + std::vector<std::string>{"--method", "word2vec"}).code, 2);
}

TEST_F(Cli, LinkpredRepeatableAndCategoryErrors) {
  kgtest::BlockGraphSpec spec;
  spec.mirnas = spec.genes = 60;
  spec.communities_per_block = 3;
  spec.edges_per_mirna = 3;
  const auto snap = save(kgtest::two_block_bipartite(3, spec), "blocks");
  auto args = std::vector<std::string>{"linkpred", "--snapshot", snap, "--source-label", "miRNA", "--target-label",
                                       "Gene", "--holdouts", "2", "--n-estimators", "5", "--method", "node2vec,line"} +
              kSmallEmbedding;
  auto a = run_cli(args + std::vector<std::string>{"--out", path("a.tsv"), "--json", path("a.json")});
  ASSERT_EQ(a.code, 0) << a.err;
  auto b = run_cli(args + std::vector<std::string>{"--out", path("b.tsv")});
  ASSERT_EQ(b.code, 0) << b.err;
  const auto tsv = kgtest::read_file(path("a.tsv"));
  EXPECT_EQ(tsv, kgtest::read_file(path("b.tsv")));
  EXPECT_NE(tsv.find("node2vec"), std::string::npos);
  EXPECT_NE(tsv.find("LINE"), std::string::npos);
  EXPECT_NE(tsv.find("miRNA-Gene"), std::string::npos);
  const auto j = json::parse(kgtest::read_file(path("a.json")));
  EXPECT_EQ(j.size(), 2u);

  auto missing = run_cli({"linkpred", "--snapshot", snap, "--source-label", "Protein", "--target-label", "Gene"});
  EXPECT_EQ(missing.code, 3);
  EXPECT_NE(missing.err.find("Protein"), std::string::npos);
  EXPECT_EQ(run_cli({"linkpred", "--snapshot", snap, "--source-label", "miRNA", "--target-label", "Gene", "--task",
                     "Sideways"})
                .code,
            2);
}

TEST_F(Cli, TimesplitReport) {
  kgtest::BlockGraphSpec spec;
  spec.mirnas = spec.genes = 60;
  spec.communities_per_block = 3;
  spec.edges_per_mirna = 3;
  auto fx = kgtest::dated_block_graph(4, 2022, 0.2, spec);
  const auto snap = save(fx.graph, "dated");
  std::ofstream years(path("years.tsv"));
  years << "pmid\tyear\n";
  for (const auto& [pmid, year] : fx.years.entries()) years << pmid << "\t" << year << "\n";
  years.close();
  auto r = run_cli(std::vector<std::string>{"timesplit", "--snapshot", snap, "--pmid-years", path("years.tsv"),
                                            "--cutoff", "2022", "--source-label", "miRNA", "--target-label", "Gene",
                                            "--n-estimators", "5"} +
                   kSmallEmbedding);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["cutoff"], 2022);
  EXPECT_TRUE(j.contains("fraction_above_half"));
  auto late = run_cli({"timesplit", "--snapshot", snap, "--pmid-years", path("years.tsv"), "--cutoff", "2100",
                       "--source-label", "miRNA", "--target-label", "Gene"});
  EXPECT_EQ(late.code, 3);
}

TEST_F(Cli, BinaryExitStatus) {
  const auto snap = build_mini();
  auto status = [](const std::string& cmd) {
    const int s = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  const std::string bin = KGFORGE_CLI_PATH;
  EXPECT_EQ(status(bin + " stats --snapshot " + snap), 0);
  EXPECT_EQ(status(bin + " stats --snapshot " + path("absent")), 2);
  EXPECT_EQ(status(bin + " linkpred --snapshot " + snap + " --source-label Nope --target-label Gene"), 3);
}
