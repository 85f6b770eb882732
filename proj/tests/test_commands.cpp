#include <doctest.h>

#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "topstab/commands.hpp"
#include "topstab/digest.hpp"
#include "topstab/io.hpp"

using namespace topstab;
namespace fs = std::filesystem;

namespace {

const char* kTinyConfig = R"({
  "generation": {"k_true": 3, "documents": 30, "terms": 30, "doc_length": 20,
                 "distribution": "uniform_separable", "n_corpora": 2, "seed": 4},
  "lda": {"iterations": 30, "burn_in": 10, "thin": 5},
  "sweep": {"k_min": 2, "k_max": 4, "runs": 3}
})";

fs::path write_config(const TempDir& dir, const std::string& text) {
  const auto path = dir / "config.json";
  io::write_text(path, text);
  return path;
}

std::vector<std::string> contents(const std::vector<fs::path>& files) {
  std::vector<std::string> out;
  for (const auto& f : files) out.push_back(io::read_text(f));
  return out;
}

std::vector<std::string> names(const std::vector<fs::path>& files) {
  std::vector<std::string> out;
  for (const auto& f : files) out.push_back(f.filename().string());
  return out;
}

void check_manifest(const cli::CommandOutput& out) {
  const auto m = nlohmann::json::parse(io::read_text(out.manifest));
  CHECK(m["tool"] == "topstab");
  CHECK(m["version"] == cli::kToolVersion);
  CHECK(m.contains("config"));
  CHECK(m.contains("started_at"));
  REQUIRE(m["files"].size() == out.files.size());
  for (std::size_t i = 0; i < out.files.size(); ++i) {
    CHECK(m["files"][i]["name"] == out.files[i].filename().string());
    CHECK(m["files"][i]["sha256"] == sha256_file(out.files[i]));
  }
}

}  // namespace

TEST_CASE("sha256 reference values") {
  CHECK(sha256_hex(std::string_view("")) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex(std::string_view("abc")) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("generate with one corpus writes three data files, vocabulary and manifest") {
  TempDir dir("gen1");
  const auto cfg = write_config(dir, R"({"generation": {"k_true": 3, "documents": 10, "terms": 12,
                                         "doc_length": 5, "n_corpora": 1},
                                         "sweep": {"k_min": 3, "k_max": 3}})");
  const auto out = cli::cmd_generate(cfg, dir / "out");
  CHECK(names(out.files) == std::vector<std::string>{"vocabulary.txt", "corpus_000.txt", "phi_000.csv", "theta_000.csv"});
  CHECK(fs::exists(out.manifest));
  check_manifest(out);
  const auto vocab = io::parse_vocabulary(io::read_text(out.files[0]));
  const auto corpus = io::parse_corpus(io::read_text(out.files[1]), vocab);
  CHECK(corpus.num_documents() == 10);
  CHECK(io::parse_topic_word(io::read_text(out.files[2])).topics() == 3);
  CHECK(io::parse_doc_topic(io::read_text(out.files[3])).documents() == 10);
}

TEST_CASE("generate reruns are byte identical at any worker count") {
  TempDir dir("gen2");
  const auto cfg = write_config(dir, kTinyConfig);
  cli::Overrides one;
  one.workers = 1;
  cli::Overrides many;
  many.workers = 3;
  const auto a = cli::cmd_generate(cfg, dir / "a", one);
  const auto b = cli::cmd_generate(cfg, dir / "b", many);
  CHECK(names(a.files) == names(b.files));
  CHECK(contents(a.files) == contents(b.files));
  CHECK(a.files.size() == 1 + 3 * 2);

  cli::Overrides seeded = one;
  seeded.seed = 99;
  const auto c = cli::cmd_generate(cfg, dir / "c", seeded);
  CHECK(contents(c.files)[1] != contents(a.files)[1]);
  const auto m = nlohmann::json::parse(io::read_text(c.manifest));
  CHECK(m["master_seed"] == 99);
}

TEST_CASE("sweep writes both CSVs with fixed schemas") {
  TempDir dir("sweep");
  const auto cfg = write_config(dir, kTinyConfig);
  cli::Overrides o;
  o.workers = 2;
  const auto out = cli::cmd_sweep(cfg, dir / "out", o);
  CHECK(names(out.files) == std::vector<std::string>{"samples.csv", "stability.csv"});
  check_manifest(out);
  const auto samples = io::parse_samples(io::read_text(out.files[0]));
  const auto records = io::parse_stability(io::read_text(out.files[1]));
  // (within K2, K3, K4 + between K3) x 3 measures
  CHECK(records.size() == 4 * 3);
  for (const auto& r : records) {
    CHECK(r.distribution == "uniform_separable");
    CHECK(r.t == 2);
  }
  const auto m = nlohmann::json::parse(io::read_text(out.manifest));
  CHECK(m["runs"].size() == 2 * 3 * 3);
  CHECK(samples.size() > 0);
}

TEST_CASE("sweep reruns are byte identical at any worker count") {
  TempDir dir("sweep2");
  const auto cfg = write_config(dir, kTinyConfig);
  cli::Overrides one;
  one.workers = 1;
  cli::Overrides many;
  many.workers = 4;
  const auto a = cli::cmd_sweep(cfg, dir / "a", one);
  const auto b = cli::cmd_sweep(cfg, dir / "b", many);
  CHECK(contents(a.files) == contents(b.files));
}

TEST_CASE("K_true outside the range warns and yields no between rows") {
  TempDir dir("warn");
  const auto cfg = write_config(dir, R"({
    "generation": {"k_true": 5, "documents": 20, "terms": 20, "doc_length": 10, "n_corpora": 1},
    "lda": {"iterations": 10, "burn_in": 5},
    "sweep": {"k_min": 2, "k_max": 3, "runs": 2}})");
  std::ostringstream log;
  cli::Overrides o;
  o.log = &log;
  const auto out = cli::cmd_sweep(cfg, dir / "out", o);
  CHECK(log.str().find("warning: k_true=5") != std::string::npos);
  for (const auto& r : io::parse_stability(io::read_text(out.files[1]))) CHECK(r.kind == ComparisonKind::kWithin);
}

TEST_CASE("measure override restricts the output") {
  TempDir dir("measures");
  const auto cfg = write_config(dir, kTinyConfig);
  cli::Overrides o;
  o.measures = std::vector<Measure>{Measure::kJis};
  const auto out = cli::cmd_sweep(cfg, dir / "out", o);
  for (const auto& r : io::parse_stability(io::read_text(out.files[1]))) CHECK(r.measure == Measure::kJis);
  o.measures = std::vector<Measure>{};
  CHECK_THROWS_AS(cli::cmd_sweep(cfg, dir / "out2", o), ConfigError);
}

TEST_CASE("ingest-sweep round trip and errors") {
  TempDir dir("ingest");
  const auto cfg = write_config(dir, R"({
    "lda": {"iterations": 20, "burn_in": 10},
    "sweep": {"k_min": 2, "k_max": 3, "runs": 2},
    "preprocess": {"min_term_count": 1}})");
  Vocabulary v({"xbb", "xbc", "xbd", "xbf", "xbg", "xbh", "xbj", "xbk", "xbm", "xbn", "xbp", "xbq"});
  std::vector<Document> docs;
  for (TermId m = 0; m < 12; ++m) docs.push_back({m, static_cast<TermId>((m + 1) % 12), static_cast<TermId>((m + 5) % 12)});
  cli::export_text(Corpus(v, docs), dir / "texts");
  CHECK(fs::exists(dir / "texts" / "doc_0000.txt"));

  const auto a = cli::cmd_ingest_sweep(dir / "texts", cfg, dir / "a");
  const auto b = cli::cmd_ingest_sweep(dir / "texts", cfg, dir / "b");
  CHECK(names(a.files) == std::vector<std::string>{"stability.csv"});
  CHECK(contents(a.files) == contents(b.files));
  check_manifest(a);
  const auto m = nlohmann::json::parse(io::read_text(a.manifest));
  CHECK(m["input"]["documents"] == 12);
  CHECK(m["input"]["terms"] == 12);
  for (const auto& r : io::parse_stability(io::read_text(a.files[0]))) {
    CHECK(r.kind == ComparisonKind::kWithin);
    CHECK(r.distribution == "real");
  }

  fs::create_directories(dir / "empty");
  CHECK_THROWS_AS(cli::cmd_ingest_sweep(dir / "empty", cfg, dir / "c"), UserError);
}

TEST_CASE("invalid configs are user errors") {
  TempDir dir("bad");
  CHECK_THROWS_AS(cli::cmd_generate(dir / "missing.json", dir / "out"), ConfigError);
  const auto cfg = write_config(dir, R"({"generation": {"k_true": 1}})");
  CHECK_THROWS_AS(cli::cmd_generate(cfg, dir / "out"), ConfigError);
  const auto ok = write_config(dir, R"({"generation": {"k_true": 3, "documents": 5, "terms": 5,
                                        "doc_length": 3, "n_corpora": 1},
                                        "sweep": {"k_min": 3, "k_max": 3, "top_n": 5}})");
  io::write_text(dir / "blocker", "x");
  CHECK_THROWS_AS(cli::cmd_generate(ok, dir / "blocker"), UserError);
}
