#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "segcsr/segcsr.hpp"

using namespace segcsr;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status = -1;
  std::string out;
};

Outcome run_cli(const std::string& args) {
  const std::string cmd = std::string(SEGCSR_CLI_PATH) + " " + args + " 2>&1";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("segcsr_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write_text(const std::string& name, const std::string& body) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::string hex(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

nlohmann::json last_json(const std::string& out) {
  std::istringstream in(out);
  std::string line, last;
  while (std::getline(in, line)) {
    if (!line.empty() && line.front() == '{') last = line;
  }
  return nlohmann::json::parse(last);
}

}  // namespace

TEST_F(CliTest, PageRankOnTwoCycle) {
  const std::string g = write_text("cycle.txt", "0 1\n1 0\n");
  const Outcome r = run_cli("run --graph " + g + " --app pagerank --iters 20 --json");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto report = last_json(r.out);
  const std::vector<double> expected{1.0, 1.0};
  EXPECT_EQ(report["resultDigest"], hex(digest_of<double>(expected)));
  EXPECT_EQ(report["perIteration"].size(), 20u);
  EXPECT_EQ(report["segmentCount"], 1);
  for (const char* key : {"graph", "app", "ordering", "segmentVertices", "blockVertices", "workers", "preprocess", "q",
                          "trafficEstimate"}) {
    EXPECT_TRUE(report.contains(key)) << key;
  }
}

TEST_F(CliTest, DigestIndependentOfWorkers) {
  const std::string g = path("rmat.bin");
  ASSERT_EQ(run_cli("generate --rmat 10 8 --seed 3 --symmetrize --ratings --out " + g).status, 0);
  for (const char* app : {"pagerank", "cc", "cf", "bc"}) {
    const std::string base = "run --graph " + g + " --app " + app + " --iters 5 --llc-bytes 1024 --block-bytes 128 --json";
    const auto one = last_json(run_cli(base + " --workers 1").out);
    const auto eight = last_json(run_cli(base + " --workers 8").out);
    EXPECT_EQ(one["resultDigest"], eight["resultDigest"]) << app;
    EXPECT_EQ(eight["workers"], 8) << app;
    EXPECT_GT(one["segmentCount"].get<int>(), 1) << app;
  }
}

TEST_F(CliTest, ComponentsOnTwoPairs) {
  const std::string g = write_text("pairs.txt", "0 1\n1 0\n2 3\n3 2\n");
  const Outcome r = run_cli("run --graph " + g + " --app cc --json");
  ASSERT_EQ(r.status, 0) << r.out;
  const std::vector<VertexId> expected{0, 0, 2, 2};
  EXPECT_EQ(last_json(r.out)["resultDigest"], hex(digest_of<VertexId>(expected)));
}

TEST_F(CliTest, OrderingDoesNotChangeComponentDigest) {
  const std::string g = path("rmat.bin");
  ASSERT_EQ(run_cli("generate --rmat 9 4 --seed 5 --symmetrize --out " + g).status, 0);
  std::string digest;
  for (const char* order : {"original", "random", "clustered"}) {
    const Outcome r = run_cli("run --graph " + g + " --app cc --llc-bytes 256 --json --ordering " + order);
    ASSERT_EQ(r.status, 0) << r.out;
    const std::string d = last_json(r.out)["resultDigest"];
    if (digest.empty()) digest = d;
    EXPECT_EQ(d, digest) << order;
  }
}

TEST_F(CliTest, AnalyzeRowsRespectBounds) {
  const std::string g = path("rmat.bin");
  ASSERT_EQ(run_cli("generate --rmat 10 8 --seed 2 --out " + g).status, 0);
  const Outcome r = run_cli("analyze --graph " + g + " --sweep-k 1,2,4,8 --json");
  ASSERT_EQ(r.status, 0) << r.out;
  std::istringstream in(r.out);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    const auto row = nlohmann::json::parse(line);
    EXPECT_LE(row["q"].get<double>(), row["qUpperBound"].get<double>() + 1e-12);
    const auto slots = row["destinationSlots"].get<std::uint64_t>();
    EXPECT_EQ(row["trafficEstimate"]["total"].get<std::uint64_t>(), 1024u * 8 + 2 * slots + 1024);
    ++rows;
  }
  EXPECT_EQ(rows, 12);
}

TEST_F(CliTest, ConvertRoundTrip) {
  const std::string txt = write_text("g.txt", "# comment\n0 1 2.5\n2 0 0.125\n1 2 3\n");
  const std::string bin = path("g.bin"), back = path("back.txt");
  ASSERT_EQ(run_cli("convert --in " + txt + " --out " + bin).status, 0);
  ASSERT_EQ(run_cli("convert --in " + bin + " --out " + back).status, 0);
  std::ifstream a(txt), b(back);
  const CsrGraph ga = build_csr(parse_edge_list(a)), gb = build_csr(parse_edge_list(b));
  EXPECT_EQ(ga, gb);
  EXPECT_EQ(read_binary(bin), ga);
}

TEST_F(CliTest, ValidateAndErrors) {
  const std::string good = write_text("good.txt", "0 1\n1 2\n");
  EXPECT_EQ(run_cli("validate --graph " + good).status, 0);

  const std::string bad = write_text("bad.bin", "SEGCSR\0\0garbage");
  std::ofstream(bad, std::ios::binary).write("SEGCSR\0\0\x01\x00\x00\x00\x05", 13);
  const Outcome v = run_cli("validate --graph " + bad);
  EXPECT_NE(v.status, 0);
  EXPECT_NE(v.out.find("invalid"), std::string::npos) << v.out;

  const Outcome missing = run_cli("run --graph " + path("nope.bin"));
  EXPECT_NE(missing.status, 0);
  EXPECT_EQ(missing.out.rfind("error: ", 0), 0u) << missing.out;

  const std::string malformed = write_text("m.txt", "0 1\n1 x\n");
  const Outcome m = run_cli("run --graph " + malformed);
  EXPECT_NE(m.status, 0);
  EXPECT_NE(m.out.find("line 2"), std::string::npos) << m.out;

  const std::string unweighted = write_text("u.txt", "0 1\n1 0\n");
  EXPECT_NE(run_cli("run --graph " + unweighted + " --app cf").status, 0);
  EXPECT_NE(run_cli("run --graph " + unweighted + " --app nope").status, 0);
  EXPECT_NE(run_cli("generate --rmat 4 4 0.6 0.3 0.3 --out " + path("x.bin")).status, 0);
}
