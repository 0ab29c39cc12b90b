#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "stripack/bench.hpp"
#include "stripack/error.hpp"
#include "stripack/json_io.hpp"
#include "stripack/reduction.hpp"
#include "stripack/render.hpp"
#include "stripack/solvers.hpp"

using namespace stripack;
namespace fs = std::filesystem;

namespace {

const fs::path kGolden = STRIPACK_GOLDEN_DIR;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("stripack_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string P(const std::string& name) const { return (dir_ / name).string(); }

  // Runs the CLI and returns its exit status; stdout/stderr go to a log file.
  int Run(const std::string& args, const std::string& env = "") const {
    const std::string cmd = env + " \"" + std::string(STRIPACK_CLI) + "\" " + args + " > \"" +
                            P("log.txt") + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  void Write(const std::string& name, const std::string& text) const {
    std::ofstream(P(name)) << text;
  }

  fs::path dir_;
};

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t Count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

}  // namespace

TEST_F(Cli, ReduceValidateExtractRoundTrip) {
  const std::string tp = (kGolden / "tp_n1.json").string();
  const std::string cover = (kGolden / "cover_n1.json").string();
  ASSERT_EQ(Run("reduce --in " + tp + " --out " + P("i.json") + " --params " + P("p.json") +
                " --cover " + cover + " --packing " + P("c.json")),
            0);
  const Instance inst = InstanceFromJson(ReadJsonFile(P("i.json")));
  EXPECT_EQ(inst.items.size(), 11u);
  EXPECT_EQ(inst.W, 312);
  EXPECT_EQ(Run("validate --instance " + P("i.json") + " --packing " + P("c.json")), 0);
  ASSERT_EQ(Run("extract --instance " + P("i.json") + " --params " + P("p.json") + " --packing " +
                P("c.json") + " --out " + P("x.json")),
            0);
  const TripleCover got = CoverFromJson(ReadJsonFile(P("x.json")));
  EXPECT_TRUE(IsValidCover({1, {-1, 0, 1}}, got));

  // A shelf packing is taller than 11: extraction fails with exit 1.
  ASSERT_EQ(Run("solve --algo nfdh --instance " + P("i.json") + " --out " + P("s.json")), 0);
  EXPECT_EQ(Run("extract --instance " + P("i.json") + " --params " + P("p.json") + " --packing " +
                P("s.json") + " --out " + P("y.json")),
            1);
}

TEST_F(Cli, BadInputExitCodes) {
  Write("malformed.json", "{\"n\": 1,");
  EXPECT_EQ(Run("reduce --in " + P("malformed.json") + " --out " + P("o.json")), 2);
  Write("sum.json", R"({"n": 1, "s": [1, 0, 0]})");
  EXPECT_EQ(Run("reduce --in " + P("sum.json") + " --out " + P("o.json")), 2);
  Write("extra.json", R"({"n": 1, "s": [1, 0, -1], "t": 0})");
  EXPECT_EQ(Run("reduce --in " + P("extra.json") + " --out " + P("o.json")), 2);
  EXPECT_EQ(Run("validate --instance " + P("missing.json") + " --packing " + P("x.json")), 2);
  EXPECT_EQ(Run("solve --algo nope --instance " + P("missing.json") + " --out " + P("o.json")), 2);
}

TEST_F(Cli, ValidateReportsInvalidPacking) {
  Write("i.json", R"({"W": 4, "items": [{"id": 1, "w": 3, "h": 2}, {"id": 2, "w": 2, "h": 2}]})");
  Write("bad.json", R"({"height": 2, "placements": [{"id": 1, "x": 0, "y": 0}, {"id": 2, "x": 2, "y": 0}]})");
  EXPECT_EQ(Run("validate --instance " + P("i.json") + " --packing " + P("bad.json")), 1);
  EXPECT_NE(Slurp(P("log.txt")).find("Overlap"), std::string::npos);
}

TEST_F(Cli, SolveLimitExceededWritesIncumbent) {
  Write("i.json",
        R"({"W": 7, "items": [{"id": 1, "w": 3, "h": 2}, {"id": 2, "w": 2, "h": 5}, {"id": 3, "w": 4, "h": 3},
            {"id": 4, "w": 1, "h": 4}, {"id": 5, "w": 5, "h": 1}, {"id": 6, "w": 2, "h": 2}, {"id": 7, "w": 3, "h": 3}]})");
  EXPECT_EQ(Run("solve --algo exact --instance " + P("i.json") + " --out " + P("o.json"),
                "STRIPACK_NODE_LIMIT=2"),
            3);
  const Instance inst = InstanceFromJson(ReadJsonFile(P("i.json")));
  EXPECT_TRUE(ValidatePacking(inst, PackingFromJson(ReadJsonFile(P("o.json")))).ok());
  EXPECT_EQ(Run("solve --algo exact --instance " + P("i.json") + " --out " + P("e.json")), 0);
  EXPECT_EQ(PackingFromJson(ReadJsonFile(P("e.json"))).height, 8);
}

TEST_F(Cli, RenderMatchesGolden) {
  ASSERT_EQ(Run("reduce --in " + (kGolden / "tp_n1.json").string() + " --out " + P("i.json") +
                " --cover " + (kGolden / "cover_n1.json").string() + " --packing " + P("c.json")),
            0);
  ASSERT_EQ(Run("render --instance " + P("i.json") + " --packing " + P("c.json") + " --out " +
                P("a.svg")),
            0);
  const std::string svg = Slurp(P("a.svg"));
  EXPECT_EQ(Count(svg, "<rect"), 11u);
  EXPECT_NE(svg.find("viewBox=\"0 0 312 11\""), std::string::npos);
  EXPECT_EQ(svg, Slurp(kGolden / "canonical_n1.svg"));
}

TEST_F(Cli, RenderWithClasses) {
  Write("i.json", R"({"W": 4, "items": [{"id": 1, "w": 3, "h": 2}, {"id": 2, "w": 1, "h": 1}]})");
  Write("p.json", R"({"height": 2, "placements": [{"id": 1, "x": 0, "y": 0}, {"id": 2, "x": 3, "y": 0}]})");
  Write("c.json", R"({"classes": [{"id": 1, "class": "L"}, {"id": 2, "class": "S"}]})");
  ASSERT_EQ(Run("render --instance " + P("i.json") + " --packing " + P("p.json") + " --classes " +
                P("c.json") + " --out " + P("a.svg")),
            0) << Slurp(P("log.txt"));
  const std::string svg = Slurp(P("a.svg"));
  EXPECT_EQ(Count(svg, "<rect"), 2u);
  const std::regex fill("fill=\"(#[0-9a-f]{6})\"");
  std::vector<std::string> fills;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), fill); it != std::sregex_iterator(); ++it) {
    fills.push_back((*it)[1]);
  }
  ASSERT_EQ(fills.size(), 2u);
  EXPECT_NE(fills[0], fills[1]);
}

TEST_F(Cli, BenchMatchesGoldenAndIsStable) {
  const std::string cmd = "bench --dir " + (kGolden / "bench").string() +
                          " --algos nfdh,ffdh --no-time --csv ";
  ASSERT_EQ(Run(cmd + P("a.csv")), 0);
  ASSERT_EQ(Run(cmd + P("b.csv")), 0);
  const std::string csv = Slurp(P("a.csv"));
  EXPECT_EQ(csv, Slurp(P("b.csv")));
  EXPECT_EQ(csv, Slurp(kGolden / "bench.csv"));
  EXPECT_EQ(csv.rfind("instance,algo,height,lb,ratio,ms,valid\n", 0), 0u);
  EXPECT_EQ(Count(csv, "\n"), 7u);  // header + 3 instances x 2 algorithms
}

TEST_F(Cli, RepackOutputValidates) {
  Write("i.json",
        R"({"W": 6, "items": [{"id": 1, "w": 3, "h": 4}, {"id": 2, "w": 3, "h": 2}, {"id": 3, "w": 2, "h": 2},
            {"id": 4, "w": 1, "h": 3}]})");
  ASSERT_EQ(Run("solve --algo exact --instance " + P("i.json") + " --out " + P("ref.json")), 0);
  ASSERT_EQ(Run("repack --instance " + P("i.json") + " --reference " + P("ref.json") +
                " --epsilon 1/4 --out " + P("o.json") + " --rounded " + P("r.json") +
                " --partition " + P("b.json") + " --classes " + P("k.json")),
            0)
      << Slurp(P("log.txt"));
  EXPECT_EQ(Run("validate --instance " + P("r.json") + " --packing " + P("o.json")), 0);
  const BoxPartition part = PartitionFromJson(ReadJsonFile(P("b.json")));
  EXPECT_FALSE(part.boxes.empty());
  EXPECT_EQ(ClassificationFromJson(ReadJsonFile(P("k.json"))).classes.size(), 4u);
  EXPECT_EQ(Run("render --instance " + P("r.json") + " --packing " + P("o.json") + " --classes " +
                P("k.json") + " --out " + P("o.svg")),
            0);
  // Same inputs, same bytes.
  ASSERT_EQ(Run("repack --instance " + P("i.json") + " --reference " + P("ref.json") +
                " --epsilon 1/4 --out " + P("o2.json")),
            0);
  EXPECT_EQ(Slurp(P("o.json")), Slurp(P("o2.json")));
  EXPECT_EQ(Run("repack --instance " + P("i.json") + " --reference " + P("ref.json") +
                " --epsilon 1/4 --delta 1/4 --out " + P("o3.json")),
            2);
}

TEST_F(Cli, Gen3pIsSeeded) {
  ASSERT_EQ(Run("gen3p --n 3 --range 5 --seed 9 --out " + P("a.json") + " --cover-out " + P("c.json")), 0);
  ASSERT_EQ(Run("gen3p --n 3 --range 5 --seed 9 --out " + P("b.json")), 0);
  EXPECT_EQ(Slurp(P("a.json")), Slurp(P("b.json")));
  const ThreePartitionInstance tp = ThreePartitionFromJson(ReadJsonFile(P("a.json")));
  EXPECT_TRUE(IsValidCover(tp, CoverFromJson(ReadJsonFile(P("c.json")))));
  ASSERT_EQ(Run("gen3p --n 3 --range 5 --seed 9 --no-instance --out " + P("n.json")), 0);
  EXPECT_FALSE(BruteForceThreePartition(ThreePartitionFromJson(ReadJsonFile(P("n.json")))).has_value());
}

TEST(JsonIo, RoundTrips) {
  const Instance inst{5, {{1, 2, 3}, {7, 5, 1}}};
  const Instance back = InstanceFromJson(InstanceToJson(inst));
  EXPECT_EQ(back.W, inst.W);
  EXPECT_EQ(back.items, inst.items);
  const Packing p{{{1, 0, 0}, {7, 0, 3}}, 4};
  EXPECT_EQ(PackingFromJson(PackingToJson(p)), p);
  const ReductionParams rp{1, 3, 144, 12, 312};
  EXPECT_EQ(ReductionParamsFromJson(ReductionParamsToJson(rp)), rp);
  BoxPartition part;
  part.width = 4;
  part.height = 2;
  part.boxes = {{{0, 0, 4, 1}, BoxTag::kHorizontal}, {{0, 1, 4, 1}, BoxTag::kLarge}};
  const BoxPartition pb = PartitionFromJson(PartitionToJson(part));
  EXPECT_EQ(pb.boxes, part.boxes);
  EXPECT_EQ(PartitionToJson(part)["area"], Json::array({4, 2}));
}

TEST(JsonIo, RejectsBadDocuments) {
  EXPECT_THROW(ParseJson("[1,"), Error);
  EXPECT_THROW(InstanceFromJson(ParseJson(R"({"W": 0, "items": []})")), Error);
  EXPECT_THROW(InstanceFromJson(ParseJson(R"({"W": 3, "items": [{"id": 1, "w": 4, "h": 1}]})")), Error);
  EXPECT_THROW(PackingFromJson(ParseJson(R"({"height": 1, "placements": [{"id": 1, "x": 0}]})")), Error);
  EXPECT_THROW(InstanceFromJson(ParseJson(R"({"W": 3, "items": [], "extra": 1})")), Error);
}

TEST(Bench, LibraryRowsAndCsv) {
  std::vector<NamedInstance> named{{"b", Instance{10, {{1, 5, 4}, {2, 5, 3}, {3, 6, 2}}}},
                                   {"a", Instance{4, {{1, 4, 4}}}}};
  BenchOptions opts;
  opts.record_time = false;
  const auto rows = RunBench(named, opts);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].instance, "a");
  for (const BenchRow& r : rows) {
    EXPECT_TRUE(r.valid);
    EXPECT_GE(r.ratio, 1.0);
  }
  EXPECT_EQ(BenchCsv(rows),
            "instance,algo,height,lb,ratio,ms,valid\n"
            "a,nfdh,4,4,1.0000,0.000,true\n"
            "a,ffdh,4,4,1.0000,0.000,true\n"
            "b,nfdh,6,5,1.2000,0.000,true\n"
            "b,ffdh,6,5,1.2000,0.000,true\n");
}
