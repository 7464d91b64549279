#include "support.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

using namespace wdtest;
using walkdist::cli::run_cli;
namespace fs = std::filesystem;

std::string data(const std::string& name) { return std::string(WALKDIST_DATA_DIR) + "/" + name; }

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliFiles : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("walkdist_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path path(const std::string& name) const { return dir_ / name; }

    std::vector<std::string> listing() const {
        std::vector<std::string> names;
        for (const auto& e : fs::directory_iterator(dir_)) names.push_back(e.path().filename().string());
        return names;
    }

    fs::path dir_;
};

TEST_F(CliFiles, LongWalkCsvRoundTrip) {
    const auto out = path("lw.csv");
    const auto r = run({"dist", "--metric", "long-walk", "--input", data("p4.edges"), "--output", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto text = slurp(out);
    EXPECT_EQ(text.rfind("# metric=long-walk n=4", 0), 0u);
    const auto m = matrix_from_csv(text);
    EXPECT_EQ(m.labels, (std::vector<std::string>{"1", "2", "3", "4"}));
    EXPECT_NEAR(m.values(0, 1) / m.values(1, 2), kPhi, 1e-12);
    EXPECT_TRUE(matrices_near(m.values, long_walk_distance(make_path(4)).values, 1e-15));
}

TEST_F(CliFiles, JsonCarriesMetadata) {
    const auto r = run({"dist", "--metric", "walk", "--t", "0.5", "--input", data("p4.edges"), "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["labels"].size(), 4u);
    EXPECT_EQ(doc["matrix"].size(), 4u);
    EXPECT_NEAR(doc["meta"]["rho"].get<double>(), kPhi, 1e-14);
    EXPECT_NEAR(doc["meta"]["t"].get<double>(), 0.5, 1e-15);
    EXPECT_NEAR(doc["meta"]["alpha"].get<double>(), 1.0 / (2.0 - kPhi), 1e-12);
    EXPECT_EQ(doc["meta"]["metric"], "walk");
}

TEST_F(CliFiles, PairsSelectEntries) {
    const auto r = run({"dist", "--metric", "resistance", "--input", data("random6.edges"), "--pairs", "a:f,b:e",
                        "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    ASSERT_EQ(doc["pairs"].size(), 2u);
    const auto g = read_edge_list_file(data("random6.edges")).graph;
    const auto d = resistance_distance(g).values;
    EXPECT_EQ(doc["pairs"][0]["i"], "a");
    EXPECT_NEAR(doc["pairs"][0]["distance"].get<double>(), d(*g.find("a"), *g.find("f")), 1e-15);
    EXPECT_EQ(run({"dist", "--metric", "resistance", "--input", data("random6.edges"), "--pairs", "a:z"}).code, 2);
}

TEST_F(CliFiles, BalanceLevelOption) {
    const auto r = run({"dist", "--metric", "long-walk", "--m", "2", "--input", data("p4.edges"), "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["meta"]["m"].get<double>(), 2.0);
    // The long walk distance on the balance graph is the resistance distance, here the hop count.
    EXPECT_NEAR(doc["matrix"][0][3].get<double>(), 3.0, 1e-12);
    EXPECT_EQ(run({"dist", "--metric", "long-walk", "--m", "1", "--input", data("p4.edges")}).code, 3);
}

TEST_F(CliFiles, ExitCodes) {
    const auto p4 = data("p4.edges");
    EXPECT_EQ(run({"dist", "--metric", "walk", "--t", "0.7", "--input", p4}).code, 3);
    EXPECT_EQ(run({"dist", "--metric", "walk", "--input", data("disconnected.edges"), "--alpha", "1"}).code, 2);
    EXPECT_EQ(run({"dist", "--metric", "walk", "--input", p4}).code, 2);
    EXPECT_EQ(run({"dist", "--metric", "walk", "--alpha", "1", "--t", "0.1", "--input", p4}).code, 2);
    EXPECT_EQ(run({"dist", "--metric", "walk", "--alpha", "-1", "--input", p4}).code, 2);
    EXPECT_EQ(run({"dist", "--metric", "resistance", "--alpha", "1", "--input", p4}).code, 2);
    EXPECT_EQ(run({"dist", "--metric", "nonsense", "--input", p4}).code, 2);
    EXPECT_EQ(run({"dist", "--metric", "walk", "--alpha", "1", "--beta", "2", "--input", p4}).code, 2);
    EXPECT_EQ(run({"dist", "--metric", "walk", "--alpha", "1", "--format", "xml", "--input", p4}).code, 2);
    EXPECT_EQ(run({"dist", "--metric", "walk", "--alpha", "1", "--input", path("missing.edges").string()}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
}

TEST_F(CliFiles, BadEdgeList) {
    const auto bad = path("bad.edges");
    std::ofstream(bad) << "1 2 1\n2 3 -4\n";
    const auto r = run({"dist", "--metric", "resistance", "--input", bad.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(r.err.empty());
}

TEST_F(CliFiles, FailureLeavesNoPartialOutput) {
    const auto out = path("never.csv");
    EXPECT_EQ(run({"dist", "--metric", "walk", "--t", "0.9", "--input", data("p4.edges"), "--output", out.string()}).code,
              3);
    EXPECT_TRUE(listing().empty());
    std::ofstream(out) << "previous";
    EXPECT_EQ(run({"dist", "--metric", "walk", "--t", "0.9", "--input", data("p4.edges"), "--output", out.string()}).code,
              3);
    EXPECT_EQ(slurp(out), "previous");
    EXPECT_EQ(listing().size(), 1u);
}

TEST_F(CliFiles, TablePrintsAllCellsAndSidecar) {
    const auto side = path("p4.csv");
    const auto r = run({"table-p4", "--sidecar", side.string()});
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("all 21 cells pass"), std::string::npos);
    const auto csv = slurp(side);
    EXPECT_EQ(static_cast<int>(std::count(csv.begin(), csv.end(), '\n')), 22);
    EXPECT_EQ(csv.find("false"), std::string::npos);
}

TEST_F(CliFiles, VerifySuites) {
    const auto out = path("report.json");
    const auto r = run({"verify", "--suite", "equivalences", "--input", data("random6.edges"), "--output", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(slurp(out));
    EXPECT_TRUE(doc["passed"].get<bool>());
    EXPECT_EQ(doc["suites"][0]["suite"], "equivalences");
    EXPECT_EQ(run({"verify", "--suite", "properties", "--input", data("c4.edges")}).code, 0);
    EXPECT_EQ(run({"verify", "--suite", "bogus", "--input", data("c4.edges")}).code, 2);
}

TEST_F(CliFiles, VerifyReportsFailingChecks) {
    // The walk-distance caps at the ends of the fixed alpha grids are not met on P4.
    const auto r = run({"verify", "--suite", "limits", "--input", data("p4.edges")});
    EXPECT_EQ(r.code, 1);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_FALSE(doc["passed"].get<bool>());
    EXPECT_EQ(doc["suites"][0]["failures"].get<int>(), 2);
}

TEST_F(CliFiles, SweepGrid) {
    const auto r = run({"sweep", "--metric", "e-walk", "--input", data("weighted_p4.edges"), "--from", "1e-3", "--to",
                        "1e3", "--per-decade", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "alpha,theta,deviation_weighted_shortest_path,deviation_long_ewalk,error");
    int rows = 0;
    std::vector<double> small_dev, large_dev;
    for (std::string line; std::getline(in, line);) {
        ++rows;
        std::stringstream ls(line);
        std::string alpha, theta, ds, dl;
        std::getline(ls, alpha, ',');
        std::getline(ls, theta, ',');
        std::getline(ls, ds, ',');
        std::getline(ls, dl, ',');
        small_dev.push_back(std::stod(ds));
        large_dev.push_back(std::stod(dl));
    }
    EXPECT_EQ(rows, 13);
    EXPECT_LT(small_dev.front(), small_dev.back());
    EXPECT_LT(large_dev.back(), large_dev.front());
    EXPECT_EQ(run({"sweep", "--metric", "long-walk", "--input", data("p4.edges")}).code, 2);
    EXPECT_EQ(run({"sweep", "--from", "10", "--to", "1", "--input", data("p4.edges")}).code, 2);
}

}  // namespace
