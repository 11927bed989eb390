#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "seclat/cli.hpp"

namespace {

struct CliRun {
    int status;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "seclat");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = seclat::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST(Cli, Gain) {
    const CliRun r = run({"gain", "--dim", "16", "--kissing", "224"});
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "2/1\n");
    const CliRun t = run({"gain", "--dim", "12", "--theta", "1,0", "--show-decomposition"});
    EXPECT_EQ(t.status, 0);
    EXPECT_EQ(t.out, "8/5\na = 1 -24\n");
    const CliRun adv = run({"gain", "--dim", "12", "--kissing", "264"});
    EXPECT_EQ(adv.status, 0);
    EXPECT_FALSE(adv.err.empty());
}

TEST(Cli, ThetaOfIntegers) {
    const CliRun r = run({"theta", "--lattice", "Z", "--order", "10"});
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "1 + 2q + 2q^4 + 2q^9\n");
    const CliRun e8 = run({"theta", "--lattice", "E8", "--order", "3"});
    EXPECT_EQ(e8.out, "1 + 240q^2\n");
    EXPECT_EQ(run({"theta", "--lattice", "Q7"}).status, 1);
}

TEST(Cli, VerifyTables) {
    const CliRun r = run({"verify-tables"});
    EXPECT_EQ(r.status, 0) << r.out << r.err;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    int lines = 0;
    for (char c : r.out) lines += c == '\n';
    EXPECT_EQ(lines, 4 + 111 + 19 + 15);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({"simulate", "--integer", "1", "--modulus", "2", "--sigma-e", "0.5"}).status, 2);
    EXPECT_EQ(run({"gain", "--dim", "16", "--kissing", "224", "--bogus"}).status, 2);
    EXPECT_EQ(run({"gain", "--dim", "16"}).status, 2);
    EXPECT_EQ(run({"nonsense"}).status, 2);
    EXPECT_EQ(run({"classify", "--dim", "30"}).status, 2);
}

TEST(Cli, Classify) {
    const CliRun r = run({"classify", "--dim", "18"});
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "18 (D6^3)+ 16/7\n18 (A9^2)+ 16/7\n");
}

TEST(Cli, PlotDataPeaksAtZeroDb) {
    const CliRun r = run({"plot-data", "--lattice", "D12+", "--db-range", "6", "--points", "121"});
    ASSERT_EQ(r.status, 0) << r.err;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 122u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"y_db", "xi"}));
    double best = 0, at = 1;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double v = std::stod(rows[i][1]);
        if (v > best) {
            best = v;
            at = std::stod(rows[i][0]);
        }
        EXPECT_DOUBLE_EQ(v, std::stod(rows[rows.size() - i][1]));
    }
    EXPECT_EQ(at, 0.0);
    EXPECT_NEAR(best, 1.6, 1e-6);

    const auto e8 = parse_csv(run({"plot-data", "--lattice", "E8", "--points", "3"}).out);
    EXPECT_NEAR(std::stod(e8[2][1]), 4.0 / 3.0, 1e-9);
    for (const auto& row : parse_csv(run({"plot-data", "--lattice", "Z^5", "--points", "7"}).out)) {
        if (row[0] != "y_db") EXPECT_NEAR(std::stod(row[1]), 1.0, 1e-12);
    }
    EXPECT_EQ(run({"plot-data", "--lattice", "Nope"}).status, 1);
}

TEST(Cli, CsvRoundTrip) {
    const CliRun r = run({"plot-data", "--lattice", "(D8^2)+", "--points", "9"});
    ASSERT_EQ(r.status, 0);
    std::ostringstream again;
    again << "y_db,xi\n";
    for (const auto& row : parse_csv(r.out)) {
        if (row[0] == "y_db") continue;
        char buf[2][64];
        std::snprintf(buf[0], sizeof buf[0], "%.12g", std::strtod(row[0].c_str(), nullptr));
        std::snprintf(buf[1], sizeof buf[1], "%.12g", std::strtod(row[1].c_str(), nullptr));
        again << buf[0] << "," << buf[1] << "\n";
    }
    EXPECT_EQ(again.str(), r.out);
}

TEST(Cli, Fig3PointsAreTableGains) {
    const CliRun r = run({"plot-data", "--fig3"});
    ASSERT_EQ(r.status, 0);
    const auto rows = parse_csv(r.out);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"dim", "label", "kissing", "gain", "gain_decimal"}));
    EXPECT_GE(rows.size(), 116u);
}

TEST(Cli, ConstructA) {
    const CliRun r = run({"construct-a", "--code", "[8,4,4]"});
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_NE(r.out.find("kissing_enumerated=240"), std::string::npos);
    EXPECT_NE(r.out.find("self_dual=1 doubly_even=1"), std::string::npos);
    EXPECT_EQ(run({"construct-a", "--code", "[9,9,9]"}).status, 1);
}

TEST(Cli, SimulateIsDeterministic) {
    const std::vector<std::string> args = {"simulate", "--code", "[8,4,4]", "--scheme", "zn",  "--sigma-e",
                                           "0.3,0.6",  "--trials", "4000", "--seed", "12345"};
    auto with_threads = [&](const char* t) {
        auto a = args;
        a.push_back("--threads");
        a.push_back(t);
        return run(a);
    };
    const CliRun a = with_threads("1"), b = with_threads("1"), c = with_threads("3");
    ASSERT_EQ(a.status, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
    const auto rows = parse_csv(a.out);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].size(), 8u);
    EXPECT_EQ(rows[1][0], "zn");
    EXPECT_EQ(rows[1][1], "8");
    EXPECT_NE(run({"simulate", "--integer", "1", "--modulus", "2", "--sigma-e", "0.5", "--trials", "100", "--seed",
                   "1"})
                  .out,
              "");
}
