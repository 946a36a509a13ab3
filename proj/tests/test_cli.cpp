#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"

using namespace schurcomp;
using namespace schurcomp::cli;

namespace {

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

RunConfig config_for(Command cmd, std::vector<int> n, std::vector<double> p = {}) {
  RunConfig c;
  c.command = cmd;
  c.n_list = std::move(n);
  c.p_list = std::move(p);
  return c;
}

int run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "schurcomp");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return main_entry(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST(CommandNames, RoundTrip) {
  for (const Command c : {Command::qjscan, Command::lemma1, Command::known, Command::full, Command::fig3,
                          Command::holevo, Command::oracle_check}) {
    EXPECT_EQ(parse_command(command_name(c)), c);
  }
  EXPECT_EQ(parse_command("oracle-check"), Command::oracle_check);
  EXPECT_FALSE(parse_command("nope").has_value());
}

TEST(Validation, RejectsBadConfigs) {
  EXPECT_THROW(validated(config_for(Command::known, {})), ConfigError);
  EXPECT_THROW(validated(config_for(Command::known, {1})), ConfigError);
  EXPECT_THROW(validated(config_for(Command::known, {100}, {0.5})), ConfigError);
  EXPECT_THROW(validated(config_for(Command::qjscan, {100}, {0.4})), ConfigError);
  EXPECT_THROW(validated(config_for(Command::qjscan, {0})), ConfigError);

  RunConfig narrow = config_for(Command::full, {100});
  narrow.r = 0.05;
  EXPECT_THROW(validated(narrow), ConfigError);

  RunConfig tol = config_for(Command::known, {100});
  tol.tol.tail_tol = 0.1;
  EXPECT_THROW(validated(tol), ConfigError);

  RunConfig mc = config_for(Command::known, {100});
  mc.mc_samples = 10;
  EXPECT_THROW(validated(mc), ConfigError);

  RunConfig seeded = config_for(Command::fig3, {100});
  seeded.seed = 3;
  EXPECT_THROW(validated(seeded), ConfigError);
}

TEST(Validation, DefaultsAndSorting) {
  const RunConfig lemma = validated(config_for(Command::lemma1, {}));
  EXPECT_EQ(lemma.p_list, (std::vector<double>{0.7, 0.9}));
  EXPECT_EQ(lemma.two_j_list, (std::vector<int>{400, 1600, 6400}));
  EXPECT_EQ(lemma.delta_list, (std::vector<double>{0.0125, 0.025, 0.05}));
  const RunConfig scan = validated(config_for(Command::qjscan, {30, 10, 30}));
  EXPECT_EQ(scan.n_list, (std::vector<int>{10, 30}));
  EXPECT_EQ(scan.p_list, (std::vector<double>{0.8}));
}

TEST(Render, QjscanSumsToOne) {
  const std::string out = render(validated(config_for(Command::qjscan, {40, 41}, {0.7})));
  const auto rows = parse_csv(out);
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "p", "twoJ", "q_J", "tail_mass"}));
  double sum40 = 0.0;
  double sum41 = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    (rows[i][0] == "40" ? sum40 : sum41) += std::stod(rows[i][3]);
  }
  EXPECT_NEAR(sum40, 1.0, 1e-12);
  EXPECT_NEAR(sum41, 1.0, 1e-12);
}

TEST(Render, DeterministicAndRoundTripping) {
  RunConfig c = validated(config_for(Command::known, {200, 800}, {0.75}));
  const std::string a = render(c);
  EXPECT_EQ(a, render(c));
  const auto rows = parse_csv(a);
  ASSERT_EQ(rows.size(), 3u);
  const double eps = std::stod(rows[1][3]);
  EXPECT_GT(eps, 0.0);
  EXPECT_LT(eps, 1.0);
}

TEST(Render, Fig3Columns) {
  RunConfig c = config_for(Command::fig3, {100});
  c.r = 0.5;
  c.mc_samples = 1000;
  c.seed = 7;
  const auto rows = parse_csv(render(validated(c)));
  EXPECT_EQ(rows[0],
            (std::vector<std::string>{"n", "p", "r", "twoJ", "q_J", "sampling", "nosampling", "sampling_mc"}));
  double sampling = 0.0;
  double nosampling = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    sampling += std::stod(rows[i][5]);
    nosampling += std::stod(rows[i][6]);
  }
  EXPECT_NEAR(sampling, 1.0, 1e-11);
  EXPECT_NEAR(nosampling, 1.0, 1e-11);
}

TEST(Render, JsonStructure) {
  RunConfig c = config_for(Command::full, {400});
  c.format = Format::json;
  const auto doc = nlohmann::json::parse(render(validated(c)));
  EXPECT_EQ(doc["config"]["command"], "full");
  EXPECT_EQ(doc["config"]["r"], "auto");
  ASSERT_TRUE(doc["columns"].is_array());
  ASSERT_EQ(doc["rows"].size(), 1u);
  const auto& row = doc["rows"][0];
  EXPECT_EQ(row["n"], 400);
  EXPECT_NEAR(row["r"].get<double>(), 1.0 / std::log(400.0), 1e-15);
  EXPECT_LE(row["epsilon"].get<double>(), row["eps1"].get<double>() + row["eps2"].get<double>() +
                                                row["eps3"].get<double>() + row["slack"].get<double>() + 1e-15);
}

TEST(MainEntry, ExitCodes) {
  testing::internal::CaptureStdout();
  testing::internal::CaptureStderr();
  EXPECT_EQ(run_args({"qjscan", "--n", "6", "--p", "0.9"}), 0);
  EXPECT_EQ(run_args({"known", "--n", "1"}), 2);
  EXPECT_EQ(run_args({"full", "--n", "100", "--r", "wide"}), 2);
  EXPECT_EQ(run_args({"bogus"}), 2);
  EXPECT_EQ(run_args({"qjscan", "--n", "6", "--format", "xml"}), 2);
  const std::string out = testing::internal::GetCapturedStdout();
  testing::internal::GetCapturedStderr();
  EXPECT_NE(out.find("n,p,twoJ,q_J,tail_mass"), std::string::npos);
}
