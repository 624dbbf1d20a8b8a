//
// Copyright 2026 The PolyPlace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "polyplace/cli.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"

namespace polyplace::cli {
namespace {

using json = nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome RunCli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> Split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("polyplace_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }

  std::string Write(const std::string& name, const std::string& content) {
    const std::filesystem::path file = path_ / name;
    std::ofstream(file) << content;
    return file.string();
  }
  std::string Path(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

TEST(FormatRealTest, SeventeenDigits) {
  EXPECT_EQ(FormatReal(0.1), "0.10000000000000001");
  EXPECT_EQ(FormatReal(1.0), "1");
  EXPECT_EQ(FormatReal(-2.5), "-2.5");
  EXPECT_EQ(FormatReal(1e-300), "1e-300");
  EXPECT_EQ(FormatReal(0.3), "0.29999999999999999");
  EXPECT_EQ(FormatReal(INFINITY), "");
  EXPECT_EQ(FormatReal(std::nan("")), "");
  EXPECT_EQ(std::stod(FormatReal(M_PI)), M_PI);
}

TEST(ParseValueCsvTest, Accepts) {
  std::istringstream with_header("value\n1\n 2.5 \r\n\n-3e2\n+4\n");
  EXPECT_EQ(*ParseValueCsv(with_header),
            (std::vector<double>{1, 2.5, -300, 4}));
  std::istringstream bare("0\n0\n1");
  EXPECT_EQ(*ParseValueCsv(bare), (std::vector<double>{0, 0, 1}));
}

TEST(ParseValueCsvTest, Rejects) {
  for (const char* text : {"", "value\n", "1\nabc\n", "1\n2,3\n", "1\nnan\n",
                           "1\ninf\n", "h1\nh2\n1\n"}) {
    std::istringstream in(text);
    EXPECT_EQ(ParseValueCsv(in).status().code(), absl::StatusCode::kDataLoss)
        << text;
  }
}

TEST(RunTest, HelpAndUsageErrors) {
  EXPECT_EQ(RunCli({"--help"}).code, kSuccess);
  EXPECT_NE(RunCli({"--help"}).out.find("pdf-table"), std::string::npos);
  EXPECT_EQ(RunCli({"audit", "--help"}).code, kSuccess);
  EXPECT_EQ(RunCli({}).code, kParameterError);
  EXPECT_EQ(RunCli({"bogus"}).code, kParameterError);
  EXPECT_EQ(RunCli({"variance", "--s", "1", "--alpha", "3", "--bogus"}).code,
            kParameterError);
  // Flags are validated per command.
  EXPECT_EQ(RunCli({"variance", "--s", "1", "--alpha", "3", "--input", "x"})
                .code,
            kParameterError);
  EXPECT_EQ(RunCli({"variance", "--s", "1", "--alpha", "3", "--format", "xml"})
                .code,
            kParameterError);
  EXPECT_EQ(RunCli({"variance", "--s", "abc", "--alpha", "3"}).code,
            kParameterError);
}

TEST(PdfTableTest, DefaultTable) {
  const Outcome r = RunCli({"pdf-table"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const std::vector<std::string> lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 2u + 2001u);
  EXPECT_EQ(lines[0], "# schema: polyplace/1");
  const std::vector<std::string> header = Split(lines[1]);
  ASSERT_EQ(header.size(), 5u);
  EXPECT_EQ(header[0], "x");
  EXPECT_EQ(header[4], "laplace_b1");

  std::vector<double> xs;
  std::vector<std::vector<double>> columns(4);
  for (size_t i = 2; i < lines.size(); ++i) {
    const std::vector<std::string> cells = Split(lines[i]);
    ASSERT_EQ(cells.size(), 5u);
    xs.push_back(std::stod(cells[0]));
    for (int c = 0; c < 4; ++c) columns[c].push_back(std::stod(cells[c + 1]));
  }
  EXPECT_EQ(xs.front(), -6.0);
  EXPECT_EQ(xs.back(), 6.0);

  // Trapezoid over the grid plus the analytic mass beyond |x| = 6.
  const std::vector<std::pair<double, double>> members = {
      {1.1, 1.1}, {1.5, 1.5}, {5.0, 5.0}};
  for (int c = 0; c < 4; ++c) {
    double mass = 0.0;
    for (size_t i = 1; i < xs.size(); ++i) {
      mass += 0.5 * (columns[c][i] + columns[c][i - 1]) * (xs[i] - xs[i - 1]);
    }
    double tails;
    if (c == 3) {
      tails = std::exp(-6.0);
    } else {
      const auto [s, alpha] = members[c];
      const double k =
          2 * (2 * std::pow((alpha - 1) / alpha, alpha) + alpha - 1);
      tails = 2 * (alpha + 1) * std::pow(1 - 1 / (alpha * alpha), alpha) *
              std::pow(1 + 6.0 / s, -alpha) / k;
    }
    EXPECT_NEAR(mass + tails, 1.0, 1e-3) << header[c + 1];
  }

  // Larger shapes sit closer to the Laplace column at x = 1.
  // Grid step is 0.006; take the point nearest x = 1.
  const size_t at_one = 1167;
  ASSERT_NEAR(xs[at_one], 1.0, 0.003);
  double previous = INFINITY;
  for (int c = 0; c < 3; ++c) {
    const double gap = std::abs(columns[c][at_one] - columns[3][at_one]);
    EXPECT_LT(gap, previous);
    previous = gap;
  }
}

TEST(PdfTableTest, Options) {
  const Outcome pairs = RunCli({"pdf-table", "--s", "1", "--alpha", "2",
                                "--x-min", "0", "--x-max", "1", "--points",
                                "3"});
  ASSERT_EQ(pairs.code, kSuccess) << pairs.err;
  const std::vector<std::string> lines = Lines(pairs.out);
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[1], "x,polyplace_s1_alpha2,laplace_b1");
  EXPECT_EQ(Split(lines[2])[1], FormatReal(2.0 / 3.0));

  const Outcome gammas = RunCli({"pdf-table", "--gamma", "0.5", "0.25",
                                 "--epsilon", "2", "--points", "5"});
  ASSERT_EQ(gammas.code, kSuccess) << gammas.err;
  EXPECT_EQ(Lines(gammas.out)[1],
            "x,polyplace_s2_alpha4,polyplace_s4_alpha8,laplace_b0.5");

  const Outcome as_json = RunCli({"pdf-table", "--format", "json",
                                  "--points", "3"});
  ASSERT_EQ(as_json.code, kSuccess);
  const json doc = json::parse(as_json.out);
  EXPECT_EQ(doc["schema"], "polyplace/1");
  EXPECT_EQ(doc["x"].size(), 3u);
  EXPECT_EQ(doc["columns"].size(), 4u);
}

TEST(PdfTableTest, ParameterErrors) {
  EXPECT_EQ(RunCli({"pdf-table", "--s", "1", "--alpha", "1"}).code,
            kParameterError);
  EXPECT_EQ(RunCli({"pdf-table", "--s", "1", "--alpha", "0.5"}).code,
            kParameterError);
  EXPECT_EQ(RunCli({"pdf-table", "--s", "1"}).code, kParameterError);
  EXPECT_EQ(RunCli({"pdf-table", "--gamma", "1", "--epsilon", "1"}).code,
            kParameterError);
  EXPECT_EQ(RunCli({"pdf-table", "--points", "1"}).code, kParameterError);
  EXPECT_EQ(RunCli({"pdf-table", "--x-min", "1", "--x-max", "0"}).code,
            kParameterError);
}

TEST(StddevTableTest, Columns) {
  const Outcome r = RunCli({"stddev-table"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const std::vector<std::string> lines = Lines(r.out);
  ASSERT_EQ(lines.size(), 52u);
  EXPECT_EQ(lines[0], "# schema: polyplace/1");
  EXPECT_EQ(lines[1],
            "gamma,polyplace,student_t,student_t_shape,cauchy,cauchy_shape,"
            "laplace_smooth,laplace_global");
  double closest_gap = INFINITY;
  std::vector<std::string> closest;
  for (size_t i = 2; i < lines.size(); ++i) {
    const std::vector<std::string> cells = Split(lines[i]);
    ASSERT_EQ(cells.size(), 8u) << lines[i];
    const double gamma = std::stod(cells[0]);
    EXPECT_EQ(cells[7], FormatReal(std::sqrt(2.0)));
    EXPECT_EQ(cells[1].empty(), gamma >= 0.5) << gamma;
    if (gamma >= 1.0 / 3.0) EXPECT_TRUE(cells[2].empty());
    if (gamma >= 0.25) EXPECT_TRUE(cells[4].empty());
    EXPECT_EQ(cells[2].empty(), cells[3].empty());
    if (std::abs(gamma - 0.01) < closest_gap) {
      closest_gap = std::abs(gamma - 0.01);
      closest = cells;
    }
  }
  const double gamma = std::stod(closest[0]);
  EXPECT_NEAR(std::stod(closest[6]),
              std::sqrt(2.0) / (1 - gamma * std::log(2e5)), 1e-12);
  EXPECT_NEAR(std::stod(closest[6]), 1.6108, 0.01);
}

TEST(StddevTableTest, JsonAndErrors) {
  const Outcome r = RunCli({"stddev-table", "--format", "json", "--points",
                            "3", "--epsilon", "2"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const json doc = json::parse(r.out);
  ASSERT_EQ(doc["rows"].size(), 3u);
  EXPECT_TRUE(doc["rows"][2]["polyplace"].is_null());
  EXPECT_TRUE(doc["rows"][0]["polyplace"].is_number());
  EXPECT_EQ(RunCli({"stddev-table", "--delta", "1"}).code, kParameterError);
  EXPECT_EQ(RunCli({"stddev-table", "--epsilon", "-1"}).code, kParameterError);
}

TEST(SampleTest, DeterministicAndSeeded) {
  const std::vector<std::string> args = {"sample", "--s", "1", "--alpha", "3",
                                         "--n", "100", "--seed", "5"};
  const Outcome a = RunCli(args);
  const Outcome b = RunCli(args);
  ASSERT_EQ(a.code, kSuccess) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(Lines(a.out).size(), 102u);
  std::vector<std::string> other = args;
  other.back() = "6";
  EXPECT_NE(RunCli(other).out, a.out);

  const Outcome via_gamma =
      RunCli({"sample", "--epsilon", "1", "--gamma", "0.5", "--n", "3"});
  ASSERT_EQ(via_gamma.code, kSuccess) << via_gamma.err;
  EXPECT_EQ(RunCli({"sample", "--s", "1", "--alpha", "1", "--n", "3"}).code,
            kParameterError);
  EXPECT_EQ(RunCli({"sample", "--s", "1", "--alpha", "3", "--n", "-1"}).code,
            kParameterError);
  EXPECT_EQ(RunCli({"sample", "--n", "3"}).code, kParameterError);
}

TEST(SampleTest, SymmetricAcrossSeeds) {
  int positive = 0;
  for (int seed = 0; seed < 400; ++seed) {
    const Outcome r = RunCli({"sample", "--s", "1", "--alpha", "3", "--n", "1",
                              "--seed", std::to_string(seed)});
    positive += std::stod(Lines(r.out)[2]) > 0;
  }
  EXPECT_NEAR(positive, 200, 40);
}

TEST(VarianceTest, Values) {
  const Outcome r =
      RunCli({"variance", "--s", "1", "--alpha", "3", "--format", "json"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_NEAR(doc["variance"].get<double>(), 3032.0 / 2800.0, 1e-12);
  EXPECT_EQ(doc["mean"].get<double>(), 0.0);

  const Outcome csv = RunCli({"variance", "--epsilon", "1", "--gamma", "0.6"});
  ASSERT_EQ(csv.code, kSuccess);
  const std::vector<std::string> lines = Lines(csv.out);
  EXPECT_EQ(lines[1], "s,alpha,mean,variance,stddev");
  const std::vector<std::string> cells = Split(lines[2]);
  EXPECT_EQ(cells[3], "");
  EXPECT_EQ(cells[4], "");
}

TEST(MechanismTest, MedianRelease) {
  TempDir dir;
  const std::string input = dir.Write("d.csv", "value\n0\n0\n1\n");
  const std::vector<std::string> args = {
      "mechanism", "--input", input,  "--query", "median", "--lo",  "0",
      "--hi",      "1",       "--epsilon", "1", "--gamma", "0.5", "--seed", "7"};
  const Outcome a = RunCli(args);
  ASSERT_EQ(a.code, kSuccess) << a.err;
  EXPECT_EQ(a.out, RunCli(args).out);
  const json doc = json::parse(a.out);
  EXPECT_EQ(doc["schema"], "polyplace/1");
  EXPECT_EQ(doc["query_value"].get<double>(), 0.0);
  EXPECT_EQ(doc["smooth_sensitivity"].get<double>(), 1.0);
  EXPECT_EQ(doc["seed"].get<uint64_t>(), 7u);
  EXPECT_EQ(doc["spec"]["epsilon"].get<double>(), 1.0);
  EXPECT_EQ(doc["spec"]["gamma"].get<double>(), 0.5);
  EXPECT_EQ(doc["noise"]["distribution"], "polyplace");
  EXPECT_EQ(doc["noise"]["scale"].get<double>(), 2.0);
  EXPECT_FALSE(doc["noise"]["exact"].get<bool>());
  EXPECT_NE(doc["noisy_value"].get<double>(), 0.0);

  std::vector<std::string> csv = args;
  csv.insert(csv.end(), {"--format", "csv"});
  const Outcome flat = RunCli(csv);
  ASSERT_EQ(flat.code, kSuccess);
  EXPECT_NE(flat.out.find("/spec/epsilon,1"), std::string::npos);
  EXPECT_EQ(Lines(flat.out)[0], "# schema: polyplace/1");
}

TEST(MechanismTest, ConstantQueryIsExact) {
  TempDir dir;
  const std::string input = dir.Write("d.csv", "3\n3\n3\n");
  const Outcome r = RunCli({"mechanism", "--input", input, "--lo", "3", "--hi",
                            "3", "--epsilon", "1", "--gamma", "0.5"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["smooth_sensitivity"].get<double>(), 0.0);
  EXPECT_EQ(doc["noisy_value"].get<double>(), 3.0);
  EXPECT_TRUE(doc["noise"]["exact"].get<bool>());
}

TEST(MechanismTest, CountRangeAndClamping) {
  TempDir dir;
  const std::string input = dir.Write("d.csv", "-5\n0.5\n2\n9\n");
  const Outcome count =
      RunCli({"mechanism", "--input", input, "--query", "count_range", "--lo",
              "0", "--hi", "2", "--epsilon", "1", "--gamma", "0.1"});
  ASSERT_EQ(count.code, kSuccess) << count.err;
  const json doc = json::parse(count.out);
  EXPECT_EQ(doc["query_value"].get<double>(), 2.0);
  EXPECT_EQ(doc["smooth_sensitivity"].get<double>(), 1.0);

  // Median clamps -5 -> 0 and 9 -> 2, giving [0, 0.5, 2, 2] with lower
  // median 0.5.
  const Outcome median = RunCli({"smooth-sens", "--input", input, "--lo", "0",
                                 "--hi", "2", "--gamma", "0.1"});
  ASSERT_EQ(median.code, kSuccess) << median.err;
  EXPECT_EQ(json::parse(median.out)["query_value"].get<double>(), 0.5);
}

TEST(MechanismTest, Errors) {
  TempDir dir;
  const std::string good = dir.Write("good.csv", "0\n1\n");
  const std::string bad = dir.Write("bad.csv", "0\nnope\n");
  const std::vector<std::string> base = {"--lo", "0", "--hi", "1",
                                         "--epsilon", "1", "--gamma", "0.5"};
  auto with = [&](std::vector<std::string> head) {
    head.insert(head.end(), base.begin(), base.end());
    return RunCli(head).code;
  };
  EXPECT_EQ(with({"mechanism", "--input", bad}), kInputParseError);
  EXPECT_EQ(with({"mechanism", "--input", dir.Path("missing.csv")}),
            kInputParseError);
  EXPECT_EQ(with({"mechanism", "--input", good, "--query", "mean"}),
            kParameterError);
  EXPECT_EQ(RunCli({"mechanism", "--input", good, "--lo", "0", "--hi", "1",
                    "--epsilon", "1", "--gamma", "1"})
                .code,
            kParameterError);
  EXPECT_EQ(RunCli({"mechanism", "--input", good, "--epsilon", "1",
                    "--gamma", "0.5"})
                .code,
            kParameterError);
  EXPECT_EQ(RunCli({"mechanism", "--input", good, "--lo", "2", "--hi", "1",
                    "--epsilon", "1", "--gamma", "0.5"})
                .code,
            kParameterError);
}

TEST(SmoothSensTest, Report) {
  TempDir dir;
  const std::string input = dir.Write("d.csv", "0\n0\n1\n");
  const Outcome r = RunCli({"smooth-sens", "--input", input, "--lo", "0",
                            "--hi", "1", "--gamma", "0.5"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["n"].get<int>(), 3);
  EXPECT_EQ(doc["local_sensitivity"].get<double>(), 1.0);
  EXPECT_EQ(doc["smooth_sensitivity"].get<double>(), 1.0);
  EXPECT_EQ(doc["per_distance_max"].size(), 4u);

  const std::string constant = dir.Write("c.csv", "2\n2\n2\n");
  const Outcome c = RunCli({"smooth-sens", "--input", constant, "--lo", "2",
                            "--hi", "2", "--gamma", "0.5"});
  ASSERT_EQ(c.code, kSuccess) << c.err;
  EXPECT_EQ(json::parse(c.out)["smooth_sensitivity"].get<double>(), 0.0);
  EXPECT_EQ(RunCli({"smooth-sens", "--input", constant, "--lo", "2", "--hi",
                    "2"})
                .code,
            kParameterError);
}

TEST(AuditTest, DefaultGrid) {
  const Outcome r = RunCli({"audit", "--epsilon", "1", "--gamma", "0.1"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["grid_size"].get<size_t>(), 41u * 41u * 2001u);
  EXPECT_TRUE(doc["violations"].empty());
  EXPECT_LE(doc["max_ratio"].get<double>(), std::exp(1.0) * (1 + 1e-8));
  EXPECT_GE(doc["max_ratio"].get<double>(), std::exp(0.9));
}

TEST(AuditTest, EmptyGridAndErrors) {
  const Outcome r =
      RunCli({"audit", "--epsilon", "1", "--gamma", "0.1", "--n", "0"});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["grid_size"].get<size_t>(), 0u);
  EXPECT_EQ(doc["max_ratio"].get<double>(), 1.0);
  EXPECT_EQ(RunCli({"audit", "--epsilon", "1", "--gamma", "1"}).code,
            kParameterError);
  EXPECT_EQ(RunCli({"audit", "--epsilon", "1"}).code, kParameterError);
}

TEST(OutputTest, FileMatchesStdout) {
  TempDir dir;
  const std::string path = dir.Path("out.csv");
  const std::vector<std::string> args = {"variance", "--s", "2", "--alpha",
                                         "4"};
  const Outcome to_stdout = RunCli(args);
  std::vector<std::string> to_file = args;
  to_file.insert(to_file.end(), {"--output", path});
  const Outcome r = RunCli(to_file);
  ASSERT_EQ(r.code, kSuccess);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  EXPECT_EQ(content.str(), to_stdout.out);

  to_file.back() = dir.Path("no/such/dir/out.csv");
  EXPECT_EQ(RunCli(to_file).code, kParameterError);
}

int RunBinary(const std::string& args) {
  const std::string command = std::string(POLYPLACE_CLI_PATH) + " " + args +
                              " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(BinaryTest, ExitCodes) {
  TempDir dir;
  const std::string bad = dir.Write("bad.csv", "1\nx\n");
  EXPECT_EQ(RunBinary("variance --s 1 --alpha 3"), 0);
  EXPECT_EQ(RunBinary("--help"), 0);
  EXPECT_EQ(RunBinary("variance --s 1 --alpha 0.5"), 2);
  EXPECT_EQ(RunBinary("variance --unknown"), 2);
  EXPECT_EQ(RunBinary("mechanism --input " + bad +
                      " --lo 0 --hi 1 --epsilon 1 --gamma 0.5"),
            3);
  EXPECT_EQ(RunBinary("stddev-table --output /nonexistent/dir/x.csv"), 2);
}

}  // namespace
}  // namespace polyplace::cli
