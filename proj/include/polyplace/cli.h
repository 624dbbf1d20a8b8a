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

#ifndef POLYPLACE_CLI_H_
#define POLYPLACE_CLI_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace polyplace::cli {

enum ExitCode : int {
  kSuccess = 0,
  kParameterError = 2,
  kInputParseError = 3,
  kAuditViolation = 4,
};

enum class Command {
  kPdfTable,
  kStddevTable,
  kSample,
  kMechanism,
  kSmoothSens,
  kAudit,
  kVariance,
};

enum class OutputFormat { kCsv, kJson };

// Parsed command line. Each command reads only the fields it declares flags
// for; anything else is rejected by the parser.
struct RunConfig {
  Command command = Command::kVariance;
  std::optional<double> epsilon;
  std::vector<double> gamma;
  std::optional<double> delta;
  std::vector<double> s;
  std::vector<double> alpha;
  std::optional<int64_t> n;
  uint64_t seed = 0;
  std::optional<std::string> input_path;
  std::optional<std::string> output_path;
  std::optional<OutputFormat> format;
  std::string query = "median";
  std::optional<double> lo;
  std::optional<double> hi;
  std::optional<double> x_min;
  std::optional<double> x_max;
  std::optional<int> points;
};

// Versioned schema tag: the "schema" field of JSON output and the leading
// comment line of CSV output.
inline constexpr char kSchema[] = "polyplace/1";

// Shortest-safe, locale-independent rendering with 17 significant digits.
// Non-finite values render as the empty string (an empty CSV cell).
std::string FormatReal(double value);

// One value per line; an optional single non-numeric header line is skipped,
// as are blank lines.
absl::StatusOr<std::vector<double>> ParseValueCsv(std::istream& input);

// Full command-line entry point. `args` excludes the program name. Output
// goes to `out` unless --output is given.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace polyplace::cli

#endif  // POLYPLACE_CLI_H_
