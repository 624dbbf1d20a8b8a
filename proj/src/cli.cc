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

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>
#include <utility>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "polyplace/audit.h"
#include "polyplace/competitors.h"
#include "polyplace/laplace_distribution.h"
#include "polyplace/mechanism.h"
#include "polyplace/polyplace_distribution.h"
#include "polyplace/random.h"
#include "polyplace/sensitivity.h"

namespace polyplace::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr int64_t kMaxSamples = 100'000'000;

struct CommandOutput {
  std::string text;
  int exit_code = kSuccess;
};

absl::Status ParseError(absl::string_view message) {
  return absl::DataLossError(message);
}

absl::Status ParameterError(absl::string_view message) {
  return absl::InvalidArgumentError(message);
}

int ExitCodeFor(const absl::Status& status) {
  return status.code() == absl::StatusCode::kDataLoss ? kInputParseError
                                                      : kParameterError;
}

json Number(double value) {
  return std::isfinite(value) ? json(value) : json(nullptr);
}

json Number(const std::optional<double>& value) {
  return value.has_value() ? Number(*value) : json(nullptr);
}

std::string Cell(const std::optional<double>& value) {
  return value.has_value() ? FormatReal(*value) : std::string();
}

void AppendCsvRow(std::string& text, const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) text += ',';
    text += cells[i];
  }
  text += '\n';
}

std::string CsvPreamble() { return absl::StrCat("# schema: ", kSchema, "\n"); }

// Single-result commands are natively JSON. As CSV they become key,value
// rows over the flattened document.
std::string RenderDocument(const json& document, OutputFormat format) {
  if (format == OutputFormat::kJson) return document.dump(2) + "\n";
  std::string text = CsvPreamble();
  AppendCsvRow(text, {"key", "value"});
  const json flat = document.flatten();
  for (const auto& [key, value] : flat.items()) {
    std::string cell;
    if (value.is_number_float()) {
      cell = FormatReal(value.get<double>());
    } else if (value.is_string()) {
      cell = value.get<std::string>();
    } else if (!value.is_null()) {
      cell = value.dump();
    }
    AppendCsvRow(text, {key, cell});
  }
  return text;
}

OutputFormat FormatOr(const RunConfig& config, OutputFormat fallback) {
  return config.format.value_or(fallback);
}

absl::StatusOr<PolyPlaceParams> ParamsFromConfig(const RunConfig& config) {
  if (!config.s.empty() || !config.alpha.empty()) {
    if (config.s.size() != 1 || config.alpha.size() != 1) {
      return ParameterError("Give exactly one --s and one --alpha");
    }
    return PolyPlaceParams::Create(config.s[0], config.alpha[0]);
  }
  if (config.gamma.size() == 1) {
    MechanismSpec spec;
    spec.epsilon = config.epsilon.value_or(1.0);
    spec.gamma = config.gamma[0];
    return PolyPlaceNoiseParams(1.0, spec);
  }
  return ParameterError(
      "Give --s and --alpha, or --gamma (and optionally --epsilon)");
}

struct LoadedDataset {
  std::vector<double> values;
  double query_value = 0.0;
  SensitivityReport report;
};

absl::StatusOr<LoadedDataset> LoadAndAnalyze(const RunConfig& config,
                                             double gamma) {
  if (!config.input_path.has_value()) {
    return ParameterError("--input is required");
  }
  if (!config.lo.has_value() || !config.hi.has_value()) {
    return ParameterError("--lo and --hi are required");
  }
  if (!(*config.lo <= *config.hi)) {
    return ParameterError("--lo must not exceed --hi");
  }
  if (!(gamma > 0) || !std::isfinite(gamma)) {
    return ParameterError("--gamma must be finite and > 0");
  }
  std::ifstream file(*config.input_path);
  if (!file) {
    return ParseError(absl::StrCat("Cannot read ", *config.input_path));
  }
  absl::StatusOr<std::vector<double>> values = ParseValueCsv(file);
  if (!values.ok()) return values.status();

  LoadedDataset loaded;
  const double lo = *config.lo;
  const double hi = *config.hi;
  if (config.query == "median") {
    // Records are clamped into the public bounds before release.
    for (double& v : *values) v = std::clamp(v, lo, hi);
    absl::StatusOr<Dataset> dataset = Dataset::Create(*values, lo, hi);
    if (!dataset.ok()) return dataset.status();
    loaded.query_value = Median(dataset->values());
    absl::StatusOr<SensitivityReport> report =
        MedianSmoothSensitivity(*dataset, gamma);
    if (!report.ok()) return report.status();
    loaded.report = *std::move(report);
  } else if (config.query == "count_range") {
    // Records are unbounded reals; a single replacement can move one record
    // into or out of [lo, hi], so every dataset has local sensitivity 1.
    loaded.query_value = CountInRange(lo, hi)(*values);
    loaded.report.gamma = gamma;
    loaded.report.local_sensitivity = 1.0;
    loaded.report.per_distance_max.assign(values->size() + 1, 1.0);
    loaded.report.smooth_sensitivity =
        SmoothFromPerDistanceMax(loaded.report.per_distance_max, gamma);
  } else {
    return ParameterError(
        absl::StrCat("Unknown query '", config.query,
                     "', expected median or count_range"));
  }
  loaded.values = *std::move(values);
  return loaded;
}

json ReportJson(const SensitivityReport& report) {
  json per_distance = json::array();
  for (double v : report.per_distance_max) per_distance.push_back(Number(v));
  return json{{"local_sensitivity", Number(report.local_sensitivity)},
              {"smooth_sensitivity", Number(report.smooth_sensitivity)},
              {"gamma", Number(report.gamma)},
              {"per_distance_max", per_distance}};
}

absl::StatusOr<CommandOutput> PdfTable(const RunConfig& config) {
  const double epsilon = config.epsilon.value_or(1.0);
  std::vector<std::pair<double, double>> members;
  if (!config.s.empty() || !config.alpha.empty()) {
    if (config.s.size() != config.alpha.size()) {
      return ParameterError("--s and --alpha must be given the same number "
                            "of times");
    }
    for (size_t i = 0; i < config.s.size(); ++i) {
      members.emplace_back(config.s[i], config.alpha[i]);
    }
  } else if (!config.gamma.empty()) {
    for (double gamma : config.gamma) {
      members.emplace_back(1.0 / gamma, epsilon / gamma);
    }
  } else {
    // gamma ~ 0.91, 2/3 and 0.2 at epsilon = 1 and unit smooth sensitivity.
    members = {{1.1, 1.1}, {1.5, 1.5}, {5.0, 5.0}};
  }

  std::vector<PolyPlaceDistribution> dists;
  std::vector<std::string> header = {"x"};
  for (const auto& [s, alpha] : members) {
    absl::StatusOr<PolyPlaceParams> params = PolyPlaceParams::Create(s, alpha);
    if (!params.ok()) return params.status();
    dists.emplace_back(*params);
    header.push_back(absl::StrCat("polyplace_s", s, "_alpha", alpha));
  }
  absl::StatusOr<LaplaceDistribution> laplace =
      LaplaceDistribution::Create(1.0 / epsilon);
  if (!laplace.ok()) return laplace.status();
  header.push_back(absl::StrCat("laplace_b", 1.0 / epsilon));

  const double x_min = config.x_min.value_or(-6.0);
  const double x_max = config.x_max.value_or(6.0);
  const int points = config.points.value_or(2001);
  if (!(x_min < x_max) || points < 2) {
    return ParameterError("Need --x-min < --x-max and --points >= 2");
  }
  const std::vector<double> xs = UniformGrid(x_min, x_max, points);

  CommandOutput output;
  if (FormatOr(config, OutputFormat::kCsv) == OutputFormat::kJson) {
    json columns = json::object();
    for (size_t c = 0; c < dists.size(); ++c) {
      json column = json::array();
      for (double x : xs) column.push_back(Number(dists[c].Pdf(x)));
      columns[header[c + 1]] = std::move(column);
    }
    json lap = json::array();
    for (double x : xs) lap.push_back(Number(laplace->Pdf(x)));
    columns[header.back()] = std::move(lap);
    json document = {{"schema", kSchema}, {"x", xs}, {"columns", columns}};
    output.text = document.dump(2) + "\n";
    return output;
  }
  output.text = CsvPreamble();
  AppendCsvRow(output.text, header);
  for (double x : xs) {
    std::vector<std::string> row = {FormatReal(x)};
    for (const PolyPlaceDistribution& dist : dists) {
      row.push_back(FormatReal(dist.Pdf(x)));
    }
    row.push_back(FormatReal(laplace->Pdf(x)));
    AppendCsvRow(output.text, row);
  }
  return output;
}

absl::StatusOr<CommandOutput> StddevTable(const RunConfig& config) {
  const double epsilon = config.epsilon.value_or(1.0);
  const double delta = config.delta.value_or(1e-5);
  const int points = config.points.value_or(50);
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    return ParameterError("--epsilon must be finite and > 0");
  }
  if (!(delta > 0 && delta < 1)) {
    return ParameterError("--delta must lie in (0, 1)");
  }
  if (points < 1) return ParameterError("--points must be >= 1");

  std::vector<ComparisonRow> rows;
  for (double gamma : LogSpacedGammaGrid(epsilon, points)) {
    absl::StatusOr<ComparisonRow> row = CompareAt(gamma, epsilon, delta);
    if (!row.ok()) return row.status();
    rows.push_back(*row);
  }

  CommandOutput output;
  if (FormatOr(config, OutputFormat::kCsv) == OutputFormat::kJson) {
    json list = json::array();
    for (const ComparisonRow& row : rows) {
      list.push_back({{"gamma", Number(row.gamma)},
                      {"polyplace", Number(row.stddev_polyplace)},
                      {"student_t", Number(row.stddev_student_t_opt)},
                      {"student_t_shape", Number(row.t_shape_opt)},
                      {"cauchy", Number(row.stddev_cauchy_opt)},
                      {"cauchy_shape", Number(row.cauchy_shape_opt)},
                      {"laplace_smooth", Number(row.stddev_laplace_smooth)},
                      {"laplace_global", Number(row.stddev_laplace_global)}});
    }
    json document = {{"schema", kSchema},
                     {"epsilon", epsilon},
                     {"delta", delta},
                     {"rows", list}};
    output.text = document.dump(2) + "\n";
    return output;
  }
  output.text = CsvPreamble();
  AppendCsvRow(output.text,
               {"gamma", "polyplace", "student_t", "student_t_shape", "cauchy",
                "cauchy_shape", "laplace_smooth", "laplace_global"});
  for (const ComparisonRow& row : rows) {
    AppendCsvRow(output.text, {FormatReal(row.gamma),
                               FormatReal(row.stddev_polyplace),
                               FormatReal(row.stddev_student_t_opt),
                               Cell(row.t_shape_opt),
                               FormatReal(row.stddev_cauchy_opt),
                               Cell(row.cauchy_shape_opt),
                               Cell(row.stddev_laplace_smooth),
                               FormatReal(row.stddev_laplace_global)});
  }
  return output;
}

absl::StatusOr<CommandOutput> Sample(const RunConfig& config) {
  absl::StatusOr<PolyPlaceParams> params = ParamsFromConfig(config);
  if (!params.ok()) return params.status();
  const int64_t n = config.n.value_or(1000);
  if (n < 0 || n > kMaxSamples) {
    return ParameterError(
        absl::StrCat("--n must lie in [0, ", kMaxSamples, "]"));
  }
  const PolyPlaceDistribution dist(*params);
  SeededRandom random(config.seed);
  std::vector<double> samples;
  samples.reserve(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) samples.push_back(dist.Sample(random));

  CommandOutput output;
  if (FormatOr(config, OutputFormat::kCsv) == OutputFormat::kJson) {
    json document = {{"schema", kSchema},
                     {"s", params->scale()},
                     {"alpha", params->shape()},
                     {"seed", config.seed},
                     {"samples", samples}};
    output.text = document.dump(2) + "\n";
    return output;
  }
  output.text = CsvPreamble();
  AppendCsvRow(output.text, {"sample"});
  for (double v : samples) AppendCsvRow(output.text, {FormatReal(v)});
  return output;
}

absl::StatusOr<CommandOutput> Variance(const RunConfig& config) {
  absl::StatusOr<PolyPlaceParams> params = ParamsFromConfig(config);
  if (!params.ok()) return params.status();
  const PolyPlaceDistribution dist(*params);
  const double variance = dist.Variance();

  CommandOutput output;
  if (FormatOr(config, OutputFormat::kCsv) == OutputFormat::kJson) {
    json document = {{"schema", kSchema},
                     {"s", params->scale()},
                     {"alpha", params->shape()},
                     {"mean", dist.Mean()},
                     {"variance", Number(variance)},
                     {"stddev", Number(std::sqrt(variance))}};
    output.text = document.dump(2) + "\n";
    return output;
  }
  output.text = CsvPreamble();
  AppendCsvRow(output.text, {"s", "alpha", "mean", "variance", "stddev"});
  AppendCsvRow(output.text,
               {FormatReal(params->scale()), FormatReal(params->shape()),
                FormatReal(dist.Mean()), FormatReal(variance),
                FormatReal(std::sqrt(variance))});
  return output;
}

absl::StatusOr<CommandOutput> SmoothSens(const RunConfig& config) {
  if (config.gamma.size() != 1) {
    return ParameterError("--gamma is required exactly once");
  }
  absl::StatusOr<LoadedDataset> loaded = LoadAndAnalyze(config, config.gamma[0]);
  if (!loaded.ok()) return loaded.status();
  json document = {{"schema", kSchema},
                   {"query", config.query},
                   {"n", loaded->values.size()},
                   {"lo", *config.lo},
                   {"hi", *config.hi},
                   {"query_value", Number(loaded->query_value)}};
  const json report = ReportJson(loaded->report);
  for (const auto& [key, value] : report.items()) document[key] = value;
  CommandOutput output;
  output.text = RenderDocument(document, FormatOr(config, OutputFormat::kJson));
  return output;
}

absl::StatusOr<CommandOutput> Mechanism(const RunConfig& config) {
  if (config.gamma.size() != 1 || !config.epsilon.has_value()) {
    return ParameterError("--epsilon and --gamma are required");
  }
  MechanismSpec spec;
  spec.epsilon = *config.epsilon;
  spec.gamma = config.gamma[0];
  if (absl::Status status = ValidateForPolyPlace(spec); !status.ok()) {
    return status;
  }
  absl::StatusOr<LoadedDataset> loaded = LoadAndAnalyze(config, spec.gamma);
  if (!loaded.ok()) return loaded.status();

  SeededRandom random(config.seed);
  absl::StatusOr<ReleaseResult> release =
      ReleasePolyPlace(loaded->query_value, loaded->report.smooth_sensitivity,
                       spec, random);
  if (!release.ok()) return release.status();

  json noise = {{"distribution", NoiseKindName(release->distribution_tag)},
                {"scale", Number(release->noise_scale_used)},
                {"shape", Number(spec.epsilon / spec.gamma)},
                {"exact", release->exact},
                {"infinite_variance", release->infinite_variance}};
  json document = {
      {"schema", kSchema},
      {"query", config.query},
      {"n", loaded->values.size()},
      {"query_value", Number(loaded->query_value)},
      {"smooth_sensitivity", Number(loaded->report.smooth_sensitivity)},
      {"noisy_value", Number(release->noisy_value)},
      {"spec", {{"epsilon", spec.epsilon}, {"gamma", spec.gamma}}},
      {"seed", config.seed},
      {"noise", noise}};
  CommandOutput output;
  output.text = RenderDocument(document, FormatOr(config, OutputFormat::kJson));
  return output;
}

json ScenarioJson(const NeighborScenario& scenario) {
  return {{"lambda_r", Number(scenario.lambda_r)},
          {"lambda_s", Number(scenario.lambda_s)}};
}

absl::StatusOr<CommandOutput> Audit(const RunConfig& config) {
  if (config.gamma.size() != 1 || !config.epsilon.has_value()) {
    return ParameterError("--epsilon and --gamma are required");
  }
  MechanismSpec spec;
  spec.epsilon = *config.epsilon;
  spec.gamma = config.gamma[0];
  if (absl::Status status = ValidateForPolyPlace(spec); !status.ok()) {
    return status;
  }
  const int64_t per_axis = config.n.value_or(41);
  const int points = config.points.value_or(2001);
  const double x_min = config.x_min.value_or(-20.0);
  const double x_max = config.x_max.value_or(20.0);
  if (per_axis < 0 || per_axis > 10'000 || points < 0 || !(x_min <= x_max)) {
    return ParameterError(
        "Need 0 <= --n <= 10000, --points >= 0 and --x-min <= --x-max");
  }
  const std::vector<NeighborScenario> scenarios =
      DefaultScenarioGrid(spec.gamma, static_cast<int>(per_axis));
  const std::vector<double> xs = UniformGrid(x_min, x_max, points);
  absl::StatusOr<AuditReport> report = AuditPrivacy(spec, scenarios, xs);
  if (!report.ok()) return report.status();

  json violations = json::array();
  for (const AuditFinding& finding : report->violations) {
    violations.push_back({{"scenario", ScenarioJson(finding.scenario)},
                          {"x", Number(finding.x)},
                          {"ratio", Number(finding.ratio)}});
  }
  json document = {{"schema", kSchema},
                   {"epsilon", spec.epsilon},
                   {"gamma", spec.gamma},
                   {"bound", std::exp(spec.epsilon)},
                   {"max_ratio", Number(report->max_ratio)},
                   {"argmax_scenario", ScenarioJson(report->argmax_scenario)},
                   {"argmax_x", Number(report->argmax_x)},
                   {"grid_size", report->grid_size},
                   {"violations", violations}};
  CommandOutput output;
  output.text = RenderDocument(document, FormatOr(config, OutputFormat::kJson));
  output.exit_code = report->violations.empty() ? kSuccess : kAuditViolation;
  return output;
}

absl::StatusOr<CommandOutput> Dispatch(const RunConfig& config) {
  switch (config.command) {
    case Command::kPdfTable:
      return PdfTable(config);
    case Command::kStddevTable:
      return StddevTable(config);
    case Command::kSample:
      return Sample(config);
    case Command::kMechanism:
      return Mechanism(config);
    case Command::kSmoothSens:
      return SmoothSens(config);
    case Command::kAudit:
      return Audit(config);
    case Command::kVariance:
      return Variance(config);
  }
  return ParameterError("Unknown command");
}

// Flag groups, registered per subcommand so that flags a command does not use
// are rejected.
struct Flags {
  RunConfig& config;
  std::optional<std::string> format_name;

  void Common(CLI::App* app) {
    app->add_option("--seed", config.seed, "Random seed (default 0)");
    app->add_option("--output", config.output_path, "Output file");
    app->add_option("--format", format_name, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  }
  void Privacy(CLI::App* app, bool gamma_list) {
    app->add_option("--epsilon", config.epsilon, "Privacy budget");
    CLI::Option* gamma = app->add_option("--gamma", config.gamma,
                                         "Smoothness parameter");
    if (!gamma_list) gamma->expected(1);
  }
  void Shape(CLI::App* app, bool lists) {
    CLI::Option* s = app->add_option("--s", config.s, "PolyPlace scale");
    CLI::Option* alpha =
        app->add_option("--alpha", config.alpha, "PolyPlace shape");
    if (!lists) {
      s->expected(1);
      alpha->expected(1);
    }
  }
  void Data(CLI::App* app) {
    app->add_option("--input", config.input_path, "CSV, one value per line");
    app->add_option("--query", config.query, "median or count_range");
    app->add_option("--lo", config.lo, "Lower bound");
    app->add_option("--hi", config.hi, "Upper bound");
  }
  void XRange(CLI::App* app) {
    app->add_option("--x-min", config.x_min);
    app->add_option("--x-max", config.x_max);
    app->add_option("--points", config.points);
  }
};

}  // namespace

std::string FormatReal(double value) {
  if (!std::isfinite(value)) return std::string();
  char buffer[64];
  const std::to_chars_result result = std::to_chars(
      buffer, buffer + sizeof(buffer), value, std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

absl::StatusOr<std::vector<double>> ParseValueCsv(std::istream& input) {
  std::vector<double> values;
  std::string line;
  int line_number = 0;
  bool seen_content = false;
  while (std::getline(input, line)) {
    ++line_number;
    const size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const size_t end = line.find_last_not_of(" \t\r");
    const absl::string_view field(line.data() + begin, end - begin + 1);
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    if (*first == '+') ++first;
    const std::from_chars_result parsed = std::from_chars(first, last, value);
    const bool numeric = parsed.ec == std::errc() && parsed.ptr == last &&
                         std::isfinite(value);
    if (!numeric) {
      if (!seen_content) {
        seen_content = true;  // header
        continue;
      }
      return ParseError(absl::StrCat("Line ", line_number, ": '", field,
                                     "' is not a finite number"));
    }
    seen_content = true;
    values.push_back(value);
  }
  if (values.empty()) return ParseError("Input contains no values");
  return values;
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  RunConfig config;
  Flags flags{config, std::nullopt};

  CLI::App app{"PolyPlace smooth-sensitivity noise toolkit", "polyplace_cli"};
  app.require_subcommand(1);

  CLI::App* pdf = app.add_subcommand("pdf-table", "Density table");
  flags.Common(pdf);
  flags.Privacy(pdf, true);
  flags.Shape(pdf, true);
  flags.XRange(pdf);

  CLI::App* stddev = app.add_subcommand("stddev-table",
                                        "Standard deviation comparison table");
  flags.Common(stddev);
  stddev->add_option("--epsilon", config.epsilon, "Privacy budget");
  stddev->add_option("--delta", config.delta, "Approximate-DP delta");
  stddev->add_option("--points", config.points, "Number of gamma values");

  CLI::App* sample = app.add_subcommand("sample", "Draw PolyPlace samples");
  flags.Common(sample);
  flags.Privacy(sample, false);
  flags.Shape(sample, false);
  sample->add_option("--n", config.n, "Number of samples");

  CLI::App* mechanism =
      app.add_subcommand("mechanism", "Private release of a dataset query");
  flags.Common(mechanism);
  flags.Privacy(mechanism, false);
  flags.Data(mechanism);

  CLI::App* smooth =
      app.add_subcommand("smooth-sens", "Smooth sensitivity of a query");
  flags.Common(smooth);
  smooth->add_option("--gamma", config.gamma, "Smoothness parameter")
      ->expected(1);
  flags.Data(smooth);

  CLI::App* audit = app.add_subcommand("audit", "Privacy-loss ratio audit");
  flags.Common(audit);
  flags.Privacy(audit, false);
  flags.XRange(audit);
  audit->add_option("--n", config.n, "Scenarios per axis");

  CLI::App* variance = app.add_subcommand("variance", "PolyPlace variance");
  flags.Common(variance);
  flags.Privacy(variance, false);
  flags.Shape(variance, false);

  std::vector<const char*> argv = {"polyplace_cli"};
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParameterError;
  }

  const std::pair<CLI::App*, Command> commands[] = {
      {pdf, Command::kPdfTable},    {stddev, Command::kStddevTable},
      {sample, Command::kSample},   {mechanism, Command::kMechanism},
      {smooth, Command::kSmoothSens}, {audit, Command::kAudit},
      {variance, Command::kVariance}};
  for (const auto& [sub, command] : commands) {
    if (sub->parsed()) config.command = command;
  }
  if (flags.format_name.has_value()) {
    config.format = *flags.format_name == "json" ? OutputFormat::kJson
                                                 : OutputFormat::kCsv;
  }

  absl::StatusOr<CommandOutput> result = Dispatch(config);
  if (!result.ok()) {
    err << "error: " << result.status().message() << "\n";
    return ExitCodeFor(result.status());
  }
  if (config.output_path.has_value()) {
    std::ofstream file(*config.output_path, std::ios::binary | std::ios::trunc);
    if (file) file << result->text;
    if (!file) {
      err << "error: cannot write " << *config.output_path << "\n";
      return kParameterError;
    }
  } else {
    out << result->text;
  }
  return result->exit_code;
}

}  // namespace polyplace::cli
