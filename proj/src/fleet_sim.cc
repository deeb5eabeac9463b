// Copyright 2026 The ARA Authors
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

#include "ara/fleet_sim.h"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "ara/central_store.h"
#include "ara/status_macros.h"
#include "fmt/format.h"
#include "text_util.h"

namespace ara {

namespace {

constexpr std::string_view kHeader = "client,cohort,prr,irr";
constexpr std::string_view kLabeledHeader = "client,cohort,prr,irr,true_value";

absl::Status CsvError(int64_t line, std::string_view message) {
  return absl::InvalidArgumentError(
      fmt::format("csv line {}: {}", line, message));
}

absl::Status ValidateClientId(std::string_view id) {
  if (id.empty() || id.find_first_of(",\r\n") != std::string_view::npos) {
    return absl::InvalidArgumentError(internal::Concat(
        "client id '", id, "' is empty or contains , CR or LF"));
  }
  return absl::OkStatus();
}

size_t DrawIndex(std::span<const double> cumulative, double u) {
  for (size_t i = 0; i < cumulative.size(); ++i) {
    if (u < cumulative[i]) return i;
  }
  // Rounding left the total just under 1; take the last value with mass.
  size_t last = cumulative.size() - 1;
  while (last > 0 && cumulative[last] == cumulative[last - 1]) --last;
  return last;
}

}  // namespace

absl::StatusOr<std::vector<double>> ExponentialDistribution(int n_values,
                                                            double rate) {
  if (n_values < 1) {
    return absl::InvalidArgumentError("need at least one value");
  }
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    return absl::InvalidArgumentError(
        fmt::format("rate must be positive and finite, got {:g}", rate));
  }
  std::vector<double> probabilities(n_values);
  double total = 0.0;
  // Factor out exp(-rate) so the largest term is exactly 1.
  for (int i = 0; i < n_values; ++i) {
    probabilities[i] = std::exp(-rate * i);
    total += probabilities[i];
  }
  for (double& p : probabilities) p /= total;
  return probabilities;
}

std::vector<std::string> DefaultValues(int n) {
  std::vector<std::string> values;
  values.reserve(n);
  for (int i = 1; i <= n; ++i) values.push_back(internal::Concat("v", i));
  return values;
}

absl::StatusOr<FleetConfig> DefaultFleetConfig(int64_t n_clients, uint64_t seed,
                                               double rate) {
  FleetConfig config;
  config.n_clients = n_clients;
  config.values = DefaultValues();
  ARA_ASSIGN_OR_RETURN(
      config.distribution,
      ExponentialDistribution(static_cast<int>(config.values.size()), rate));
  config.seed = seed;
  return config;
}

absl::Status ValidateFleetConfig(const FleetConfig& config) {
  ARA_RETURN_IF_ERROR(ValidateParams(config.params));
  if (config.n_clients < 0) {
    return absl::InvalidArgumentError("client count must be nonnegative");
  }
  if (config.values.empty()) {
    return absl::InvalidArgumentError("value list is empty");
  }
  if (config.values.size() != config.distribution.size()) {
    return absl::InvalidArgumentError(
        fmt::format("{} values but {} probabilities", config.values.size(),
                    config.distribution.size()));
  }
  std::set<std::string_view> distinct;
  for (const std::string& value : config.values) {
    ARA_RETURN_IF_ERROR(ValidateLabel(value));
    if (!distinct.insert(value).second) {
      return absl::InvalidArgumentError(
          internal::Concat("duplicate value '", value, "'"));
    }
  }
  double sum = 0.0;
  for (double p : config.distribution) {
    if (!(p >= 0.0)) {
      return absl::InvalidArgumentError("probabilities must be nonnegative");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    return absl::InvalidArgumentError(
        fmt::format("probabilities sum to {:.12g}, not 1", sum));
  }
  return ValidateClientId(internal::Concat(config.client_prefix, "-0"));
}

uint64_t DeriveSeed(uint64_t master, uint64_t stream) {
  return internal::KeyedHash64(
      "ara/seed", {std::to_string(master), std::to_string(stream)});
}

absl::StatusOr<std::vector<ClientReport>> GenerateCorpus(
    const FleetConfig& config) {
  ARA_RETURN_IF_ERROR(ValidateFleetConfig(config));
  std::vector<double> cumulative(config.distribution.size());
  double running = 0.0;
  for (size_t i = 0; i < cumulative.size(); ++i) {
    running += config.distribution[i];
    cumulative[i] = running;
  }

  std::vector<ClientReport> reports;
  reports.reserve(static_cast<size_t>(config.n_clients));
  for (int64_t i = 0; i < config.n_clients; ++i) {
    Rng rng(DeriveSeed(config.seed, static_cast<uint64_t>(i)));
    const std::string& value =
        config.values[DrawIndex(cumulative, internal::UniformDouble(rng))];
    ARA_ASSIGN_OR_RETURN(
        ClientReport report,
        EncodeReport(internal::Concat(config.client_prefix, "-", i), value,
                     config.params, rng));
    reports.push_back(std::move(report));
  }
  return reports;
}

absl::Status WriteCsv(std::span<const ClientReport> reports,
                      std::ostream& out) {
  bool labeled = false;
  for (const ClientReport& r : reports) {
    ARA_RETURN_IF_ERROR(ValidateClientId(r.client_id));
    if (r.true_value.has_value()) {
      ARA_RETURN_IF_ERROR(ValidateLabel(*r.true_value));
      labeled = true;
    }
  }
  out << (labeled ? kLabeledHeader : kHeader) << '\n';
  for (const ClientReport& r : reports) {
    out << r.client_id << ',' << r.cohort << ',' << r.prr.ToString() << ','
        << r.irr.ToString();
    if (labeled) out << ',' << r.true_value.value_or("");
    out << '\n';
  }
  if (!out) return absl::DataLossError("failed writing report csv");
  return absl::OkStatus();
}

absl::Status WriteCsvFile(std::span<const ClientReport> reports,
                          const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::NotFoundError(
        internal::Concat("cannot open ", path.string(), " for writing"));
  }
  ARA_RETURN_IF_ERROR(WriteCsv(reports, out));
  out.close();
  if (!out) {
    return absl::DataLossError(
        internal::Concat("failed writing ", path.string()));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<ClientReport>> ReadCsv(
    std::istream& in, const EncodingParams& params) {
  ARA_RETURN_IF_ERROR(ValidateParams(params));
  std::string line;
  if (!std::getline(in, line)) return CsvError(1, "missing header");
  size_t columns = 0;
  if (line == kHeader) {
    columns = 4;
  } else if (line == kLabeledHeader) {
    columns = 5;
  } else {
    return CsvError(1, internal::Concat("expected header '", kLabeledHeader,
                                        "' (last column optional)"));
  }

  std::vector<ClientReport> reports;
  int64_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string_view> fields = internal::Split(line, ',');
    if (fields.size() != columns) {
      return CsvError(line_no, fmt::format("expected {} columns, got {}",
                                           columns, fields.size()));
    }
    ClientReport report;
    if (!ValidateClientId(fields[0]).ok()) {
      return CsvError(line_no, "empty client id");
    }
    report.client_id = std::string(fields[0]);
    if (!internal::ParseDecimal(fields[1], &report.cohort) ||
        report.cohort < 0 || report.cohort >= params.m) {
      return CsvError(line_no, fmt::format("cohort '{}' outside [0, {})",
                                           fields[1], params.m));
    }
    auto prr = ReportBits::Parse(fields[2], params.k);
    if (!prr.ok()) {
      return CsvError(
          line_no,
          internal::Concat("prr: ", std::string(prr.status().message())));
    }
    auto irr = ReportBits::Parse(fields[3], params.k);
    if (!irr.ok()) {
      return CsvError(
          line_no,
          internal::Concat("irr: ", std::string(irr.status().message())));
    }
    report.prr = *prr;
    report.irr = *irr;
    if (columns == 5 && !fields[4].empty()) {
      if (!ValidateLabel(fields[4]).ok()) {
        return CsvError(line_no,
                        internal::Concat("invalid label '", fields[4], "'"));
      }
      report.true_value = std::string(fields[4]);
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

absl::StatusOr<std::vector<ClientReport>> ReadCsvFile(
    const std::filesystem::path& path, const EncodingParams& params) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(internal::Concat("cannot open ", path.string()));
  }
  return ReadCsv(in, params);
}

}  // namespace ara
