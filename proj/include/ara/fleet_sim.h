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

// Simulated client fleets and the report CSV format.
//
//   client,cohort,prr,irr[,true_value]
//
// Bitsets are written most significant index first. The true_value column is
// optional; files without it describe unlabeled test batches.

#ifndef ARA_FLEET_SIM_H_
#define ARA_FLEET_SIM_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ara/rappor_client.h"

namespace ara {

inline constexpr double kDefaultRate = 0.5;
inline constexpr int kDefaultValueCount = 10;

struct FleetConfig {
  int64_t n_clients = 0;
  std::vector<std::string> values;   // v1..v10 by default
  std::vector<double> distribution;  // one probability per value
  uint64_t seed = 0;
  EncodingParams params;
  std::string client_prefix = "client";  // ids are <prefix>-<index>
};

// P(v_i) proportional to exp(-rate * i), i = 1..n_values.
absl::StatusOr<std::vector<double>> ExponentialDistribution(int n_values,
                                                            double rate);

// "v1".."v<n>".
std::vector<std::string> DefaultValues(int n = kDefaultValueCount);

// n_clients clients over v1..v10 with an exponential(rate) distribution.
absl::StatusOr<FleetConfig> DefaultFleetConfig(int64_t n_clients, uint64_t seed,
                                               double rate = kDefaultRate);

absl::Status ValidateFleetConfig(const FleetConfig& config);

// Mixes a master seed with a stream index into an independent 64-bit seed.
uint64_t DeriveSeed(uint64_t master, uint64_t stream);

// Labeled reports, one per client. Client i draws its value and IRR noise
// from a generator seeded by (seed, i), so the corpus is a pure function of
// the config and independent of generation order.
absl::StatusOr<std::vector<ClientReport>> GenerateCorpus(
    const FleetConfig& config);

// Writes the true_value column when any report is labeled; unlabeled rows
// then leave the field empty.
absl::Status WriteCsv(std::span<const ClientReport> reports, std::ostream& out);
absl::Status WriteCsvFile(std::span<const ClientReport> reports,
                          const std::filesystem::path& path);

// Validates widths against params.k and cohorts against params.m. Errors
// name the 1-based line number.
absl::StatusOr<std::vector<ClientReport>> ReadCsv(std::istream& in,
                                                  const EncodingParams& params);
absl::StatusOr<std::vector<ClientReport>> ReadCsvFile(
    const std::filesystem::path& path, const EncodingParams& params);

}  // namespace ara

#endif  // ARA_FLEET_SIM_H_
