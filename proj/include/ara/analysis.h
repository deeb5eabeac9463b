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

// Analysis phase: unlabeled test reports are keyed with the same weighted
// sum used at ingestion and matched against the central store. Each matched
// report credits the modal label of its store entry; the label with the most
// credits is the batch's major true value.

#ifndef ARA_ANALYSIS_H_
#define ARA_ANALYSIS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ara/ara_constants.h"
#include "ara/central_store.h"
#include "ara/fleet_sim.h"
#include "ara/rappor_client.h"

namespace ara {

struct AnalysisReport {
  int64_t sample_size = 0;
  int64_t matched = 0;
  std::map<std::string, int64_t> credits;
  // Empty when nothing matched.
  std::string major_value;
  double achievement_pct = 0.0;

  int64_t unmatched() const { return sample_size - matched; }
};

struct ExperimentRow {
  int test_no = 0;
  std::string major_true_value;
  int64_t sample_size = 0;
  double achievement_pct = 0.0;
  std::string ground_truth_major;
  bool detected_correctly = false;

  friend bool operator==(const ExperimentRow&, const ExperimentRow&) = default;
};

// Most frequent label, ties to the lexicographically smallest. Empty map
// yields "".
std::string ModalLabel(const std::map<std::string, uint64_t>& counts);
std::string ModalLabel(const std::map<std::string, int64_t>& counts);

std::optional<std::string> MatchReport(const ClientReport& report,
                                       const CentralStore& store,
                                       const ConstantTable& table);

// Labels on the input reports are ignored.
absl::StatusOr<AnalysisReport> AnalyzeBatch(
    std::span<const ClientReport> reports, const CentralStore& store,
    const ConstantTable& table);

absl::StatusOr<CentralStore> BuildStore(std::span<const ClientReport> corpus,
                                        const EncodingParams& params,
                                        const ConstantTable& table);

// Builds the store from the training corpus once, generates the test corpus,
// then for each test draws `batch_size` reports without replacement (seeded
// by the test config's seed and the test index), strips their labels and
// analyzes them. The batch's ground truth is the modal label of the stripped
// labels.
absl::StatusOr<std::vector<ExperimentRow>> RunExperiment(
    const FleetConfig& train_config, const FleetConfig& test_config,
    int n_tests, int64_t batch_size);

// Same as RunExperiment, with `tests_per_size` tests for each batch size.
// Rows are numbered consecutively across sizes.
absl::StatusOr<std::vector<ExperimentRow>> RunSizeSweep(
    const FleetConfig& train_config, const FleetConfig& test_config,
    int tests_per_size, std::span<const int64_t> batch_sizes);

// Spearman rank correlation with average ranks for ties. NaN when either
// side is constant or fewer than two points are given.
double RankCorrelation(std::span<const double> x, std::span<const double> y);

// test,major_value,sample_size,achievement_pct,ground_truth,correct
absl::Status WriteResultsCsv(std::span<const ExperimentRow> rows,
                             std::ostream& out);
absl::StatusOr<std::vector<ExperimentRow>> ReadResultsCsv(std::istream& in);

// sample_size,achievement_pct
absl::Status WriteAchievementCsv(std::span<const ExperimentRow> rows,
                                 std::ostream& out);

// Writes `path` and an achievement_vs_size.csv beside it.
absl::Status WriteResultsFiles(std::span<const ExperimentRow> rows,
                               const std::filesystem::path& path);

}  // namespace ara

#endif  // ARA_ANALYSIS_H_
