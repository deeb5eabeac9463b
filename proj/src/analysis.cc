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

#include "ara/analysis.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>

#include "ara/status_macros.h"
#include "ara/weighting.h"
#include "fmt/format.h"
#include "text_util.h"

namespace ara {

namespace {

constexpr std::string_view kResultsHeader =
    "test,major_value,sample_size,achievement_pct,ground_truth,correct";
constexpr std::string_view kAchievementHeader = "sample_size,achievement_pct";
constexpr std::string_view kAchievementFile = "achievement_vs_size.csv";

template <typename Count>
std::string ModalLabelImpl(const std::map<std::string, Count>& counts) {
  std::string best;
  Count best_count = 0;
  // std::map iterates in lexicographic order, so strict > keeps the smallest
  // label among ties.
  for (const auto& [label, count] : counts) {
    if (count > best_count) {
      best = label;
      best_count = count;
    }
  }
  return best;
}

std::string FormatDouble(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

absl::Status ResultsError(int64_t line, std::string_view message) {
  return absl::InvalidArgumentError(
      fmt::format("results line {}: {}", line, message));
}

}  // namespace

std::string ModalLabel(const std::map<std::string, uint64_t>& counts) {
  return ModalLabelImpl(counts);
}

std::string ModalLabel(const std::map<std::string, int64_t>& counts) {
  return ModalLabelImpl(counts);
}

std::optional<std::string> MatchReport(const ClientReport& report,
                                       const CentralStore& store,
                                       const ConstantTable& table) {
  const absl::StatusOr<WeightedSum> w = WeightedSumOfReport(report, table);
  if (!w.ok()) return std::nullopt;
  const StoreEntry* entry = store.Lookup(w->key);
  if (entry == nullptr || entry->counts.empty()) return std::nullopt;
  return ModalLabel(entry->counts);
}

absl::StatusOr<AnalysisReport> AnalyzeBatch(
    std::span<const ClientReport> reports, const CentralStore& store,
    const ConstantTable& table) {
  if (reports.empty()) {
    return absl::InvalidArgumentError("cannot analyze an empty batch");
  }
  AnalysisReport out;
  out.sample_size = static_cast<int64_t>(reports.size());
  for (const ClientReport& report : reports) {
    std::optional<std::string> label = MatchReport(report, store, table);
    if (!label.has_value()) continue;
    ++out.matched;
    ++out.credits[*label];
  }
  out.major_value = ModalLabel(out.credits);
  if (!out.major_value.empty()) {
    out.achievement_pct = 100.0 *
                          static_cast<double>(out.credits[out.major_value]) /
                          static_cast<double>(out.sample_size);
  }
  return out;
}

absl::StatusOr<CentralStore> BuildStore(std::span<const ClientReport> corpus,
                                        const EncodingParams& params,
                                        const ConstantTable& table) {
  CentralStore store = CentralStore::ForParams(params);
  for (const ClientReport& report : corpus) {
    ARA_RETURN_IF_ERROR(store.Ingest(report, table));
  }
  return store;
}

absl::StatusOr<std::vector<ExperimentRow>> RunSizeSweep(
    const FleetConfig& train_config, const FleetConfig& test_config,
    int tests_per_size, std::span<const int64_t> batch_sizes) {
  if (tests_per_size < 0) {
    return absl::InvalidArgumentError("test count must be nonnegative");
  }
  if (!(train_config.params == test_config.params)) {
    return absl::InvalidArgumentError(
        "training and test fleets must share encoding parameters");
  }
  for (int64_t size : batch_sizes) {
    if (size < 1 || size > test_config.n_clients) {
      return absl::OutOfRangeError(fmt::format("batch size {} outside [1, {}]",
                                               size, test_config.n_clients));
    }
  }

  ARA_ASSIGN_OR_RETURN(const ConstantTable table,
                       ConstantTable::Build(train_config.params.k));
  ARA_ASSIGN_OR_RETURN(const std::vector<ClientReport> training,
                       GenerateCorpus(train_config));
  ARA_ASSIGN_OR_RETURN(const CentralStore store,
                       BuildStore(training, train_config.params, table));
  ARA_ASSIGN_OR_RETURN(const std::vector<ClientReport> test_corpus,
                       GenerateCorpus(test_config));

  std::vector<ExperimentRow> rows;
  std::vector<size_t> order(test_corpus.size());
  std::vector<ClientReport> batch;
  int test_no = 0;
  for (int64_t size : batch_sizes) {
    for (int t = 0; t < tests_per_size; ++t) {
      ++test_no;
      Rng rng(DeriveSeed(test_config.seed, 0x100000000ull + test_no));
      std::iota(order.begin(), order.end(), size_t{0});
      batch.clear();
      std::map<std::string, int64_t> truth;
      for (int64_t i = 0; i < size; ++i) {
        const size_t j = static_cast<size_t>(i) +
                         internal::UniformIndex(rng, order.size() - i);
        std::swap(order[i], order[j]);
        ClientReport report = test_corpus[order[i]];
        if (report.true_value.has_value()) ++truth[*report.true_value];
        report.true_value.reset();
        batch.push_back(std::move(report));
      }
      ARA_ASSIGN_OR_RETURN(const AnalysisReport analysis,
                           AnalyzeBatch(batch, store, table));
      ExperimentRow row;
      row.test_no = test_no;
      row.major_true_value = analysis.major_value;
      row.sample_size = size;
      row.achievement_pct = analysis.achievement_pct;
      row.ground_truth_major = ModalLabel(truth);
      row.detected_correctly = row.major_true_value == row.ground_truth_major;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

absl::StatusOr<std::vector<ExperimentRow>> RunExperiment(
    const FleetConfig& train_config, const FleetConfig& test_config,
    int n_tests, int64_t batch_size) {
  const int64_t sizes[] = {batch_size};
  return RunSizeSweep(train_config, test_config, n_tests, sizes);
}

double RankCorrelation(std::span<const double> x, std::span<const double> y) {
  const size_t n = x.size();
  if (n != y.size() || n < 2) return std::numeric_limits<double>::quiet_NaN();
  auto ranks = [n](std::span<const double> v) {
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&v](size_t a, size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    for (size_t i = 0; i < n;) {
      size_t j = i;
      while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double average = (static_cast<double>(i + j) / 2.0) + 1.0;
      for (size_t t = i; t <= j; ++t) r[idx[t]] = average;
      i = j + 1;
    }
    return r;
  };
  const std::vector<double> rx = ranks(x);
  const std::vector<double> ry = ranks(y);
  const double mean = (static_cast<double>(n) + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

absl::Status WriteResultsCsv(std::span<const ExperimentRow> rows,
                             std::ostream& out) {
  out << kResultsHeader << '\n';
  for (const ExperimentRow& row : rows) {
    if (row.major_true_value.find_first_of(",\r\n") != std::string::npos ||
        row.ground_truth_major.find_first_of(",\r\n") != std::string::npos) {
      return absl::InvalidArgumentError("labels may not contain , CR or LF");
    }
    out << row.test_no << ',' << row.major_true_value << ',' << row.sample_size
        << ',' << FormatDouble(row.achievement_pct) << ','
        << row.ground_truth_major << ',' << (row.detected_correctly ? 1 : 0)
        << '\n';
  }
  if (!out) return absl::DataLossError("failed writing results csv");
  return absl::OkStatus();
}

absl::StatusOr<std::vector<ExperimentRow>> ReadResultsCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kResultsHeader) {
    return ResultsError(
        1, internal::Concat("expected header '", kResultsHeader, "'"));
  }
  std::vector<ExperimentRow> rows;
  int64_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string_view> f = internal::Split(line, ',');
    if (f.size() != 6) return ResultsError(line_no, "expected 6 columns");
    ExperimentRow row;
    row.major_true_value = std::string(f[1]);
    row.ground_truth_major = std::string(f[4]);
    const auto [ptr, ec] = std::from_chars(
        f[3].data(), f[3].data() + f[3].size(), row.achievement_pct);
    if (!internal::ParseDecimal(f[0], &row.test_no) ||
        !internal::ParseDecimal(f[2], &row.sample_size) || ec != std::errc() ||
        ptr != f[3].data() + f[3].size() || (f[5] != "0" && f[5] != "1")) {
      return ResultsError(line_no, "malformed field");
    }
    row.detected_correctly = f[5] == "1";
    rows.push_back(std::move(row));
  }
  return rows;
}

absl::Status WriteAchievementCsv(std::span<const ExperimentRow> rows,
                                 std::ostream& out) {
  out << kAchievementHeader << '\n';
  for (const ExperimentRow& row : rows) {
    out << row.sample_size << ',' << FormatDouble(row.achievement_pct) << '\n';
  }
  if (!out) return absl::DataLossError("failed writing achievement csv");
  return absl::OkStatus();
}

absl::Status WriteResultsFiles(std::span<const ExperimentRow> rows,
                               const std::filesystem::path& path) {
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
      return absl::NotFoundError(
          internal::Concat("cannot open ", path.string(), " for writing"));
    }
    ARA_RETURN_IF_ERROR(WriteResultsCsv(rows, out));
  }
  const std::filesystem::path companion =
      path.has_parent_path() ? path.parent_path() / kAchievementFile
                             : std::filesystem::path(kAchievementFile);
  std::ofstream out(companion, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::NotFoundError(
        internal::Concat("cannot open ", companion.string(), " for writing"));
  }
  return WriteAchievementCsv(rows, out);
}

}  // namespace ara
