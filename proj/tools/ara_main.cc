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

// ara: generate report corpora, build the central store, analyze test
// batches and run batch experiments.
//
// Exit codes: 0 success, 1 analysis or ingest failure, 2 usage error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "ara/analysis.h"
#include "ara/ara_constants.h"
#include "ara/central_store.h"
#include "ara/fleet_sim.h"
#include "ara/rappor_client.h"
#include "fmt/format.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
  ara::EncodingParams params;
  double rate = ara::kDefaultRate;
  uint64_t seed = 0;

  // generate
  int64_t n = 0;
  std::string prefix = "client";
  bool unlabeled = false;

  std::string corpus;
  std::string store;
  std::string out;
  bool strip_labels = false;

  // eval
  int tests = 40;
  int64_t batch = 1000;
  std::vector<int64_t> batch_sizes;
  int64_t train_n = 25000;
  int64_t test_n = 25000;

  // verify-constants
  std::vector<int64_t> sizes = {100, 1000, 10000, 20000, 25000};
};

int Fail(int code, const absl::Status& status) {
  std::cerr << "ara: " << status.message() << '\n';
  return code;
}

int Fail(int code, std::string_view message) {
  std::cerr << "ara: " << message << '\n';
  return code;
}

void AddParamFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--k", o.params.k, "Bits per report")->capture_default_str();
  cmd->add_option("--h", o.params.h, "Bloom hash functions")
      ->capture_default_str();
  cmd->add_option("--m", o.params.m, "Cohorts")->capture_default_str();
  cmd->add_option("--f", o.params.f, "Permanent response noise")
      ->capture_default_str();
  cmd->add_option("--p", o.params.p, "P(report 1 | PRR bit 0)")
      ->capture_default_str();
  cmd->add_option("--q", o.params.q, "P(report 1 | PRR bit 1)")
      ->capture_default_str();
}

absl::StatusOr<ara::FleetConfig> FleetFor(const Options& o, int64_t n,
                                          uint64_t seed, std::string prefix) {
  absl::StatusOr<ara::FleetConfig> config =
      ara::DefaultFleetConfig(n, seed, o.rate);
  if (!config.ok()) return config.status();
  config->params = o.params;
  config->client_prefix = std::move(prefix);
  return config;
}

int RunGenerate(const Options& o) {
  auto config = FleetFor(o, o.n, o.seed, o.prefix);
  if (!config.ok()) return Fail(kExitUsage, config.status());
  if (absl::Status s = ara::ValidateFleetConfig(*config); !s.ok()) {
    return Fail(kExitUsage, s);
  }
  auto reports = ara::GenerateCorpus(*config);
  if (!reports.ok()) return Fail(kExitFailure, reports.status());
  if (o.unlabeled) {
    for (ara::ClientReport& r : *reports) r.true_value.reset();
  }
  if (absl::Status s = ara::WriteCsvFile(*reports, o.out); !s.ok()) {
    return Fail(kExitFailure, s);
  }
  std::cout << fmt::format("wrote {} reports to {}\n", reports->size(), o.out);
  return kExitOk;
}

int RunBuildDb(const Options& o) {
  auto table = ara::ConstantTable::Build(o.params.k);
  if (!table.ok()) return Fail(kExitUsage, table.status());
  auto reports = ara::ReadCsvFile(o.corpus, o.params);
  if (!reports.ok()) return Fail(kExitFailure, reports.status());
  ara::CentralStore store = ara::CentralStore::ForParams(o.params);
  for (size_t i = 0; i < reports->size(); ++i) {
    if (absl::Status s = store.Ingest((*reports)[i], *table); !s.ok()) {
      return Fail(kExitFailure, fmt::format("csv line {}: {}", i + 2,
                                            std::string(s.message())));
    }
  }
  if (absl::Status s = store.SaveToFile(o.out); !s.ok()) {
    return Fail(kExitFailure, s);
  }
  std::cout << fmt::format("ingested {} reports into {} keys, wrote {}\n",
                           store.total_training_reports(),
                           store.entries().size(), o.out);
  return kExitOk;
}

int RunAnalyze(const Options& o) {
  auto table = ara::ConstantTable::Build(o.params.k);
  if (!table.ok()) return Fail(kExitUsage, table.status());
  auto store = ara::CentralStore::LoadFromFile(
      o.store, ara::ParamsFingerprint(o.params));
  if (!store.ok()) return Fail(kExitFailure, store.status());
  auto reports = ara::ReadCsvFile(o.corpus, o.params);
  if (!reports.ok()) return Fail(kExitFailure, reports.status());
  if (reports->empty()) return Fail(kExitUsage, "test batch is empty");
  if (o.strip_labels) {
    for (ara::ClientReport& r : *reports) r.true_value.reset();
  }
  auto report = ara::AnalyzeBatch(*reports, *store, *table);
  if (!report.ok()) return Fail(kExitFailure, report.status());

  std::vector<std::string> credits;
  for (const auto& [label, count] : report->credits) {
    credits.push_back(fmt::format("{}:{}", label, count));
  }
  std::cout << fmt::format(
      "sample_size={} matched={} unmatched={} major_value={} "
      "achievement_pct={:.2f}\n",
      report->sample_size, report->matched, report->unmatched(),
      report->major_value.empty() ? "<none>" : report->major_value,
      report->achievement_pct);
  for (const std::string& c : credits) std::cout << "  " << c << '\n';

  if (!o.out.empty()) {
    std::ofstream out(o.out, std::ios::binary | std::ios::trunc);
    out << "sample_size,matched,major_value,achievement_pct,credits\n"
        << fmt::format("{},{},{},{:.6f},{}\n", report->sample_size,
                       report->matched, report->major_value,
                       report->achievement_pct, fmt::join(credits, ";"));
    if (!out) return Fail(kExitFailure, "failed writing " + o.out);
  }
  return kExitOk;
}

int RunEval(const Options& o) {
  if (o.train_n < 1 || o.test_n < 1) {
    return Fail(kExitUsage, "--train-n and --test-n must be positive");
  }
  auto train = FleetFor(o, o.train_n, ara::DeriveSeed(o.seed, 0), "train");
  if (!train.ok()) return Fail(kExitUsage, train.status());
  auto test = FleetFor(o, o.test_n, ara::DeriveSeed(o.seed, 1), "test");
  if (!test.ok()) return Fail(kExitUsage, test.status());
  if (absl::Status s = ara::ValidateFleetConfig(*train); !s.ok()) {
    return Fail(kExitUsage, s);
  }

  std::vector<int64_t> sizes = o.batch_sizes;
  if (sizes.empty()) sizes.push_back(o.batch);
  for (int64_t size : sizes) {
    if (size < 1 || size > o.test_n) {
      return Fail(kExitUsage,
                  fmt::format("batch size {} outside [1, {}]", size, o.test_n));
    }
  }
  auto rows = ara::RunSizeSweep(*train, *test, o.tests, sizes);
  if (!rows.ok()) return Fail(kExitFailure, rows.status());
  if (absl::Status s = ara::WriteResultsFiles(*rows, o.out); !s.ok()) {
    return Fail(kExitFailure, s);
  }

  int correct = 0;
  double achievement = 0.0;
  std::vector<double> x, y;
  for (const ara::ExperimentRow& row : *rows) {
    correct += row.detected_correctly ? 1 : 0;
    achievement += row.achievement_pct;
    x.push_back(static_cast<double>(row.sample_size));
    y.push_back(row.achievement_pct);
  }
  const double mean = rows->empty() ? 0.0 : achievement / rows->size();
  std::cout << fmt::format(
      "tests={} detected={} mean_achievement_pct={:.2f} wrote {}\n",
      rows->size(), correct, mean, o.out);
  if (sizes.size() > 1) {
    std::cout << fmt::format("size_achievement_rank_correlation={:.4f}\n",
                             ara::RankCorrelation(x, y));
  }
  return correct == static_cast<int>(rows->size()) ? kExitOk : kExitFailure;
}

int RunVerifyConstants(const Options& o) {
  auto table = ara::ConstantTable::Build(o.params.k);
  if (!table.ok()) return Fail(kExitUsage, table.status());
  auto reports = ara::ReadCsvFile(o.corpus, o.params);
  if (!reports.ok()) return Fail(kExitFailure, reports.status());
  if (reports->empty()) return Fail(kExitUsage, "corpus is empty");
  for (int64_t size : o.sizes) {
    if (size < 1 || size > static_cast<int64_t>(reports->size())) {
      return Fail(kExitUsage, fmt::format("sample size {} exceeds corpus of {}",
                                          size, reports->size()));
    }
  }

  std::cout << "on_bits  reconstructed  reference   |delta|\n";
  double max_delta = 0.0;
  for (int c = 0; c <= table->k(); ++c) {
    const double w = table->weights()[c];
    if (o.params.k == 32 && c >= 1 &&
        c <= static_cast<int>(ara::kReferenceConstants32.size())) {
      const double reference = ara::kReferenceConstants32[c - 1];
      const double delta = std::abs(w - reference);
      max_delta = std::max(max_delta, delta);
      std::cout << fmt::format("{:7}  {:13.8f}  {:10.8f}  {:.2e}\n", c, w,
                               reference, delta);
    } else {
      std::cout << fmt::format("{:7}  {:13.8f}  {:>10}  {:>8}\n", c, w, "-",
                               "-");
    }
  }
  if (o.params.k == 32) {
    std::cout << fmt::format("max |delta| vs reference table: {:.3e}\n",
                             max_delta);
  }

  auto checks = ara::VerifyConstantRule(*reports, o.sizes, *table, o.seed);
  if (!checks.ok()) return Fail(kExitUsage, checks.status());
  double worst = 0.0;
  std::cout << "on_bits  sizes_observed  max_relative_deviation\n";
  for (const ara::SamplingCheck& check : *checks) {
    worst = std::max(worst, check.max_relative_deviation);
    std::cout << fmt::format("{:7}  {:14}  {:.3e}\n", check.on_bits,
                             check.sample_sizes.size(),
                             check.max_relative_deviation);
  }
  constexpr double kTolerance = 1e-12;
  std::cout << fmt::format(
      "constant/sample-size rule: max deviation {:.3e} "
      "({})\n",
      worst, worst < kTolerance ? "ok" : "FAILED");
  return worst < kTolerance ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local-to-central privacy-preserving report aggregation"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Options o;

  CLI::App* generate =
      app.add_subcommand("generate", "Generate a report corpus");
  AddParamFlags(generate, o);
  generate->add_option("--n", o.n, "Number of clients")
      ->required()
      ->check(CLI::PositiveNumber);
  generate->add_option("--seed", o.seed, "Reproducibility seed")
      ->capture_default_str();
  generate->add_option("--lambda", o.rate, "Exponential rate over v1..v10")
      ->capture_default_str();
  generate->add_option("--prefix", o.prefix, "Client id prefix")
      ->capture_default_str();
  generate->add_flag("--unlabeled", o.unlabeled, "Omit the true_value column");
  generate->add_option("--out", o.out, "Output CSV")->required();

  CLI::App* build_db =
      app.add_subcommand("build-db", "Build the central store from a corpus");
  AddParamFlags(build_db, o);
  build_db->add_option("--corpus", o.corpus, "Labeled corpus CSV")->required();
  build_db->add_option("--out", o.out, "Store file")->required();

  CLI::App* analyze =
      app.add_subcommand("analyze", "Match a test batch against a store");
  AddParamFlags(analyze, o);
  analyze->add_option("--corpus", o.corpus, "Test batch CSV")->required();
  analyze->add_option("--store", o.store, "Store file")->required();
  analyze->add_flag("--strip-labels", o.strip_labels,
                    "Drop true values before matching");
  analyze->add_option("--out", o.out, "Optional summary CSV");

  CLI::App* eval = app.add_subcommand("eval", "Run batch detection tests");
  AddParamFlags(eval, o);
  eval->add_option("--tests", o.tests, "Tests per batch size")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  eval->add_option("--batch", o.batch, "Batch size")->capture_default_str();
  eval->add_option("--batch-sizes", o.batch_sizes,
                   "Sweep several batch sizes (overrides --batch)")
      ->delimiter(',');
  eval->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  eval->add_option("--lambda", o.rate, "Exponential rate over v1..v10")
      ->capture_default_str();
  eval->add_option("--train-n", o.train_n, "Training clients")
      ->capture_default_str();
  eval->add_option("--test-n", o.test_n, "Test corpus clients")
      ->capture_default_str();
  eval->add_option("--out", o.out, "Results CSV")->required();

  CLI::App* verify = app.add_subcommand(
      "verify-constants", "Audit the constant table against a corpus");
  AddParamFlags(verify, o);
  verify->add_option("--corpus", o.corpus, "Corpus CSV")->required();
  verify->add_option("--sizes", o.sizes, "Sample sizes")
      ->delimiter(',')
      ->capture_default_str();
  verify->add_option("--seed", o.seed, "Sampling seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (absl::Status s = ara::ValidateParams(o.params); !s.ok()) {
    return Fail(kExitUsage, s);
  }
  if (!(o.rate > 0.0)) return Fail(kExitUsage, "--lambda must be positive");

  if (*generate) return RunGenerate(o);
  if (*build_db) return RunBuildDb(o);
  if (*analyze) return RunAnalyze(o);
  if (*eval) return RunEval(o);
  if (*verify) return RunVerifyConstants(o);
  return kExitUsage;
}
