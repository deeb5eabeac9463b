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

// The aggregator's database. Only quantized weighted-sum keys and the number
// of training reports of each true value that produced them are kept; raw
// reports, cohorts, bitsets and client ids never reach the store.
//
// On-disk format (UTF-8, LF line endings):
//
//   ARA-STORE v1 k=<k> params=<16 hex digits> total=<n>
//   <key>\t<label>:<count>[,<label>:<count>...]
//
// Entry lines are sorted by key, labels within a line lexicographically.

#ifndef ARA_CENTRAL_STORE_H_
#define ARA_CENTRAL_STORE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ara/ara_constants.h"
#include "ara/rappor_client.h"

namespace ara {

struct StoreEntry {
  std::string key;
  std::map<std::string, uint64_t> counts;  // label -> occurrences, all >= 1

  friend bool operator==(const StoreEntry&, const StoreEntry&) = default;
};

// Labels may not be empty and may not contain ':', ',', tab, CR or LF.
absl::Status ValidateLabel(std::string_view label);

// Single writer during ingestion; read-only and freely shareable afterwards.
class CentralStore {
 public:
  CentralStore(int k, std::string params_fingerprint)
      : k_(k), params_fingerprint_(std::move(params_fingerprint)) {}
  static CentralStore ForParams(const EncodingParams& params);

  int k() const { return k_; }
  const std::string& params_fingerprint() const { return params_fingerprint_; }
  uint64_t total_training_reports() const { return total_; }
  const std::map<std::string, StoreEntry>& entries() const { return entries_; }

  // Adds one labeled report at its weighted-sum key. FailedPrecondition for
  // unlabeled reports.
  absl::Status Ingest(const ClientReport& report, const ConstantTable& table);

  // Adds `count` occurrences of `label` at `key` directly.
  absl::Status AddCount(std::string_view key, std::string_view label,
                        uint64_t count = 1);

  const StoreEntry* Lookup(std::string_view key) const;

  // Folds another partial store into this one. Count maps add, so merging is
  // associative and commutative. The stores must share k and fingerprint.
  absl::Status Merge(const CentralStore& other);

  absl::Status Save(std::ostream& out) const;
  absl::Status SaveToFile(const std::filesystem::path& path) const;

  // Parses a store. When `expected_fingerprint` is given, a header with a
  // different fingerprint is rejected. Errors name the offending line.
  static absl::StatusOr<CentralStore> Load(
      std::istream& in,
      std::optional<std::string_view> expected_fingerprint = std::nullopt);
  static absl::StatusOr<CentralStore> LoadFromFile(
      const std::filesystem::path& path,
      std::optional<std::string_view> expected_fingerprint = std::nullopt);

  friend bool operator==(const CentralStore&, const CentralStore&) = default;

 private:
  int k_;
  std::string params_fingerprint_;
  uint64_t total_ = 0;
  std::map<std::string, StoreEntry> entries_;
};

}  // namespace ara

#endif  // ARA_CENTRAL_STORE_H_
