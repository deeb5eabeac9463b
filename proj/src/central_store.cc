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

#include "ara/central_store.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "ara/status_macros.h"
#include "ara/weighting.h"
#include "fmt/format.h"
#include "text_util.h"

namespace ara {

namespace {

constexpr std::string_view kMagic = "ARA-STORE";
constexpr std::string_view kVersion = "v1";

absl::Status LineError(int line, std::string_view message) {
  return absl::InvalidArgumentError(
      fmt::format("store line {}: {}", line, message));
}

bool IsWellFormedKey(std::string_view key) {
  const size_t dot = key.find('.');
  if (dot == std::string_view::npos || dot == 0) return false;
  if (key.size() - dot - 1 != 5) return false;
  if (dot > 1 && key[0] == '0') return false;
  for (size_t i = 0; i < key.size(); ++i) {
    if (i != dot && !internal::IsDigit(key[i])) {
      return false;
    }
  }
  return true;
}

bool IsHex16(std::string_view s) {
  if (s.size() != 16) return false;
  for (char c : s) {
    if (!internal::IsDigit(c) && !(c >= 'a' && c <= 'f')) {
      return false;
    }
  }
  return true;
}

// Returns the value of a "name=value" header field.
std::optional<std::string_view> HeaderField(std::string_view token,
                                            std::string_view name) {
  if (!internal::ConsumePrefix(&token, name) ||
      !internal::ConsumePrefix(&token, "=")) {
    return std::nullopt;
  }
  return token;
}

}  // namespace

absl::Status ValidateLabel(std::string_view label) {
  if (label.empty()) return absl::InvalidArgumentError("label is empty");
  if (label.find_first_of(":,\t\r\n") != std::string_view::npos) {
    return absl::InvalidArgumentError(internal::Concat(
        "label '", label, "' contains a reserved character (:,\\t\\r\\n)"));
  }
  return absl::OkStatus();
}

CentralStore CentralStore::ForParams(const EncodingParams& params) {
  return CentralStore(params.k, ParamsFingerprint(params));
}

absl::Status CentralStore::Ingest(const ClientReport& report,
                                  const ConstantTable& table) {
  if (!report.true_value.has_value()) {
    return absl::FailedPreconditionError(internal::Concat(
        "report from client ", report.client_id, " carries no true value"));
  }
  if (table.k() != k_) {
    return absl::InvalidArgumentError(fmt::format(
        "constant table k={} does not match store k={}", table.k(), k_));
  }
  ARA_ASSIGN_OR_RETURN(const WeightedSum w, WeightedSumOfReport(report, table));
  return AddCount(w.key, *report.true_value, 1);
}

absl::Status CentralStore::AddCount(std::string_view key,
                                    std::string_view label, uint64_t count) {
  ARA_RETURN_IF_ERROR(ValidateLabel(label));
  if (!IsWellFormedKey(key)) {
    return absl::InvalidArgumentError(
        internal::Concat("malformed weighted-sum key '", key, "'"));
  }
  if (count == 0) return absl::OkStatus();
  auto [it, inserted] = entries_.try_emplace(std::string(key));
  if (inserted) it->second.key = std::string(key);
  it->second.counts[std::string(label)] += count;
  total_ += count;
  return absl::OkStatus();
}

const StoreEntry* CentralStore::Lookup(std::string_view key) const {
  auto it = entries_.find(std::string(key));
  return it == entries_.end() ? nullptr : &it->second;
}

absl::Status CentralStore::Merge(const CentralStore& other) {
  if (other.k_ != k_ || other.params_fingerprint_ != params_fingerprint_) {
    return absl::InvalidArgumentError(
        "cannot merge stores built under different encoding parameters");
  }
  for (const auto& [key, entry] : other.entries_) {
    for (const auto& [label, count] : entry.counts) {
      ARA_RETURN_IF_ERROR(AddCount(key, label, count));
    }
  }
  return absl::OkStatus();
}

absl::Status CentralStore::Save(std::ostream& out) const {
  out << kMagic << ' ' << kVersion << " k=" << k_
      << " params=" << params_fingerprint_ << " total=" << total_ << '\n';
  for (const auto& [key, entry] : entries_) {
    out << key << '\t';
    bool first = true;
    for (const auto& [label, count] : entry.counts) {
      if (!first) out << ',';
      out << label << ':' << count;
      first = false;
    }
    out << '\n';
  }
  if (!out) return absl::DataLossError("failed writing store");
  return absl::OkStatus();
}

absl::Status CentralStore::SaveToFile(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::NotFoundError(
        internal::Concat("cannot open ", path.string(), " for writing"));
  }
  ARA_RETURN_IF_ERROR(Save(out));
  out.close();
  if (!out) {
    return absl::DataLossError(
        internal::Concat("failed writing ", path.string()));
  }
  return absl::OkStatus();
}

absl::StatusOr<CentralStore> CentralStore::Load(
    std::istream& in, std::optional<std::string_view> expected_fingerprint) {
  std::string line;
  if (!std::getline(in, line)) return LineError(1, "missing header");

  const std::vector<std::string_view> header = internal::Split(line, ' ');
  if (header.size() != 5 || header[0] != kMagic || header[1] != kVersion) {
    return LineError(1, internal::Concat("expected '", kMagic, " ", kVersion,
                                         " k=<k> params=<hex> total=<n>'"));
  }
  int k = 0;
  uint64_t declared_total = 0;
  const auto k_text = HeaderField(header[2], "k");
  const auto fingerprint = HeaderField(header[3], "params");
  const auto total_text = HeaderField(header[4], "total");
  if (!k_text || !internal::ParseDecimal(*k_text, &k) || k < 1) {
    return LineError(1, "bad k field");
  }
  if (!fingerprint || !IsHex16(*fingerprint)) {
    return LineError(1, "bad params fingerprint");
  }
  if (!total_text || !internal::ParseDecimal(*total_text, &declared_total)) {
    return LineError(1, "bad total field");
  }
  if (expected_fingerprint.has_value() &&
      *expected_fingerprint != *fingerprint) {
    return absl::FailedPreconditionError(fmt::format(
        "store line 1: params fingerprint {} does not match session {}",
        *fingerprint, *expected_fingerprint));
  }

  CentralStore store(k, std::string(*fingerprint));
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string_view> fields = internal::Split(line, '\t', 2);
    if (fields.size() != 2)
      return LineError(line_no, "expected key<TAB>counts");
    const std::string_view key = fields[0];
    if (!IsWellFormedKey(key)) {
      return LineError(line_no, internal::Concat("malformed key '", key, "'"));
    }
    if (store.entries_.contains(std::string(key))) {
      return LineError(line_no, internal::Concat("duplicate key '", key, "'"));
    }
    std::string previous_label;
    for (std::string_view item : internal::Split(fields[1], ',')) {
      const size_t colon = item.rfind(':');
      if (colon == std::string_view::npos) {
        return LineError(line_no, "expected <label>:<count>");
      }
      const std::string_view label = item.substr(0, colon);
      uint64_t count = 0;
      if (!ValidateLabel(label).ok()) {
        return LineError(line_no,
                         internal::Concat("invalid label '", label, "'"));
      }
      if (colon + 1 >= item.size() || !internal::IsDigit(item[colon + 1]) ||
          !internal::ParseDecimal(item.substr(colon + 1), &count) ||
          count == 0) {
        return LineError(line_no,
                         internal::Concat("invalid count in '", item, "'"));
      }
      if (!previous_label.empty() && label <= previous_label) {
        return LineError(line_no, "labels not strictly sorted");
      }
      previous_label = std::string(label);
      ARA_RETURN_IF_ERROR(store.AddCount(key, label, count));
    }
  }
  if (store.total_ != declared_total) {
    return LineError(1, fmt::format("header total {} but entries sum to {}",
                                    declared_total, store.total_));
  }
  return store;
}

absl::StatusOr<CentralStore> CentralStore::LoadFromFile(
    const std::filesystem::path& path,
    std::optional<std::string_view> expected_fingerprint) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(internal::Concat("cannot open ", path.string()));
  }
  return Load(in, expected_fingerprint);
}

}  // namespace ara
