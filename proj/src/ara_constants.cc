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

#include "ara/ara_constants.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include "ara/status_macros.h"
#include "fmt/format.h"
#include "text_util.h"

namespace ara {

absl::StatusOr<ConstantTable> ConstantTable::Build(int k) {
  if (k < kChainAnchor) {
    return absl::InvalidArgumentError(
        fmt::format("constant table needs k >= {}, got {}", kChainAnchor, k));
  }
  std::vector<double> weights(k + 1, 0.0);
  for (int c = kChainAnchor; c <= k; ++c) {
    weights[c] = std::log10(static_cast<double>(k) / c);
  }
  for (int c = kChainAnchor - 1; c >= 1; --c) {
    weights[c] = kChainFactor * weights[c + 1];
  }
  return ConstantTable(std::move(weights));
}

absl::StatusOr<double> ConstantTable::ConstantFor(int on_bits) const {
  if (on_bits < 0 || on_bits > k()) {
    return absl::OutOfRangeError(
        fmt::format("on-bit count {} outside [0, {}]", on_bits, k()));
  }
  return weights_[on_bits];
}

absl::StatusOr<double> TfidfContribution(const ConstantTable& table,
                                         int on_bits, int64_t sample_size) {
  if (sample_size < 1) {
    return absl::InvalidArgumentError(
        fmt::format("sample size must be >= 1, got {}", sample_size));
  }
  ARA_ASSIGN_OR_RETURN(const double constant, table.ConstantFor(on_bits));
  return constant / static_cast<double>(sample_size);
}

absl::StatusOr<std::vector<SamplingCheck>> VerifyConstantRule(
    std::span<const ClientReport> reports,
    std::span<const int64_t> sample_sizes, const ConstantTable& table,
    uint64_t seed) {
  if (reports.empty()) {
    return absl::InvalidArgumentError("no reports to sample from");
  }
  for (int64_t size : sample_sizes) {
    if (size < 1 || size > static_cast<int64_t>(reports.size())) {
      return absl::OutOfRangeError(
          fmt::format("sample size {} outside [1, {}]", size, reports.size()));
    }
  }

  std::map<int, SamplingCheck> checks;
  std::vector<size_t> order(reports.size());
  for (size_t s = 0; s < sample_sizes.size(); ++s) {
    const int64_t size = sample_sizes[s];
    std::iota(order.begin(), order.end(), size_t{0});
    Rng rng(internal::KeyedHash64("ara/sampling",
                                  {std::to_string(seed), std::to_string(s)}));
    // Partial Fisher-Yates: the first `size` slots become the subsample.
    for (int64_t i = 0; i < size; ++i) {
      const size_t j = i + internal::UniformIndex(
                               rng, order.size() - static_cast<size_t>(i));
      std::swap(order[i], order[j]);
    }

    std::vector<bool> seen(table.k() + 1, false);
    for (int64_t i = 0; i < size; ++i) {
      const ClientReport& report = reports[order[i]];
      for (const ReportBits* bits : {&report.prr, &report.irr}) {
        const int c = bits->Popcount();
        if (c > table.k()) {
          return absl::InvalidArgumentError(
              fmt::format("report {} has {} on bits, table covers {}",
                          report.client_id, c, table.k()));
        }
        seen[c] = true;
      }
    }

    for (int c = 0; c <= table.k(); ++c) {
      if (!seen[c]) continue;
      ARA_ASSIGN_OR_RETURN(const double contribution,
                           TfidfContribution(table, c, size));
      const double expected = table.weights()[c];
      const double recovered = contribution * static_cast<double>(size);
      const double deviation = expected == 0.0
                                   ? std::abs(recovered)
                                   : std::abs(recovered - expected) / expected;
      SamplingCheck& check = checks[c];
      check.on_bits = c;
      check.sample_sizes.push_back(size);
      check.max_relative_deviation =
          std::max(check.max_relative_deviation, deviation);
    }
  }

  std::vector<SamplingCheck> out;
  out.reserve(checks.size());
  for (auto& [c, check] : checks) out.push_back(std::move(check));
  return out;
}

absl::StatusOr<double> TermFrequency(int64_t term_count, int64_t doc_length) {
  if (doc_length < 1) {
    return absl::InvalidArgumentError("document length must be >= 1");
  }
  if (term_count < 0 || term_count > doc_length) {
    return absl::InvalidArgumentError(
        fmt::format("term count {} outside [0, {}]", term_count, doc_length));
  }
  return static_cast<double>(term_count) / static_cast<double>(doc_length);
}

absl::StatusOr<double> InverseDocumentFrequency(int64_t total_docs,
                                                int64_t docs_containing) {
  if (total_docs < 1) {
    return absl::InvalidArgumentError("corpus must hold at least one document");
  }
  if (docs_containing < 0) {
    return absl::InvalidArgumentError("document count must be nonnegative");
  }
  return std::log10(static_cast<double>(total_docs) /
                    static_cast<double>(1 + docs_containing));
}

absl::StatusOr<ProportionEstimate> EstimateTrueProportion(
    double yes_fraction, double truth_probability) {
  if (!(yes_fraction >= 0.0 && yes_fraction <= 1.0) ||
      !(truth_probability >= 0.0 && truth_probability <= 1.0)) {
    return absl::InvalidArgumentError(
        "yes fraction and truth probability must lie in [0, 1]");
  }
  if (truth_probability == 0.5) {
    return absl::InvalidArgumentError(
        "truth probability 1/2 carries no information");
  }
  ProportionEstimate out;
  out.raw = (yes_fraction + truth_probability - 1.0) /
            (2.0 * truth_probability - 1.0);
  out.estimate = std::clamp(out.raw, 0.0, 1.0);
  out.out_of_range = out.raw != out.estimate;
  return out;
}

}  // namespace ara
