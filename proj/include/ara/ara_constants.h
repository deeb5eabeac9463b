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

// The on-bit constant table that drives the sampling step, plus the generic
// TF/IDF helpers and the randomized-response proportion estimator.
//
// For a report width of k bits the constant contributed by a string with c
// "on" bits is log10(k / c) for c >= 4. Below that the constants grow by a
// factor of 1.1 per removed bit, anchored at c = 4. A TF-IDF sample of size S
// then sees a per-report contribution of constant / S.

#ifndef ARA_ARA_CONSTANTS_H_
#define ARA_ARA_CONSTANTS_H_

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ara/rappor_client.h"

namespace ara {

// Reference constants for k = 32, on-bit counts 1..17 (index 0 is c = 1).
inline constexpr std::array<double, 17> kReferenceConstants32 = {
    1.20201279, 1.0927389, 0.993399, 0.90309, 0.80618,   0.727,
    0.660052,   0.60206,   0.550907, 0.50515, 0.4637573, 0.425969,
    0.3912066,  0.3590219, 0.329059, 0.30103, 0.274701};

inline constexpr double kChainFactor = 1.1;
inline constexpr int kChainAnchor = 4;

// Immutable after construction.
class ConstantTable {
 public:
  static absl::StatusOr<ConstantTable> Build(int k);

  int k() const { return static_cast<int>(weights_.size()) - 1; }
  std::span<const double> weights() const { return weights_; }

  // weights[c]; OutOfRange for c outside [0, k].
  absl::StatusOr<double> ConstantFor(int on_bits) const;

 private:
  explicit ConstantTable(std::vector<double> weights)
      : weights_(std::move(weights)) {}

  std::vector<double> weights_;
};

// weights[c] / sample_size.
absl::StatusOr<double> TfidfContribution(const ConstantTable& table,
                                         int on_bits, int64_t sample_size);

struct SamplingCheck {
  int on_bits = 0;
  std::vector<int64_t> sample_sizes;  // sizes in which the count was observed
  double max_relative_deviation = 0.0;
};

// Audits the constant / sample-size rule: for every sample size draws one
// subsample (without replacement, seeded by `seed`), and for every on-bit
// count seen in a PRR or IRR string of that subsample checks that
// TfidfContribution(c, S) * S reproduces weights[c]. One result per observed
// count, ordered by count.
absl::StatusOr<std::vector<SamplingCheck>> VerifyConstantRule(
    std::span<const ClientReport> reports,
    std::span<const int64_t> sample_sizes, const ConstantTable& table,
    uint64_t seed = 0);

// term_count / doc_length.
absl::StatusOr<double> TermFrequency(int64_t term_count, int64_t doc_length);

// log10(total_docs / (1 + docs_containing)).
absl::StatusOr<double> InverseDocumentFrequency(int64_t total_docs,
                                                int64_t docs_containing);

struct ProportionEstimate {
  double raw = 0.0;       // unclamped (YA + p - 1) / (2p - 1)
  double estimate = 0.0;  // raw clamped to [0, 1]
  bool out_of_range = false;
};

// Warner-style randomized response: given the observed yes fraction and
// the probability p that a respondent answers truthfully, estimates the true
// proportion. InvalidArgument when p == 1/2 or inputs leave [0, 1].
absl::StatusOr<ProportionEstimate> EstimateTrueProportion(
    double yes_fraction, double truth_probability);

}  // namespace ara

#endif  // ARA_ARA_CONSTANTS_H_
