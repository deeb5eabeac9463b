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

#ifndef ARA_WEIGHTING_H_
#define ARA_WEIGHTING_H_

#include <string>

#include "absl/status/statusor.h"
#include "ara/ara_constants.h"
#include "ara/rappor_client.h"

namespace ara {

inline constexpr int kKeyDecimals = 5;

struct WeightedSum {
  double value = 0.0;
  // `value` rounded half-up to kKeyDecimals places, e.g. "25.28652".
  std::string key;

  friend bool operator==(const WeightedSum&, const WeightedSum&) = default;
};

// Fixed-point key for a nonnegative weighted sum: minimal integer part, '.',
// exactly five fractional digits. Zero renders as "0.00000".
std::string QuantizeKey(double value);

// W = n_prr * C[n_prr] + n_irr * C[n_irr], multiplied by the cohort when the
// cohort is nonzero. Cohorts 0 and 1 therefore share every key.
absl::StatusOr<WeightedSum> ComputeWeightedSum(int prr_on_bits, int irr_on_bits,
                                               int cohort,
                                               const ConstantTable& table);

absl::StatusOr<WeightedSum> WeightedSumOfReport(const ClientReport& report,
                                                const ConstantTable& table);

}  // namespace ara

#endif  // ARA_WEIGHTING_H_
