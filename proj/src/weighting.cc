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

#include "ara/weighting.h"

#include <cmath>
#include <cstdint>

#include "ara/status_macros.h"
#include "fmt/format.h"
#include "text_util.h"

namespace ara {

std::string QuantizeKey(double value) {
  constexpr int64_t kScale = 100000;
  const auto scaled = static_cast<int64_t>(
      std::floor(value * static_cast<double>(kScale) + 0.5));
  return fmt::format("{}.{:05}", scaled / kScale, scaled % kScale);
}

absl::StatusOr<WeightedSum> ComputeWeightedSum(int prr_on_bits, int irr_on_bits,
                                               int cohort,
                                               const ConstantTable& table) {
  if (cohort < 0) {
    return absl::InvalidArgumentError(
        fmt::format("cohort must be nonnegative, got {}", cohort));
  }
  ARA_ASSIGN_OR_RETURN(const double prr_constant,
                       table.ConstantFor(prr_on_bits));
  ARA_ASSIGN_OR_RETURN(const double irr_constant,
                       table.ConstantFor(irr_on_bits));
  const double bracket =
      prr_on_bits * prr_constant + irr_on_bits * irr_constant;
  WeightedSum out;
  out.value = cohort == 0 ? bracket : bracket * cohort;
  out.key = QuantizeKey(out.value);
  return out;
}

absl::StatusOr<WeightedSum> WeightedSumOfReport(const ClientReport& report,
                                                const ConstantTable& table) {
  if (report.prr.width() != table.k() || report.irr.width() != table.k()) {
    return absl::InvalidArgumentError(fmt::format(
        "report {} has widths {}/{}, table expects {}", report.client_id,
        report.prr.width(), report.irr.width(), table.k()));
  }
  return ComputeWeightedSum(report.prr.Popcount(), report.irr.Popcount(),
                            report.cohort, table);
}

}  // namespace ara
