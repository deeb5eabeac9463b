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

// Client-side RAPPOR encoding: Bloom filter, permanent randomized response
// (PRR) and instantaneous randomized response (IRR).

#ifndef ARA_RAPPOR_CLIENT_H_
#define ARA_RAPPOR_CLIENT_H_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace ara {

// Deterministic generator used for every random draw in the pipeline. The
// engine's output sequence is fixed by the C++ standard, so corpora are
// reproducible across platforms.
using Rng = std::mt19937_64;

inline constexpr int kMaxBitWidth = 64;
// One SHA-256 digest byte per Bloom index.
inline constexpr int kMaxHashCount = 32;

struct EncodingParams {
  int k = 32;       // bits per report
  int h = 2;        // Bloom hash functions
  int m = 64;       // cohorts
  double f = 0.5;   // PRR noise
  double p = 0.5;   // P(IRR bit = 1 | PRR bit = 0)
  double q = 0.75;  // P(IRR bit = 1 | PRR bit = 1)

  friend bool operator==(const EncodingParams&,
                         const EncodingParams&) = default;
};

// Checks 4 <= k <= 64, 1 <= h <= min(k, 32), m >= 1 and f, p, q in [0, 1].
absl::Status ValidateParams(const EncodingParams& params);

// Canonical text form, e.g. "k=32;h=2;m=64;f=0.5;p=0.5;q=0.75".
std::string CanonicalParams(const EncodingParams& params);

// First 8 bytes of SHA-256(CanonicalParams(params)) as 16 lowercase hex
// digits.
std::string ParamsFingerprint(const EncodingParams& params);

// Fixed-width bit vector of at most 64 bits. Index 0 is the least
// significant bit.
class ReportBits {
 public:
  ReportBits() = default;
  explicit ReportBits(int width, uint64_t bits = 0);

  int width() const { return width_; }
  uint64_t bits() const { return bits_; }

  bool Get(int index) const { return (bits_ >> index) & 1u; }
  void Set(int index, bool on);
  int Popcount() const;

  // Most significant index first, one '0'/'1' character per bit.
  std::string ToString() const;
  static absl::StatusOr<ReportBits> Parse(std::string_view text,
                                          int expected_width);

  friend bool operator==(const ReportBits&, const ReportBits&) = default;

 private:
  int width_ = 0;
  uint64_t bits_ = 0;
};

struct ClientReport {
  std::string client_id;
  int cohort = 0;
  ReportBits prr;
  ReportBits irr;
  std::optional<std::string> true_value;

  friend bool operator==(const ClientReport&, const ClientReport&) = default;
};

// Bloom bits for `value` in `cohort`. The digest is SHA-256 over the cohort
// as two big-endian bytes followed by the UTF-8 bytes of `value`; bit j of
// the h hash functions is digest[j] mod k.
absl::StatusOr<ReportBits> BloomEncode(std::string_view value, int cohort,
                                       const EncodingParams& params);

// Each bit becomes 1 with probability f/2, 0 with probability f/2, and keeps
// its Bloom value otherwise. The randomness is seeded from a hash of
// (client_id, value), so the result is memoized without client state.
ReportBits PermanentRandomizedResponse(const ReportBits& bloom,
                                       const EncodingParams& params,
                                       std::string_view client_id,
                                       std::string_view value);

// Reports 1 with probability q where the PRR bit is set and p where it is
// clear. Draws fresh randomness from `rng` on every call.
ReportBits InstantaneousRandomizedResponse(const ReportBits& prr,
                                           const EncodingParams& params,
                                           Rng& rng);

// Stable cohort for a client: hash(client_id) mod m.
int AssignCohort(std::string_view client_id, const EncodingParams& params);

// Full client pipeline. The returned report carries `value` as its label
// only when `keep_label` is set (training corpora).
absl::StatusOr<ClientReport> EncodeReport(std::string_view client_id,
                                          std::string_view value,
                                          const EncodingParams& params,
                                          Rng& rng, bool keep_label = true);

namespace internal {

std::array<uint8_t, 32> Sha256(std::string_view data);

// Uniform double in [0, 1) built from the top 53 bits of one engine draw.
double UniformDouble(Rng& rng);

// Unbiased integer in [0, n) by rejection sampling; n >= 1.
uint64_t UniformIndex(Rng& rng, uint64_t n);

// Big-endian first 8 bytes of SHA-256 over `tag` and the length-prefixed
// `fields`.
uint64_t KeyedHash64(std::string_view tag,
                     std::initializer_list<std::string_view> fields);

}  // namespace internal

}  // namespace ara

#endif  // ARA_RAPPOR_CLIENT_H_
