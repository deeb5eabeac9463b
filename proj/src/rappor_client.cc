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

#include "ara/rappor_client.h"

#include <openssl/evp.h>

#include <bit>
#include <cstdio>
#include <string>

#include "ara/status_macros.h"
#include "fmt/format.h"
#include "text_util.h"

namespace ara {

namespace internal {

std::array<uint8_t, 32> Sha256(std::string_view data) {
  std::array<uint8_t, 32> digest{};
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(),
             nullptr);
  return digest;
}

double UniformDouble(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

uint64_t UniformIndex(Rng& rng, uint64_t n) {
  const uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % n);
  uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return draw % n;
}

uint64_t KeyedHash64(std::string_view tag,
                     std::initializer_list<std::string_view> fields) {
  std::string buffer(tag);
  for (std::string_view field : fields) {
    const uint32_t n = static_cast<uint32_t>(field.size());
    for (int shift = 24; shift >= 0; shift -= 8) {
      buffer.push_back(static_cast<char>((n >> shift) & 0xff));
    }
    buffer.append(field);
  }
  const std::array<uint8_t, 32> digest = Sha256(buffer);
  uint64_t out = 0;
  for (int i = 0; i < 8; ++i) out = (out << 8) | digest[i];
  return out;
}

}  // namespace internal

namespace {

bool InUnitInterval(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

absl::Status ValidateParams(const EncodingParams& params) {
  if (params.k < 4 || params.k > kMaxBitWidth) {
    return absl::InvalidArgumentError(
        fmt::format("k must be in [4, {}], got {}", kMaxBitWidth, params.k));
  }
  if (params.h < 1 || params.h > params.k || params.h > kMaxHashCount) {
    return absl::InvalidArgumentError(fmt::format(
        "h must be in [1, min(k, {})], got {}", kMaxHashCount, params.h));
  }
  if (params.m < 1) {
    return absl::InvalidArgumentError(
        fmt::format("m must be at least 1, got {}", params.m));
  }
  if (!InUnitInterval(params.f) || !InUnitInterval(params.p) ||
      !InUnitInterval(params.q)) {
    return absl::InvalidArgumentError(
        fmt::format("f, p, q must lie in [0, 1], got f={:g} p={:g} q={:g}",
                    params.f, params.p, params.q));
  }
  return absl::OkStatus();
}

std::string CanonicalParams(const EncodingParams& params) {
  return fmt::format("k={};h={};m={};f={:.17g};p={:.17g};q={:.17g}", params.k,
                     params.h, params.m, params.f, params.p, params.q);
}

std::string ParamsFingerprint(const EncodingParams& params) {
  const std::array<uint8_t, 32> digest =
      internal::Sha256(CanonicalParams(params));
  std::string hex;
  for (int i = 0; i < 8; ++i)
    fmt::format_to(std::back_inserter(hex), "{:02x}", digest[i]);
  return hex;
}

ReportBits::ReportBits(int width, uint64_t bits) : width_(width) {
  const uint64_t mask =
      width >= 64 ? ~uint64_t{0} : ((uint64_t{1} << width) - 1);
  bits_ = bits & mask;
}

void ReportBits::Set(int index, bool on) {
  const uint64_t bit = uint64_t{1} << index;
  bits_ = on ? (bits_ | bit) : (bits_ & ~bit);
}

int ReportBits::Popcount() const { return std::popcount(bits_); }

std::string ReportBits::ToString() const {
  std::string out(width_, '0');
  for (int i = 0; i < width_; ++i) {
    if (Get(i)) out[width_ - 1 - i] = '1';
  }
  return out;
}

absl::StatusOr<ReportBits> ReportBits::Parse(std::string_view text,
                                             int expected_width) {
  if (static_cast<int>(text.size()) != expected_width) {
    return absl::InvalidArgumentError(
        fmt::format("bitstring has {} characters, expected {}", text.size(),
                    expected_width));
  }
  ReportBits out(expected_width);
  for (int i = 0; i < expected_width; ++i) {
    const char c = text[expected_width - 1 - i];
    if (c != '0' && c != '1') {
      return absl::InvalidArgumentError(
          fmt::format("bitstring contains non-binary character '{}'", c));
    }
    out.Set(i, c == '1');
  }
  return out;
}

absl::StatusOr<ReportBits> BloomEncode(std::string_view value, int cohort,
                                       const EncodingParams& params) {
  ARA_RETURN_IF_ERROR(ValidateParams(params));
  if (cohort < 0 || cohort >= params.m || cohort > 0xffff) {
    return absl::OutOfRangeError(
        fmt::format("cohort {} outside [0, {})", cohort, params.m));
  }
  std::string input;
  input.reserve(2 + value.size());
  input.push_back(static_cast<char>((cohort >> 8) & 0xff));
  input.push_back(static_cast<char>(cohort & 0xff));
  input.append(value);
  const std::array<uint8_t, 32> digest = internal::Sha256(input);

  ReportBits bloom(params.k);
  for (int j = 0; j < params.h; ++j) bloom.Set(digest[j] % params.k, true);
  return bloom;
}

ReportBits PermanentRandomizedResponse(const ReportBits& bloom,
                                       const EncodingParams& params,
                                       std::string_view client_id,
                                       std::string_view value) {
  Rng rng(internal::KeyedHash64("ara/prr", {client_id, value}));
  const double half_f = params.f / 2.0;
  ReportBits prr(bloom.width());
  for (int i = 0; i < bloom.width(); ++i) {
    const double u = internal::UniformDouble(rng);
    if (u < half_f) {
      prr.Set(i, true);
    } else if (u < params.f) {
      prr.Set(i, false);
    } else {
      prr.Set(i, bloom.Get(i));
    }
  }
  return prr;
}

ReportBits InstantaneousRandomizedResponse(const ReportBits& prr,
                                           const EncodingParams& params,
                                           Rng& rng) {
  ReportBits irr(prr.width());
  for (int i = 0; i < prr.width(); ++i) {
    const double threshold = prr.Get(i) ? params.q : params.p;
    irr.Set(i, internal::UniformDouble(rng) < threshold);
  }
  return irr;
}

int AssignCohort(std::string_view client_id, const EncodingParams& params) {
  return static_cast<int>(internal::KeyedHash64("ara/cohort", {client_id}) %
                          static_cast<uint64_t>(params.m));
}

absl::StatusOr<ClientReport> EncodeReport(std::string_view client_id,
                                          std::string_view value,
                                          const EncodingParams& params,
                                          Rng& rng, bool keep_label) {
  ClientReport report;
  report.client_id = std::string(client_id);
  report.cohort = AssignCohort(client_id, params);
  ARA_ASSIGN_OR_RETURN(ReportBits bloom,
                       BloomEncode(value, report.cohort, params));
  report.prr = PermanentRandomizedResponse(bloom, params, client_id, value);
  report.irr = InstantaneousRandomizedResponse(report.prr, params, rng);
  if (keep_label) report.true_value = std::string(value);
  return report;
}

}  // namespace ara
