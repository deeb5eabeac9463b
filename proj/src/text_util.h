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

// String helpers shared by the line-oriented readers and error messages.

#ifndef ARA_SRC_TEXT_UTIL_H_
#define ARA_SRC_TEXT_UTIL_H_

#include <charconv>
#include <iterator>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "fmt/format.h"

namespace ara::internal {

// Splits on every `sep`, keeping empty fields. At most `max_parts` pieces
// are produced; the last one holds the unsplit remainder.
inline std::vector<std::string_view> Split(
    std::string_view text, char sep,
    size_t max_parts = static_cast<size_t>(-1)) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (parts.size() + 1 < max_parts) {
    const size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) break;
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  parts.push_back(text.substr(start));
  return parts;
}

// Plain decimal digits only: no sign, no whitespace, no empty input.
template <typename Int>
bool ParseDecimal(std::string_view text, Int* out) {
  if (text.empty() || text.front() < '0' || text.front() > '9') return false;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, *out);
  return ec == std::errc() && ptr == end;
}

inline bool ParseDouble(std::string_view text, double* out) {
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, *out);
  return ec == std::errc() && ptr == end;
}

inline bool IsDigit(char c) { return c >= '0' && c <= '9'; }

template <typename... Args>
std::string Concat(const Args&... args) {
  std::string out;
  (fmt::format_to(std::back_inserter(out), "{}", args), ...);
  return out;
}

inline bool ConsumePrefix(std::string_view* text, std::string_view prefix) {
  if (!text->starts_with(prefix)) return false;
  text->remove_prefix(prefix.size());
  return true;
}

}  // namespace ara::internal

#endif  // ARA_SRC_TEXT_UTIL_H_
