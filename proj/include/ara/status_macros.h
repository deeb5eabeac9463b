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

#ifndef ARA_STATUS_MACROS_H_
#define ARA_STATUS_MACROS_H_

#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define ARA_STATUS_CONCAT_INNER_(a, b) a##b
#define ARA_STATUS_CONCAT_(a, b) ARA_STATUS_CONCAT_INNER_(a, b)

#define ARA_RETURN_IF_ERROR(expr)              \
  do {                                         \
    ::absl::Status _ara_status = (expr);       \
    if (!_ara_status.ok()) return _ara_status; \
  } while (0)

#define ARA_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, rexpr) \
  auto tmp = (rexpr);                               \
  if (!tmp.ok()) return tmp.status();               \
  lhs = std::move(tmp).value()

// Evaluates `rexpr` (a StatusOr) and either moves its value into `lhs` or
// returns the error status from the enclosing function.
#define ARA_ASSIGN_OR_RETURN(lhs, rexpr)                                   \
  ARA_ASSIGN_OR_RETURN_IMPL_(ARA_STATUS_CONCAT_(_ara_statusor_, __LINE__), \
                             lhs, rexpr)

#endif  // ARA_STATUS_MACROS_H_
