// Copyright 2026 The GQSP Toolkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gqsp {

/// Machine-readable failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
  kInvalidArgument,
  kInadmissible,
  kNonConvergence,
  kInvalidPair,
  kNumericalDegeneracy,
  kUnsupported,
  kInvalidPlan,
  kVerificationFailure,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid_argument";
    case ErrorKind::kInadmissible: return "inadmissible";
    case ErrorKind::kNonConvergence: return "non_convergence";
    case ErrorKind::kInvalidPair: return "invalid_pair";
    case ErrorKind::kNumericalDegeneracy: return "numerical_degeneracy";
    case ErrorKind::kUnsupported: return "unsupported";
    case ErrorKind::kInvalidPlan: return "invalid_plan";
    case ErrorKind::kVerificationFailure: return "verification_failure";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::kInvalidArgument, what);
}

}  // namespace gqsp
