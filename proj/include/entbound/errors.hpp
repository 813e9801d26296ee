// Copyright 2026 The entbound Authors
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

namespace entbound {

enum class ErrorCode {
  DimensionMismatch,
  NotNormalized,
  InvalidState,
  InvalidRank,
  InvalidChannel,
  OutOfRange,
  ZeroProbability,
  SingularProbe,
  TrivialDimension,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidRank: return "InvalidRank";
    case ErrorCode::InvalidChannel: return "InvalidChannel";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ZeroProbability: return "ZeroProbability";
    case ErrorCode::SingularProbe: return "SingularProbe";
    case ErrorCode::TrivialDimension: return "TrivialDimension";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can branch on the kind of failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace entbound
