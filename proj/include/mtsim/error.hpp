// mtsim/error.hpp

// Copyright 2026  The mtsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef MTSIM_ERROR_HPP_
#define MTSIM_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace mtsim {

enum class ErrorKind {
  // corpus
  kMalformedRecord,
  kInconsistentSpeakerAttributes,
  kSampleRateMismatch,
  kEmptyManifest,
  // audio
  kUnsupportedFormat,
  kIoError,
  kStartBeyondEnd,
  kEmptyComponentList,
  // mixer
  kInsufficientSpeakers,
  kLanguageUnavailable,
  kPlanInfeasible,
  // sot
  kEmptySegmentList,
  kSegmentContainsDelimiter,
  // tasks
  kNoEnrollmentAvailable,
  kNoValidKeyword,
  kEmptyTarget,
  kMonolingualRecord,
  kBadTemplate,
  // metrics
  kMultiSegmentTarget,
  kDuplicateId,
  kUnknownHypothesisId,
  // cli
  kUsage,
};

std::string_view ErrorKindName(ErrorKind kind);

/// Every failure raised by the toolkit. `kind()` identifies the condition;
/// `what()` carries the detail (offending line, id, path).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &detail)
      : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // I/O failures map to a distinct process exit code.
  bool is_io() const noexcept { return kind_ == ErrorKind::kIoError; }

 private:
  ErrorKind kind_;
};

}  // namespace mtsim

#endif  // MTSIM_ERROR_HPP_
