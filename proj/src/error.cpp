// error.cpp

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

#include "mtsim/error.hpp"

namespace mtsim {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedRecord: return "MalformedRecord";
    case ErrorKind::kInconsistentSpeakerAttributes: return "InconsistentSpeakerAttributes";
    case ErrorKind::kSampleRateMismatch: return "SampleRateMismatch";
    case ErrorKind::kEmptyManifest: return "EmptyManifest";
    case ErrorKind::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorKind::kIoError: return "IoError";
    case ErrorKind::kStartBeyondEnd: return "StartBeyondEnd";
    case ErrorKind::kEmptyComponentList: return "EmptyComponentList";
    case ErrorKind::kInsufficientSpeakers: return "InsufficientSpeakers";
    case ErrorKind::kLanguageUnavailable: return "LanguageUnavailable";
    case ErrorKind::kPlanInfeasible: return "PlanInfeasible";
    case ErrorKind::kEmptySegmentList: return "EmptySegmentList";
    case ErrorKind::kSegmentContainsDelimiter: return "SegmentContainsDelimiter";
    case ErrorKind::kNoEnrollmentAvailable: return "NoEnrollmentAvailable";
    case ErrorKind::kNoValidKeyword: return "NoValidKeyword";
    case ErrorKind::kEmptyTarget: return "EmptyTarget";
    case ErrorKind::kMonolingualRecord: return "MonolingualRecord";
    case ErrorKind::kBadTemplate: return "BadTemplate";
    case ErrorKind::kMultiSegmentTarget: return "MultiSegmentTarget";
    case ErrorKind::kDuplicateId: return "DuplicateId";
    case ErrorKind::kUnknownHypothesisId: return "UnknownHypothesisId";
    case ErrorKind::kUsage: return "UsageError";
  }
  return "UnknownError";
}

}  // namespace mtsim
