// mtsim/sot.hpp

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

#ifndef MTSIM_SOT_HPP_
#define MTSIM_SOT_HPP_

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtsim/mixture.hpp"

namespace mtsim {

/// Speaker-change token placed between talkers in serialized targets.
/// Public and versioned: changing it changes every label on disk.
inline constexpr std::string_view kSpeakerChangeToken = "<sc>";
inline constexpr int kSotFormatVersion = 1;

/// Joins segments with " <sc> ". Each segment is trimmed first.
/// Throws EmptySegmentList for an empty list or an empty segment, and
/// SegmentContainsDelimiter when a segment contains the token.
std::string serialize_sot(std::span<const std::string> segments);

/// Splits on the token regardless of surrounding whitespace, trims segments
/// and drops empty ones. Never throws.
std::vector<std::string> parse_sot(std::string_view text);

using ComponentFilter = std::function<bool(const MixtureComponent &)>;

/// Transcripts of the components accepted by `filter` (all when empty), in
/// start-time order.
std::vector<std::string> order_segments(const MixtureRecord &record,
                                        const ComponentFilter &filter = {});

}  // namespace mtsim

#endif  // MTSIM_SOT_HPP_
