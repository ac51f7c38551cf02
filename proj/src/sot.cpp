// sot.cpp

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

#include "mtsim/sot.hpp"

#include <algorithm>
#include <numeric>

#include "mtsim/error.hpp"

namespace mtsim {

namespace {

std::string_view Trim(std::string_view s) {
  constexpr std::string_view kWs = " \t\r\n\f\v";
  const size_t b = s.find_first_not_of(kWs);
  if (b == std::string_view::npos) return {};
  const size_t e = s.find_last_not_of(kWs);
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string serialize_sot(std::span<const std::string> segments) {
  if (segments.empty()) throw Error(ErrorKind::kEmptySegmentList, "no segments to serialize");
  std::string out;
  for (size_t i = 0; i < segments.size(); ++i) {
    const std::string_view seg = Trim(segments[i]);
    if (seg.empty())
      throw Error(ErrorKind::kEmptySegmentList, "segment " + std::to_string(i) + " is empty");
    if (seg.find(kSpeakerChangeToken) != std::string_view::npos)
      throw Error(ErrorKind::kSegmentContainsDelimiter, std::string(seg));
    if (i > 0) {
      out += ' ';
      out += kSpeakerChangeToken;
      out += ' ';
    }
    out += seg;
  }
  return out;
}

std::vector<std::string> parse_sot(std::string_view text) {
  std::vector<std::string> segments;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t next = text.find(kSpeakerChangeToken, pos);
    if (next == std::string_view::npos) next = text.size();
    const std::string_view seg = Trim(text.substr(pos, next - pos));
    if (!seg.empty()) segments.emplace_back(seg);
    pos = next + kSpeakerChangeToken.size();
  }
  return segments;
}

std::vector<std::string> order_segments(const MixtureRecord &record,
                                        const ComponentFilter &filter) {
  std::vector<size_t> order(record.components.size());
  std::iota(order.begin(), order.end(), 0);
  // Records are stored in start order already; sorting keeps this correct
  // for hand-built records too.
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return record.components[a].start_sec < record.components[b].start_sec;
  });
  std::vector<std::string> out;
  for (size_t i : order) {
    const auto &c = record.components[i];
    if (!filter || filter(c)) out.push_back(c.text);
  }
  return out;
}

}  // namespace mtsim
