// mtsim/text.hpp

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

#ifndef MTSIM_TEXT_HPP_
#define MTSIM_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace mtsim {

enum class CasePolicy { kUpper, kLower, kPreserve };

/// Text normalization shared by label generation and scoring.
///
/// Letters are ASCII letters plus the Latin-1 and Latin Extended-A letter
/// blocks (covers ä ö ü ß and the rest of Western European orthography).
/// With `strip_punctuation`, every code point that is not a letter, a decimal
/// digit, an apostrophe or a hyphen becomes a word boundary. Typographic
/// apostrophes (U+2019, U+02BC) are folded to '\''.
struct NormalizationConfig {
  CasePolicy case_policy = CasePolicy::kUpper;
  bool strip_punctuation = true;
  // ß -> SS (ss under lowercase). When false ß is kept as a letter.
  bool expand_sharp_s = true;

  bool operator==(const NormalizationConfig &) const = default;
};

/// Applies `cfg`; the result has single-space token boundaries, no leading or
/// trailing space, and normalize_text(normalize_text(s)) == normalize_text(s).
/// Invalid UTF-8 bytes are treated as word boundaries.
std::string normalize_text(std::string_view s, const NormalizationConfig &cfg = {});

/// Splits on single spaces (input is expected to be normalized).
std::vector<std::string> split_words(std::string_view normalized);

/// normalize_text followed by split_words.
std::vector<std::string> normalize_tokens(std::string_view s,
                                          const NormalizationConfig &cfg = {});

/// Number of Unicode code points in a UTF-8 string.
size_t utf8_length(std::string_view s);

/// Parses a policy list such as "upper", "lower,keep-eszett" or
/// "none,keep-punct". Throws Error(kUsage) on unknown items.
NormalizationConfig parse_norm_spec(std::string_view spec);
std::string norm_spec_string(const NormalizationConfig &cfg);

void to_json(nlohmann::json &j, const NormalizationConfig &cfg);
void from_json(const nlohmann::json &j, NormalizationConfig &cfg);

}  // namespace mtsim

#endif  // MTSIM_TEXT_HPP_
