// text.cpp

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

#include "mtsim/text.hpp"

#include <cstdint>

#include "mtsim/error.hpp"

namespace mtsim {

namespace {

// Decodes one code point starting at s[i]; advances i. Returns -1 on an
// invalid sequence (consuming a single byte).
int32_t DecodeUtf8(std::string_view s, size_t &i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = 0;
  int32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return -1;
  }
  if (i + len > s.size()) {
    ++i;
    return -1;
  }
  for (int k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return -1;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += len;
  return cp;
}

void AppendUtf8(std::string &out, int32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

constexpr int32_t kSharpS = 0x00DF;
constexpr int32_t kCapitalSharpS = 0x1E9E;

bool IsLetter(int32_t cp) {
  if ((cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z')) return true;
  if (cp >= 0x00C0 && cp <= 0x00FF) return cp != 0x00D7 && cp != 0x00F7;
  if (cp >= 0x0100 && cp <= 0x017F) return true;
  return cp == kCapitalSharpS;
}

bool IsDigit(int32_t cp) { return cp >= '0' && cp <= '9'; }

bool IsSpace(int32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
         cp == '\v' || cp == 0x00A0;
}

int32_t ToUpper(int32_t cp) {
  if (cp >= 'a' && cp <= 'z') return cp - 32;
  if (cp >= 0x00E0 && cp <= 0x00FE && cp != 0x00F7) return cp - 0x20;
  if (cp == 0x00FF) return 0x0178;
  // Latin Extended-A is mostly (upper, lower) pairs.
  if (cp >= 0x0100 && cp <= 0x0137 && (cp & 1)) return cp - 1;
  if (cp >= 0x014A && cp <= 0x0177 && (cp & 1)) return cp - 1;
  if (cp >= 0x0139 && cp <= 0x0148 && !(cp & 1)) return cp - 1;
  if (cp >= 0x0179 && cp <= 0x017E && !(cp & 1)) return cp - 1;
  return cp;
}

int32_t ToLower(int32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
  if (cp == 0x0178) return 0x00FF;
  if (cp >= 0x0100 && cp <= 0x0137 && !(cp & 1)) return cp + 1;
  if (cp >= 0x014A && cp <= 0x0177 && !(cp & 1)) return cp + 1;
  if (cp >= 0x0139 && cp <= 0x0148 && (cp & 1)) return cp + 1;
  if (cp >= 0x0179 && cp <= 0x017E && (cp & 1)) return cp + 1;
  if (cp == kCapitalSharpS) return kSharpS;
  return cp;
}

}  // namespace

std::string normalize_text(std::string_view s, const NormalizationConfig &cfg) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  auto emit = [&](int32_t cp) {
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    AppendUtf8(out, cp);
  };
  size_t i = 0;
  while (i < s.size()) {
    int32_t cp = DecodeUtf8(s, i);
    if (cp == 0x2019 || cp == 0x02BC) cp = '\'';
    if (cp < 0 || IsSpace(cp)) {
      pending_space = true;
      continue;
    }
    const bool keep = IsLetter(cp) || IsDigit(cp) || cp == '\'' || cp == '-';
    if (!keep && cfg.strip_punctuation) {
      pending_space = true;
      continue;
    }
    if ((cp == kSharpS || cp == kCapitalSharpS) && cfg.expand_sharp_s) {
      const int32_t s_cp = cfg.case_policy == CasePolicy::kLower ? 's' : 'S';
      emit(s_cp);
      emit(s_cp);
      continue;
    }
    switch (cfg.case_policy) {
      case CasePolicy::kUpper:
        // ß has no single-code-point uppercase in common use; keep it.
        if (cp != kSharpS) cp = ToUpper(cp);
        break;
      case CasePolicy::kLower:
        cp = ToLower(cp);
        break;
      case CasePolicy::kPreserve:
        break;
    }
    emit(cp);
  }
  return out;
}

std::vector<std::string> split_words(std::string_view normalized) {
  std::vector<std::string> words;
  size_t pos = 0;
  while (pos < normalized.size()) {
    size_t next = normalized.find(' ', pos);
    if (next == std::string_view::npos) next = normalized.size();
    if (next > pos) words.emplace_back(normalized.substr(pos, next - pos));
    pos = next + 1;
  }
  return words;
}

std::vector<std::string> normalize_tokens(std::string_view s,
                                          const NormalizationConfig &cfg) {
  return split_words(normalize_text(s, cfg));
}

size_t utf8_length(std::string_view s) {
  size_t n = 0;
  size_t i = 0;
  while (i < s.size()) {
    DecodeUtf8(s, i);
    ++n;
  }
  return n;
}

NormalizationConfig parse_norm_spec(std::string_view spec) {
  NormalizationConfig cfg;
  size_t pos = 0;
  while (pos <= spec.size()) {
    size_t next = spec.find(',', pos);
    if (next == std::string_view::npos) next = spec.size();
    std::string_view item = spec.substr(pos, next - pos);
    if (item == "upper") {
      cfg.case_policy = CasePolicy::kUpper;
    } else if (item == "lower") {
      cfg.case_policy = CasePolicy::kLower;
    } else if (item == "none" || item == "preserve") {
      cfg.case_policy = CasePolicy::kPreserve;
    } else if (item == "keep-eszett") {
      cfg.expand_sharp_s = false;
    } else if (item == "keep-punct") {
      cfg.strip_punctuation = false;
    } else if (!item.empty()) {
      throw Error(ErrorKind::kUsage,
                  "unknown normalization option '" + std::string(item) + "'");
    }
    pos = next + 1;
  }
  return cfg;
}

std::string norm_spec_string(const NormalizationConfig &cfg) {
  std::string s;
  switch (cfg.case_policy) {
    case CasePolicy::kUpper: s = "upper"; break;
    case CasePolicy::kLower: s = "lower"; break;
    case CasePolicy::kPreserve: s = "none"; break;
  }
  if (!cfg.expand_sharp_s) s += ",keep-eszett";
  if (!cfg.strip_punctuation) s += ",keep-punct";
  return s;
}

void to_json(nlohmann::json &j, const NormalizationConfig &cfg) {
  j = norm_spec_string(cfg);
}

void from_json(const nlohmann::json &j, NormalizationConfig &cfg) {
  cfg = parse_norm_spec(j.get<std::string>());
}

}  // namespace mtsim
