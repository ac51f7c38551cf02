// mtsim/io.hpp

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

#ifndef MTSIM_IO_HPP_
#define MTSIM_IO_HPP_

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace mtsim {

/// Reads a whole file; throws Error(kIoError) when it cannot be opened.
std::string read_file(const std::filesystem::path &path);

/// Writes `content` to a sibling temp file and renames it over `path`, so
/// readers never observe a partially written file. Creates parent
/// directories.
void write_file_atomic(const std::filesystem::path &path, std::string_view content);

/// One parsed JSON object per non-blank line, with its 1-based line number.
struct JsonLine {
  size_t line_no;
  nlohmann::json value;
};

/// Parses a line-delimited JSON file. `on_error(line_no, message)` must throw;
/// it is called for unparsable lines and for lines that are not objects.
std::vector<JsonLine> read_jsonl(
    const std::filesystem::path &path,
    const std::function<void(size_t, const std::string &)> &on_error);

/// Serializes objects one per line with a trailing newline (stable key order,
/// UTF-8 passed through).
std::string to_jsonl(const std::vector<nlohmann::json> &objects);

/// `target` relative to `base_dir` when both are on the same root, in generic
/// ('/') form; otherwise the absolute form of `target`.
std::string relative_path_string(const std::filesystem::path &target,
                                 const std::filesystem::path &base_dir);

/// Resolves a path stored in metadata relative to the metadata file's
/// directory.
std::filesystem::path resolve_relative(const std::string &stored,
                                       const std::filesystem::path &base_dir);

}  // namespace mtsim

#endif  // MTSIM_IO_HPP_
