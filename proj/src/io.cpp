// io.cpp

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

#include "mtsim/io.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "mtsim/error.hpp"

namespace mtsim {

namespace fs = std::filesystem;

std::string read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::kIoError, "read failed: " + path.string());
  return ss.str();
}

void write_file_atomic(const fs::path &path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) {
      throw Error(ErrorKind::kIoError, "cannot create directory " +
                                           path.parent_path().string() + ": " +
                                           ec.message());
    }
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp, ec);
      throw Error(ErrorKind::kIoError, "write failed: " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::kIoError, "cannot rename onto " + path.string());
  }
}

std::vector<JsonLine> read_jsonl(
    const fs::path &path,
    const std::function<void(size_t, const std::string &)> &on_error) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open " + path.string());
  std::vector<JsonLine> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      on_error(line_no, "invalid JSON");
      continue;
    }
    if (!j.is_object()) {
      on_error(line_no, "record is not an object");
      continue;
    }
    out.push_back({line_no, std::move(j)});
  }
  return out;
}

std::string to_jsonl(const std::vector<nlohmann::json> &objects) {
  std::string out;
  for (const auto &o : objects) {
    out += o.dump();
    out += '\n';
  }
  return out;
}

std::string relative_path_string(const fs::path &target, const fs::path &base_dir) {
  std::error_code ec;
  const fs::path abs_target = fs::absolute(target, ec).lexically_normal();
  const fs::path abs_base = fs::absolute(base_dir, ec).lexically_normal();
  if (abs_target.root_path() != abs_base.root_path())
    return abs_target.generic_string();
  fs::path rel = abs_target.lexically_relative(abs_base);
  if (rel.empty()) return abs_target.generic_string();
  return rel.generic_string();
}

fs::path resolve_relative(const std::string &stored, const fs::path &base_dir) {
  fs::path p(stored);
  if (p.is_absolute()) return p;
  return (base_dir / p).lexically_normal();
}

}  // namespace mtsim
