// Copyright 2026 The fedrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "common/kv_config.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "common/error.h"

namespace fedrec {

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<KeyValue> ParseKeyValues(std::string_view text,
                                     std::string_view source_name) {
  std::vector<KeyValue> out;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::string trimmed = Trim(line);
    if (trimmed.empty()) continue;
    size_t eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(std::string(source_name) + ":" +
                        std::to_string(line_no) + ": expected `key = value`");
    }
    KeyValue kv{Trim(std::string_view(trimmed).substr(0, eq)),
                Trim(std::string_view(trimmed).substr(eq + 1)), line_no};
    if (kv.key.empty()) {
      throw ConfigError(std::string(source_name) + ":" +
                        std::to_string(line_no) + ": empty key");
    }
    out.push_back(std::move(kv));
    if (nl == text.size()) break;
  }
  return out;
}

std::vector<KeyValue> ReadKeyValueFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseKeyValues(ss.str(), path.string());
}

namespace {

[[noreturn]] void BadValue(std::string_view value, std::string_view field,
                           std::string_view expected) {
  throw ConfigError(std::string(field) + ": expected " +
                    std::string(expected) + ", got '" + std::string(value) +
                    "'");
}

}  // namespace

int64_t ParseInt(std::string_view value, std::string_view field) {
  int64_t v = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || p != value.data() + value.size()) {
    BadValue(value, field, "an integer");
  }
  return v;
}

uint64_t ParseUint(std::string_view value, std::string_view field) {
  uint64_t v = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || p != value.data() + value.size()) {
    BadValue(value, field, "a non-negative integer");
  }
  return v;
}

double ParseDouble(std::string_view value, std::string_view field) {
  // from_chars for double is available, but strtod accepts the same inputs
  // people write in config files (1e-5, .5, inf).
  std::string s(value);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) BadValue(value, field, "a number");
  return v;
}

bool ParseBool(std::string_view value, std::string_view field) {
  std::string v(value);
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  BadValue(value, field, "a boolean");
}

}  // namespace fedrec
