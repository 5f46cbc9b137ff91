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

#ifndef FEDREC_COMMON_KV_CONFIG_H_
#define FEDREC_COMMON_KV_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fedrec {

// One `key = value` entry of a flat configuration file.
struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};

// Parses the flat key-value format: one `key = value` per line, `#` starts
// a comment, blank lines are ignored. Errors are ConfigErrors carrying the
// line number.
std::vector<KeyValue> ParseKeyValues(std::string_view text,
                                     std::string_view source_name);
std::vector<KeyValue> ReadKeyValueFile(const std::filesystem::path& path);

// Typed value parsers; `field` names the key in error messages.
int64_t ParseInt(std::string_view value, std::string_view field);
uint64_t ParseUint(std::string_view value, std::string_view field);
double ParseDouble(std::string_view value, std::string_view field);
bool ParseBool(std::string_view value, std::string_view field);

std::string Trim(std::string_view s);

}  // namespace fedrec

#endif  // FEDREC_COMMON_KV_CONFIG_H_
