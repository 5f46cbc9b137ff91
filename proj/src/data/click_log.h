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

#ifndef FEDREC_DATA_CLICK_LOG_H_
#define FEDREC_DATA_CLICK_LOG_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

namespace fedrec::data {

// Converts a raw click stream (Adressa style) into MIND-format files.
//
// Input rows: user_id <TAB> unix_seconds <TAB> item_id <TAB> title.
// Every click becomes one impression holding the clicked item and
// `negatives_per_click` items the user never clicked, drawn without
// replacement with a seeded generator, in shuffled order. The history
// column holds the user's previous clicks, most recent `history_len`.
struct ClickLogOptions {
  size_t negatives_per_click = 20;
  size_t history_len = 50;
  uint64_t seed = 0;
};

struct ClickLogStats {
  size_t clicks = 0;
  size_t users = 0;
  size_t items = 0;
  size_t skipped_rows = 0;
};

ClickLogStats ConvertClickLog(std::istream& in, std::ostream& behaviors,
                              std::ostream& news,
                              const ClickLogOptions& options);

// File form; throws IoError on open or write failure.
ClickLogStats ConvertClickLogFile(const std::string& input_path,
                                  const std::string& behaviors_path,
                                  const std::string& news_path,
                                  const ClickLogOptions& options);

}  // namespace fedrec::data

#endif  // FEDREC_DATA_CLICK_LOG_H_
