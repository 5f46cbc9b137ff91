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

#ifndef FEDREC_DATA_MIND_LOADER_H_
#define FEDREC_DATA_MIND_LOADER_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "data/corpus.h"

namespace fedrec::data {

struct MindOptions {
  size_t history_len = 50;      // M most recent clicks
  size_t vocab_size = 1000;
  size_t max_title_len = 30;
  double validation_fraction = 0.2;
  uint64_t seed = 0;
};

// Parses "MM/DD/YYYY hh:mm:ss AM|PM" to seconds since 1970-01-01.
std::optional<int64_t> ParseMindTime(std::string_view text);
std::string FormatMindTime(int64_t seconds);
// Days since 1970-01-01 of a proleptic Gregorian date.
int64_t DaysFromCivil(int64_t year, unsigned month, unsigned day);

// Loads MIND-format files. Several files of each kind may be given (for
// example train and dev); their rows are merged.
//
// Split by calendar day: days before the second-to-last day only build
// click history, the second-to-last day gives the training impressions,
// and the last day is divided into validation (a seeded random
// `validation_fraction` of its impressions) and test. An impression's
// history is its history column followed by the user's clicks in earlier
// rows, keeping the `history_len` most recent.
//
// Malformed rows and rows naming unknown items are skipped and counted.
// Repeated impression ids keep the first row. Throws IoError when a file
// cannot be opened.
Dataset LoadMind(const std::vector<std::string>& behaviors_paths,
                 const std::vector<std::string>& news_paths,
                 const MindOptions& options);

// Stream form of the above, for tests.
Dataset LoadMindStreams(const std::vector<std::istream*>& behaviors,
                        const std::vector<std::istream*>& news,
                        const MindOptions& options);

}  // namespace fedrec::data

#endif  // FEDREC_DATA_MIND_LOADER_H_
