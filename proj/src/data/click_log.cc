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

#include "data/click_log.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "common/error.h"
#include "common/kv_config.h"
#include "common/random.h"
#include "data/mind_loader.h"

namespace fedrec::data {
namespace {

struct Click {
  std::string user;
  int64_t time;
  size_t item;
  size_t order;
};

}  // namespace

ClickLogStats ConvertClickLog(std::istream& in, std::ostream& behaviors,
                              std::ostream& news,
                              const ClickLogOptions& options) {
  ClickLogStats stats;
  std::vector<std::string> item_ids;
  std::vector<std::string> titles;
  std::unordered_map<std::string, size_t> item_index;
  std::vector<Click> clicks;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    if (cols.size() < 3 || cols[0].empty() || cols[2].empty()) {
      ++stats.skipped_rows;
      continue;
    }
    int64_t time;
    try {
      time = ParseInt(cols[1], "timestamp");
    } catch (const Error&) {
      ++stats.skipped_rows;
      continue;
    }
    auto [it, inserted] = item_index.emplace(cols[2], item_ids.size());
    if (inserted) {
      item_ids.push_back(cols[2]);
      titles.push_back(cols.size() > 3 ? cols[3] : "");
    }
    clicks.push_back({cols[0], time, it->second, clicks.size()});
  }
  std::stable_sort(clicks.begin(), clicks.end(),
                   [](const Click& a, const Click& b) { return a.time < b.time; });

  std::map<std::string, std::set<size_t>> clicked_by;
  for (const auto& c : clicks) clicked_by[c.user].insert(c.item);
  stats.clicks = clicks.size();
  stats.users = clicked_by.size();
  stats.items = item_ids.size();

  for (size_t i = 0; i < item_ids.size(); ++i) {
    news << item_ids[i] << "\tnews\tnews\t" << titles[i] << "\t\t\t[]\t[]\n";
  }

  Rng rng(DeriveSeed(options.seed, {0xc11c}));
  std::map<std::string, std::vector<size_t>> history;
  size_t impression = 0;
  for (const auto& c : clicks) {
    const auto& excluded = clicked_by[c.user];
    std::vector<size_t> pool;
    for (size_t i = 0; i < item_ids.size(); ++i) {
      if (!excluded.count(i)) pool.push_back(i);
    }
    const size_t k = std::min(options.negatives_per_click, pool.size());
    std::vector<std::pair<size_t, int>> candidates{{c.item, 1}};
    for (size_t j = 0; j < k; ++j) {
      const size_t pick = j + UniformIndex(rng, pool.size() - j);
      std::swap(pool[j], pool[pick]);
      candidates.push_back({pool[j], 0});
    }
    for (size_t j = candidates.size(); j > 1; --j) {
      std::swap(candidates[j - 1], candidates[UniformIndex(rng, j)]);
    }

    auto& h = history[c.user];
    behaviors << "A" << ++impression << '\t' << c.user << '\t'
              << FormatMindTime(c.time) << '\t';
    const size_t start =
        h.size() > options.history_len ? h.size() - options.history_len : 0;
    for (size_t i = start; i < h.size(); ++i) {
      behaviors << (i > start ? " " : "") << item_ids[h[i]];
    }
    behaviors << '\t';
    for (size_t j = 0; j < candidates.size(); ++j) {
      behaviors << (j ? " " : "") << item_ids[candidates[j].first] << '-'
                << candidates[j].second;
    }
    behaviors << '\n';
    h.push_back(c.item);
  }
  return stats;
}

ClickLogStats ConvertClickLogFile(const std::string& input_path,
                                  const std::string& behaviors_path,
                                  const std::string& news_path,
                                  const ClickLogOptions& options) {
  std::ifstream in(input_path);
  if (!in) throw IoError("cannot open " + input_path);
  std::ofstream behaviors(behaviors_path);
  if (!behaviors) throw IoError("cannot write " + behaviors_path);
  std::ofstream news(news_path);
  if (!news) throw IoError("cannot write " + news_path);
  auto stats = ConvertClickLog(in, behaviors, news, options);
  if (!behaviors || !news) throw IoError("failed writing converted click log");
  return stats;
}

}  // namespace fedrec::data
