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

#include "data/mind_loader.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "common/error.h"
#include "common/random.h"

namespace fedrec::data {
namespace {

constexpr int64_t kSecondsPerDay = 86400;

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::vector<std::string_view> SplitSpaces(std::string_view text) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    size_t j = i;
    while (j < text.size() && text[j] != ' ') ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view StripCr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

struct RawRow {
  std::string impression_id;
  std::string user_id;
  int64_t time = 0;
  size_t order = 0;
  std::vector<ItemIndex> history;
  std::vector<ItemIndex> candidates;
  std::vector<uint8_t> labels;
};

void AppendClick(std::vector<ItemIndex>& history,
                 std::unordered_set<ItemIndex>& seen, ItemIndex item) {
  if (seen.insert(item).second) history.push_back(item);
}

std::vector<ItemIndex> LastN(const std::vector<ItemIndex>& v, size_t n) {
  if (v.size() <= n) return v;
  return std::vector<ItemIndex>(v.end() - static_cast<std::ptrdiff_t>(n),
                                v.end());
}

}  // namespace

int64_t DaysFromCivil(int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m > 2 ? m - 3 : m + 9) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

namespace {

void CivilFromDays(int64_t z, int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp < 10 ? mp + 3 : mp - 9;
  y = static_cast<int64_t>(yoe) + era * 400 + (m <= 2);
}

}  // namespace

std::optional<int64_t> ParseMindTime(std::string_view text) {
  unsigned mon, day, hour, min, sec;
  int year;
  char ampm[3] = {};
  const std::string s(text);
  int consumed = 0;
  if (std::sscanf(s.c_str(), "%u/%u/%d %u:%u:%u %2s%n", &mon, &day, &year,
                  &hour, &min, &sec, ampm, &consumed) != 7 ||
      static_cast<size_t>(consumed) != s.size()) {
    return std::nullopt;
  }
  const std::string half(ampm);
  if (mon < 1 || mon > 12 || day < 1 || day > 31 || hour < 1 || hour > 12 ||
      min > 59 || sec > 59 || (half != "AM" && half != "PM")) {
    return std::nullopt;
  }
  unsigned h24 = hour % 12 + (half == "PM" ? 12 : 0);
  return DaysFromCivil(year, mon, day) * kSecondsPerDay + h24 * 3600 +
         min * 60 + sec;
}

std::string FormatMindTime(int64_t seconds) {
  int64_t days = seconds / kSecondsPerDay;
  int64_t rem = seconds % kSecondsPerDay;
  if (rem < 0) {
    rem += kSecondsPerDay;
    --days;
  }
  int64_t y;
  unsigned m, d;
  CivilFromDays(days, y, m, d);
  const unsigned h24 = static_cast<unsigned>(rem / 3600);
  const unsigned h12 = h24 % 12 == 0 ? 12 : h24 % 12;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%u/%u/%lld %u:%02u:%02u %s", m, d,
                static_cast<long long>(y), h12,
                static_cast<unsigned>(rem / 60 % 60),
                static_cast<unsigned>(rem % 60), h24 < 12 ? "AM" : "PM");
  return buf;
}

Dataset LoadMindStreams(const std::vector<std::istream*>& behaviors,
                        const std::vector<std::istream*>& news,
                        const MindOptions& options) {
  if (options.validation_fraction < 0.0 || options.validation_fraction > 1.0) {
    throw InputError("validation fraction must lie in [0, 1]");
  }
  Dataset ds;
  std::vector<NewsRecord> records;
  std::unordered_set<std::string> news_ids;
  std::string line;
  for (std::istream* in : news) {
    while (std::getline(*in, line)) {
      const auto row = StripCr(line);
      if (row.empty()) continue;
      ++ds.stats.news_rows;
      auto cols = SplitTabs(row);
      if (cols.size() < 4 || cols[0].empty()) {
        ++ds.stats.malformed_rows;
        continue;
      }
      if (news_ids.insert(std::string(cols[0])).second) {
        records.push_back({std::string(cols[0]), std::string(cols[3])});
      }
    }
  }
  ds.stats.unique_news = records.size();
  ds.corpus = Corpus::Build(records, options.vocab_size, options.max_title_len);

  std::vector<RawRow> rows;
  std::unordered_set<std::string> impression_ids;
  std::unordered_set<std::string> users;
  for (std::istream* in : behaviors) {
    while (std::getline(*in, line)) {
      const auto text = StripCr(line);
      if (text.empty()) continue;
      ++ds.stats.behavior_rows;
      auto cols = SplitTabs(text);
      if (cols.size() != 5 || cols[0].empty() || cols[1].empty()) {
        ++ds.stats.malformed_rows;
        continue;
      }
      auto time = ParseMindTime(cols[2]);
      if (!time) {
        ++ds.stats.malformed_rows;
        continue;
      }
      RawRow row;
      row.impression_id = std::string(cols[0]);
      row.user_id = std::string(cols[1]);
      row.time = *time;
      bool malformed = false;
      bool unknown = false;
      for (auto id : SplitSpaces(cols[3])) {
        auto item = ds.corpus.Find(id);
        if (!item) {
          unknown = true;
          break;
        }
        row.history.push_back(*item);
      }
      for (auto token : SplitSpaces(cols[4])) {
        const size_t dash = token.rfind('-');
        if (dash == std::string_view::npos || dash + 2 != token.size() ||
            (token[dash + 1] != '0' && token[dash + 1] != '1')) {
          malformed = true;
          break;
        }
        auto item = ds.corpus.Find(token.substr(0, dash));
        if (!item) {
          unknown = true;
          break;
        }
        row.candidates.push_back(*item);
        row.labels.push_back(token[dash + 1] == '1' ? 1 : 0);
      }
      if (malformed || row.candidates.empty()) {
        ++ds.stats.malformed_rows;
        continue;
      }
      if (unknown) {
        ++ds.stats.unknown_item_rows;
        continue;
      }
      if (!impression_ids.insert(row.impression_id).second) {
        ++ds.stats.duplicate_impressions;
        continue;
      }
      users.insert(row.user_id);
      row.order = rows.size();
      rows.push_back(std::move(row));
    }
  }
  ds.stats.unique_users = users.size();
  ds.stats.unique_impressions = rows.size();
  if (rows.empty()) return ds;

  std::stable_sort(rows.begin(), rows.end(),
                   [](const RawRow& a, const RawRow& b) {
                     return a.time < b.time;
                   });
  auto day_of = [](int64_t t) {
    return t >= 0 ? t / kSecondsPerDay : (t - kSecondsPerDay + 1) / kSecondsPerDay;
  };
  const int64_t last_day = day_of(rows.back().time);
  const int64_t train_day = last_day - 1;

  struct UserState {
    std::vector<ItemIndex> clicks;
    std::unordered_set<ItemIndex> seen;
  };
  std::unordered_map<std::string, UserState> state;
  std::map<std::string, size_t> client_index;
  std::vector<Impression> last_day_rows;
  for (const RawRow& row : rows) {
    UserState& user = state[row.user_id];
    std::vector<ItemIndex> history;
    std::unordered_set<ItemIndex> seen;
    for (ItemIndex h : row.history) AppendClick(history, seen, h);
    for (ItemIndex c : user.clicks) AppendClick(history, seen, c);

    const int64_t day = day_of(row.time);
    if (day >= train_day) {
      Impression imp;
      imp.id = row.impression_id;
      imp.user_id = row.user_id;
      imp.history = LastN(history, options.history_len);
      imp.candidates = row.candidates;
      imp.labels = row.labels;
      if (day == train_day) {
        auto [it, inserted] = client_index.emplace(row.user_id, 0);
        if (inserted) {
          it->second = ds.clients.size();
          ds.clients.push_back({row.user_id, imp.history, {}});
        }
        ds.clients[it->second].impressions.push_back(std::move(imp));
      } else {
        last_day_rows.push_back(std::move(imp));
      }
    }
    for (size_t i = 0; i < row.candidates.size(); ++i) {
      if (row.labels[i]) AppendClick(user.clicks, user.seen, row.candidates[i]);
    }
  }

  // Seeded validation sample of the last day, kept in time order.
  std::vector<size_t> order(last_day_rows.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(DeriveSeed(options.seed, {0x5e1ec7}));
  for (size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[UniformIndex(rng, i)]);
  }
  const size_t n_val = static_cast<size_t>(
      std::llround(options.validation_fraction * last_day_rows.size()));
  std::vector<bool> is_val(last_day_rows.size(), false);
  for (size_t i = 0; i < n_val; ++i) is_val[order[i]] = true;
  for (size_t i = 0; i < last_day_rows.size(); ++i) {
    (is_val[i] ? ds.validation : ds.test).push_back(std::move(last_day_rows[i]));
  }
  return ds;
}

Dataset LoadMind(const std::vector<std::string>& behaviors_paths,
                 const std::vector<std::string>& news_paths,
                 const MindOptions& options) {
  std::vector<std::unique_ptr<std::ifstream>> files;
  auto open = [&](const std::string& path) {
    auto f = std::make_unique<std::ifstream>(path);
    if (!*f) throw IoError("cannot open " + path);
    files.push_back(std::move(f));
    return files.back().get();
  };
  std::vector<std::istream*> b, n;
  for (const auto& p : behaviors_paths) b.push_back(open(p));
  for (const auto& p : news_paths) n.push_back(open(p));
  return LoadMindStreams(b, n, options);
}

}  // namespace fedrec::data
