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

#include "data/synthetic.h"

#include <cmath>
#include <fstream>
#include <optional>
#include <unordered_map>

#include "common/error.h"
#include "data/mind_loader.h"

namespace fedrec::data {
namespace {

Vector RandomUnit(size_t dim, Rng& rng) {
  Vector v(dim);
  for (size_t i = 0; i < dim; ++i) v[i] = StandardNormal(rng);
  const double n = v.norm();
  return n > 0 ? Vector(v / n) : v;
}

Vector Perturbed(const Vector& center, double spread, Rng& rng) {
  Vector v = center;
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] += spread * StandardNormal(rng);
  const double n = v.norm();
  return n > 0 ? Vector(v / n) : v;
}

std::string ItemName(size_t i) { return "N" + std::to_string(i + 1); }
std::string UserName(size_t u) { return "U" + std::to_string(u + 1); }

}  // namespace

void SyntheticSpec::Validate() const {
  if (num_users == 0 || num_items == 0 || latent_dim == 0 || num_topics == 0) {
    throw ConfigError("synthetic sizes must be positive");
  }
  if (impression_size < 2 || impression_size > num_items) {
    throw ConfigError("synthetic impression size must lie in [2, num_items]");
  }
  if (!(noise >= 0) || !(topic_spread >= 0) || !std::isfinite(click_threshold)) {
    throw ConfigError(
        "synthetic noise and spread must be non-negative, threshold finite");
  }
  if (filler_words > 0 && filler_vocab == 0) {
    throw ConfigError("synthetic filler words need a filler vocabulary");
  }
}

double ClickProbability(double affinity, double noise) {
  if (noise == 0.0) {
    return affinity > 0 ? 1.0 : (affinity < 0 ? 0.0 : 0.5);
  }
  return 1.0 / (1.0 + std::exp(-affinity / noise));
}

bool DrawClick(double affinity, double noise, Rng& rng) {
  return UniformUnit(rng) < ClickProbability(affinity, noise);
}

SyntheticData GenerateSynthetic(const SyntheticSpec& spec) {
  spec.Validate();
  Rng rng(DeriveSeed(spec.seed, {0x5717}));
  SyntheticData out;
  SyntheticTruth& truth = out.truth;

  std::vector<Vector> centers;
  for (size_t k = 0; k < spec.num_topics; ++k) {
    centers.push_back(RandomUnit(spec.latent_dim, rng));
  }
  truth.item_latents.resize(spec.num_items, spec.latent_dim);
  std::vector<NewsRecord> records;
  for (size_t i = 0; i < spec.num_items; ++i) {
    const uint32_t topic =
        static_cast<uint32_t>(UniformIndex(rng, spec.num_topics));
    truth.item_topics.push_back(topic);
    truth.item_latents.row(i) = Perturbed(centers[topic], spec.topic_spread, rng);
    std::string title =
        "topic" + std::to_string(topic) + " item" + std::to_string(i);
    for (size_t w = 0; w < spec.filler_words; ++w) {
      title += " word" + std::to_string(UniformIndex(rng, spec.filler_vocab));
    }
    records.push_back({ItemName(i), std::move(title)});
  }
  const size_t vocab_cap = 1 + spec.num_topics + spec.num_items + spec.filler_vocab;
  const size_t title_len = 2 + spec.filler_words;
  out.dataset.corpus = Corpus::Build(records, vocab_cap, title_len);
  out.dataset.stats.news_rows = out.dataset.stats.unique_news = spec.num_items;

  truth.user_latents.resize(spec.num_users, spec.latent_dim);
  auto affinity = [&](size_t u, size_t i) {
    return truth.user_latents.row(u).dot(truth.item_latents.row(i)) -
           spec.click_threshold;
  };
  size_t impression_counter = 0;
  auto make_impression = [&](size_t u, const std::vector<ItemIndex>& history) {
    Impression imp;
    imp.user_id = UserName(u);
    imp.history = history;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      // Distinct candidates via partial Fisher-Yates on a sparse swap map.
      std::unordered_map<size_t, size_t> swaps;
      imp.candidates.clear();
      imp.labels.clear();
      for (size_t j = 0; j < spec.impression_size; ++j) {
        const size_t pick = j + UniformIndex(rng, spec.num_items - j);
        const size_t a = swaps.count(pick) ? swaps[pick] : pick;
        swaps[pick] = swaps.count(j) ? swaps[j] : j;
        imp.candidates.push_back(static_cast<ItemIndex>(a));
        imp.labels.push_back(DrawClick(affinity(u, a), spec.noise, rng) ? 1 : 0);
      }
      const size_t pos = imp.PositiveCount();
      if (pos > 0 && pos < imp.labels.size()) {
        imp.id = "S" + std::to_string(++impression_counter);
        return std::optional<Impression>(std::move(imp));
      }
    }
    return std::optional<Impression>();
  };

  for (size_t u = 0; u < spec.num_users; ++u) {
    const uint32_t topic =
        static_cast<uint32_t>(UniformIndex(rng, spec.num_topics));
    truth.user_latents.row(u) = Perturbed(centers[topic], spec.topic_spread, rng);

    std::vector<ItemIndex> history;
    for (size_t attempt = 0;
         history.size() < spec.history_len && attempt < 1000 * spec.history_len;
         ++attempt) {
      const size_t i = UniformIndex(rng, spec.num_items);
      if (DrawClick(affinity(u, i), spec.noise, rng)) {
        history.push_back(static_cast<ItemIndex>(i));
      }
    }

    Behavior behavior{UserName(u), history, {}};
    for (size_t k = 0; k < spec.train_impressions; ++k) {
      if (auto imp = make_impression(u, history)) {
        behavior.impressions.push_back(std::move(*imp));
      }
    }
    if (!behavior.impressions.empty()) {
      out.dataset.clients.push_back(std::move(behavior));
    }
    for (size_t k = 0; k < spec.validation_impressions; ++k) {
      if (auto imp = make_impression(u, history)) {
        out.dataset.validation.push_back(std::move(*imp));
      }
    }
    for (size_t k = 0; k < spec.test_impressions; ++k) {
      if (auto imp = make_impression(u, history)) {
        out.dataset.test.push_back(std::move(*imp));
      }
    }
  }
  out.dataset.stats.unique_users = spec.num_users;
  out.dataset.stats.unique_impressions = impression_counter;
  out.dataset.stats.behavior_rows = impression_counter;
  return out;
}

void WriteMindTsv(const Dataset& dataset, const std::string& behaviors_path,
                  const std::string& news_path) {
  std::ofstream news(news_path);
  if (!news) throw IoError("cannot write " + news_path);
  const Corpus& corpus = dataset.corpus;
  const Vocabulary& vocab = corpus.vocabulary();
  for (const auto& content : corpus.contents()) {
    std::string title;
    for (uint32_t t : content.tokens) {
      if (!title.empty()) title += ' ';
      title += vocab.Word(t);
    }
    news << corpus.ExternalId(content.id) << "\tnews\tnews\t" << title
         << "\t\t\t[]\t[]\n";
  }
  if (!news) throw IoError("failed writing " + news_path);

  std::ofstream behaviors(behaviors_path);
  if (!behaviors) throw IoError("cannot write " + behaviors_path);
  // 11/14/2019 for training, 11/15/2019 for evaluation.
  const int64_t train_day = DaysFromCivil(2019, 11, 14) * 86400;
  const int64_t eval_day = train_day + 86400;
  auto write = [&](const Impression& imp, int64_t time) {
    behaviors << imp.id << '\t' << imp.user_id << '\t' << FormatMindTime(time)
              << '\t';
    for (size_t i = 0; i < imp.history.size(); ++i) {
      behaviors << (i ? " " : "") << corpus.ExternalId(imp.history[i]);
    }
    behaviors << '\t';
    for (size_t i = 0; i < imp.candidates.size(); ++i) {
      behaviors << (i ? " " : "") << corpus.ExternalId(imp.candidates[i]) << '-'
                << static_cast<int>(imp.labels[i]);
    }
    behaviors << '\n';
  };
  int64_t second = 0;
  for (const auto& client : dataset.clients) {
    for (const auto& imp : client.impressions) {
      write(imp, train_day + (second++ % 86400));
    }
  }
  second = 0;
  for (const auto* split : {&dataset.validation, &dataset.test}) {
    for (const auto& imp : *split) write(imp, eval_day + (second++ % 86400));
  }
  if (!behaviors) throw IoError("failed writing " + behaviors_path);
}

}  // namespace fedrec::data
