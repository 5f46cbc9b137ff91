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

#include "cli/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "common/error.h"
#include "recmodel/scoring.h"
#include "recmodel/user_encoder.h"

namespace fedrec::cli {
namespace {

void CheckShape(const ScoredImpression& imp) {
  if (imp.items.size() != imp.scores.size() ||
      imp.labels.size() != imp.scores.size()) {
    throw InputError("impression items, scores and labels differ in length");
  }
}

}  // namespace

std::vector<size_t> RankOrder(const ScoredImpression& imp) {
  CheckShape(imp);
  std::vector<size_t> order(imp.scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (imp.scores[a] != imp.scores[b]) return imp.scores[a] > imp.scores[b];
    return imp.items[a] < imp.items[b];
  });
  return order;
}

double ImpressionAuc(std::span<const double> scores,
                     std::span<const uint8_t> labels) {
  if (scores.size() != labels.size()) {
    throw InputError("scores and labels differ in length");
  }
  const size_t n = scores.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a] < scores[b]; });
  double pos_rank_sum = 0.0;
  size_t positives = 0;
  for (size_t i = 0; i < n;) {
    size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (size_t k = i; k < j; ++k) {
      if (labels[order[k]]) {
        pos_rank_sum += midrank;
        ++positives;
      }
    }
    i = j;
  }
  const size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) {
    throw InputError("AUC needs a positive and a negative");
  }
  const double p = static_cast<double>(positives);
  return (pos_rank_sum - p * (p + 1) / 2) /
         (p * static_cast<double>(negatives));
}

double ImpressionMrr(const ScoredImpression& imp) {
  const auto order = RankOrder(imp);
  double sum = 0.0;
  size_t positives = 0;
  for (size_t r = 0; r < order.size(); ++r) {
    if (imp.labels[order[r]]) {
      sum += 1.0 / static_cast<double>(r + 1);
      ++positives;
    }
  }
  return positives ? sum / static_cast<double>(positives) : 0.0;
}

double ImpressionNdcg(const ScoredImpression& imp, size_t k) {
  const auto order = RankOrder(imp);
  double dcg = 0.0;
  for (size_t r = 0; r < std::min(k, order.size()); ++r) {
    if (imp.labels[order[r]]) dcg += 1.0 / std::log2(static_cast<double>(r + 2));
  }
  const size_t positives =
      static_cast<size_t>(std::count(imp.labels.begin(), imp.labels.end(), 1));
  double ideal = 0.0;
  for (size_t r = 0; r < std::min(k, positives); ++r) {
    ideal += 1.0 / std::log2(static_cast<double>(r + 2));
  }
  return ideal > 0 ? dcg / ideal : 0.0;
}

EvalResult EvaluateScored(std::span<const ScoredImpression> impressions,
                          const EvalOptions& options) {
  EvalResult out;
  for (const auto& imp : impressions) {
    CheckShape(imp);
    const size_t positives =
        static_cast<size_t>(std::count(imp.labels.begin(), imp.labels.end(), 1));
    const bool mixed = positives > 0 && positives < imp.labels.size();
    if (mixed) {
      out.auc += ImpressionAuc(imp.scores, imp.labels);
      ++out.auc_impressions;
    }
    if (mixed || options.include_single_class) {
      out.mrr += ImpressionMrr(imp);
      out.ndcg5 += ImpressionNdcg(imp, 5);
      out.ndcg10 += ImpressionNdcg(imp, 10);
      ++out.impressions;
    }
  }
  if (out.auc_impressions) out.auc /= static_cast<double>(out.auc_impressions);
  if (out.impressions) {
    const double n = static_cast<double>(out.impressions);
    out.mrr /= n;
    out.ndcg5 /= n;
    out.ndcg10 /= n;
  }
  return out;
}

EvalResult Evaluate(const recmodel::UserModelParams& user_model,
                    const recmodel::ReprTable& news_table,
                    std::span<const data::Impression> impressions,
                    const EvalOptions& options) {
  std::vector<ScoredImpression> scored;
  scored.reserve(impressions.size());
  const auto dim = static_cast<Eigen::Index>(news_table.dim());
  for (const auto& imp : impressions) {
    Matrix history(static_cast<Eigen::Index>(imp.history.size()), dim);
    for (size_t i = 0; i < imp.history.size(); ++i) {
      history.row(static_cast<Eigen::Index>(i)) =
          news_table.Get(imp.history[i]).transpose();
    }
    const Vector user = recmodel::EncodeUser(user_model, history);
    ScoredImpression s;
    s.items = imp.candidates;
    s.labels = imp.labels;
    for (ItemIndex c : imp.candidates) {
      s.scores.push_back(recmodel::Score(user, news_table.Get(c)));
    }
    scored.push_back(std::move(s));
  }
  return EvaluateScored(scored, options);
}

}  // namespace fedrec::cli
