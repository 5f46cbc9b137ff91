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

#ifndef FEDREC_CLI_METRICS_H_
#define FEDREC_CLI_METRICS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "common/types.h"
#include "data/corpus.h"
#include "recmodel/params.h"
#include "recmodel/repr_table.h"

namespace fedrec::cli {

struct ScoredImpression {
  std::vector<ItemIndex> items;
  std::vector<double> scores;
  std::vector<uint8_t> labels;
};

// Positions ordered by score descending, then item id ascending.
std::vector<size_t> RankOrder(const ScoredImpression& imp);

// Rank-statistic AUC with midranks for tied scores. Requires at least one
// positive and one negative.
double ImpressionAuc(std::span<const double> scores,
                     std::span<const uint8_t> labels);
// Sum over positives of 1 / rank, divided by the number of positives.
double ImpressionMrr(const ScoredImpression& imp);
// Binary-gain nDCG@k with log2 discounts.
double ImpressionNdcg(const ScoredImpression& imp, size_t k);

struct EvalOptions {
  // Scores impressions lacking a positive or a negative for MRR and nDCG.
  // They never count toward AUC.
  bool include_single_class = false;
};

struct EvalResult {
  double auc = 0.0;
  double mrr = 0.0;
  double ndcg5 = 0.0;
  double ndcg10 = 0.0;
  size_t impressions = 0;      // averaged for MRR and nDCG
  size_t auc_impressions = 0;  // averaged for AUC
};

// Per-impression metrics averaged over impressions.
EvalResult EvaluateScored(std::span<const ScoredImpression> impressions,
                          const EvalOptions& options = {});

// Scores impressions with the user model over the given history and
// candidate representations, then evaluates.
EvalResult Evaluate(const recmodel::UserModelParams& user_model,
                    const recmodel::ReprTable& news_table,
                    std::span<const data::Impression> impressions,
                    const EvalOptions& options = {});

}  // namespace fedrec::cli

#endif  // FEDREC_CLI_METRICS_H_
