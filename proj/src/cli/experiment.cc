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

#include "cli/experiment.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "common/error.h"
#include "data/mind_loader.h"
#include "data/synthetic.h"
#include "fedcore/checkpoint.h"

namespace fedrec::cli {
namespace {

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::ofstream OpenOut(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace

data::Dataset LoadDataset(const RunConfig& config) {
  if (config.dataset == DatasetKind::kMind) {
    return data::LoadMind(config.mind_behaviors, config.mind_news, config.mind);
  }
  return data::GenerateSynthetic(config.synthetic).dataset;
}

Experiment::Experiment(const RunConfig& config)
    : Experiment(config, (config.Validate(), LoadDataset(config))) {}

Experiment::Experiment(const RunConfig& config, data::Dataset dataset)
    : config_(config), dataset_(std::move(dataset)) {
  config_.Validate();
  faults_ = config_.ParsedFaults();
  federation_ =
      std::make_unique<fedcore::Federation>(config_.federation, dataset_);
}

EvalResult Experiment::Evaluate() const {
  const auto& split = config_.eval_on_test ? dataset_.test : dataset_.validation;
  return cli::Evaluate(federation_->server().user_model,
                       federation_->server().news_table, split,
                       {config_.include_single_class});
}

void Experiment::RecordInitial() {
  if (metrics_.empty()) metrics_.push_back({round(), std::nullopt, Evaluate()});
}

const fedcore::RoundReport& Experiment::RunRound() {
  RecordInitial();
  reports_.push_back(federation_->RunRound(faults_.empty() ? nullptr : &faults_));
  const auto& report = reports_.back();
  MetricsRow row;
  row.round = report.round;
  if (report.train_samples > 0) row.loss = report.train_loss;
  const bool last = report.round >= config_.rounds;
  const bool cadence =
      config_.eval_every > 0 && report.round % config_.eval_every == 0;
  if (last || cadence) row.eval = Evaluate();
  metrics_.push_back(row);
  return report;
}

void Experiment::Run() {
  RecordInitial();
  while (round() < config_.rounds) RunRound();
}

void Experiment::WriteMetricsCsv(std::ostream& out) const {
  out << "round,loss,auc,mrr,ndcg5,ndcg10\n";
  for (const auto& row : metrics_) {
    out << row.round << ',' << (row.loss ? Num(*row.loss) : "");
    if (row.eval) {
      out << ',' << Num(row.eval->auc) << ',' << Num(row.eval->mrr) << ','
          << Num(row.eval->ndcg5) << ',' << Num(row.eval->ndcg10);
    } else {
      out << ",,,,";
    }
    out << '\n';
  }
}

std::string Experiment::SummaryJson() const {
  using nlohmann::json;
  const auto& fed = *federation_;
  const auto& ledger = fed.bus().ledger();
  json j;
  json cfg;
  for (const auto& k : ConfigKeys()) cfg[k.name] = k.get(config_);
  j["config"] = cfg;
  const auto& s = dataset_.stats;
  j["dataset"] = {{"items", dataset_.corpus.size()},
                  {"vocabulary", dataset_.corpus.vocabulary().size()},
                  {"clients", dataset_.clients.size()},
                  {"validation_impressions", dataset_.validation.size()},
                  {"test_impressions", dataset_.test.size()},
                  {"unique_users", s.unique_users},
                  {"unique_impressions", s.unique_impressions},
                  {"malformed_rows", s.malformed_rows},
                  {"unknown_item_rows", s.unknown_item_rows},
                  {"duplicate_impressions", s.duplicate_impressions}};
  j["parameters"] = {{"user_model", fed.server().user_model.NumParams()},
                     {"news_encoder", fed.server().encoder.NumParams()}};

  size_t applied = 0, union_total = 0;
  double client_bytes = 0, client_seconds = 0, server_seconds = 0;
  size_t client_rounds = 0;
  json rounds = json::array();
  for (const auto& r : reports_) {
    applied += r.applied;
    union_total += r.union_size;
    server_seconds += r.server_seconds;
    client_seconds += r.client_seconds;
    uint64_t group_bytes = 0;
    for (size_t c : r.group) {
      const auto party = fed.clients()[c].party;
      group_bytes += ledger.Bytes(r.round, party, netsim::Direction::kUp) +
                     ledger.Bytes(r.round, party, netsim::Direction::kDown);
    }
    client_bytes += static_cast<double>(group_bytes);
    client_rounds += r.group.size();
    rounds.push_back({{"round", r.round},
                      {"applied", r.applied},
                      {"skip_reason", r.skip_reason},
                      {"union_size", r.union_size},
                      {"contributors", r.contributors},
                      {"weight_sum", r.weight_sum},
                      {"bytes_up", r.bytes_up},
                      {"bytes_down", r.bytes_down}});
  }
  const double n = reports_.empty() ? 1.0 : static_cast<double>(reports_.size());
  j["rounds"] = rounds;
  j["totals"] = {{"rounds", reports_.size()},
                 {"applied_rounds", applied},
                 {"bytes_up", ledger.Total(netsim::Direction::kUp)},
                 {"bytes_down", ledger.Total(netsim::Direction::kDown)},
                 {"dropped_messages", ledger.drops().size()},
                 {"mean_union_size", static_cast<double>(union_total) / n},
                 {"mean_client_bytes_per_round",
                  client_rounds ? client_bytes / static_cast<double>(client_rounds)
                                : 0.0},
                 {"mean_client_seconds", client_seconds / n},
                 {"mean_server_seconds", server_seconds / n}};
  for (auto it = metrics_.rbegin(); it != metrics_.rend(); ++it) {
    if (it->eval) {
      j["final_metrics"] = {{"round", it->round},
                            {"auc", it->eval->auc},
                            {"mrr", it->eval->mrr},
                            {"ndcg5", it->eval->ndcg5},
                            {"ndcg10", it->eval->ndcg10},
                            {"impressions", it->eval->impressions}};
      break;
    }
  }
  return j.dump(2) + "\n";
}

void Experiment::WriteOutputs(const std::string& dir) const {
  const std::filesystem::path root(dir);
  std::error_code ec;
  std::filesystem::create_directories(root, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  const auto& bus = federation_->bus();
  {
    auto out = OpenOut(root / "metrics.csv");
    WriteMetricsCsv(out);
  }
  {
    auto out = OpenOut(root / "costs.csv");
    bus.ledger().WriteCsv(out, bus.party_names());
  }
  {
    auto out = OpenOut(root / "timings.csv");
    bus.ledger().WriteComputeCsv(out, bus.party_names());
  }
  {
    auto out = OpenOut(root / "summary.json");
    out << SummaryJson();
  }
  fedcore::WriteCheckpoint((root / "checkpoint.bin").string(),
                           federation_->server());
  fedcore::WriteUserModel((root / "user_model.bin").string(),
                          federation_->server().user_model);
}

void RunExperiment(const RunConfig& config) {
  Experiment experiment(config);
  try {
    experiment.Run();
  } catch (...) {
    try {
      experiment.WriteOutputs(config.output_dir);
    } catch (...) {
    }
    throw;
  }
  experiment.WriteOutputs(config.output_dir);
}

}  // namespace fedrec::cli
