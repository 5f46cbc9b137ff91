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

#include "cli/compare.h"

#include <algorithm>
#include <cstdio>

#include "cli/experiment.h"

namespace fedrec::cli {
namespace {

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

std::vector<CompareRow> CompareModes(const RunConfig& config) {
  config.Validate();
  const data::Dataset dataset = LoadDataset(config);
  const size_t base_token_dim = config.federation.dims.token_dim;
  std::vector<CompareRow> rows;
  for (auto mode :
       {fedcore::TrainingMode::kEfficient, fedcore::TrainingMode::kWholeModel}) {
    for (uint64_t factor : config.compare_factors) {
      RunConfig point = config;
      point.federation.mode = mode;
      point.federation.dims.token_dim = base_token_dim * factor;
      point.rounds = config.compare_rounds;
      point.eval_every = 0;
      Experiment exp(point, dataset);
      std::vector<fedcore::RoundReport> reports;
      for (uint64_t r = 0; r < point.rounds; ++r) {
        reports.push_back(exp.federation().RunRound());
      }

      const auto& fed = exp.federation();
      const auto& ledger = fed.bus().ledger();
      CompareRow row;
      row.mode = mode;
      row.factor = factor;
      row.token_dim = point.federation.dims.token_dim;
      row.encoder_params = fed.server().encoder.NumParams();
      row.user_params = fed.server().user_model.NumParams();
      size_t client_rounds = 0;
      const double rounds = static_cast<double>(std::max<uint64_t>(point.rounds, 1));
      for (const auto& report : reports) {
        const uint64_t t = report.round;
        row.mean_union_size += static_cast<double>(report.union_size);
        for (size_t c : report.group) {
          const auto party = fed.clients()[c].party;
          const uint64_t up = ledger.Bytes(t, party, netsim::Direction::kUp);
          const uint64_t down = ledger.Bytes(t, party, netsim::Direction::kDown);
          row.client_bytes_up += static_cast<double>(up);
          row.client_bytes_down += static_cast<double>(down);
          row.client_bytes.push_back(up + down);
          row.client_seconds += ledger.Compute(t, party);
          ++client_rounds;
        }
        row.server_bytes += static_cast<double>(
            ledger.Bytes(t, fedcore::Federation::kServer, netsim::Direction::kUp) +
            ledger.Bytes(t, fedcore::Federation::kServer, netsim::Direction::kDown));
        row.server_seconds += ledger.Compute(t, fedcore::Federation::kServer);
      }
      if (client_rounds) {
        const double n = static_cast<double>(client_rounds);
        row.client_bytes_up /= n;
        row.client_bytes_down /= n;
        row.client_seconds /= n;
      }
      row.mean_union_size /= rounds;
      row.server_bytes /= rounds;
      row.server_seconds /= rounds;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void WriteCompareCsv(std::ostream& out, const std::vector<CompareRow>& rows) {
  out << "mode,factor,token_dim,encoder_params,user_params,client_bytes_up,"
         "client_bytes_down,client_bytes_total,server_bytes,mean_union_size,"
         "client_seconds,server_seconds\n";
  for (const auto& r : rows) {
    out << (r.mode == fedcore::TrainingMode::kEfficient ? "efficient"
                                                        : "whole_model")
        << ',' << r.factor << ',' << r.token_dim << ',' << r.encoder_params
        << ',' << r.user_params << ',' << Num(r.client_bytes_up) << ','
        << Num(r.client_bytes_down) << ','
        << Num(r.client_bytes_up + r.client_bytes_down) << ','
        << Num(r.server_bytes) << ',' << Num(r.mean_union_size) << ','
        << Num(r.client_seconds) << ','
        << Num(r.server_seconds) << '\n';
  }
}

}  // namespace fedrec::cli
