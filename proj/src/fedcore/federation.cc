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

#include "fedcore/federation.h"

#include <chrono>
#include <cmath>
#include <optional>

#include "common/byte_io.h"
#include "common/error.h"
#include "common/random.h"
#include "data/negative_sampling.h"
#include "fedcore/aggregation.h"
#include "fedcore/sampling.h"
#include "recmodel/news_encoder.h"
#include "secagg/crypto.h"
#include "secagg/fixed_point.h"
#include "secagg/session.h"
#include "secagg/union_set.h"

namespace fedrec::fedcore {
namespace {

using netsim::Bus;
using netsim::DropPhase;
using netsim::MessageTag;
using netsim::PartyId;
using secagg::DropPoint;

// Seed-derivation purposes.
enum Purpose : uint64_t {
  kInit = 1,
  kSamples = 2,
  kGroup = 3,
  kUnionEncode = 4,
  kUnionSession = 5,
  kGradSession = 6,
  kDropout = 7,
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

DropPoint DropPointFor(std::optional<DropPhase> phase, bool union_session) {
  if (!phase) return DropPoint::kNone;
  switch (*phase) {
    case DropPhase::kUnionAdvertise:
      return union_session ? DropPoint::kAdvertise : DropPoint::kNone;
    case DropPhase::kUnionShareKeys:
      return union_session ? DropPoint::kShareKeys : DropPoint::kNone;
    case DropPhase::kUnionMaskedInput:
      return union_session ? DropPoint::kMaskedInput : DropPoint::kNone;
    case DropPhase::kUnionUnmask:
      return union_session ? DropPoint::kUnmask : DropPoint::kNone;
    case DropPhase::kGradAdvertise:
      return union_session ? DropPoint::kNone : DropPoint::kAdvertise;
    case DropPhase::kGradShareKeys:
      return union_session ? DropPoint::kNone : DropPoint::kShareKeys;
    case DropPhase::kGradMaskedInput:
      return union_session ? DropPoint::kNone : DropPoint::kMaskedInput;
    case DropPhase::kGradUnmask:
      return union_session ? DropPoint::kNone : DropPoint::kUnmask;
    case DropPhase::kDistribute:
      return DropPoint::kNone;
  }
  return DropPoint::kNone;
}

struct Contribution {
  size_t client = 0;
  PartyId party = 0;
  DropPoint drop = DropPoint::kNone;
};

template <typename T>
struct SumOutcome {
  bool ok = false;
  std::string reason;
  std::vector<T> sum;
  size_t contributors = 0;
};

// Plaintext aggregation with the same message sizes as the secure inputs.
// Drop points before the masked input suppress the upload; a drop at the
// unmask point happens after it.
template <typename T>
SumOutcome<T> PlainSum(Bus& bus, const std::string& prefix,
                       const std::vector<Contribution>& parts,
                       const std::vector<std::vector<T>>& inputs,
                       size_t length) {
  bus.SetPhase(prefix + ".plain_input");
  for (size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    if (p.drop != DropPoint::kNone && p.drop != DropPoint::kUnmask) {
      bus.Drop(p.party);
      continue;
    }
    ByteWriter w;
    if constexpr (std::is_same_v<T, uint64_t>) {
      w.U64Array(inputs[i]);
    } else {
      w.F64Array(inputs[i]);
    }
    bus.Send(p.party, Federation::kServer, MessageTag::kPlainInput, w.Take());
    if (p.drop == DropPoint::kUnmask) bus.Drop(p.party);
  }
  SumOutcome<T> out;
  out.sum.assign(length, T{0});
  while (auto d = bus.Receive(Federation::kServer)) {
    if (d->tag != MessageTag::kPlainInput) continue;
    ByteReader r(d->payload);
    std::vector<T> v;
    if constexpr (std::is_same_v<T, uint64_t>) {
      v = r.U64Array();
    } else {
      v = r.F64Array();
    }
    r.ExpectEnd();
    if (v.size() != length) throw ProtocolError("plain input of wrong length");
    for (size_t j = 0; j < length; ++j) out.sum[j] += v[j];
    ++out.contributors;
  }
  out.ok = true;
  return out;
}

SumOutcome<uint64_t> SecureSum(Bus& bus, const FederationConfig& config,
                               const std::string& prefix, uint64_t session_id,
                               uint64_t seed,
                               const std::vector<Contribution>& parts,
                               std::vector<std::vector<uint64_t>> inputs) {
  SumOutcome<uint64_t> out;
  const uint32_t t = config.EffectiveThreshold();
  if (parts.size() < t) {
    bus.SetPhase(prefix + ".advertise");
    out.reason = "fewer than t live participants";
    return out;
  }
  std::vector<secagg::SessionParticipant> participants;
  for (size_t i = 0; i < parts.size(); ++i) {
    participants.push_back({parts[i].party, std::move(inputs[i]), parts[i].drop});
  }
  secagg::SessionOptions opts;
  opts.threshold = t;
  opts.prg = config.prg;
  opts.session_id = session_id;
  opts.seed = seed;
  opts.phase_prefix = prefix;
  auto result = secagg::RunSession(bus, Federation::kServer, participants, opts);
  if (!result.completed) {
    out.reason = result.abort_reason;
    return out;
  }
  out.ok = true;
  out.sum = std::move(result.sum);
  out.contributors = result.included.size();
  return out;
}

std::vector<uint8_t> EncodeFlat(std::span<const double> flat) {
  ByteWriter w;
  w.F64Array(flat);
  return w.Take();
}

std::vector<double> DecodeFlat(std::span<const uint8_t> payload) {
  ByteReader r(payload);
  auto v = r.F64Array();
  r.ExpectEnd();
  return v;
}

std::vector<uint8_t> EncodeReprs(const recmodel::ReprTable& table) {
  ByteWriter w;
  w.U64(table.size());
  for (ItemIndex id : table.ids()) w.U32(id);
  const Matrix& m = table.vectors();
  w.F64Array(std::span<const double>(m.data(), static_cast<size_t>(m.size())));
  return w.Take();
}

recmodel::ReprTable DecodeReprs(std::span<const uint8_t> payload, size_t dim) {
  ByteReader r(payload);
  const uint64_t n = r.U64();
  if (n > r.remaining() / 4) throw ProtocolError("representation count too large");
  std::vector<ItemIndex> ids(n);
  for (auto& id : ids) id = r.U32();
  auto values = r.F64Array();
  r.ExpectEnd();
  if (values.size() != n * dim) throw ProtocolError("representation payload size");
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  std::copy(values.begin(), values.end(), m.data());
  return recmodel::ReprTable(std::move(ids), std::move(m));
}

bool AllFinite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

uint32_t FederationConfig::EffectiveThreshold() const {
  if (threshold != 0) return threshold;
  return static_cast<uint32_t>((group_size + 1) / 2);
}

void FederationConfig::Validate() const {
  dims.Validate();
  optimizer.Validate();
  if (group_size == 0) throw ConfigError("group_size must be positive");
  if (negatives == 0) throw ConfigError("negatives must be positive");
  if (threshold > group_size) {
    throw ConfigError("threshold must not exceed group_size");
  }
  if (fractional_bits == 0 || fractional_bits >= 62) {
    throw ConfigError("fractional_bits must lie in [1, 61]");
  }
  if (!(init_scale >= 0)) throw ConfigError("init_scale must be non-negative");
  if (!(dropout >= 0 && dropout < 1)) {
    throw ConfigError("dropout must lie in [0, 1)");
  }
}

recmodel::ReprTable EncodeCorpus(const recmodel::NewsEncoderParams& encoder,
                                 const data::Corpus& corpus) {
  Matrix m(static_cast<Eigen::Index>(corpus.size()),
           static_cast<Eigen::Index>(encoder.news_dim()));
  for (const auto& content : corpus.contents()) {
    m.row(content.id) = recmodel::EncodeNews(encoder, content).transpose();
  }
  return recmodel::ReprTable::Dense(std::move(m));
}

Federation::Federation(const FederationConfig& config,
                       const data::Dataset& dataset)
    : config_(config), corpus_(dataset.corpus) {
  config_.dims.vocab_size = corpus_.vocabulary().size();
  config_.Validate();
  if (corpus_.size() == 0) throw InputError("empty corpus");
  if (dataset.clients.size() < config_.group_size) {
    throw ConfigError("group_size " + std::to_string(config_.group_size) +
                      " exceeds the " + std::to_string(dataset.clients.size()) +
                      " clients with training data");
  }

  Rng init(DeriveSeed(config_.seed, {kInit}));
  server_.encoder =
      recmodel::NewsEncoderParams::RandomUniform(config_.dims, config_.init_scale, init);
  server_.user_model =
      recmodel::UserModelParams::RandomUniform(config_.dims, config_.init_scale, init);
  server_.user_moments = AdamMoments::Zeros(server_.user_model.NumParams());
  server_.encoder_moments = AdamMoments::Zeros(server_.encoder.NumParams());
  RefreshNewsTable();

  bus_.AddParty("server");
  for (size_t i = 0; i < dataset.clients.size(); ++i) {
    const auto& behavior = dataset.clients[i];
    ClientState c;
    c.user_id = behavior.user_id;
    c.party = bus_.AddParty(behavior.user_id);
    Rng rng(DeriveSeed(config_.seed, {kSamples, i}));
    c.samples = data::SampleBehavior(behavior, config_.negatives, rng);
    c.local_items = recmodel::ReferencedItems(c.samples);
    clients_.push_back(std::move(c));
  }
}

void Federation::RefreshNewsTable() {
  server_.news_table = EncodeCorpus(server_.encoder, corpus_);
}

RoundReport Federation::RunRound(const netsim::FaultPlan* faults) {
  const uint64_t t = server_.round + 1;
  bus_.BeginRound(t);
  RoundReport report;
  report.round = t;
  report.group = SampleClientGroup(clients_.size(), config_.group_size,
                                   DeriveSeed(config_.seed, {kGroup, t}));
  report = config_.mode == TrainingMode::kEfficient
               ? RunEfficient(std::move(report), faults)
               : RunWholeModel(std::move(report), faults);
  server_.round = t;
  report.bytes_up = bus_.ledger().RoundTotal(t, netsim::Direction::kUp);
  report.bytes_down = bus_.ledger().RoundTotal(t, netsim::Direction::kDown);
  report.server_seconds = bus_.ledger().Compute(t, kServer);
  double client_total = 0.0;
  for (size_t c : report.group) {
    client_total += bus_.ledger().Compute(t, clients_[c].party);
  }
  report.client_seconds = client_total / static_cast<double>(report.group.size());
  return report;
}

namespace {

// Shared tail of both modes: aggregates weighted uploads, securely or not.
std::optional<std::vector<double>> AggregateUploads(
    Bus& bus, const FederationConfig& config, uint64_t t,
    const std::vector<Contribution>& parts,
    std::vector<std::vector<double>> uploads, size_t length,
    RoundReport& report) {
  if (!config.secure_aggregation) {
    auto plain = PlainSum<double>(bus, "grad", parts, uploads, length);
    report.contributors = plain.contributors;
    return std::move(plain.sum);
  }
  std::vector<Contribution> kept;
  std::vector<std::vector<uint64_t>> quantized;
  for (size_t i = 0; i < parts.size(); ++i) {
    try {
      quantized.push_back(secagg::Quantize(uploads[i], config.fractional_bits));
      kept.push_back(parts[i]);
    } catch (const ProtocolError&) {
      // Out-of-range upload: the client withholds it.
      bus.Drop(parts[i].party);
    }
  }
  auto secure = SecureSum(bus, config, "grad", 2 * t + 1,
                          DeriveSeed(config.seed, {kGradSession, t}), kept,
                          std::move(quantized));
  if (!secure.ok) {
    report.skip_reason = "gradient aggregation aborted: " + secure.reason;
    return std::nullopt;
  }
  report.contributors = secure.contributors;
  return secagg::Dequantize(secure.sum, config.fractional_bits);
}

}  // namespace

RoundReport Federation::RunEfficient(RoundReport report,
                                     const netsim::FaultPlan* faults) {
  const uint64_t t = server_.round + 1;
  const size_t dim = config_.dims.news_dim;
  auto plan = [&](size_t c) -> std::optional<DropPhase> {
    return faults ? faults->Lookup(t, static_cast<uint32_t>(c)) : std::nullopt;
  };

  // Union news set.
  std::vector<Contribution> parts;
  std::vector<std::vector<uint64_t>> indicators;
  for (size_t c : report.group) {
    Stopwatch sw;
    const uint64_t tags[] = {config_.seed, t, c, kUnionEncode};
    auto rng = secagg::SecureRandom::FromTags(tags);
    indicators.push_back(
        secagg::EncodeUnion(clients_[c].local_items, corpus_.size(), rng));
    bus_.ledger().AddCompute(t, clients_[c].party, sw.Seconds());
    parts.push_back({c, clients_[c].party, DropPointFor(plan(c), true)});
  }
  std::vector<uint64_t> union_sum;
  if (config_.secure_aggregation) {
    auto s = SecureSum(bus_, config_, "union", 2 * t,
                       DeriveSeed(config_.seed, {kUnionSession, t}), parts,
                       std::move(indicators));
    if (!s.ok) {
      report.skip_reason = "union aggregation aborted: " + s.reason;
      return report;
    }
    union_sum = std::move(s.sum);
  } else {
    union_sum =
        PlainSum<uint64_t>(bus_, "union", parts, indicators, corpus_.size()).sum;
  }
  Stopwatch decode_sw;
  const std::vector<ItemIndex> union_ids = secagg::DecodeUnion(union_sum);
  report.union_size = union_ids.size();

  // Distribution of the user model and the union representations.
  bus_.SetPhase("distribute");
  const auto user_payload = EncodeFlat(server_.user_model.Flatten());
  const auto repr_payload = EncodeReprs(server_.news_table.Subset(union_ids));
  bus_.ledger().AddCompute(t, kServer, decode_sw.Seconds());
  for (size_t c : report.group) {
    const PartyId party = clients_[c].party;
    if (bus_.IsDropped(party)) continue;
    if (plan(c) == DropPhase::kDistribute) {
      bus_.Drop(party);
      continue;
    }
    bus_.Send(kServer, party, MessageTag::kUserModel, user_payload);
    bus_.Send(kServer, party, MessageTag::kNewsReprs, repr_payload);
  }

  // Local training.
  const size_t user_params = server_.user_model.NumParams();
  const size_t length = user_params + union_ids.size() * dim + 1;
  parts.clear();
  std::vector<std::vector<double>> uploads;
  double loss_sum = 0.0, loss_weight = 0.0;
  for (size_t c : report.group) {
    const ClientState& client = clients_[c];
    if (bus_.IsDropped(client.party)) continue;
    Stopwatch sw;
    std::optional<std::vector<double>> user_flat;
    std::optional<recmodel::ReprTable> reprs;
    while (auto d = bus_.Receive(client.party)) {
      if (d->tag == MessageTag::kUserModel) user_flat = DecodeFlat(d->payload);
      if (d->tag == MessageTag::kNewsReprs) reprs = DecodeReprs(d->payload, dim);
    }
    if (!user_flat || !reprs) continue;
    auto user = recmodel::UserModelParams::Zeros(config_.dims);
    user.AssignFlat(*user_flat);
    try {
      const auto grads = recmodel::ComputeLocalGradients(
          client.samples, user, *reprs,
          {config_.dropout, DeriveSeed(config_.seed, {kDropout, t, c})});
      uploads.push_back(FlattenUpload(grads, union_ids, dim));
      parts.push_back({c, client.party, DropPointFor(plan(c), false)});
      loss_sum += grads.loss * static_cast<double>(grads.sample_count);
      loss_weight += static_cast<double>(grads.sample_count);
    } catch (const ProtocolError&) {
      // Missing representations: the client sits this round out.
    }
    bus_.ledger().AddCompute(t, client.party, sw.Seconds());
  }
  if (loss_weight > 0) report.train_loss = loss_sum / loss_weight;
  report.train_samples = loss_weight;

  auto sum = AggregateUploads(bus_, config_, t, parts, std::move(uploads),
                              length, report);
  if (!sum) return report;

  // Server update.
  Stopwatch server_sw;
  auto normalized = Normalize(SplitSum(*sum, user_params));
  if (!normalized) {
    report.skip_reason = "zero total weight";
  } else {
    report.weight_sum = sum->back();
    const auto repr_grads = ToReprGradients(normalized->repr_grad, union_ids, dim);
    const auto encoder_grad = recmodel::NewsEncoderBackward(
        server_.encoder, corpus_.contents(), repr_grads);
    if (!AllFinite(normalized->user_grad) || !AllFinite(encoder_grad)) {
      report.skip_reason = "non-finite aggregate gradient";
    } else {
      FedAdamStep(server_.user_model, server_.user_moments,
                  normalized->user_grad, config_.optimizer);
      AdamNewsStep(server_.encoder, server_.encoder_moments, encoder_grad,
                   config_.optimizer);
      RefreshNewsTable();
      report.applied = true;
    }
  }
  bus_.ledger().AddCompute(t, kServer, server_sw.Seconds());
  return report;
}

RoundReport Federation::RunWholeModel(RoundReport report,
                                      const netsim::FaultPlan* faults) {
  const uint64_t t = server_.round + 1;
  auto plan = [&](size_t c) -> std::optional<DropPhase> {
    return faults ? faults->Lookup(t, static_cast<uint32_t>(c)) : std::nullopt;
  };

  bus_.SetPhase("distribute");
  const auto user_payload = EncodeFlat(server_.user_model.Flatten());
  const auto encoder_payload = EncodeFlat(server_.encoder.Flatten());
  for (size_t c : report.group) {
    const PartyId party = clients_[c].party;
    const auto phase = plan(c);
    if (phase == DropPhase::kDistribute || phase == DropPhase::kUnionAdvertise ||
        phase == DropPhase::kUnionShareKeys ||
        phase == DropPhase::kUnionMaskedInput ||
        phase == DropPhase::kUnionUnmask) {
      bus_.Drop(party);
      continue;
    }
    bus_.Send(kServer, party, MessageTag::kUserModel, user_payload);
    bus_.Send(kServer, party, MessageTag::kNewsEncoder, encoder_payload);
  }

  const size_t user_params = server_.user_model.NumParams();
  const size_t encoder_params = server_.encoder.NumParams();
  const size_t length = user_params + encoder_params + 1;
  std::vector<Contribution> parts;
  std::vector<std::vector<double>> uploads;
  double loss_sum = 0.0, loss_weight = 0.0;
  for (size_t c : report.group) {
    const ClientState& client = clients_[c];
    if (bus_.IsDropped(client.party)) continue;
    Stopwatch sw;
    std::optional<std::vector<double>> user_flat, encoder_flat;
    while (auto d = bus_.Receive(client.party)) {
      if (d->tag == MessageTag::kUserModel) user_flat = DecodeFlat(d->payload);
      if (d->tag == MessageTag::kNewsEncoder) encoder_flat = DecodeFlat(d->payload);
    }
    if (!user_flat || !encoder_flat) continue;
    auto user = recmodel::UserModelParams::Zeros(config_.dims);
    user.AssignFlat(*user_flat);
    auto encoder = recmodel::NewsEncoderParams::Zeros(config_.dims);
    encoder.AssignFlat(*encoder_flat);

    std::vector<recmodel::NewsContent> contents;
    Matrix local(static_cast<Eigen::Index>(client.local_items.size()),
                 static_cast<Eigen::Index>(config_.dims.news_dim));
    for (size_t i = 0; i < client.local_items.size(); ++i) {
      contents.push_back(corpus_.contents()[client.local_items[i]]);
      local.row(static_cast<Eigen::Index>(i)) =
          recmodel::EncodeNews(encoder, contents.back()).transpose();
    }
    const recmodel::ReprTable reprs(client.local_items, std::move(local));
    const auto grads = recmodel::ComputeLocalGradients(
        client.samples, user, reprs,
        {config_.dropout, DeriveSeed(config_.seed, {kDropout, t, c})});
    const auto encoder_grad =
        recmodel::NewsEncoderBackward(encoder, contents, grads.repr_grads);
    uploads.push_back(FlattenWholeModelUpload(
        grads.user_grad, encoder_grad, static_cast<double>(grads.sample_count)));
    parts.push_back({c, client.party, DropPointFor(plan(c), false)});
    loss_sum += grads.loss * static_cast<double>(grads.sample_count);
    loss_weight += static_cast<double>(grads.sample_count);
    bus_.ledger().AddCompute(t, client.party, sw.Seconds());
  }
  if (loss_weight > 0) report.train_loss = loss_sum / loss_weight;
  report.train_samples = loss_weight;

  auto sum = AggregateUploads(bus_, config_, t, parts, std::move(uploads),
                              length, report);
  if (!sum) return report;

  Stopwatch server_sw;
  auto normalized = Normalize(SplitSum(*sum, user_params));
  if (!normalized) {
    report.skip_reason = "zero total weight";
  } else if (!AllFinite(normalized->user_grad) ||
             !AllFinite(normalized->repr_grad)) {
    report.skip_reason = "non-finite aggregate gradient";
  } else {
    report.weight_sum = sum->back();
    FedAdamStep(server_.user_model, server_.user_moments, normalized->user_grad,
                config_.optimizer);
    AdamNewsStep(server_.encoder, server_.encoder_moments,
                 normalized->repr_grad, config_.optimizer);
    RefreshNewsTable();
    report.applied = true;
  }
  bus_.ledger().AddCompute(t, kServer, server_sw.Seconds());
  return report;
}

}  // namespace fedrec::fedcore
