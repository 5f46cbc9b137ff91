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

#include "secagg/session.h"

#include <chrono>
#include <map>
#include <memory>
#include <optional>

#include "common/error.h"
#include "secagg/protocol.h"

namespace fedrec::secagg {
namespace {

using netsim::Bus;
using netsim::MessageTag;
using netsim::PartyId;

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

class Driver {
 public:
  Driver(Bus& bus, PartyId server,
         const std::vector<SessionParticipant>& participants,
         const SessionOptions& options)
      : bus_(bus), server_(server), parts_(participants), opts_(options) {}

  SessionResult Run();

 private:
  void Phase(const char* name) { bus_.SetPhase(opts_.phase_prefix + name); }
  void Send(PartyId from, PartyId to, MessageTag tag,
            std::vector<uint8_t> payload) {
    if (opts_.tamper) opts_.tamper(tag, from, payload);
    bus_.Send(from, to, tag, payload);
  }
  // Drops participants scheduled to go silent before `point`.
  void ApplyDrops(DropPoint point) {
    for (size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i].drop == point) {
        bus_.Drop(parts_[i].party);
        clients_[i].reset();
      }
    }
  }
  // Runs `step` for every live client holding a message of `tag`.
  template <typename Step>
  void ClientStep(MessageTag in_tag, MessageTag out_tag, Step step) {
    for (size_t i = 0; i < parts_.size(); ++i) {
      if (!clients_[i]) continue;
      const PartyId party = parts_[i].party;
      std::optional<netsim::Delivery> msg;
      while (auto d = bus_.Receive(party)) {
        if (d->from == server_ && d->tag == in_tag) msg = std::move(d);
      }
      if (!msg) {
        clients_[i].reset();
        continue;
      }
      Stopwatch sw;
      std::vector<uint8_t> out;
      try {
        out = step(*clients_[i], msg->payload);
      } catch (const ProtocolError&) {
        clients_[i].reset();
      }
      bus_.ledger().AddCompute(bus_.round(), party, sw.Seconds());
      if (clients_[i]) Send(party, server_, out_tag, std::move(out));
    }
  }
  // Feeds every server-inbox message of `tag` to `accept`.
  template <typename Accept>
  void ServerCollect(MessageTag tag, Accept accept) {
    Stopwatch sw;
    while (auto d = bus_.Receive(server_)) {
      if (d->tag != tag) continue;
      auto it = index_of_.find(d->from);
      if (it == index_of_.end()) continue;
      accept(it->second, d->payload);
    }
    server_seconds_ += sw.Seconds();
  }
  SessionResult Abort(std::string reason) {
    SessionResult r;
    r.abort_reason = std::move(reason);
    bus_.ledger().AddCompute(bus_.round(), server_, server_seconds_);
    return r;
  }

  Bus& bus_;
  PartyId server_;
  const std::vector<SessionParticipant>& parts_;
  const SessionOptions& opts_;
  std::vector<std::unique_ptr<SecAggClient>> clients_;
  std::map<PartyId, uint32_t> index_of_;
  double server_seconds_ = 0.0;
};

SessionResult Driver::Run() {
  if (parts_.empty()) return Abort("no participants");
  SessionParams params;
  params.num_participants = static_cast<uint32_t>(parts_.size());
  params.threshold = opts_.threshold;
  params.vector_length = static_cast<uint32_t>(parts_[0].input.size());
  params.prg = opts_.prg;
  params.session_id = opts_.session_id;
  params.Validate();

  for (size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i].input.size() != params.vector_length) {
      throw InputError("participants hold vectors of different lengths");
    }
    if (!index_of_.emplace(parts_[i].party, static_cast<uint32_t>(i)).second) {
      throw InputError("party listed twice in a session");
    }
    const uint64_t tags[] = {opts_.seed, opts_.session_id, i};
    clients_.push_back(std::make_unique<SecAggClient>(
        static_cast<uint32_t>(i), params, parts_[i].input,
        SecureRandom::FromTags(tags)));
  }
  SecAggServer server(params);

  // Key advertisement.
  Phase(".advertise");
  ApplyDrops(DropPoint::kAdvertise);
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (!clients_[i]) continue;
    Stopwatch sw;
    auto advert = clients_[i]->Advertise();
    bus_.ledger().AddCompute(bus_.round(), parts_[i].party, sw.Seconds());
    Send(parts_[i].party, server_, MessageTag::kKeyAdvert, std::move(advert));
  }
  ServerCollect(MessageTag::kKeyAdvert,
                [&](uint32_t, const std::vector<uint8_t>& p) {
                  server.OnAdvert(p);
                });
  if (server.advertised().size() < params.threshold) {
    return Abort("fewer than t participants advertised keys");
  }
  {
    const auto list = server.AdvertList();
    for (uint32_t u : server.advertised()) {
      Send(server_, parts_[u].party, MessageTag::kKeyAdvertList, list);
    }
  }

  // Share keys.
  Phase(".share_keys");
  ApplyDrops(DropPoint::kShareKeys);
  ClientStep(MessageTag::kKeyAdvertList, MessageTag::kShareBatch,
             [](SecAggClient& c, const std::vector<uint8_t>& p) {
               return c.ShareKeys(p);
             });
  ServerCollect(MessageTag::kShareBatch,
                [&](uint32_t u, const std::vector<uint8_t>& p) {
                  server.OnShareBatch(u, p);
                });
  if (server.shared().size() < params.threshold) {
    return Abort("fewer than t participants shared keys");
  }
  {
    Stopwatch sw;
    auto bundles = server.Bundles();
    server_seconds_ += sw.Seconds();
    for (auto& [holder, bundle] : bundles) {
      Send(server_, parts_[holder].party, MessageTag::kShareBundle,
           std::move(bundle));
    }
  }

  // Masked input.
  Phase(".masked_input");
  ApplyDrops(DropPoint::kMaskedInput);
  ClientStep(MessageTag::kShareBundle, MessageTag::kMaskedInput,
             [](SecAggClient& c, const std::vector<uint8_t>& p) {
               return c.MaskInput(p);
             });
  ServerCollect(MessageTag::kMaskedInput,
                [&](uint32_t u, const std::vector<uint8_t>& p) {
                  server.OnMaskedInput(u, p);
                });
  if (server.masked().size() < params.threshold) {
    return Abort("fewer than t masked inputs");
  }
  {
    const auto request = EncodeShareRequest(server.ShareRequestEntries());
    for (uint32_t u : server.masked()) {
      Send(server_, parts_[u].party, MessageTag::kShareRequest, request);
    }
  }

  // Unmasking.
  Phase(".unmask");
  ApplyDrops(DropPoint::kUnmask);
  ClientStep(MessageTag::kShareRequest, MessageTag::kShareResponse,
             [](SecAggClient& c, const std::vector<uint8_t>& p) {
               return c.Unmask(p);
             });
  ServerCollect(MessageTag::kShareResponse,
                [&](uint32_t u, const std::vector<uint8_t>& p) {
                  server.OnShareResponse(u, p);
                });
  if (server.responded().size() < params.threshold) {
    return Abort("fewer than t unmasking responses");
  }
  SessionResult result;
  {
    Stopwatch sw;
    try {
      result.sum = server.Finish();
    } catch (const ProtocolError& e) {
      server_seconds_ += sw.Seconds();
      return Abort(e.what());
    }
    server_seconds_ += sw.Seconds();
  }
  bus_.ledger().AddCompute(bus_.round(), server_, server_seconds_);
  result.completed = true;
  result.included.assign(server.masked().begin(), server.masked().end());
  return result;
}

}  // namespace

SessionResult RunSession(netsim::Bus& bus, netsim::PartyId server,
                         const std::vector<SessionParticipant>& participants,
                         const SessionOptions& options) {
  return Driver(bus, server, participants, options).Run();
}

}  // namespace fedrec::secagg
