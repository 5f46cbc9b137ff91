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

#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "common/byte_io.h"
#include "common/error.h"
#include "common/random.h"
#include "netsim/bus.h"
#include "netsim/fault_plan.h"
#include "netsim/ledger.h"
#include "netsim/message.h"

namespace fedrec::netsim {
namespace {

TEST(FrameTest, EmptyPayloadCostsOnlyTheHeader) {
  Bus bus;
  const PartyId a = bus.AddParty("a"), b = bus.AddParty("b");
  bus.BeginRound(1);
  const auto r = bus.Send(a, b, MessageTag::kPlainInput, {});
  EXPECT_TRUE(r.delivered);
  EXPECT_EQ(r.bytes, 16u);
  EXPECT_EQ(bus.ledger().Bytes(1, a, Direction::kUp), 16u);
  EXPECT_EQ(bus.ledger().Bytes(1, b, Direction::kDown), 16u);
}

TEST(FrameTest, DoubleArrayPayloadSize) {
  std::vector<double> v(400, 0.25);
  std::vector<uint8_t> raw(v.size() * 8);
  for (size_t i = 0; i < v.size(); ++i) {
    uint64_t bits;
    std::memcpy(&bits, &v[i], 8);
    StoreU64(raw.data() + 8 * i, bits);
  }
  Bus bus;
  const PartyId a = bus.AddParty("a"), b = bus.AddParty("b");
  bus.BeginRound(1);
  EXPECT_EQ(bus.Send(a, b, MessageTag::kUserModel, raw).bytes, 3216u);
  ByteWriter w;
  w.F64Array(v);
  EXPECT_EQ(bus.Send(a, b, MessageTag::kUserModel, w.Take()).bytes, 3224u);
}

TEST(FrameTest, RoundTripAndMalformed) {
  const std::vector<uint8_t> payload = {9, 8, 7};
  const auto frame = EncodeFrame(3, 5, MessageTag::kShareRequest, payload);
  ASSERT_EQ(frame.size(), kHeaderBytes + 3);
  EXPECT_EQ(LoadU32(frame.data()), 6u);
  const auto d = DecodeFrame(frame);
  EXPECT_EQ(d.from, 3u);
  EXPECT_EQ(d.to, 5u);
  EXPECT_EQ(d.tag, MessageTag::kShareRequest);
  EXPECT_EQ(d.payload, payload);
  auto short_frame = frame;
  short_frame.pop_back();
  EXPECT_THROW(DecodeFrame(short_frame), ProtocolError);
  EXPECT_THROW(DecodeFrame(std::vector<uint8_t>(10)), ProtocolError);
}

TEST(BusTest, FifoDeliveryPerInbox) {
  Bus bus;
  const PartyId a = bus.AddParty("a"), b = bus.AddParty("b"), c = bus.AddParty("c");
  bus.BeginRound(1);
  bus.Send(a, c, MessageTag::kPlainInput, {1});
  bus.Send(b, c, MessageTag::kPlainInput, {2});
  bus.Send(a, c, MessageTag::kUserModel, {3});
  ASSERT_TRUE(bus.HasPending(c));
  EXPECT_EQ(bus.Receive(c)->payload, std::vector<uint8_t>{1});
  const auto second = bus.Receive(c);
  EXPECT_EQ(second->from, b);
  EXPECT_EQ(bus.Receive(c)->tag, MessageTag::kUserModel);
  EXPECT_FALSE(bus.Receive(c).has_value());
  EXPECT_FALSE(bus.Receive(a).has_value());
  EXPECT_THROW(bus.Send(a, 7, MessageTag::kPlainInput, {}), InputError);
}

TEST(BusTest, DroppedPartiesNeitherSendNorReceive) {
  Bus bus;
  const PartyId a = bus.AddParty("a"), b = bus.AddParty("b");
  bus.BeginRound(2);
  bus.SetPhase("p");
  bus.Send(a, b, MessageTag::kPlainInput, {1, 2});
  bus.Drop(b);
  EXPECT_FALSE(bus.HasPending(b));
  const auto r = bus.Send(a, b, MessageTag::kPlainInput, {1, 2, 3});
  EXPECT_FALSE(r.delivered);
  EXPECT_FALSE(bus.Send(b, a, MessageTag::kPlainInput, {}).delivered);
  EXPECT_EQ(bus.ledger().Bytes(2, a, Direction::kUp), 18u);
  ASSERT_EQ(bus.ledger().drops().size(), 2u);
  const auto& rec = bus.ledger().drops()[0];
  EXPECT_EQ(rec.round, 2u);
  EXPECT_EQ(rec.from, a);
  EXPECT_EQ(rec.to, b);
  EXPECT_EQ(rec.phase, "p");
  EXPECT_EQ(rec.bytes, 19u);
  bus.BeginRound(3);
  EXPECT_FALSE(bus.IsDropped(b));
  EXPECT_TRUE(bus.Send(a, b, MessageTag::kPlainInput, {}).delivered);
}

TEST(BusTest, BeginRoundClearsInboxes) {
  Bus bus;
  const PartyId a = bus.AddParty("a"), b = bus.AddParty("b");
  bus.BeginRound(1);
  bus.Send(a, b, MessageTag::kPlainInput, {1});
  bus.BeginRound(2);
  EXPECT_FALSE(bus.HasPending(b));
}

// Every delivered byte is counted once up at the sender and once down at
// the receiver, per round and per phase.
TEST(LedgerTest, UpEqualsDownUnderRandomTraffic) {
  Rng rng(1);
  Bus bus;
  for (int i = 0; i < 6; ++i) bus.AddParty("p" + std::to_string(i));
  uint64_t delivered = 0;
  for (uint64_t round = 1; round <= 4; ++round) {
    bus.BeginRound(round);
    for (int m = 0; m < 200; ++m) {
      bus.SetPhase(UniformIndex(rng, 2) ? "x" : "y");
      if (UniformIndex(rng, 50) == 0) bus.Drop(static_cast<PartyId>(UniformIndex(rng, 6)));
      const auto from = static_cast<PartyId>(UniformIndex(rng, 6));
      const auto to = static_cast<PartyId>(UniformIndex(rng, 6));
      const auto r = bus.Send(from, to, MessageTag::kPlainInput,
                              std::vector<uint8_t>(UniformIndex(rng, 100)));
      if (r.delivered) delivered += r.bytes;
    }
    const auto& l = bus.ledger();
    EXPECT_EQ(l.RoundTotal(round, Direction::kUp), l.RoundTotal(round, Direction::kDown));
    uint64_t by_party = 0;
    for (PartyId p = 0; p < 6; ++p) {
      const uint64_t up = l.Bytes(round, p, Direction::kUp);
      EXPECT_EQ(up, l.PhaseBytes(round, p, Direction::kUp, "x") +
                        l.PhaseBytes(round, p, Direction::kUp, "y"));
      by_party += up;
    }
    EXPECT_EQ(by_party, l.RoundTotal(round, Direction::kUp));
  }
  EXPECT_EQ(bus.ledger().Total(Direction::kUp), delivered);
}

TEST(LedgerTest, IdenticalTrafficGivesIdenticalCsv) {
  auto run = [] {
    Rng rng(2);
    Bus bus;
    for (int i = 0; i < 3; ++i) bus.AddParty("p" + std::to_string(i));
    bus.BeginRound(1);
    for (int m = 0; m < 50; ++m) {
      bus.Send(static_cast<PartyId>(UniformIndex(rng, 3)),
               static_cast<PartyId>(UniformIndex(rng, 3)), MessageTag::kPlainInput,
               std::vector<uint8_t>(UniformIndex(rng, 30)));
    }
    std::ostringstream out;
    bus.ledger().WriteCsv(out, bus.party_names());
    return out.str();
  };
  EXPECT_EQ(run(), run());
}

TEST(LedgerTest, CsvLayout) {
  CostLedger l;
  l.Record(2, 1, Direction::kDown, "b", 5);
  l.Record(1, 0, Direction::kUp, "a", 7);
  l.Record(1, 0, Direction::kUp, "a", 3);
  std::ostringstream out;
  l.WriteCsv(out, {"server", "c0"});
  EXPECT_EQ(out.str(),
            "round,party,direction,phase,bytes\n"
            "1,server,up,a,10\n"
            "2,c0,down,b,5\n");
  l.AddCompute(1, 1, 0.5);
  l.AddCompute(1, 1, 0.25);
  EXPECT_DOUBLE_EQ(l.Compute(1, 1), 0.75);
  EXPECT_DOUBLE_EQ(l.Compute(1, 0), 0.0);
}

TEST(FaultPlanTest, LookupAndNames) {
  FaultPlan plan;
  EXPECT_TRUE(plan.empty());
  plan.Add(3, 7, DropPhase::kDistribute);
  EXPECT_EQ(plan.Lookup(3, 7), DropPhase::kDistribute);
  EXPECT_FALSE(plan.Lookup(3, 8).has_value());
  EXPECT_FALSE(plan.Lookup(4, 7).has_value());
  for (auto p : {DropPhase::kUnionAdvertise, DropPhase::kUnionShareKeys,
                 DropPhase::kUnionMaskedInput, DropPhase::kUnionUnmask,
                 DropPhase::kDistribute, DropPhase::kGradAdvertise,
                 DropPhase::kGradShareKeys, DropPhase::kGradMaskedInput,
                 DropPhase::kGradUnmask}) {
    EXPECT_EQ(ParseDropPhase(DropPhaseName(p)), p);
  }
  EXPECT_FALSE(ParseDropPhase("lunch").has_value());
}

}  // namespace
}  // namespace fedrec::netsim
