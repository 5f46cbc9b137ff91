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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "gtest/gtest.h"
#include "common/error.h"
#include "common/random.h"
#include "netsim/bus.h"
#include "secagg/crypto.h"
#include "secagg/fixed_point.h"
#include "secagg/gf128.h"
#include "secagg/prg.h"
#include "secagg/protocol.h"
#include "secagg/session.h"
#include "secagg/shamir.h"
#include "secagg/union_set.h"

namespace fedrec::secagg {
namespace {

SecureRandom TestRandom(uint64_t seed) {
  const uint64_t tags[] = {0x7e57, seed};
  return SecureRandom::FromTags(tags);
}

std::vector<uint64_t> RandomWords(size_t n, SecureRandom& rng) {
  std::vector<uint64_t> v(n);
  for (auto& x : v) x = rng();
  return v;
}

// ---------------------------------------------------------------------------
// Fixed point.

TEST(FixedPointTest, Examples) {
  EXPECT_EQ(QuantizeOne(0.0, 16), 0u);
  EXPECT_EQ(DequantizeOne(0, 16), 0.0);
  EXPECT_EQ(QuantizeOne(1.5, 16), 98304u);
  EXPECT_EQ(QuantizeOne(-1.0, 16), 0u - uint64_t{65536});
  EXPECT_EQ(QuantizeOne(-1.0, 16), 18446744073709486080u);
  EXPECT_EQ(DequantizeOne(18446744073709486080u, 16), -1.0);
}

TEST(FixedPointTest, RoundTripErrorBound) {
  Rng rng(1);
  for (uint32_t f : {8u, 16u, 24u, 40u}) {
    std::vector<double> x(1000);
    const double limit = std::ldexp(1.0, 61 - static_cast<int>(f));
    for (double& v : x) v = UniformReal(rng, -limit, limit) * UniformUnit(rng);
    const auto back = Dequantize(Quantize(x, f), f);
    for (size_t i = 0; i < x.size(); ++i) {
      EXPECT_LE(std::fabs(back[i] - x[i]), std::ldexp(1.0, -static_cast<int>(f) - 1));
    }
  }
}

TEST(FixedPointTest, SumsOfEncodingsDecodeToSums) {
  Rng rng(2);
  std::vector<uint64_t> acc(50, 0);
  std::vector<double> plain(50, 0.0);
  for (int client = 0; client < 50; ++client) {
    std::vector<double> x(50);
    for (double& v : x) v = UniformReal(rng, -100, 100);
    AddModular(acc, Quantize(x, 24));
    for (size_t i = 0; i < x.size(); ++i) plain[i] += x[i];
  }
  const auto sum = Dequantize(acc, 24);
  for (size_t i = 0; i < sum.size(); ++i) {
    EXPECT_LE(std::fabs(sum[i] - plain[i]), 50 * std::ldexp(1.0, -25));
  }
}

TEST(FixedPointTest, OverflowIsProtocolError) {
  const std::vector<double> big = {std::ldexp(1.0, 62 - 24)};
  EXPECT_THROW(Quantize(big, 24), ProtocolError);
  const std::vector<double> nan = {std::nan("")};
  EXPECT_THROW(Quantize(nan, 24), ProtocolError);
}

// ---------------------------------------------------------------------------
// GF(2^128).

// Schoolbook carry-less multiply followed by bitwise reduction.
Gf128 SchoolbookMul(Gf128 a, Gf128 b) {
  Gf128 lo = 0, hi = 0;
  for (int i = 0; i < 128; ++i) {
    if ((b >> i) & 1) {
      lo ^= a << i;
      if (i > 0) hi ^= a >> (128 - i);
    }
  }
  // x^128 = x^7 + x^2 + x + 1.
  for (int i = 127; i >= 0; --i) {
    if ((hi >> i) & 1) {
      hi ^= Gf128{1} << i;
      const int e = 128 + i;
      for (int t : {7, 2, 1, 0}) {
        const int p = e - 128 + t;
        if (p >= 128) {
          hi ^= Gf128{1} << (p - 128);
        } else {
          lo ^= Gf128{1} << p;
        }
      }
    }
  }
  return lo;
}

Gf128 RandomElement(SecureRandom& rng) {
  return (static_cast<Gf128>(rng()) << 64) | rng();
}

TEST(Gf128Test, MultiplyMatchesSchoolbook) {
  auto rng = TestRandom(3);
  for (int i = 0; i < 300; ++i) {
    const Gf128 a = RandomElement(rng), b = RandomElement(rng);
    ASSERT_EQ(GfMul(a, b), SchoolbookMul(a, b));
  }
  const Gf128 x127 = Gf128{1} << 127;
  EXPECT_EQ(GfMul(x127, 2), Gf128{0x87});
  EXPECT_EQ(GfMul(1, 12345), Gf128{12345});
}

TEST(Gf128Test, InverseAndBytes) {
  auto rng = TestRandom(4);
  for (int i = 0; i < 50; ++i) {
    Gf128 a = RandomElement(rng);
    if (a == 0) a = 1;
    EXPECT_EQ(GfMul(a, GfInv(a)), Gf128{1});
    std::array<uint8_t, 16> bytes;
    GfStore(a, bytes);
    EXPECT_EQ(GfLoad(bytes), a);
  }
  std::array<uint8_t, 16> one{};
  one[0] = 1;
  EXPECT_EQ(GfLoad(one), Gf128{1});
}

// ---------------------------------------------------------------------------
// Shamir.

TEST(ShamirTest, ThresholdOneSharesAreTheSecret) {
  auto rng = TestRandom(5);
  const std::vector<uint8_t> secret = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16};
  for (const auto& s : MakeShares(secret, 1, 5, rng)) EXPECT_EQ(s.y, secret);
}

TEST(ShamirTest, AnyTwoOfThree) {
  auto rng = TestRandom(6);
  const auto secret = [&] {
    std::vector<uint8_t> s(16);
    rng.Fill(s);
    return s;
  }();
  const auto shares = MakeShares(secret, 2, 3, rng);
  for (size_t i = 0; i < 3; ++i) {
    for (size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      const std::vector<ShamirShare> pair = {shares[i], shares[j]};
      EXPECT_EQ(Reconstruct(pair, 2, 16), secret);
    }
  }
  const std::vector<ShamirShare> one = {shares[0]};
  EXPECT_THROW(Reconstruct(one, 2, 16), ProtocolError);
  const std::vector<ShamirShare> dup = {shares[0], shares[0]};
  EXPECT_THROW(Reconstruct(dup, 2, 16), ProtocolError);
}

TEST(ShamirTest, RandomSubsetsOfFiftyReconstruct) {
  auto rng = TestRandom(7);
  std::vector<uint8_t> secret(16);
  rng.Fill(secret);
  const auto shares = MakeShares(secret, 25, 50, rng);
  Rng pick(8);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ShamirShare> s = shares;
    for (size_t i = 0; i < 25; ++i) std::swap(s[i], s[i + UniformIndex(pick, 50 - i)]);
    s.resize(25);
    ASSERT_EQ(Reconstruct(s, 25, 16), secret);
  }
}

TEST(ShamirTest, MultiBlockSecrets) {
  auto rng = TestRandom(9);
  std::vector<uint8_t> secret(64);  // an ed25519-sized key
  rng.Fill(secret);
  auto shares = MakeShares(secret, 3, 6, rng);
  EXPECT_EQ(shares[0].y.size(), 64u);
  std::vector<ShamirShare> some = {shares[5], shares[1], shares[3]};
  EXPECT_EQ(Reconstruct(some, 3, 64), secret);
  std::vector<uint8_t> odd(20);
  rng.Fill(odd);
  shares = MakeShares(odd, 2, 3, rng);
  std::vector<ShamirShare> two = {shares[2], shares[0]};
  EXPECT_EQ(Reconstruct(two, 2, 20), odd);
}

double ChiSquareStatistic(const std::vector<uint64_t>& counts) {
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  const double expected = total / counts.size();
  double stat = 0;
  for (uint64_t c : counts) stat += (c - expected) * (c - expected) / expected;
  return stat;
}

TEST(ShamirTest, SingleShareBytesLookUniform) {
  // A fixed secret with t = 2: each single share is a uniform field element.
  auto rng = TestRandom(10);
  const std::vector<uint8_t> secret(16, 0xAB);
  std::vector<uint64_t> counts(256, 0);
  for (int draw = 0; draw < 10000; ++draw) {
    const auto shares = MakeShares(secret, 2, 3, rng);
    for (uint8_t b : shares[1].y) ++counts[b];
  }
  const boost::math::chi_squared dist(255);
  EXPECT_LT(ChiSquareStatistic(counts), boost::math::quantile(dist, 0.99));
}

// ---------------------------------------------------------------------------
// PRG.

TEST(PrgTest, BothKindsAreDeterministicAndCancel) {
  for (PrgKind kind : {PrgKind::kMersenneTwister, PrgKind::kChaCha20}) {
    Bytes16 seed{};
    seed[0] = 7;
    std::vector<uint64_t> a(1500), b(1500);
    ExpandSeed(kind, seed, a);
    ExpandSeed(kind, seed, b);
    EXPECT_EQ(a, b);
    seed[15] = 1;
    ExpandSeed(kind, seed, b);
    EXPECT_NE(a, b);
    std::vector<uint64_t> acc = a;
    ApplyMask(kind, seed, acc, false);
    ApplyMask(kind, seed, acc, true);
    EXPECT_EQ(acc, a);
    // Prefix property: a shorter expansion is a prefix of a longer one.
    std::vector<uint64_t> shorter(700);
    ExpandSeed(kind, seed, shorter);
    EXPECT_TRUE(std::equal(shorter.begin(), shorter.end(), b.begin()));
  }
  EXPECT_EQ(ParsePrgKind("mt19937"), PrgKind::kMersenneTwister);
  EXPECT_EQ(ParsePrgKind("chacha20"), PrgKind::kChaCha20);
  EXPECT_THROW(ParsePrgKind("rc4"), ConfigError);
}

TEST(PrgTest, OutputBitsAreBalanced) {
  for (PrgKind kind : {PrgKind::kMersenneTwister, PrgKind::kChaCha20}) {
    Bytes16 seed{};
    seed[3] = 0x55;
    std::vector<uint64_t> out(20000);
    ExpandSeed(kind, seed, out);
    uint64_t ones = 0;
    for (uint64_t w : out) ones += static_cast<uint64_t>(__builtin_popcountll(w));
    const double n = 64.0 * out.size();
    EXPECT_NEAR(ones / n, 0.5, 4 * 0.5 / std::sqrt(n));
  }
}

// ---------------------------------------------------------------------------
// Crypto primitives.

TEST(CryptoTest, SignaturesBindKeysAndMessages) {
  auto rng = TestRandom(11);
  const auto keys = SigningKeyPair::Generate(rng);
  const std::vector<uint8_t> msg = {1, 2, 3};
  const auto sig = Sign(keys, msg);
  EXPECT_TRUE(Verify(keys.public_key, msg, sig));
  auto bad = sig;
  bad[5] ^= 1;
  EXPECT_FALSE(Verify(keys.public_key, msg, bad));
  const std::vector<uint8_t> other = {1, 2, 4};
  EXPECT_FALSE(Verify(keys.public_key, other, sig));
}

TEST(CryptoTest, AgreementIsSymmetric) {
  auto rng = TestRandom(12);
  const auto a = AgreementKeyPair::Generate(rng);
  const auto b = AgreementKeyPair::Generate(rng);
  EXPECT_EQ(AgreementPublicKey(a.secret_key), a.public_key);
  const auto ab = Agree(a.secret_key, b.public_key);
  const auto ba = Agree(b.secret_key, a.public_key);
  ASSERT_TRUE(ab && ba);
  EXPECT_EQ(*ab, *ba);
  EXPECT_EQ(PairwiseSeed(*ab), Md5(*ab));
  EXPECT_FALSE(Agree(a.secret_key, Bytes32{}).has_value());
}

TEST(CryptoTest, Md5KnownAnswer) {
  const std::string abc = "abc";
  const auto d = Md5(std::span(reinterpret_cast<const uint8_t*>(abc.data()), abc.size()));
  const Bytes16 want = {0x90, 0x01, 0x50, 0x98, 0x3c, 0xd2, 0x4f, 0xb0,
                        0xd6, 0x96, 0x3f, 0x7d, 0x28, 0xe1, 0x7f, 0x72};
  EXPECT_EQ(d, want);
}

TEST(CryptoTest, AeadDetectsTampering) {
  Bytes32 key{};
  key[0] = 9;
  const std::array<uint8_t, 12> nonce{};
  const std::vector<uint8_t> ad = {4, 2}, pt = {10, 20, 30};
  auto ct = AeadSeal(key, nonce, ad, pt);
  EXPECT_EQ(ct.size(), pt.size() + kAeadOverhead);
  EXPECT_EQ(*AeadOpen(key, nonce, ad, ct), pt);
  ct[0] ^= 1;
  EXPECT_FALSE(AeadOpen(key, nonce, ad, ct).has_value());
}

// ---------------------------------------------------------------------------
// Union set.

TEST(UnionSetTest, SingleClientExample) {
  auto rng = TestRandom(13);
  const std::vector<ItemIndex> items = {2};
  const auto h = EncodeUnion(items, 4, rng);
  EXPECT_EQ(h[0], 0u);
  EXPECT_NE(h[2], 0u);
  EXPECT_EQ(h[1] | h[3], 0u);
  EXPECT_EQ(DecodeUnion(h), items);
}

TEST(UnionSetTest, DisjointAndOverlappingUnions) {
  auto rng = TestRandom(14);
  const std::vector<ItemIndex> a = {0, 5}, b = {3};
  auto sum = EncodeUnion(a, 8, rng);
  AddModular(sum, EncodeUnion(b, 8, rng));
  EXPECT_EQ(DecodeUnion(sum), (std::vector<ItemIndex>{0, 3, 5}));

  Rng pick(15);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<uint64_t> acc(300, 0);
    std::set<ItemIndex> truth;
    for (int c = 0; c < 20; ++c) {
      std::set<ItemIndex> local;
      for (int k = 0; k < 15; ++k) local.insert(static_cast<ItemIndex>(UniformIndex(pick, 300)));
      truth.insert(local.begin(), local.end());
      const std::vector<ItemIndex> v(local.begin(), local.end());
      const auto h = EncodeUnion(v, 300, rng);
      EXPECT_EQ(DecodeUnion(h), v);
      AddModular(acc, h);
    }
    EXPECT_EQ(DecodeUnion(acc), std::vector<ItemIndex>(truth.begin(), truth.end()));
  }
}

TEST(UnionSetTest, RejectsOutOfRangeItems) {
  auto rng = TestRandom(16);
  const std::vector<ItemIndex> items = {4};
  EXPECT_THROW(EncodeUnion(items, 4, rng), InputError);
}

// ---------------------------------------------------------------------------
// Wire codecs.

TEST(CodecTest, RoundTrips) {
  KeyAdvert a;
  a.owner = 3;
  a.sign_pk[0] = 1;
  a.s_pk[1] = 2;
  a.c_pk[2] = 3;
  a.signature[63] = 4;
  const auto back = DecodeKeyAdvert(EncodeKeyAdvert(a));
  EXPECT_EQ(back.owner, 3u);
  EXPECT_EQ(back.sign_pk, a.sign_pk);
  EXPECT_EQ(back.signature, a.signature);
  EXPECT_EQ(DecodeAdvertList(EncodeAdvertList({a, a})).size(), 2u);

  const std::vector<uint64_t> v = {1, 2, 0xFFFFFFFFFFFFFFFF};
  const auto [owner, masked] = DecodeMaskedInput(EncodeMaskedInput(9, v));
  EXPECT_EQ(owner, 9u);
  EXPECT_EQ(masked, v);

  const std::vector<ShareRequestEntry> req = {{1, ShareKind::kSelfMask},
                                              {4, ShareKind::kSecretKey}};
  const auto req_back = DecodeShareRequest(EncodeShareRequest(req));
  ASSERT_EQ(req_back.size(), 2u);
  EXPECT_EQ(req_back[1].target, 4u);
  EXPECT_EQ(req_back[1].kind, ShareKind::kSecretKey);

  auto truncated = EncodeKeyAdvert(a);
  truncated.pop_back();
  EXPECT_THROW(DecodeKeyAdvert(truncated), ProtocolError);
}

TEST(CodecTest, AdvertSignatureCoversKeys) {
  auto rng = TestRandom(17);
  SessionParams p{3, 2, 4, PrgKind::kMersenneTwister, 77};
  SecAggClient c(0, p, std::vector<uint64_t>(4, 0), TestRandom(18));
  const auto advert = DecodeKeyAdvert(c.Advertise());
  EXPECT_TRUE(VerifyAdvert(77, advert));
  EXPECT_FALSE(VerifyAdvert(78, advert));  // bound to the session
  auto tampered = advert;
  tampered.s_pk[0] ^= 1;
  EXPECT_FALSE(VerifyAdvert(77, tampered));
  tampered = advert;
  tampered.c_pk[31] ^= 0x80;
  EXPECT_FALSE(VerifyAdvert(77, tampered));
  tampered = advert;
  tampered.owner = 1;
  EXPECT_FALSE(VerifyAdvert(77, tampered));
}

// ---------------------------------------------------------------------------
// Protocol driven by hand.

struct Manual {
  SessionParams params;
  std::vector<SecAggClient> clients;
  SecAggServer server;
  std::map<uint32_t, std::vector<uint8_t>> masked;

  Manual(uint32_t n, uint32_t t, const std::vector<std::vector<uint64_t>>& inputs)
      : params{n, t, static_cast<uint32_t>(inputs[0].size()),
               PrgKind::kMersenneTwister, 5},
        server(params) {
    for (uint32_t i = 0; i < n; ++i) {
      clients.emplace_back(i, params, inputs[i], TestRandom(100 + i));
    }
  }

  // Runs the first three steps for every client.
  void MaskAll() {
    for (auto& c : clients) EXPECT_TRUE(server.OnAdvert(c.Advertise()));
    const auto list = server.AdvertList();
    for (auto& c : clients) EXPECT_TRUE(server.OnShareBatch(c.index(), c.ShareKeys(list)));
    const auto bundles = server.Bundles();
    for (auto& c : clients) {
      masked[c.index()] = c.MaskInput(bundles.at(c.index()));
      EXPECT_TRUE(server.OnMaskedInput(c.index(), masked[c.index()]));
    }
  }
};

TEST(ProtocolTest, ThreeClientsSumExactly) {
  auto rng = TestRandom(19);
  std::vector<std::vector<uint64_t>> inputs = {RandomWords(64, rng), RandomWords(64, rng),
                                               RandomWords(64, rng)};
  Manual m(3, 2, inputs);
  m.MaskAll();
  const auto request = EncodeShareRequest(m.server.ShareRequestEntries());
  for (auto& c : m.clients) EXPECT_TRUE(m.server.OnShareResponse(c.index(), c.Unmask(request)));
  const auto sum = m.server.Finish();
  for (size_t i = 0; i < 64; ++i) {
    EXPECT_EQ(sum[i], inputs[0][i] + inputs[1][i] + inputs[2][i]);
  }
  // Masked inputs hide the inputs.
  EXPECT_NE(m.clients[0].masked_input(), inputs[0]);
}

TEST(ProtocolTest, RequestingBothSharesOfOneClientAborts) {
  auto rng = TestRandom(20);
  std::vector<std::vector<uint64_t>> inputs(3, RandomWords(8, rng));
  Manual m(3, 2, inputs);
  m.MaskAll();
  const std::vector<ShareRequestEntry> evil = {{0, ShareKind::kSelfMask},
                                               {1, ShareKind::kSelfMask},
                                               {1, ShareKind::kSecretKey},
                                               {2, ShareKind::kSelfMask}};
  EXPECT_THROW(m.clients[0].Unmask(EncodeShareRequest(evil)), ProtocolError);
  // Repeated requests are refused too.
  const auto honest = EncodeShareRequest(m.server.ShareRequestEntries());
  EXPECT_NO_THROW(m.clients[1].Unmask(honest));
  EXPECT_THROW(m.clients[1].Unmask(honest), ProtocolError);
  // Asking a live client for its own secret key is refused.
  const std::vector<ShareRequestEntry> own = {{2, ShareKind::kSecretKey},
                                              {0, ShareKind::kSelfMask},
                                              {1, ShareKind::kSelfMask}};
  EXPECT_THROW(m.clients[2].Unmask(EncodeShareRequest(own)), ProtocolError);
}

TEST(ProtocolTest, ServerNeverRequestsBothKinds) {
  auto rng = TestRandom(21);
  std::vector<std::vector<uint64_t>> inputs(5, RandomWords(4, rng));
  Manual m(5, 3, inputs);
  for (auto& c : m.clients) m.server.OnAdvert(c.Advertise());
  const auto list = m.server.AdvertList();
  for (auto& c : m.clients) m.server.OnShareBatch(c.index(), c.ShareKeys(list));
  const auto bundles = m.server.Bundles();
  for (auto& c : m.clients) {
    const auto payload = c.MaskInput(bundles.at(c.index()));
    if (c.index() != 1) m.server.OnMaskedInput(c.index(), payload);  // 1 drops
  }
  std::map<uint32_t, int> seen;
  for (const auto& e : m.server.ShareRequestEntries()) {
    ++seen[e.target];
    EXPECT_EQ(e.kind, e.target == 1 ? ShareKind::kSecretKey : ShareKind::kSelfMask);
  }
  for (const auto& [target, n] : seen) EXPECT_EQ(n, 1) << target;
  EXPECT_EQ(seen.size(), 5u);
}

TEST(ProtocolTest, ForgedAdvertIsRejectedByServerAndClients) {
  auto rng = TestRandom(22);
  std::vector<std::vector<uint64_t>> inputs(3, RandomWords(4, rng));
  Manual m(3, 2, inputs);
  auto advert = DecodeKeyAdvert(m.clients[0].Advertise());
  advert.s_pk[3] ^= 1;
  EXPECT_FALSE(m.server.OnAdvert(EncodeKeyAdvert(advert)));
  const auto second = m.clients[1].Advertise();
  EXPECT_TRUE(m.server.OnAdvert(second));
  EXPECT_FALSE(m.server.OnAdvert(second));  // duplicate
  // A list carrying the forged advert is refused by a client.
  const auto honest_one = DecodeAdvertList(m.server.AdvertList());
  auto forged_list = honest_one;
  forged_list.push_back(advert);
  m.clients[2].Advertise();
  EXPECT_THROW(m.clients[2].ShareKeys(EncodeAdvertList(forged_list)), ProtocolError);
}

// Server-view re-randomization for two clients: after removing the revealed
// self masks, the server holds z1 = x1 + m and z2 = x2 - m. For any x' with
// the same sum, the pairwise mask m' = z1 - x1' explains the same transcript.
TEST(ProtocolTest, TwoClientTranscriptIsExplainedByAnyEqualSumInputs) {
  for (PrgKind prg : {PrgKind::kMersenneTwister, PrgKind::kChaCha20}) {
    auto rng = TestRandom(23);
    const size_t n = 32;
    std::vector<std::vector<uint64_t>> inputs = {RandomWords(n, rng), RandomWords(n, rng)};
    Manual m(2, 2, inputs);
    m.params.prg = prg;
    m.clients.clear();
    m.server = SecAggServer(m.params);
    for (uint32_t i = 0; i < 2; ++i) {
      m.clients.emplace_back(i, m.params, inputs[i], TestRandom(200 + i));
    }
    m.MaskAll();
    const auto request = EncodeShareRequest(m.server.ShareRequestEntries());
    std::map<uint32_t, std::vector<ShamirShare>> b_shares;
    for (auto& c : m.clients) {
      const auto resp = c.Unmask(request);
      for (const auto& e : DecodeShareResponse(resp).second) {
        ASSERT_EQ(e.kind, ShareKind::kSelfMask);
        b_shares[e.target].push_back(e.share);
      }
      m.server.OnShareResponse(c.index(), resp);
    }
    std::vector<std::vector<uint64_t>> z;
    for (uint32_t u = 0; u < 2; ++u) {
      const auto b = Reconstruct(b_shares[u], 2, 16);
      Bytes16 seed;
      std::copy(b.begin(), b.end(), seed.begin());
      auto y = DecodeMaskedInput(m.masked[u]).second;
      ApplyMask(prg, seed, y, /*subtract=*/true);
      z.push_back(y);
    }
    const auto sum = m.server.Finish();
    Rng pick(24);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<uint64_t> x1p(n), x2p(n), mp(n);
      for (size_t i = 0; i < n; ++i) {
        x1p[i] = pick();
        x2p[i] = inputs[0][i] + inputs[1][i] - x1p[i];
        mp[i] = z[0][i] - x1p[i];
        EXPECT_EQ(x1p[i] + mp[i], z[0][i]);
        EXPECT_EQ(x2p[i] - mp[i], z[1][i]);
        EXPECT_EQ(x1p[i] + x2p[i], sum[i]);
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Sessions over the bus.

struct SessionFixture {
  netsim::Bus bus;
  netsim::PartyId server;
  std::vector<SessionParticipant> participants;
  std::vector<std::vector<uint64_t>> inputs;

  SessionFixture(size_t n, size_t length, uint64_t seed) {
    server = bus.AddParty("server");
    auto rng = TestRandom(seed);
    for (size_t i = 0; i < n; ++i) {
      inputs.push_back(RandomWords(length, rng));
      participants.push_back({bus.AddParty("c" + std::to_string(i)), inputs.back(),
                              DropPoint::kNone});
    }
    bus.BeginRound(1);
  }

  std::vector<uint64_t> SumOf(const std::vector<uint32_t>& who) const {
    std::vector<uint64_t> s(inputs[0].size(), 0);
    for (uint32_t i : who) AddModular(s, inputs[i]);
    return s;
  }

  SessionResult Run(uint32_t t, PrgKind prg = PrgKind::kMersenneTwister,
                    TamperHook tamper = {}) {
    SessionOptions o;
    o.threshold = t;
    o.prg = prg;
    o.session_id = 11;
    o.seed = 12;
    o.tamper = std::move(tamper);
    return RunSession(bus, server, participants, o);
  }
};

TEST(SessionTest, NoDropoutsSumEverything) {
  for (PrgKind prg : {PrgKind::kMersenneTwister, PrgKind::kChaCha20}) {
    SessionFixture f(6, 100, 30);
    const auto r = f.Run(3, prg);
    ASSERT_TRUE(r.completed) << r.abort_reason;
    EXPECT_EQ(r.included, (std::vector<uint32_t>{0, 1, 2, 3, 4, 5}));
    EXPECT_EQ(r.sum, f.SumOf(r.included));
  }
}

TEST(SessionTest, SingleParticipant) {
  SessionFixture f(1, 10, 31);
  const auto r = f.Run(1);
  ASSERT_TRUE(r.completed) << r.abort_reason;
  EXPECT_EQ(r.sum, f.inputs[0]);
}

TEST(SessionTest, DropsAtEveryPoint) {
  SessionFixture f(8, 50, 32);
  f.participants[1].drop = DropPoint::kAdvertise;
  f.participants[2].drop = DropPoint::kShareKeys;
  f.participants[3].drop = DropPoint::kMaskedInput;
  f.participants[4].drop = DropPoint::kUnmask;
  const auto r = f.Run(4);
  ASSERT_TRUE(r.completed) << r.abort_reason;
  // A drop at unmask happens after the masked input arrived.
  EXPECT_EQ(r.included, (std::vector<uint32_t>{0, 4, 5, 6, 7}));
  EXPECT_EQ(r.sum, f.SumOf(r.included));
}

TEST(SessionTest, ExactlyThresholdSurvivorsAndOneFewer) {
  for (uint32_t drops : {5u, 6u}) {
    SessionFixture f(10, 40, 33);
    for (uint32_t i = 0; i < drops; ++i) f.participants[i].drop = DropPoint::kMaskedInput;
    const auto r = f.Run(5);
    if (drops == 5) {
      ASSERT_TRUE(r.completed) << r.abort_reason;
      EXPECT_EQ(r.included, (std::vector<uint32_t>{5, 6, 7, 8, 9}));
      EXPECT_EQ(r.sum, f.SumOf(r.included));
    } else {
      EXPECT_FALSE(r.completed);
      EXPECT_TRUE(r.sum.empty());
      EXPECT_FALSE(r.abort_reason.empty());
    }
  }
}

TEST(SessionTest, TooFewUnmaskRespondersAbort) {
  SessionFixture f(6, 10, 34);
  for (uint32_t i = 0; i < 4; ++i) f.participants[i].drop = DropPoint::kUnmask;
  const auto r = f.Run(3);
  EXPECT_FALSE(r.completed);
  EXPECT_TRUE(r.sum.empty());
}

TEST(SessionTest, CorruptedSignatureExcludesThatPeer) {
  SessionFixture f(6, 20, 35);
  const netsim::PartyId victim = f.participants[2].party;
  const auto r = f.Run(3, PrgKind::kMersenneTwister,
                       [&](netsim::MessageTag tag, netsim::PartyId from,
                           std::vector<uint8_t>& payload) {
                         if (tag == netsim::MessageTag::kKeyAdvert && from == victim) {
                           payload.back() ^= 0x01;  // last signature byte
                         }
                       });
  ASSERT_TRUE(r.completed) << r.abort_reason;
  EXPECT_EQ(r.included, (std::vector<uint32_t>{0, 1, 3, 4, 5}));
  EXPECT_EQ(r.sum, f.SumOf(r.included));
}

TEST(SessionTest, TamperedKeyWithHonestSignatureIsExcluded) {
  SessionFixture f(5, 20, 36);
  const netsim::PartyId victim = f.participants[0].party;
  const auto r = f.Run(3, PrgKind::kMersenneTwister,
                       [&](netsim::MessageTag tag, netsim::PartyId from,
                           std::vector<uint8_t>& payload) {
                         if (tag == netsim::MessageTag::kKeyAdvert && from == victim) {
                           payload[4 + 32] ^= 0x01;  // first byte of s_pk
                         }
                       });
  ASSERT_TRUE(r.completed) << r.abort_reason;
  EXPECT_EQ(r.included, (std::vector<uint32_t>{1, 2, 3, 4}));
}

TEST(SessionTest, TamperedShareCiphertextDropsTheRecipient) {
  SessionFixture f(5, 20, 37);
  const netsim::PartyId server = f.server;
  const netsim::PartyId target = f.participants[3].party;
  const auto r = f.Run(3, PrgKind::kMersenneTwister,
                       [&](netsim::MessageTag tag, netsim::PartyId from,
                           std::vector<uint8_t>& payload) {
                         (void)from;
                         if (tag == netsim::MessageTag::kShareBundle && from == server &&
                             payload.size() > 40) {
                           payload[payload.size() - 1] ^= 0x01;
                         }
                         (void)target;
                       });
  // Every recipient refuses its bundle, so too few inputs arrive.
  EXPECT_FALSE(r.completed);
}

TEST(SessionTest, LedgerCountsProtocolPhases) {
  SessionFixture f(4, 16, 38);
  const auto r = f.Run(2);
  ASSERT_TRUE(r.completed);
  const auto& ledger = f.bus.ledger();
  for (const char* phase : {"secagg.advertise", "secagg.share_keys",
                            "secagg.masked_input", "secagg.unmask"}) {
    EXPECT_GT(ledger.PhaseBytes(1, f.participants[0].party, netsim::Direction::kUp, phase), 0u)
        << phase;
  }
  // Masked input: header + u32 owner + u64 count + 16 words.
  EXPECT_EQ(ledger.PhaseBytes(1, f.participants[0].party, netsim::Direction::kUp,
                              "secagg.masked_input"),
            16u + 4 + 8 + 16 * 8);
  EXPECT_EQ(ledger.Total(netsim::Direction::kUp), ledger.Total(netsim::Direction::kDown));
}

}  // namespace
}  // namespace fedrec::secagg
