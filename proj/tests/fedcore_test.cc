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
#include <cmath>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "common/error.h"
#include "data/synthetic.h"
#include "fedcore/aggregation.h"
#include "fedcore/checkpoint.h"
#include "fedcore/federation.h"
#include "fedcore/optimizer.h"
#include "fedcore/sampling.h"
#include "recmodel/gradients.h"
#include "recmodel/news_encoder.h"
#include "test_util.h"

namespace fedrec::fedcore {
namespace {

using ::fedrec::testing::TinyDims;

// ---------------------------------------------------------------------------
// Optimizer.

// Independent scalar recurrence.
struct ScalarAdam {
  double delta = 0, v = 0, theta = 0;
  void Step(double g, const OptimizerConfig& c) {
    delta = c.beta1 * delta + (1 - c.beta1) * g;
    v = c.beta2 * v + (1 - c.beta2) * delta * delta;
    theta -= c.learning_rate * delta / std::sqrt(v + c.tau);
  }
};

TEST(AdamStepTest, ZeroGradientWithZeroMomentsIsFixedPoint) {
  std::vector<double> theta = {0.5, -1.25, 3.0};
  const auto before = theta;
  auto moments = AdamMoments::Zeros(3);
  const std::vector<double> zero(3, 0.0);
  for (int i = 0; i < 10; ++i) {
    ASSERT_TRUE(AdamStep(theta, moments, zero, OptimizerConfig{}));
  }
  EXPECT_EQ(theta, before);
}

TEST(AdamStepTest, FirstStepWithUnitGradient) {
  // delta = 0.1 and v = 0.01 * 0.1^2 = 1e-4, so the step is
  // 5e-5 * 0.1 / sqrt(1e-4 + 1e-8).
  std::vector<double> theta = {0.0};
  auto moments = AdamMoments::Zeros(1);
  const std::vector<double> g = {1.0};
  ASSERT_TRUE(AdamStep(theta, moments, g, OptimizerConfig{}));
  EXPECT_NEAR(moments.first[0], 0.1, 1e-15);
  EXPECT_NEAR(moments.second[0], 1e-4, 1e-18);
  const double expected = 5e-5 * 0.1 / std::sqrt(1e-4 + 1e-8);
  EXPECT_NEAR(theta[0], -expected, 1e-18);
  EXPECT_NEAR(std::fabs(theta[0]), 4.99975e-4, 1e-9);
}

TEST(AdamStepTest, MatchesScalarRecurrence) {
  OptimizerConfig config;
  config.learning_rate = 0.01;
  for (double g : {1.0, -0.3, 2.5e-3}) {
    std::vector<double> theta = {0.7};
    auto moments = AdamMoments::Zeros(1);
    ScalarAdam oracle{0, 0, 0.7};
    for (int step = 0; step < 50; ++step) {
      const std::vector<double> grad = {g * (1 + 0.1 * step)};
      ASSERT_TRUE(AdamStep(theta, moments, grad, config));
      oracle.Step(grad[0], config);
      ASSERT_NEAR(theta[0], oracle.theta, 1e-12) << step;
      ASSERT_NEAR(moments.first[0], oracle.delta, 1e-12);
      ASSERT_NEAR(moments.second[0], oracle.v, 1e-12);
    }
  }
}

TEST(AdamStepTest, StrictSignAscends) {
  OptimizerConfig config;
  config.add_step = true;
  std::vector<double> theta = {0.0};
  auto moments = AdamMoments::Zeros(1);
  ASSERT_TRUE(AdamStep(theta, moments, std::vector<double>{1.0}, config));
  EXPECT_GT(theta[0], 0.0);
}

TEST(AdamStepTest, NonFiniteGradientLeavesStateUnchanged) {
  std::vector<double> theta = {1.0, 2.0};
  auto moments = AdamMoments::Zeros(2);
  moments.first = {0.3, 0.4};
  const auto saved_theta = theta;
  const auto saved = moments;
  const std::vector<double> bad = {1.0, std::nan("")};
  EXPECT_FALSE(AdamStep(theta, moments, bad, OptimizerConfig{}));
  const std::vector<double> inf = {INFINITY, 0.0};
  EXPECT_FALSE(AdamStep(theta, moments, inf, OptimizerConfig{}));
  EXPECT_EQ(theta, saved_theta);
  EXPECT_EQ(moments.first, saved.first);
  EXPECT_EQ(moments.second, saved.second);
  EXPECT_THROW(AdamStep(theta, moments, std::vector<double>{1.0}, OptimizerConfig{}),
               InputError);
}

TEST(AdamStepTest, UserAndEncoderStepsAgree) {
  Rng rng(4);
  const auto dims = TinyDims(5, 2, 4, 2, 2);
  auto user = recmodel::UserModelParams::RandomUniform(dims, 0.5, rng);
  auto enc = recmodel::NewsEncoderParams::RandomUniform(dims, 0.5, rng);
  std::vector<double> flat_user = user.Flatten();
  std::vector<double> g(user.NumParams());
  for (double& v : g) v = UniformReal(rng, -1, 1);
  auto m1 = AdamMoments::Zeros(g.size());
  auto m2 = AdamMoments::Zeros(g.size());
  ASSERT_TRUE(FedAdamStep(user, m1, g, OptimizerConfig{}));
  ASSERT_TRUE(AdamStep(flat_user, m2, g, OptimizerConfig{}));
  EXPECT_EQ(user.Flatten(), flat_user);
  EXPECT_EQ(m1.first, m2.first);

  std::vector<double> flat_enc = enc.Flatten();
  std::vector<double> ge(enc.NumParams(), 0.0);
  auto m3 = AdamMoments::Zeros(ge.size());
  ASSERT_TRUE(AdamNewsStep(enc, m3, ge, OptimizerConfig{}));
  EXPECT_EQ(enc.Flatten(), flat_enc);
}

TEST(OptimizerConfigTest, RejectsOutOfRange) {
  OptimizerConfig c;
  c.beta1 = 1.0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = {};
  c.learning_rate = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = {};
  c.tau = -1;
  EXPECT_THROW(c.Validate(), ConfigError);
  EXPECT_NO_THROW(OptimizerConfig{}.Validate());
}

// ---------------------------------------------------------------------------
// Sampling.

TEST(SampleClientGroupTest, WholePopulation) {
  const auto g = SampleClientGroup(7, 7, 99);
  EXPECT_EQ(g, (std::vector<size_t>{0, 1, 2, 3, 4, 5, 6}));
}

TEST(SampleClientGroupTest, DeterministicDistinctAndNested) {
  const auto a = SampleClientGroup(94057, 50, 5);
  EXPECT_EQ(a, SampleClientGroup(94057, 50, 5));
  EXPECT_EQ(std::set<size_t>(a.begin(), a.end()).size(), 50u);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  EXPECT_LT(a.back(), 94057u);
  const auto small = SampleClientGroup(94057, 10, 5);
  EXPECT_TRUE(std::includes(a.begin(), a.end(), small.begin(), small.end()));
  EXPECT_NE(a, SampleClientGroup(94057, 50, 6));
  EXPECT_THROW(SampleClientGroup(3, 4, 1), ConfigError);
}

TEST(SampleClientGroupTest, RoughlyUniform) {
  std::vector<int> hits(20, 0);
  for (uint64_t seed = 0; seed < 4000; ++seed) {
    for (size_t i : SampleClientGroup(20, 5, seed)) ++hits[i];
  }
  // Expected 1000 per index; binomial sd is about 27.
  for (int h : hits) EXPECT_NEAR(h, 1000, 150);
}

// ---------------------------------------------------------------------------
// Aggregation.

recmodel::LocalGradients MakeGrads(std::vector<double> user,
                                   recmodel::ReprGradients reprs, size_t count) {
  recmodel::LocalGradients g;
  g.user_grad = std::move(user);
  g.repr_grads = std::move(reprs);
  g.sample_count = count;
  return g;
}

Vector Vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  size_t i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

TEST(AggregationTest, UploadLayout) {
  const std::vector<ItemIndex> union_ids = {2, 5, 9};
  const auto g = MakeGrads({1.0, -2.0}, {{5, Vec({0.5, 0.25})}}, 3);
  const auto up = FlattenUpload(g, union_ids, 2);
  EXPECT_EQ(up, (std::vector<double>{3.0, -6.0, 0, 0, 1.5, 0.75, 0, 0, 3.0}));
  const auto stray = MakeGrads({1.0, -2.0}, {{4, Vec({1.0, 1.0})}}, 1);
  EXPECT_THROW(FlattenUpload(stray, union_ids, 2), ProtocolError);
}

TEST(AggregationTest, WeightedMeanOfTwoClients) {
  const std::vector<ItemIndex> union_ids = {0, 1};
  const auto g1 = MakeGrads({1.0, 4.0}, {{0, Vec({2.0})}}, 1);
  const auto g2 = MakeGrads({-3.0, 0.5}, {{0, Vec({1.0})}, {1, Vec({-8.0})}}, 3);
  auto a = FlattenUpload(g1, union_ids, 1);
  const auto b = FlattenUpload(g2, union_ids, 1);
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  const auto n = Normalize(SplitSum(a, 2));
  ASSERT_TRUE(n.has_value());
  EXPECT_EQ(n->user_grad, (std::vector<double>{(1.0 - 9.0) / 4, (4.0 + 1.5) / 4}));
  EXPECT_EQ(n->repr_grad, (std::vector<double>{(2.0 + 3.0) / 4, -24.0 / 4}));
}

TEST(AggregationTest, IdenticalGradientsAreWeightFree) {
  const std::vector<ItemIndex> union_ids = {3};
  const std::vector<double> g = {0.3, -0.7};
  std::vector<double> sum(4, 0.0);
  for (size_t w : {1u, 2u, 7u}) {
    const auto up = FlattenUpload(MakeGrads(g, {{3, Vec({1.5})}}, w), union_ids, 1);
    for (size_t i = 0; i < sum.size(); ++i) sum[i] += up[i];
  }
  const auto n = Normalize(SplitSum(sum, 2));
  ASSERT_TRUE(n.has_value());
  EXPECT_NEAR(n->user_grad[0], 0.3, 1e-15);
  EXPECT_NEAR(n->user_grad[1], -0.7, 1e-15);
  EXPECT_NEAR(n->repr_grad[0], 1.5, 1e-15);
}

TEST(AggregationTest, SingleClientAndZeroWeight) {
  const std::vector<ItemIndex> union_ids = {0};
  const auto up = FlattenUpload(MakeGrads({0.25}, {{0, Vec({-1.0})}}, 1), union_ids, 1);
  EXPECT_EQ(up, (std::vector<double>{0.25, -1.0, 1.0}));
  const auto n = Normalize(SplitSum(up, 1));
  EXPECT_EQ(n->user_grad, std::vector<double>{0.25});
  const auto empty = FlattenUpload(MakeGrads({0.0}, {}, 0), union_ids, 1);
  EXPECT_EQ(empty, (std::vector<double>{0, 0, 0}));
  EXPECT_FALSE(Normalize(SplitSum(empty, 1)).has_value());
}

TEST(AggregationTest, ReplicatedDataLeavesQuotientUnchanged) {
  Rng rng(8);
  const auto dims = TinyDims(6, 3, 4, 2, 3);
  const auto user = recmodel::UserModelParams::RandomUniform(dims, 0.6, rng);
  const auto table =
      recmodel::ReprTable::Dense(fedrec::testing::RandomMatrix(6, 4, 1.0, rng));
  const auto samples = fedrec::testing::RandomSamples(3, 6, 3, 2, rng);
  std::vector<ItemIndex> union_ids = {0, 1, 2, 3, 4, 5};
  const auto once = FlattenUpload(
      recmodel::ComputeLocalGradients(samples, user, table), union_ids, 4);
  for (size_t m : {2u, 5u}) {
    std::vector<recmodel::TrainingSample> many;
    for (size_t r = 0; r < m; ++r) many.insert(many.end(), samples.begin(), samples.end());
    const auto rep = FlattenUpload(
        recmodel::ComputeLocalGradients(many, user, table), union_ids, 4);
    EXPECT_EQ(rep.back(), m * once.back());
    const auto a = Normalize(SplitSum(once, user.NumParams()));
    const auto b = Normalize(SplitSum(rep, user.NumParams()));
    for (size_t i = 0; i < a->user_grad.size(); ++i) {
      EXPECT_NEAR(a->user_grad[i], b->user_grad[i],
                  1e-12 * std::max(1.0, std::fabs(a->user_grad[i])));
    }
    for (size_t i = 0; i < a->repr_grad.size(); ++i) {
      EXPECT_NEAR(a->repr_grad[i], b->repr_grad[i],
                  1e-12 * std::max(1.0, std::fabs(a->repr_grad[i])));
    }
  }
}

// ---------------------------------------------------------------------------
// Federation rounds.

data::Dataset SmallDataset(size_t users, uint64_t seed) {
  data::SyntheticSpec spec;
  spec.num_users = users;
  spec.num_items = 40;
  spec.latent_dim = 4;
  spec.num_topics = 4;
  spec.history_len = 4;
  spec.train_impressions = 2;
  spec.impression_size = 4;
  spec.filler_vocab = 5;
  spec.seed = seed;
  return data::GenerateSynthetic(spec).dataset;
}

FederationConfig SmallConfig(size_t group) {
  FederationConfig c;
  c.dims = TinyDims(0, 4, 8, 2, 4);
  c.group_size = group;
  c.negatives = 2;
  c.secure_aggregation = false;
  c.optimizer.learning_rate = 0.01;
  c.seed = 3;
  return c;
}

double RelativeError(double a, double b, double floor) {
  return std::fabs(a - b) / std::max(std::fabs(b), floor);
}

TEST(FederationTest, AggregateEqualsPooledGradient) {
  const auto dataset = SmallDataset(12, 4);
  Federation fed(SmallConfig(5), dataset);
  const auto user0 = fed.server().user_model;
  const auto encoder0 = fed.server().encoder;
  const auto table0 = fed.server().news_table;
  const auto report = fed.RunRound();
  ASSERT_TRUE(report.applied);

  std::vector<recmodel::TrainingSample> pooled;
  for (size_t c : report.group) {
    const auto& s = fed.clients()[c].samples;
    pooled.insert(pooled.end(), s.begin(), s.end());
  }
  const auto central = recmodel::ComputeLocalGradients(pooled, user0, table0);
  EXPECT_EQ(report.weight_sum, static_cast<double>(pooled.size()));
  const double b1 = 1 - fed.config().optimizer.beta1;
  double scale = 0;
  for (double g : central.user_grad) scale = std::max(scale, std::fabs(g));
  for (size_t i = 0; i < central.user_grad.size(); ++i) {
    EXPECT_LE(RelativeError(fed.server().user_moments.first[i] / b1,
                            central.user_grad[i], 1e-8 * scale),
              1e-9)
        << i;
  }
  const auto central_enc = recmodel::NewsEncoderBackward(
      encoder0, fed.corpus().contents(), central.repr_grads);
  scale = 0;
  for (double g : central_enc) scale = std::max(scale, std::fabs(g));
  for (size_t i = 0; i < central_enc.size(); ++i) {
    EXPECT_LE(RelativeError(fed.server().encoder_moments.first[i] / b1,
                            central_enc[i], 1e-8 * scale),
              1e-9)
        << i;
  }
}

TEST(FederationTest, SingleClientGroupIsLocalFedAdamStep) {
  const auto dataset = SmallDataset(6, 5);
  Federation fed(SmallConfig(1), dataset);
  auto user = fed.server().user_model;
  const auto table0 = fed.server().news_table;
  const auto report = fed.RunRound();
  ASSERT_TRUE(report.applied);
  ASSERT_EQ(report.group.size(), 1u);
  const auto g = recmodel::ComputeLocalGradients(
      fed.clients()[report.group[0]].samples, user, table0);
  auto moments = AdamMoments::Zeros(user.NumParams());
  ASSERT_TRUE(FedAdamStep(user, moments, g.user_grad, fed.config().optimizer));
  const auto got = fed.server().user_model.Flatten();
  const auto want = user.Flatten();
  for (size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
}

TEST(FederationTest, NewsTableIsReencodedCorpus) {
  const auto dataset = SmallDataset(8, 6);
  Federation fed(SmallConfig(4), dataset);
  const auto before = fed.server().news_table.vectors();
  fed.RunRound();
  const auto& table = fed.server().news_table;
  ASSERT_EQ(table.size(), fed.corpus().size());
  bool changed = false;
  for (const auto& c : fed.corpus().contents()) {
    const Vector direct = recmodel::EncodeNews(fed.server().encoder, c);
    EXPECT_EQ(Vector(table.Get(c.id)), direct);
    changed |= (direct.transpose() - before.row(c.id)).norm() > 0;
  }
  EXPECT_TRUE(changed);
  const auto same = table.vectors();
  fed.RefreshNewsTable();
  EXPECT_EQ(fed.server().news_table.vectors(), same);
}

TEST(FederationTest, ZeroEncoderGivesZeroTable) {
  const auto dataset = SmallDataset(4, 7);
  auto config = SmallConfig(2);
  config.init_scale = 0.0;
  Federation fed(config, dataset);
  EXPECT_EQ(fed.server().news_table.vectors().cwiseAbs().maxCoeff(), 0.0);
}

TEST(FederationTest, EmptyClientsSkipAndRoundAdvances) {
  auto dataset = SmallDataset(5, 8);
  for (auto& c : dataset.clients) {
    for (auto& imp : c.impressions) {
      std::fill(imp.labels.begin(), imp.labels.end(), 0);  // no positives
    }
  }
  Federation fed(SmallConfig(3), dataset);
  const auto user = fed.server().user_model.Flatten();
  const auto encoder = fed.server().encoder.Flatten();
  for (uint64_t t = 1; t <= 3; ++t) {
    const auto r = fed.RunRound();
    EXPECT_FALSE(r.applied);
    EXPECT_EQ(r.skip_reason, "zero total weight");
    EXPECT_EQ(fed.server().round, t);
  }
  EXPECT_EQ(fed.server().user_model.Flatten(), user);
  EXPECT_EQ(fed.server().encoder.Flatten(), encoder);
}

TEST(FederationTest, UnionIsExactAndOnlyUnionIsSent) {
  const auto dataset = SmallDataset(10, 9);
  auto config = SmallConfig(4);
  for (bool secure : {false, true}) {
    config.secure_aggregation = secure;
    Federation fed(config, dataset);
    const auto r = fed.RunRound();
    std::set<ItemIndex> truth;
    for (size_t c : r.group) {
      truth.insert(fed.clients()[c].local_items.begin(),
                   fed.clients()[c].local_items.end());
    }
    EXPECT_EQ(r.union_size, truth.size());
    ASSERT_LT(truth.size(), fed.corpus().size());
    // Representation message: u64 count, u32 ids, u64 length, f64 values.
    const uint64_t reprs = 16 + 8 + 4 * truth.size() + 8 + 8 * truth.size() * 8;
    const uint64_t user = 16 + 8 + 8 * fed.server().user_model.NumParams();
    for (size_t c : r.group) {
      EXPECT_EQ(fed.bus().ledger().PhaseBytes(1, fed.clients()[c].party,
                                              netsim::Direction::kDown, "distribute"),
                reprs + user);
    }
  }
}

TEST(FederationTest, SecureMatchesPlainWithinQuantization) {
  const auto dataset = SmallDataset(10, 10);
  auto config = SmallConfig(4);
  Federation plain(config, dataset);
  config.secure_aggregation = true;
  Federation secure(config, dataset);
  for (int r = 0; r < 3; ++r) {
    const auto a = plain.RunRound();
    const auto b = secure.RunRound();
    ASSERT_TRUE(a.applied && b.applied);
    EXPECT_EQ(a.group, b.group);
    EXPECT_EQ(a.union_size, b.union_size);
    EXPECT_EQ(a.weight_sum, b.weight_sum);
  }
  const auto x = plain.server().user_model.Flatten();
  const auto y = secure.server().user_model.Flatten();
  double max_diff = 0;
  for (size_t i = 0; i < x.size(); ++i) max_diff = std::max(max_diff, std::fabs(x[i] - y[i]));
  EXPECT_LT(max_diff, 1e-4);
  EXPECT_GT(secure.bus().ledger().Total(netsim::Direction::kUp),
            plain.bus().ledger().Total(netsim::Direction::kUp));
}

TEST(FederationTest, DroppedClientIsExcluded) {
  const auto dataset = SmallDataset(10, 11);
  auto config = SmallConfig(4);
  config.secure_aggregation = true;
  config.threshold = 2;
  Federation fed(config, dataset);
  const auto group = SampleClientGroup(10, 4, DeriveSeed(config.seed, {3, 1}));
  netsim::FaultPlan plan;
  plan.Add(1, static_cast<uint32_t>(group[0]), netsim::DropPhase::kGradMaskedInput);
  plan.Add(1, static_cast<uint32_t>(group[1]), netsim::DropPhase::kDistribute);
  const auto r = fed.RunRound(&plan);
  ASSERT_EQ(r.group, group);
  EXPECT_TRUE(r.applied) << r.skip_reason;
  EXPECT_EQ(r.contributors, 2u);
  double expected_weight = 0;
  for (size_t i = 2; i < 4; ++i) expected_weight += fed.clients()[group[i]].samples.size();
  EXPECT_EQ(r.weight_sum, expected_weight);
  // The client that dropped at distribution receives nothing from then on.
  const auto party = fed.clients()[group[1]].party;
  const auto& ledger = fed.bus().ledger();
  EXPECT_GT(ledger.PhaseBytes(1, party, netsim::Direction::kDown, "union.advertise"), 0u);
  for (const char* phase : {"distribute", "grad.advertise", "grad.share_keys",
                            "grad.masked_input", "grad.unmask"}) {
    EXPECT_EQ(ledger.PhaseBytes(1, party, netsim::Direction::kDown, phase), 0u) << phase;
    EXPECT_EQ(ledger.PhaseBytes(1, party, netsim::Direction::kUp, phase), 0u) << phase;
  }
}

TEST(FederationTest, TooManyDropsAbortTheRound) {
  const auto dataset = SmallDataset(10, 12);
  auto config = SmallConfig(4);
  config.secure_aggregation = true;
  config.threshold = 3;
  Federation fed(config, dataset);
  const auto user = fed.server().user_model.Flatten();
  const auto group = SampleClientGroup(10, 4, DeriveSeed(config.seed, {3, 1}));
  netsim::FaultPlan plan;
  plan.Add(1, static_cast<uint32_t>(group[0]), netsim::DropPhase::kGradMaskedInput);
  plan.Add(1, static_cast<uint32_t>(group[1]), netsim::DropPhase::kGradMaskedInput);
  const auto r = fed.RunRound(&plan);
  EXPECT_FALSE(r.applied);
  EXPECT_NE(r.skip_reason.find("gradient aggregation aborted"), std::string::npos);
  EXPECT_EQ(fed.server().round, 1u);
  EXPECT_EQ(fed.server().user_model.Flatten(), user);
}

TEST(FederationTest, GroupLargerThanPopulationIsConfigError) {
  const auto dataset = SmallDataset(3, 13);
  EXPECT_THROW(Federation(SmallConfig(50), dataset), ConfigError);
}

TEST(FederationTest, WholeModelModeTrains) {
  const auto dataset = SmallDataset(8, 14);
  auto config = SmallConfig(4);
  config.mode = TrainingMode::kWholeModel;
  Federation fed(config, dataset);
  const auto enc = fed.server().encoder.Flatten();
  const auto r = fed.RunRound();
  EXPECT_TRUE(r.applied);
  EXPECT_EQ(r.union_size, 0u);
  EXPECT_NE(fed.server().encoder.Flatten(), enc);
}

// ---------------------------------------------------------------------------
// Checkpoints.

TEST(CheckpointTest, RoundTrip) {
  const auto dataset = SmallDataset(6, 15);
  Federation fed(SmallConfig(3), dataset);
  fed.RunRound();
  fed.RunRound();
  const auto bytes = SerializeCheckpoint(fed.server());
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "FRCK");
  recmodel::ModelDims dims;
  const auto restored = DeserializeCheckpoint(bytes, &dims);
  EXPECT_EQ(restored.round, 2u);
  EXPECT_EQ(dims.news_dim, 8u);
  EXPECT_EQ(dims.num_heads, 2u);
  EXPECT_EQ(restored.user_model.Flatten(), fed.server().user_model.Flatten());
  EXPECT_EQ(restored.encoder.Flatten(), fed.server().encoder.Flatten());
  EXPECT_EQ(restored.user_moments.first, fed.server().user_moments.first);
  EXPECT_EQ(restored.user_moments.second, fed.server().user_moments.second);
  EXPECT_EQ(restored.encoder_moments.second, fed.server().encoder_moments.second);
  EXPECT_EQ(SerializeCheckpoint(restored), bytes);

  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(DeserializeCheckpoint(bad), IoError);
  auto truncated = bytes;
  truncated.resize(bytes.size() - 3);
  EXPECT_THROW(DeserializeCheckpoint(truncated), IoError);
}

}  // namespace
}  // namespace fedrec::fedcore
