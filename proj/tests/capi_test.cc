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

#include <cstdlib>
#include <filesystem>
#include <string>

#include "gtest/gtest.h"
#include "fedrec/fedrec.h"

namespace {

class ConfigHandle {
 public:
  ConfigHandle() { EXPECT_EQ(fedrec_config_create(&config_), FEDREC_OK); }
  ~ConfigHandle() { fedrec_config_destroy(config_); }
  fedrec_config* get() { return config_; }

 private:
  fedrec_config* config_ = nullptr;
};

void SetSmall(fedrec_config* c) {
  const char* kv[][2] = {{"synth_users", "30"},  {"synth_items", "30"},
                         {"synth_latent_dim", "4"}, {"synth_topics", "3"},
                         {"synth_history", "4"}, {"token_dim", "4"},
                         {"news_dim", "4"},      {"num_heads", "2"},
                         {"attention_dim", "4"}, {"group_size", "5"},
                         {"negatives", "2"},     {"rounds", "2"}};
  for (const auto& p : kv) ASSERT_EQ(fedrec_config_set(c, p[0], p[1]), FEDREC_OK) << p[0];
}

TEST(CApiTest, VersionAndKeys) {
  EXPECT_STREQ(fedrec_version(), "0.1.0");
  ASSERT_GT(fedrec_config_key_count(), 10u);
  for (size_t i = 0; i < fedrec_config_key_count(); ++i) {
    EXPECT_NE(fedrec_config_key_name(i), nullptr);
    EXPECT_NE(fedrec_config_key_help(i), nullptr);
  }
}

TEST(CApiTest, NullArgumentsAreRejected) {
  EXPECT_EQ(fedrec_config_create(nullptr), FEDREC_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(fedrec_config_set(nullptr, "rounds", "1"), FEDREC_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(fedrec_last_error()).find("null"), std::string::npos);
  fedrec_metrics m;
  EXPECT_EQ(fedrec_experiment_evaluate(nullptr, &m), FEDREC_ERR_INVALID_ARGUMENT);
  fedrec_config_destroy(nullptr);
  fedrec_experiment_destroy(nullptr);
}

TEST(CApiTest, ConfigSetGetAndErrors) {
  ConfigHandle c;
  ASSERT_EQ(fedrec_config_set(c.get(), "rounds", "17"), FEDREC_OK);
  EXPECT_STREQ(fedrec_last_error(), "");
  size_t needed = 0;
  ASSERT_EQ(fedrec_config_get(c.get(), "rounds", nullptr, 0, &needed), FEDREC_OK);
  EXPECT_EQ(needed, 3u);
  char buf[8];
  ASSERT_EQ(fedrec_config_get(c.get(), "rounds", buf, sizeof(buf), nullptr), FEDREC_OK);
  EXPECT_STREQ(buf, "17");
  char tiny[2];
  ASSERT_EQ(fedrec_config_get(c.get(), "rounds", tiny, sizeof(tiny), nullptr), FEDREC_OK);
  EXPECT_STREQ(tiny, "1");

  EXPECT_EQ(fedrec_config_set(c.get(), "rounds", "lots"), FEDREC_ERR_CONFIG);
  EXPECT_NE(std::string(fedrec_last_error()).find("rounds"), std::string::npos);
  EXPECT_EQ(fedrec_config_set(c.get(), "bogus", "1"), FEDREC_ERR_CONFIG);
  EXPECT_EQ(fedrec_config_load_file(c.get(), "/nonexistent.conf"), FEDREC_ERR_CONFIG);
  EXPECT_EQ(fedrec_config_validate(c.get()), FEDREC_OK);

  ::setenv("FEDREC_OUTPUT_DIR", "/tmp/capi_env", 1);
  EXPECT_EQ(fedrec_config_apply_env(c.get()), FEDREC_OK);
  ::unsetenv("FEDREC_OUTPUT_DIR");
  char dir[64];
  fedrec_config_get(c.get(), "output_dir", dir, sizeof(dir), nullptr);
  EXPECT_STREQ(dir, "/tmp/capi_env");
}

TEST(CApiTest, ExperimentLifecycle) {
  ConfigHandle c;
  SetSmall(c.get());
  fedrec_experiment* e = nullptr;
  ASSERT_EQ(fedrec_experiment_create(c.get(), &e), FEDREC_OK) << fedrec_last_error();
  EXPECT_EQ(fedrec_experiment_round(e), 0u);
  fedrec_metrics before;
  ASSERT_EQ(fedrec_experiment_evaluate(e, &before), FEDREC_OK);
  EXPECT_GT(before.impressions, 0u);
  EXPECT_GE(before.auc, 0.0);
  EXPECT_LE(before.auc, 1.0);

  fedrec_round_info info;
  ASSERT_EQ(fedrec_experiment_run_rounds(e, 2, &info), FEDREC_OK) << fedrec_last_error();
  EXPECT_EQ(info.round, 2u);
  EXPECT_EQ(fedrec_experiment_round(e), 2u);
  EXPECT_GT(info.bytes_up, 0u);
  EXPECT_GT(info.union_size, 0u);

  const auto dir = std::filesystem::temp_directory_path() / "fedrec_capi_out";
  std::filesystem::remove_all(dir);
  ASSERT_EQ(fedrec_experiment_write_outputs(e, dir.string().c_str()), FEDREC_OK);
  EXPECT_TRUE(std::filesystem::exists(dir / "metrics.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "costs.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "summary.json"));
  std::filesystem::remove_all(dir);
  fedrec_experiment_destroy(e);
}

TEST(CApiTest, InvalidExperimentConfigIsConfigError) {
  ConfigHandle c;
  SetSmall(c.get());
  ASSERT_EQ(fedrec_config_set(c.get(), "group_size", "1000"), FEDREC_OK);
  fedrec_experiment* e = nullptr;
  EXPECT_EQ(fedrec_experiment_create(c.get(), &e), FEDREC_ERR_CONFIG);
  EXPECT_EQ(e, nullptr);
}

TEST(CApiTest, DataTools) {
  ConfigHandle c;
  SetSmall(c.get());
  const auto dir = std::filesystem::temp_directory_path() / "fedrec_capi_data";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::string b = (dir / "b.tsv").string(), n = (dir / "n.tsv").string();
  ASSERT_EQ(fedrec_write_synthetic(c.get(), b.c_str(), n.c_str()), FEDREC_OK);
  EXPECT_GT(std::filesystem::file_size(b), 0u);
  EXPECT_EQ(fedrec_convert_click_log((dir / "missing").string().c_str(), b.c_str(),
                                     n.c_str(), 4, 1),
            FEDREC_ERR_IO);
  std::filesystem::remove_all(dir);
}

}  // namespace
