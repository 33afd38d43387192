//
// Copyright 2026 The DialAug Authors
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
//

#include <map>
#include <set>

#include <gtest/gtest.h>

#include "dialaug/evaluation.h"
#include "dialaug/synthetic.h"
#include "dialaug/trainer.h"
#include "oracles.h"

namespace dialaug {
namespace {

EvalRecord Scored(std::vector<double> scores, int gold) {
  EvalRecord r;
  r.id = "r";
  r.context = {"c"};
  for (std::size_t k = 0; k < scores.size(); ++k) {
    r.candidates.push_back("x" + std::to_string(k));
  }
  r.scores = std::move(scores);
  r.gold_index = gold;
  return r;
}

TEST(MetricsTest, TopScoredGold) {
  const auto m = ComputeMetrics({Scored({0.9, 0.5, 0.1}, 0)}, {1, 2});
  EXPECT_EQ(m.recall_at.at(1), 1.0);
  EXPECT_EQ(m.mrr, 1.0);
}

TEST(MetricsTest, ThirdOfTen) {
  std::vector<double> s = {9, 8, 7, 6, 5, 4, 3, 2, 1, 0};
  const auto m = ComputeMetrics({Scored(s, 2)}, {1, 3});
  EXPECT_EQ(m.recall_at.at(1), 0.0);
  EXPECT_EQ(m.recall_at.at(3), 1.0);
  EXPECT_DOUBLE_EQ(m.mrr, 1.0 / 3.0);
}

TEST(MetricsTest, TiesFavourLowerIndex) {
  EXPECT_EQ(GoldRank(Scored({1.0, 1.0, 1.0}, 0)), 1);
  EXPECT_EQ(GoldRank(Scored({1.0, 1.0, 1.0}, 2)), 3);
  EXPECT_EQ(GoldRank(Scored({0.0, 1.0, 1.0}, 2)), 2);
}

TEST(MetricsTest, Errors) {
  EXPECT_THROW(ComputeMetrics({Scored({1, 2}, 0)}, {3}), std::invalid_argument);
  EXPECT_THROW(ComputeMetrics({Scored({1, 2}, 0)}, {}), std::invalid_argument);
  EXPECT_THROW(ComputeMetrics({}, {1}), std::invalid_argument);
  EXPECT_THROW(GoldRank(Scored({1.0}, 0)), std::invalid_argument);
}

TEST(MetricsTest, MatchesSortOracleAndIsMonotone) {
  Rng rng(1);
  const auto records = oracles::RandomScoredRecords(rng, 100);
  const std::vector<int> ks = {1, 2, 5, 10};
  const auto m = ComputeMetrics(records, ks);
  const auto want = oracles::SortBasedMetrics(records, ks);
  for (int k : ks) EXPECT_DOUBLE_EQ(m.recall_at.at(k), want.recall.at(k));
  EXPECT_NEAR(m.mrr, want.mrr, 1e-15);
  double prev = 0.0;
  for (int k : ks) {
    EXPECT_GE(m.recall_at.at(k), prev);
    prev = m.recall_at.at(k);
  }
}

TEST(MetricsTest, JsonShape) {
  const auto m = ComputeMetrics({Scored({0.9, 0.5, 0.1}, 1)}, {1, 2}, "typo");
  EXPECT_EQ(m.ToJson().dump(),
            "{\"kind\":\"typo\",\"n\":1,\"recall\":{\"1\":0.0,\"2\":1.0},"
            "\"mrr\":0.5}");
  EXPECT_EQ(MetricsReport::FromJson(nlohmann::json::parse(m.ToJson().dump())), m);
}

std::vector<Dialogue> Distinct(int n) {
  std::vector<Dialogue> out;
  for (int i = 0; i < n; ++i) {
    out.push_back({"d" + std::to_string(i), {"ctx " + std::to_string(i)},
                   "resp " + std::to_string(i)});
  }
  return out;
}

TEST(EvalSetTest, TwoCandidates) {
  const auto records = BuildEvalSet(Distinct(10), 2, 1);
  ASSERT_EQ(records.size(), 10u);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const EvalRecord& r = records[i];
    ASSERT_EQ(r.candidates.size(), 2u);
    EXPECT_EQ(r.candidates[r.gold_index], "resp " + std::to_string(i));
    EXPECT_NE(r.candidates[1 - r.gold_index], r.candidates[r.gold_index]);
  }
}

TEST(EvalSetTest, DeterministicAndDistinct) {
  const auto a = BuildEvalSet(Distinct(60), 50, 7);
  const auto b = BuildEvalSet(Distinct(60), 50, 7);
  EXPECT_EQ(CandidatePoolHash(a), CandidatePoolHash(b));
  EXPECT_NE(CandidatePoolHash(a), CandidatePoolHash(BuildEvalSet(Distinct(60), 50, 8)));
  for (const EvalRecord& r : a) {
    EXPECT_EQ(std::set<std::string>(r.candidates.begin(), r.candidates.end()).size(),
              50u);
  }
  EXPECT_THROW(BuildEvalSet(Distinct(10), 11, 0), std::invalid_argument);
}

TEST(EvalSetTest, NegativesUniformOverPool) {
  const auto data = Distinct(21);
  std::map<std::string, int> negatives;
  long total = 0;
  std::vector<int> gold_pos(5, 0);
  for (int seed = 0; seed < 500; ++seed) {
    for (const EvalRecord& r : BuildEvalSet(data, 5, seed)) {
      ++gold_pos[r.gold_index];
      for (int k = 0; k < 5; ++k) {
        if (k == r.gold_index) continue;
        ++negatives[r.candidates[k]];
        ++total;
      }
    }
  }
  // 10500 records x 4 negatives spread over 21 responses.
  for (const auto& [resp, n] : negatives) {
    EXPECT_NEAR(static_cast<double>(n) / total, 1.0 / 21, 0.004) << resp;
  }
  for (int n : gold_pos) EXPECT_NEAR(n / 10500.0, 0.2, 0.015);
}

Checkpoint SmallCheckpoint(const std::vector<Dialogue>& data) {
  TrainConfig cfg;
  cfg.encoder.d_model = 8;
  cfg.encoder.n_heads = 2;
  cfg.encoder.n_layers = 1;
  cfg.encoder.d_ffn = 8;
  cfg.encoder.proj_dim = 4;
  return InitCheckpoint(data, cfg);
}

TEST(EvaluateTest, RankingAndRobustness) {
  SyntheticOptions opt;
  opt.n = 80;
  opt.seed = 2;
  const auto data = GenerateSynthetic(opt);
  const Checkpoint ckpt = SmallCheckpoint(data);
  const auto records = BuildEvalSet(data, 10, 3);

  // Batched scoring equals one-at-a-time scoring.
  const EvalRecord& r = records[0];
  const auto batched = RankCandidates(r.context, r.candidates, ckpt);
  for (std::size_t k = 0; k < r.candidates.size(); ++k) {
    const double single = ckpt.ContextVector(r.context).dot(
        ckpt.ResponseVector(r.candidates[k]));
    EXPECT_NEAR(batched[k], single, 1e-6);
  }
  // Duplicates score alike; permutation permutes.
  const auto dup = RankCandidates(r.context, {r.candidates[0], r.candidates[0]}, ckpt);
  EXPECT_EQ(dup[0], dup[1]);
  std::vector<std::string> rev(r.candidates.rbegin(), r.candidates.rend());
  const auto rs = RankCandidates(r.context, rev, ckpt);
  for (std::size_t k = 0; k < rev.size(); ++k) {
    EXPECT_EQ(rs[k], batched[rev.size() - 1 - k]);
  }
  EXPECT_THROW(RankCandidates(r.context, {"one"}, ckpt), std::invalid_argument);

  const auto m1 = Evaluate(records, ckpt, {1, 5});
  const auto m2 = Evaluate(records, ckpt, {1, 5});
  EXPECT_EQ(m1, m2);
  EXPECT_GE(m1.mrr, 1.0 / 10);
  EXPECT_LE(m1.mrr, 1.0);

  EXPECT_EQ(RobustnessSuite(records, ckpt, {}, {1}).size(), 1u);
  PerturbationSpec noop;
  noop.kind = PerturbKind::kDeletion;
  noop.word_rate = 0.0;
  const auto same = RobustnessSuite(records, ckpt, {noop}, {1, 5});
  ASSERT_EQ(same.size(), 2u);
  EXPECT_EQ(same[1].recall_at, same[0].recall_at);
  EXPECT_EQ(same[1].mrr, same[0].mrr);
  EXPECT_EQ(same[1].kind, "deletion");

  auto table = std::make_shared<SynonymTable>(SyntheticSynonymTable());
  const std::uint64_t clean_hash = CandidatePoolHash(records);
  for (PerturbKind kind :
       {PerturbKind::kTruncation, PerturbKind::kDeletion,
        PerturbKind::kReordering, PerturbKind::kTypo, PerturbKind::kSynonym}) {
    PerturbationSpec spec;
    spec.kind = kind;
    spec.synonyms = table;
    spec.seed = 5;
    const auto perturbed = PerturbRecords(records, spec);
    EXPECT_EQ(CandidatePoolHash(perturbed), clean_hash);
  }
}

}  // namespace
}  // namespace dialaug
