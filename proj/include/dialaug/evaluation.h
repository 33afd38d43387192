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

// Candidate-ranking evaluation: eval set construction, Recall@k / MRR, and
// the perturbation robustness suite.

#ifndef DIALAUG_EVALUATION_H_
#define DIALAUG_EVALUATION_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dialaug/corpus.h"
#include "dialaug/perturb.h"
#include "json.hpp"

namespace dialaug {

class Checkpoint;

struct EvalRecord {
  std::string id;
  std::vector<std::string> context;
  std::vector<std::string> candidates;
  int gold_index = 0;
  // Empty until scored.
  std::vector<double> scores;

  void Validate() const;
};

struct MetricsReport {
  std::string kind = "clean";
  long n = 0;
  std::map<int, double> recall_at;
  double mrr = 0.0;

  // {"kind": str, "n": int, "recall": {"1": float, ...}, "mrr": float}
  nlohmann::ordered_json ToJson() const;
  static MetricsReport FromJson(const nlohmann::json& j);
  bool operator==(const MetricsReport&) const = default;
};

// 1-based rank of the gold candidate. Higher scores rank first; ties go to
// the lower candidate index.
int GoldRank(const EvalRecord& record);

MetricsReport ComputeMetrics(const std::vector<EvalRecord>& scored,
                             const std::vector<int>& ks,
                             const std::string& kind = "clean");

// One record per dialogue: the gold response plus n_candidates - 1 distinct
// negatives drawn uniformly from the other distinct response strings, with
// the gold placed at a uniformly random index.
std::vector<EvalRecord> BuildEvalSet(const std::vector<Dialogue>& dialogues,
                                     int n_candidates, std::uint64_t seed);

// Scores every record with the checkpoint (projection head unused).
std::vector<EvalRecord> ScoreRecords(const std::vector<EvalRecord>& records,
                                     const Checkpoint& checkpoint);

MetricsReport Evaluate(const std::vector<EvalRecord>& records,
                       const Checkpoint& checkpoint, const std::vector<int>& ks,
                       const std::string& kind = "clean");

// Applies spec to record contexts only, with one stream per record derived
// from spec.seed.
std::vector<EvalRecord> PerturbRecords(const std::vector<EvalRecord>& records,
                                       const PerturbationSpec& spec);

// The clean report followed by one report per spec. Candidate pools are
// shared across all reports.
std::vector<MetricsReport> RobustnessSuite(
    const std::vector<EvalRecord>& clean, const Checkpoint& checkpoint,
    const std::vector<PerturbationSpec>& specs, const std::vector<int>& ks);

// FNV-1a over every record's candidates and gold index.
std::uint64_t CandidatePoolHash(const std::vector<EvalRecord>& records);

}  // namespace dialaug

#endif  // DIALAUG_EVALUATION_H_
