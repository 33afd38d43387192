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

#include "dialaug/evaluation.h"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "dialaug/rng.h"
#include "dialaug/trainer.h"

namespace dialaug {

void EvalRecord::Validate() const {
  if (candidates.size() < 2) {
    throw std::invalid_argument("eval record " + id +
                                " needs at least 2 candidates");
  }
  if (gold_index < 0 || gold_index >= static_cast<int>(candidates.size())) {
    throw std::invalid_argument("eval record " + id + " has no gold candidate");
  }
  if (!scores.empty() && scores.size() != candidates.size()) {
    throw std::invalid_argument("eval record " + id +
                                ": score count differs from candidate count");
  }
}

nlohmann::ordered_json MetricsReport::ToJson() const {
  nlohmann::ordered_json j;
  j["kind"] = kind;
  j["n"] = n;
  nlohmann::ordered_json recall = nlohmann::ordered_json::object();
  for (const auto& [k, v] : recall_at) recall[std::to_string(k)] = v;
  j["recall"] = std::move(recall);
  j["mrr"] = mrr;
  return j;
}

MetricsReport MetricsReport::FromJson(const nlohmann::json& j) {
  MetricsReport r;
  r.kind = j.at("kind").get<std::string>();
  r.n = j.at("n").get<long>();
  for (const auto& [k, v] : j.at("recall").items()) {
    r.recall_at[std::stoi(k)] = v.get<double>();
  }
  r.mrr = j.at("mrr").get<double>();
  return r;
}

int GoldRank(const EvalRecord& record) {
  record.Validate();
  if (record.scores.empty()) throw std::invalid_argument("record is unscored");
  const int g = record.gold_index;
  const double gold = record.scores[g];
  int rank = 1;
  for (int k = 0; k < static_cast<int>(record.scores.size()); ++k) {
    const double s = record.scores[k];
    if (s > gold || (s == gold && k < g)) ++rank;
  }
  return rank;
}

MetricsReport ComputeMetrics(const std::vector<EvalRecord>& scored,
                             const std::vector<int>& ks,
                             const std::string& kind) {
  if (ks.empty()) throw std::invalid_argument("no recall cutoffs given");
  if (scored.empty()) throw std::invalid_argument("empty eval set");
  std::size_t min_candidates = SIZE_MAX;
  for (const EvalRecord& r : scored) {
    min_candidates = std::min(min_candidates, r.candidates.size());
  }
  for (int k : ks) {
    if (k < 1 || static_cast<std::size_t>(k) > min_candidates) {
      throw std::invalid_argument("recall cutoff " + std::to_string(k) +
                                  " exceeds the candidate count " +
                                  std::to_string(min_candidates));
    }
  }
  MetricsReport report;
  report.kind = kind;
  report.n = static_cast<long>(scored.size());
  std::map<int, long> hits;
  for (int k : ks) hits[k] = 0;
  double rr_sum = 0.0;
  for (const EvalRecord& r : scored) {
    const int rank = GoldRank(r);
    rr_sum += 1.0 / rank;
    for (auto& [k, h] : hits) {
      if (rank <= k) ++h;
    }
  }
  for (const auto& [k, h] : hits) {
    report.recall_at[k] = static_cast<double>(h) / static_cast<double>(report.n);
  }
  report.mrr = rr_sum / static_cast<double>(report.n);
  return report;
}

std::vector<EvalRecord> BuildEvalSet(const std::vector<Dialogue>& dialogues,
                                     int n_candidates, std::uint64_t seed) {
  if (n_candidates < 2) throw std::invalid_argument("need at least 2 candidates");
  std::vector<std::string> pool;
  std::unordered_map<std::string, std::size_t> index;
  for (const Dialogue& d : dialogues) {
    if (index.emplace(d.response, pool.size()).second) pool.push_back(d.response);
  }
  if (pool.size() < static_cast<std::size_t>(n_candidates)) {
    throw std::invalid_argument(
        "insufficient distinct responses: " + std::to_string(pool.size()) +
        " available, " + std::to_string(n_candidates) + " candidates requested");
  }
  Rng rng(seed);
  std::vector<EvalRecord> records;
  records.reserve(dialogues.size());
  for (const Dialogue& d : dialogues) {
    const std::size_t gold = index.at(d.response);
    // Sample from the pool with the gold removed.
    auto picks = rng.SampleWithoutReplacement(pool.size() - 1,
                                              n_candidates - 1);
    EvalRecord r;
    r.id = d.id;
    r.context = d.turns;
    r.gold_index = static_cast<int>(rng.UniformInt(n_candidates));
    for (std::size_t p : picks) {
      r.candidates.push_back(pool[p >= gold ? p + 1 : p]);
    }
    r.candidates.insert(r.candidates.begin() + r.gold_index, d.response);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<EvalRecord> ScoreRecords(const std::vector<EvalRecord>& records,
                                     const Checkpoint& checkpoint) {
  const int d = checkpoint.params().config().d_model;
  std::unordered_map<std::string, Vector> cache;
  std::vector<EvalRecord> out = records;
  for (EvalRecord& r : out) {
    r.Validate();
    const Vector ctx = checkpoint.ContextVector(r.context);
    Matrix resp(static_cast<Eigen::Index>(r.candidates.size()), d);
    for (std::size_t k = 0; k < r.candidates.size(); ++k) {
      auto it = cache.find(r.candidates[k]);
      if (it == cache.end()) {
        it = cache.emplace(r.candidates[k],
                           checkpoint.ResponseVector(r.candidates[k])).first;
      }
      resp.row(static_cast<Eigen::Index>(k)) = it->second.transpose();
    }
    const Vector scores = resp * ctx;
    r.scores.assign(scores.data(), scores.data() + scores.size());
  }
  return out;
}

MetricsReport Evaluate(const std::vector<EvalRecord>& records,
                       const Checkpoint& checkpoint, const std::vector<int>& ks,
                       const std::string& kind) {
  return ComputeMetrics(ScoreRecords(records, checkpoint), ks, kind);
}

std::vector<EvalRecord> PerturbRecords(const std::vector<EvalRecord>& records,
                                       const PerturbationSpec& spec) {
  spec.Validate();
  std::vector<EvalRecord> out = records;
  for (std::size_t i = 0; i < out.size(); ++i) {
    Rng rng(DeriveSeed(spec.seed, i));
    out[i].context = PerturbTurns(records[i].context, spec, rng);
    out[i].scores.clear();
  }
  return out;
}

std::vector<MetricsReport> RobustnessSuite(
    const std::vector<EvalRecord>& clean, const Checkpoint& checkpoint,
    const std::vector<PerturbationSpec>& specs, const std::vector<int>& ks) {
  std::vector<MetricsReport> reports;
  reports.push_back(Evaluate(clean, checkpoint, ks, "clean"));
  for (const PerturbationSpec& spec : specs) {
    reports.push_back(Evaluate(PerturbRecords(clean, spec), checkpoint, ks,
                               PerturbKindName(spec.kind)));
  }
  return reports;
}

std::uint64_t CandidatePoolHash(const std::vector<EvalRecord>& records) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const void* data, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  for (const EvalRecord& r : records) {
    feed(&r.gold_index, sizeof(r.gold_index));
    for (const std::string& c : r.candidates) {
      feed(c.data(), c.size());
      feed("\x1f", 1);
    }
    feed("\x1e", 1);
  }
  return h;
}

}  // namespace dialaug
