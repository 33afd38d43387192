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

// dialaug command-line tool. Every subcommand reads and writes plain files;
// given the same inputs and seed the outputs are byte-identical.

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dialaug/augment.h"
#include "dialaug/corpus.h"
#include "dialaug/evaluation.h"
#include "dialaug/perturb.h"
#include "dialaug/synthetic.h"
#include "dialaug/trainer.h"
#include "json.hpp"

namespace {

using namespace dialaug;

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

std::vector<int> ParseKs(const std::string& text) {
  std::vector<int> ks;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int k = 0;
    try {
      k = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw std::invalid_argument("bad --ks entry '" + item + "'");
    }
    ks.push_back(k);
  }
  if (ks.empty()) throw std::invalid_argument("--ks is empty");
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

void WriteJson(const std::string& path, const nlohmann::ordered_json& j) {
  auto out = OpenOut(path);
  out << j.dump(2) << '\n';
}

// --- gen-synthetic -------------------------------------------------------

struct GenArgs {
  int n = 1000;
  std::uint64_t seed = 0;
  double synonym_prob = 0.1;
  std::string out;
  std::string synonyms_out;
};

void RunGen(const GenArgs& a) {
  SyntheticOptions opt;
  opt.n = a.n;
  opt.seed = a.seed;
  opt.synonym_prob = a.synonym_prob;
  WriteDialoguesFile(a.out, GenerateSynthetic(opt));
  if (!a.synonyms_out.empty()) {
    auto out = OpenOut(a.synonyms_out);
    WriteSynonymTable(out, SyntheticSynonymTable());
  }
}

// --- build-vocab ---------------------------------------------------------

struct VocabArgs {
  std::string data;
  int min_freq = 1;
  std::string out;
};

void RunVocab(const VocabArgs& a) {
  const Vocab vocab = BuildVocab(ReadDialoguesFile(a.data), a.min_freq);
  auto out = OpenOut(a.out);
  vocab.Save(out);
}

// --- train ---------------------------------------------------------------

struct TrainArgs {
  std::string data;
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

void RunTrain(const TrainArgs& a) {
  TrainConfig config = ReadTrainConfigFile(a.config);
  if (a.seed) {
    // An explicit --seed drives every stream.
    config.seed = *a.seed;
    config.augmentation.seed = *a.seed;
    config.encoder.seed = *a.seed;
  }
  config.checkpoint = a.out;
  const auto dataset = ReadDialoguesFile(a.data);
  EpochCallback log;
  if (!a.quiet) {
    log = [](int epoch, double loss) {
      std::fprintf(stderr, "epoch %d mean loss %.6f\n", epoch + 1, loss);
    };
  }
  const Checkpoint ckpt = Train(dataset, config, nullptr, log);
  ckpt.Save(a.out);
}

// --- eval / robustness ---------------------------------------------------

struct EvalArgs {
  std::string data;
  std::string ckpt;
  int candidates = 10;
  std::string ks = "1,5";
  std::uint64_t seed = 0;
  std::string out;
};

void RunEval(const EvalArgs& a) {
  const Checkpoint ckpt = Checkpoint::Load(a.ckpt);
  const auto records =
      BuildEvalSet(ReadDialoguesFile(a.data), a.candidates, a.seed);
  const MetricsReport report = Evaluate(records, ckpt, ParseKs(a.ks), "clean");
  WriteJson(a.out, report.ToJson());
}

struct RobustArgs {
  EvalArgs eval;
  std::string synonyms;
  double word_rate = 0.3;
  double char_noise = 0.1;
};

void RunRobustness(const RobustArgs& a) {
  const Checkpoint ckpt = Checkpoint::Load(a.eval.ckpt);
  const auto records = BuildEvalSet(ReadDialoguesFile(a.eval.data),
                                    a.eval.candidates, a.eval.seed);
  std::shared_ptr<const SynonymTable> table;
  if (!a.synonyms.empty()) {
    table = std::make_shared<SynonymTable>(ReadSynonymTableFile(a.synonyms));
  }
  std::vector<PerturbationSpec> specs;
  for (PerturbKind kind :
       {PerturbKind::kTruncation, PerturbKind::kDeletion,
        PerturbKind::kReordering, PerturbKind::kTypo, PerturbKind::kSynonym}) {
    if (kind == PerturbKind::kSynonym && !table) continue;
    PerturbationSpec spec;
    spec.kind = kind;
    spec.word_rate = a.word_rate;
    spec.char_noise = a.char_noise;
    spec.synonyms = table;
    spec.seed = DeriveSeed(a.eval.seed, static_cast<std::uint64_t>(kind) + 1);
    specs.push_back(spec);
  }
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const MetricsReport& r :
       RobustnessSuite(records, ckpt, specs, ParseKs(a.eval.ks))) {
    out.push_back(r.ToJson());
  }
  WriteJson(a.eval.out, out);
}

// --- augment -------------------------------------------------------------

struct AugArgs {
  std::string data;
  std::string vocab;
  std::string out;
  std::string kind = "conmix";
  std::optional<double> rate;
  std::uint64_t seed = 0;
  int max_len = 0;
  int batch_size = 32;
};

void RunAugment(const AugArgs& a) {
  const auto dialogues = ReadDialoguesFile(a.data);
  if (dialogues.empty()) throw std::invalid_argument("empty corpus");
  std::ifstream vin(a.vocab);
  if (!vin) throw std::runtime_error("cannot open " + a.vocab);
  const Vocab vocab = Vocab::Load(vin);

  AugmentationSpec spec;
  spec.kind = ParseAugKind(a.kind);
  spec.rate = a.rate ? *a.rate : AugmentationSpec::DefaultRate(spec.kind);
  spec.seed = a.seed;
  spec.Validate();
  if (a.batch_size < 2) throw std::invalid_argument("batch_size must be >= 2");

  int max_len = a.max_len;
  if (max_len == 0) {
    for (const Dialogue& d : dialogues) {
      max_len = std::max(max_len, ContextLength(d.turns));
    }
  }
  // Batches of consecutive records; a trailing singleton joins the
  // previous batch so every row has a mixing partner.
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  for (std::size_t b = 0; b < dialogues.size(); b += a.batch_size) {
    ranges.emplace_back(b, std::min(dialogues.size(), b + a.batch_size));
  }
  if (ranges.size() > 1 && ranges.back().second - ranges.back().first < 2) {
    const std::size_t end = ranges.back().second;
    ranges.pop_back();
    ranges.back().second = end;
  }

  auto out = OpenOut(a.out);
  for (std::size_t r = 0; r < ranges.size(); ++r) {
    Batch batch;
    for (std::size_t i = ranges[r].first; i < ranges[r].second; ++i) {
      batch.contexts.push_back(
          TokenizeContext(dialogues[i].turns, vocab, max_len));
      batch.source.push_back(i);
    }
    const Batch aug = AugmentBatch(batch, spec, vocab, DeriveSeed(a.seed, r));
    for (int i = 0; i < aug.Size(); ++i) {
      const Dialogue& d = dialogues[batch.source[i]];
      nlohmann::ordered_json j;
      j["id"] = d.id;
      j["context"] = d.turns;
      j["response"] = d.response;
      j["aug_context"] = SequenceToTurns(aug.aug_contexts[i], vocab);
      out << j.dump() << '\n';
    }
  }
}

// --- perturb -------------------------------------------------------------

struct PerturbArgs {
  std::string data;
  std::string out;
  std::string kind = "typo";
  double word_rate = 0.3;
  double char_noise = 0.1;
  std::string synonyms;
  std::uint64_t seed = 0;
};

void RunPerturb(const PerturbArgs& a) {
  PerturbationSpec spec;
  spec.kind = ParsePerturbKind(a.kind);
  spec.word_rate = a.word_rate;
  spec.char_noise = a.char_noise;
  spec.seed = a.seed;
  if (!a.synonyms.empty()) {
    spec.synonyms =
        std::make_shared<SynonymTable>(ReadSynonymTableFile(a.synonyms));
  }
  spec.Validate();
  WriteDialoguesFile(a.out,
                     PerturbDataset(ReadDialoguesFile(a.data), spec, a.seed));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dialaug: dialogue response ranking with context augmentation"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-synthetic",
                                     "write a templated synthetic corpus");
  gen_cmd->add_option("--n", gen.n, "number of dialogues")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "generator seed")->capture_default_str();
  gen_cmd->add_option("--synonym-prob", gen.synonym_prob,
                      "chance a user word is said by a synonym")
      ->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "output JSONL")->required();
  gen_cmd->add_option("--synonyms-out", gen.synonyms_out,
                      "also write the generator's synonym table");

  VocabArgs voc;
  auto* voc_cmd = app.add_subcommand("build-vocab", "build a vocabulary file");
  voc_cmd->add_option("--data", voc.data, "dataset JSONL")->required();
  voc_cmd->add_option("--min-freq", voc.min_freq, "minimum word count")
      ->capture_default_str();
  voc_cmd->add_option("--out", voc.out, "vocab file")->required();

  TrainArgs tr;
  auto* tr_cmd = app.add_subcommand("train", "train a checkpoint");
  tr_cmd->add_option("--data", tr.data, "training JSONL")->required();
  tr_cmd->add_option("--config", tr.config, "key = value config file")
      ->required();
  tr_cmd->add_option("--out", tr.out, "checkpoint path")->required();
  tr_cmd->add_option("--seed", tr.seed, "override every seed in the config");
  tr_cmd->add_flag("--quiet", tr.quiet, "no per-epoch log");

  EvalArgs ev;
  auto* ev_cmd = app.add_subcommand("eval", "Recall@k and MRR on a dataset");
  auto add_eval_opts = [](CLI::App* cmd, EvalArgs& e) {
    cmd->add_option("--data", e.data, "eval JSONL")->required();
    cmd->add_option("--ckpt", e.ckpt, "checkpoint")->required();
    cmd->add_option("--candidates", e.candidates, "candidates per record")
        ->capture_default_str();
    cmd->add_option("--ks", e.ks, "comma-separated recall cutoffs")
        ->capture_default_str();
    cmd->add_option("--seed", e.seed, "candidate sampling seed")
        ->capture_default_str();
    cmd->add_option("--out", e.out, "metrics JSON")->required();
  };
  add_eval_opts(ev_cmd, ev);

  RobustArgs rb;
  auto* rb_cmd = app.add_subcommand(
      "robustness", "clean and perturbed metrics as a JSON array");
  add_eval_opts(rb_cmd, rb.eval);
  rb_cmd->add_option("--synonyms", rb.synonyms, "synonym TSV");
  rb_cmd->add_option("--word-rate", rb.word_rate, "word perturbation rate")
      ->capture_default_str();
  rb_cmd->add_option("--char-noise", rb.char_noise, "per-character typo rate")
      ->capture_default_str();

  AugArgs ag;
  auto* ag_cmd = app.add_subcommand("augment",
                                    "add an aug_context field to a dataset");
  ag_cmd->add_option("--data", ag.data, "dataset JSONL")->required();
  ag_cmd->add_option("--vocab", ag.vocab, "vocab file")->required();
  ag_cmd->add_option("--out", ag.out, "output JSONL")->required();
  ag_cmd->add_option("--kind", ag.kind,
                     "none|conmix|subsequence|deletion|reordering|replacement")
      ->capture_default_str();
  ag_cmd->add_option("--rate", ag.rate, "kind-specific rate");
  ag_cmd->add_option("--seed", ag.seed, "augmentation seed")
      ->capture_default_str();
  ag_cmd->add_option("--max-len", ag.max_len,
                     "context token cap (0 = longest context)")
      ->capture_default_str();
  ag_cmd->add_option("--batch-size", ag.batch_size,
                     "records per mixing batch")
      ->capture_default_str();

  PerturbArgs pt;
  auto* pt_cmd = app.add_subcommand("perturb", "perturb dataset contexts");
  pt_cmd->add_option("--data", pt.data, "dataset JSONL")->required();
  pt_cmd->add_option("--out", pt.out, "output JSONL")->required();
  pt_cmd->add_option("--kind", pt.kind,
                     "truncation|deletion|reordering|typo|synonym")
      ->capture_default_str();
  pt_cmd->add_option("--word-rate", pt.word_rate, "word perturbation rate")
      ->capture_default_str();
  pt_cmd->add_option("--char-noise", pt.char_noise, "per-character typo rate")
      ->capture_default_str();
  pt_cmd->add_option("--synonyms", pt.synonyms, "synonym TSV");
  pt_cmd->add_option("--seed", pt.seed, "perturbation seed")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) RunGen(gen);
    if (*voc_cmd) RunVocab(voc);
    if (*tr_cmd) RunTrain(tr);
    if (*ev_cmd) RunEval(ev);
    if (*rb_cmd) RunRobustness(rb);
    if (*ag_cmd) RunAugment(ag);
    if (*pt_cmd) RunPerturb(pt);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "dialaug: %s\n", e.what());
    return 1;
  }
  return 0;
}
