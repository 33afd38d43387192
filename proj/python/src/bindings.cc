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

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dialaug/augment.h"
#include "dialaug/corpus.h"
#include "dialaug/evaluation.h"
#include "dialaug/objective.h"
#include "dialaug/perturb.h"
#include "dialaug/rng.h"
#include "dialaug/synthetic.h"
#include "dialaug/trainer.h"

namespace py = pybind11;

namespace dialaug {
namespace {

py::dict DialogueToDict(const Dialogue& d) {
  py::dict out;
  out["id"] = d.id;
  out["context"] = d.turns;
  out["response"] = d.response;
  return out;
}

Dialogue DialogueFromDict(const py::handle& h) {
  const py::dict d = py::reinterpret_borrow<py::dict>(h);
  Dialogue out;
  out.id = d.contains("id") ? d["id"].cast<std::string>() : "";
  out.turns = d["context"].cast<std::vector<std::string>>();
  out.response = d["response"].cast<std::string>();
  if (out.turns.empty()) throw std::invalid_argument("empty context");
  return out;
}

std::vector<Dialogue> DialoguesFromList(const py::iterable& items) {
  std::vector<Dialogue> out;
  for (const py::handle& h : items) out.push_back(DialogueFromDict(h));
  return out;
}

py::list DialoguesToList(const std::vector<Dialogue>& dialogues) {
  py::list out;
  for (const Dialogue& d : dialogues) out.append(DialogueToDict(d));
  return out;
}

py::dict MetricsToDict(const MetricsReport& m) {
  py::dict recall;
  for (const auto& [k, v] : m.recall_at) recall[py::int_(k)] = v;
  py::dict out;
  out["kind"] = m.kind;
  out["n"] = m.n;
  out["recall"] = recall;
  out["mrr"] = m.mrr;
  return out;
}

BatchEmbeddings Embeddings(const Matrix& ctx, const Matrix& aug,
                           const Matrix& resp) {
  BatchEmbeddings e;
  e.ctx = ctx;
  e.aug = aug;
  e.resp = resp;
  return e;
}

std::vector<PerturbationSpec> SuiteSpecs(
    const std::vector<std::string>& kinds, double word_rate, double char_noise,
    const std::optional<SynonymTable>& synonyms, std::uint64_t seed) {
  std::shared_ptr<const SynonymTable> table;
  if (synonyms) table = std::make_shared<SynonymTable>(*synonyms);
  std::vector<PerturbationSpec> specs;
  for (const std::string& name : kinds) {
    PerturbationSpec s;
    s.kind = ParsePerturbKind(name);
    s.word_rate = word_rate;
    s.char_noise = char_noise;
    s.synonyms = table;
    s.seed = DeriveSeed(seed, static_cast<std::uint64_t>(s.kind) + 1);
    specs.push_back(s);
  }
  return specs;
}

}  // namespace
}  // namespace dialaug

PYBIND11_MODULE(_dialaug, m) {
  using namespace dialaug;
  m.doc() = "Dual-encoder response ranking with ConMix augmentation";

  m.def(
      "generate_synthetic",
      [](int n, std::uint64_t seed, double synonym_prob) {
        return DialoguesToList(GenerateSynthetic({n, seed, synonym_prob}));
      },
      py::arg("n") = 1000, py::arg("seed") = 0, py::arg("synonym_prob") = 0.1,
      "Templated ticket-booking dialogues as {id, context, response} dicts.");
  m.def("synthetic_synonyms", &SyntheticSynonymTable,
        "Synonym table over the synthetic slot and filler words.");

  m.def(
      "read_dialogues",
      [](const std::string& path) {
        return DialoguesToList(ReadDialoguesFile(path));
      },
      py::arg("path"));
  m.def(
      "write_dialogues",
      [](const std::string& path, const py::iterable& dialogues) {
        WriteDialoguesFile(path, DialoguesFromList(dialogues));
      },
      py::arg("path"), py::arg("dialogues"));

  m.def(
      "conmix",
      [](const std::vector<std::vector<int>>& contexts, double lambda_mix,
         std::uint64_t seed) {
        Batch b;
        for (const auto& ids : contexts) b.contexts.push_back(MakeSequence(ids));
        Rng rng(seed);
        const Batch out = ConMixBatch(b, lambda_mix, rng);
        std::vector<std::vector<int>> aug;
        for (const TokenSequence& s : out.aug_contexts) aug.push_back(s.ids);
        return py::make_tuple(aug, out.partner);
      },
      py::arg("contexts"), py::arg("lambda_mix") = 0.7, py::arg("seed") = 0,
      "Mixes padded id rows with random in-batch partners. Returns "
      "(mixed rows, partner index per row).");

  m.def(
      "perturb",
      [](const py::iterable& dialogues, const std::string& kind,
         double word_rate, double char_noise,
         const std::optional<SynonymTable>& synonyms, std::uint64_t seed) {
        PerturbationSpec spec;
        spec.kind = ParsePerturbKind(kind);
        spec.word_rate = word_rate;
        spec.char_noise = char_noise;
        if (synonyms) spec.synonyms = std::make_shared<SynonymTable>(*synonyms);
        return DialoguesToList(
            PerturbDataset(DialoguesFromList(dialogues), spec, seed));
      },
      py::arg("dialogues"), py::arg("kind"), py::arg("word_rate") = 0.3,
      py::arg("char_noise") = 0.1, py::arg("synonyms") = py::none(),
      py::arg("seed") = 0);

  m.def(
      "ranking_loss",
      [](const Matrix& ctx, const Matrix& aug, const Matrix& resp) {
        return RankingLoss(Embeddings(ctx, aug, resp));
      },
      py::arg("ctx"), py::arg("aug"), py::arg("resp"),
      "Mean in-batch cross-entropy over the original and augmented views.");
  m.def(
      "contrastive_loss",
      [](const Matrix& z_ctx, const Matrix& z_aug, const Matrix& z_resp,
         double tau) {
        BatchEmbeddings e;
        e.ctx = e.aug = e.resp = Matrix::Zero(z_ctx.rows(), 1);
        e.z_ctx = z_ctx;
        e.z_aug = z_aug;
        e.z_resp = z_resp;
        return ContrastiveLoss(e, tau);
      },
      py::arg("z_ctx"), py::arg("z_aug"), py::arg("z_resp"),
      py::arg("tau") = 0.5,
      "Multi-positive NT-Xent over the three projected views.");

  m.def(
      "compute_metrics",
      [](const std::vector<std::vector<double>>& scores,
         const std::vector<int>& gold, const std::vector<int>& ks) {
        if (scores.size() != gold.size()) {
          throw std::invalid_argument("scores and gold differ in length");
        }
        std::vector<EvalRecord> records(scores.size());
        for (std::size_t i = 0; i < scores.size(); ++i) {
          records[i].context = {"-"};
          records[i].candidates.assign(scores[i].size(), "-");
          records[i].scores = scores[i];
          records[i].gold_index = gold[i];
        }
        return MetricsToDict(ComputeMetrics(records, ks));
      },
      py::arg("scores"), py::arg("gold"), py::arg("ks") = std::vector<int>{1, 5});

  py::class_<Checkpoint>(m, "Checkpoint")
      .def_static("load", &Checkpoint::Load, py::arg("path"))
      .def_static("from_json", &Checkpoint::Deserialize, py::arg("text"))
      .def("save", &Checkpoint::Save, py::arg("path"))
      .def("to_json", &Checkpoint::Serialize)
      .def_property_readonly("vocab_size",
                             [](const Checkpoint& c) { return c.vocab().Size(); })
      .def_property_readonly("max_ctx", &Checkpoint::max_ctx)
      .def_property_readonly("max_resp", &Checkpoint::max_resp)
      .def("context_vector", &Checkpoint::ContextVector, py::arg("turns"))
      .def("response_vector", &Checkpoint::ResponseVector, py::arg("text"))
      .def(
          "rank",
          [](const Checkpoint& c, const std::vector<std::string>& context,
             const std::vector<std::string>& candidates) {
            return RankCandidates(context, candidates, c);
          },
          py::arg("context"), py::arg("candidates"),
          "Dot-product scores of each candidate against the context.")
      .def(
          "evaluate",
          [](const Checkpoint& c, const py::iterable& dialogues,
             int n_candidates, std::uint64_t seed, const std::vector<int>& ks) {
            const auto records =
                BuildEvalSet(DialoguesFromList(dialogues), n_candidates, seed);
            return MetricsToDict(Evaluate(records, c, ks));
          },
          py::arg("dialogues"), py::arg("n_candidates") = 10,
          py::arg("seed") = 0, py::arg("ks") = std::vector<int>{1, 5})
      .def(
          "robustness",
          [](const Checkpoint& c, const py::iterable& dialogues,
             const std::vector<std::string>& kinds, int n_candidates,
             double word_rate, double char_noise,
             const std::optional<SynonymTable>& synonyms, std::uint64_t seed,
             const std::vector<int>& ks) {
            const auto records =
                BuildEvalSet(DialoguesFromList(dialogues), n_candidates, seed);
            py::list out;
            for (const MetricsReport& r : RobustnessSuite(
                     records, c,
                     SuiteSpecs(kinds, word_rate, char_noise, synonyms, seed),
                     ks)) {
              out.append(MetricsToDict(r));
            }
            return out;
          },
          py::arg("dialogues"),
          py::arg("kinds") = std::vector<std::string>{"truncation", "deletion",
                                                      "reordering", "typo"},
          py::arg("n_candidates") = 10, py::arg("word_rate") = 0.3,
          py::arg("char_noise") = 0.1, py::arg("synonyms") = py::none(),
          py::arg("seed") = 0, py::arg("ks") = std::vector<int>{1, 5});

  m.def(
      "train",
      [](const py::iterable& dialogues, const std::string& config,
         const std::function<void(int, double)>& on_epoch) {
        std::istringstream in(config);
        const TrainConfig cfg = ParseTrainConfig(in);
        const auto data = DialoguesFromList(dialogues);
        TrainHistory history;
        EpochCallback cb;
        if (on_epoch) cb = on_epoch;
        Checkpoint ckpt = [&] {
          py::gil_scoped_release release;
          return Train(data, cfg, &history, cb ? EpochCallback([&](int e, double l) {
                                                   py::gil_scoped_acquire acquire;
                                                   cb(e, l);
                                                 })
                                               : EpochCallback());
        }();
        return py::make_tuple(std::move(ckpt), history.epoch_loss);
      },
      py::arg("dialogues"), py::arg("config") = "",
      py::arg("on_epoch") = nullptr,
      "Trains from a key = value config string. Returns (checkpoint, "
      "per-epoch mean losses).");
}
