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

// Acceptance checks 1-9. Each prints one line:
//   criterion N: PASS|FAIL <measurements>
// and the process exits non-zero if any requested check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dialaug/adam.h"
#include "dialaug/augment.h"
#include "dialaug/corpus.h"
#include "dialaug/encoder.h"
#include "dialaug/evaluation.h"
#include "dialaug/objective.h"
#include "dialaug/perturb.h"
#include "dialaug/rng.h"
#include "dialaug/synthetic.h"
#include "dialaug/trainer.h"
#include "oracles.h"
#include "test_util.h"

namespace dialaug {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

TrainConfig ConfigFromText(const std::string& text) {
  std::istringstream in(text);
  return ParseTrainConfig(in);
}

// --- 1: ConMix statistics ------------------------------------------------

Outcome ConMixStatistics() {
  const auto start = Clock::now();
  Rng rng(101);
  long zeros = 0, unprotected = 0;
  while (unprotected < 20000) {
    const TokenSequence s = testing::FullContext(rng, 500, 256);
    const MixMask m = SampleMixMask(s, 0.7, rng);
    for (int p = 0; p < s.Length(); ++p) {
      if (s.protected_mask[p]) continue;
      ++unprotected;
      zeros += !m.bits[p];
    }
  }
  const double fraction = static_cast<double>(zeros) / unprotected;

  long violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Rng trial_rng(DeriveSeed(102, trial));
    Batch b;
    for (int i = 0; i < 8; ++i) {
      b.contexts.push_back(testing::RandomContext(trial_rng, 60, 48));
    }
    const Batch out = ConMixBatch(b, 0.7, trial_rng);
    for (int i = 0; i < b.Size(); ++i) {
      const TokenSequence& in = b.contexts[i];
      for (int p = 0; p < in.Length(); ++p) {
        if (IsProtectedId(in.ids[p]) && out.aug_contexts[i].ids[p] != in.ids[p]) {
          ++violations;
        }
      }
    }
  }
  const double secs = Seconds(start);
  const bool pass = std::abs(fraction - 0.30) <= 0.02 && violations == 0 && secs < 5;
  return {pass, Fmt("replaced %.4f over %ld positions (0.30 +- 0.02), "
                    "%ld protected-token changes in 1000 trials, %.2fs",
                    fraction, unprotected, violations, secs)};
}

// --- 2: mixing identity --------------------------------------------------

Outcome MixingExactness() {
  const auto start = Clock::now();
  Rng rng(201);
  long mismatches = 0, cases = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int b = 2 + static_cast<int>(rng.UniformInt(6));
    Batch batch;
    for (int i = 0; i < b; ++i) {
      batch.contexts.push_back(testing::RandomContext(rng, 40, 24));
    }
    std::vector<int> partner(b);
    std::vector<MixMask> masks(b);
    // Trial 0 is the all-ones mask, trial 1 zeros every unprotected bit.
    for (int i = 0; i < b; ++i) {
      partner[i] = static_cast<int>((i + 1 + rng.UniformInt(b - 1)) % b);
      const TokenSequence& c = batch.contexts[i];
      masks[i].lambda_mix = 0.7;
      masks[i].bits.resize(c.Length());
      for (int p = 0; p < c.Length(); ++p) {
        bool bit = rng.Bernoulli(0.7);
        if (trial == 0) bit = true;
        if (trial == 1) bit = false;
        masks[i].bits[p] = bit || c.protected_mask[p];
      }
    }
    const Batch out = ConMixBatchWithMasks(batch, partner, masks);
    for (int i = 0; i < b; ++i) {
      const auto& ci = batch.contexts[i].ids;
      const auto& cj = batch.contexts[partner[i]].ids;
      for (std::size_t p = 0; p < ci.size(); ++p) {
        // m * C_i + (1 - m) * C_j, with PAD in C_j acting as m = 1.
        const int m = masks[i].bits[p] || cj[p] == kPadId ? 1 : 0;
        const int want = m * ci[p] + (1 - m) * cj[p];
        mismatches += out.aug_contexts[i].ids[p] != want;
      }
      if (trial == 0) mismatches += out.aug_contexts[i] != batch.contexts[i];
      ++cases;
    }
  }
  const double secs = Seconds(start);
  return {mismatches == 0 && secs < 5,
          Fmt("%ld mismatched tokens over %ld rows in 1000 batches, %.2fs",
              mismatches, cases, secs)};
}

// --- 3: loss oracles -----------------------------------------------------

Outcome LossOracles() {
  const auto start = Clock::now();
  Rng rng(301);
  double worst = 0.0;
  for (int b : {2, 3, 4}) {
    for (int p : {2, 8}) {
      for (double tau : {0.1, 0.5, 1.0}) {
        for (int rep = 0; rep < 5; ++rep) {
          const BatchEmbeddings e = oracles::RandomEmbeddings(rng, b, 4, p);
          const double got = ContrastiveLoss(e, tau);
          const double want = oracles::BruteForceContrastive(e, tau);
          worst = std::max(worst, std::abs(got - want) / std::abs(want));
        }
      }
    }
  }
  BatchEmbeddings same;
  same.ctx = same.aug = same.resp = Matrix::Zero(2, 3);
  same.z_ctx = same.z_aug = same.z_resp = Matrix::Constant(2, 3, 0.4);
  const double ln3_err = std::abs(ContrastiveLoss(same, 0.5) - std::log(3.0));
  double lnb_err = 0.0;
  for (int b : {2, 5, 32}) {
    BatchEmbeddings u;
    u.ctx = u.aug = u.resp = Matrix::Zero(b, 4);
    lnb_err = std::max(lnb_err, std::abs(RankingLoss(u) - std::log(b)));
  }
  const double secs = Seconds(start);
  const bool pass = worst < 1e-8 && ln3_err <= 1e-9 && lnb_err <= 1e-9 && secs < 10;
  return {pass, Fmt("contrastive max rel err %.2e (< 1e-8), |L - ln 3| %.1e, "
                    "|ranking - ln B| %.1e, %.2fs",
                    worst, ln3_err, lnb_err, secs)};
}

// --- 4: end-to-end gradients ---------------------------------------------

Outcome GradientCheck() {
  const auto start = Clock::now();
  SyntheticOptions opt;
  opt.n = 12;
  opt.seed = 401;
  const auto data = GenerateSynthetic(opt);
  TrainConfig cfg = ConfigFromText(
      "d_model = 8\nn_layers = 1\nn_heads = 2\nd_ffn = 16\nproj_dim = 8\n"
      "dropout = 0\nbatch_size = 3\nlambda_cl = 0.5\ntau = 0.5\n"
      "aug_kind = conmix\naug_rate = 0.7\nseed = 4\nmax_ctx = 24\n"
      "max_resp = 16\n");
  Checkpoint ckpt = InitCheckpoint(data, cfg);
  const auto batches = MakeBatches(data, ckpt.vocab(), 3, ckpt.max_ctx(),
                                   ckpt.max_resp(), 5);
  const Batch batch = AugmentBatch(batches[0], cfg.augmentation, ckpt.vocab(), 6);
  EncoderParams& params = ckpt.mutable_params();
  EncoderParams grads(params.config());
  BatchLossAndGradients(params, batch, cfg.loss, false, nullptr, false, &grads);
  const EncoderParams analytic = grads;

  auto loss_at = [&](EncoderParams& ps) {
    EncoderParams scratch(ps.config());
    return BatchLossAndGradients(ps, batch, cfg.loss, false, nullptr, false,
                                 &scratch)
        .total;
  };
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < analytic.NumValues(); ++i) {
    if (std::abs(analytic.values()[i]) > 1e-8) live.push_back(i);
  }
  Rng rng(402);
  const double h = 1e-5;
  double worst = 0.0;
  int checked = 0;
  std::vector<bool> seen(analytic.NumValues(), false);
  while (checked < 200 && checked < static_cast<int>(live.size())) {
    const std::size_t i = live[rng.UniformInt(live.size())];
    if (seen[i]) continue;
    seen[i] = true;
    const double saved = params.values()[i];
    params.values()[i] = saved + h;
    const double up = loss_at(params);
    params.values()[i] = saved - h;
    const double down = loss_at(params);
    params.values()[i] = saved;
    const double fd = (up - down) / (2 * h);
    const double a = analytic.values()[i];
    worst = std::max(worst, std::abs(a - fd) / std::max(std::abs(a), std::abs(fd)));
    ++checked;
  }
  const double secs = Seconds(start);
  return {worst < 1e-4 && checked >= 100 && secs < 60,
          Fmt("max rel err %.2e over %d coordinates (%zu live of %zu), %.2fs",
              worst, checked, live.size(), analytic.NumValues(), secs)};
}

// --- 5: metric oracles ---------------------------------------------------

Outcome MetricOracles() {
  const auto start = Clock::now();
  Rng rng(501);
  const std::vector<int> ks = {1, 2, 3, 5, 10};
  int bad = 0, nonmonotone = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const auto records = oracles::RandomScoredRecords(rng, 1);
    const MetricsReport m = ComputeMetrics(records, ks);
    const auto want = oracles::SortBasedMetrics(records, ks);
    for (int k : ks) bad += m.recall_at.at(k) != want.recall.at(k);
    bad += std::abs(m.mrr - want.mrr) > 1e-15;
    for (std::size_t j = 1; j < ks.size(); ++j) {
      nonmonotone += m.recall_at.at(ks[j]) < m.recall_at.at(ks[j - 1]);
    }
  }
  const auto pooled = oracles::RandomScoredRecords(rng, 1000);
  const MetricsReport m = ComputeMetrics(pooled, ks);
  const auto want = oracles::SortBasedMetrics(pooled, ks);
  for (int k : ks) bad += std::abs(m.recall_at.at(k) - want.recall.at(k)) > 1e-15;
  bad += std::abs(m.mrr - want.mrr) > 1e-12;
  const double secs = Seconds(start);
  return {bad == 0 && nonmonotone == 0 && secs < 5,
          Fmt("%d oracle mismatches, %d monotonicity violations over 1000 "
              "records, pooled R@1 %.4f MRR %.4f, %.2fs",
              bad, nonmonotone, m.recall_at.at(1), m.mrr, secs)};
}

// --- shared synthetic protocol -------------------------------------------

struct Protocol {
  std::vector<Dialogue> train;
  std::vector<EvalRecord> test;
};

Protocol SyntheticProtocol() {
  Protocol p;
  SyntheticOptions opt;
  opt.n = 1000;
  opt.seed = 1;
  p.train = GenerateSynthetic(opt);
  opt.n = 300;
  opt.seed = 2;
  p.test = BuildEvalSet(GenerateSynthetic(opt), 50, 0);
  return p;
}

// --- 6: training sanity --------------------------------------------------

Outcome TrainingSanity() {
  const auto start = Clock::now();
  const Protocol p = SyntheticProtocol();
  const TrainConfig cfg = ConfigFromText(
      "epochs = 20\nbatch_size = 32\nlearning_rate = 0.001\nseed = 7\n"
      "aug_kind = none\nlambda_cl = 0\nd_model = 32\nn_layers = 1\n"
      "n_heads = 2\nd_ffn = 64\nproj_dim = 32\ndropout = 0.1\n");
  const Checkpoint untrained = InitCheckpoint(p.train, cfg);
  const double r0 = Evaluate(p.test, untrained, {1}).recall_at.at(1);
  TrainHistory h1, h2;
  const Checkpoint a = Train(p.train, cfg, &h1);
  const Checkpoint b = Train(p.train, cfg, &h2);
  const double r1 = Evaluate(p.test, a, {1}).recall_at.at(1);
  const bool identical = h1.step_loss == h2.step_loss && a.Serialize() == b.Serialize();
  const double secs = Seconds(start);
  return {r1 >= 0.6 && r1 > r0 && identical && secs < 900,
          Fmt("R@1 trained %.4f (>= 0.6), untrained %.4f, reruns %s, %.1fs",
              r1, r0, identical ? "bit-identical" : "DIFFER", secs)};
}

// --- 7: directional robustness -------------------------------------------

Outcome DirectionalRobustness() {
  const auto start = Clock::now();
  const Protocol p = SyntheticProtocol();
  const auto table = std::make_shared<SynonymTable>(SyntheticSynonymTable());
  std::vector<PerturbationSpec> specs;
  for (PerturbKind kind : {PerturbKind::kTypo, PerturbKind::kSynonym}) {
    PerturbationSpec s;
    s.kind = kind;
    s.synonyms = table;
    s.seed = DeriveSeed(0, static_cast<std::uint64_t>(kind) + 1);
    specs.push_back(s);
  }
  const std::string common =
      "batch_size = 32\nd_model = 64\nn_layers = 2\nn_heads = 4\n"
      "d_ffn = 128\nproj_dim = 64\ndropout = 0.1\nepochs = 30\n"
      "learning_rate = 0.001\n";
  const std::string arms[2] = {
      "aug_kind = none\nlambda_cl = 0\n",
      "aug_kind = conmix\naug_rate = 0.7\nlambda_cl = 0.5\n"};
  // mean[arm][clean, typo, synonym]
  double mean[2][3] = {};
  std::string per_seed;
  for (int seed : {7, 8, 9}) {
    for (int arm = 0; arm < 2; ++arm) {
      const TrainConfig cfg = ConfigFromText(
          "seed = " + std::to_string(seed) + "\n" + common + arms[arm]);
      const Checkpoint ckpt = Train(p.train, cfg);
      const auto reports = RobustnessSuite(p.test, ckpt, specs, {1});
      for (int r = 0; r < 3; ++r) mean[arm][r] += reports[r].recall_at.at(1) / 3.0;
      per_seed += Fmt(" %s%d[%.3f %.3f %.3f]", arm ? "cm" : "none", seed,
                      reports[0].recall_at.at(1), reports[1].recall_at.at(1),
                      reports[2].recall_at.at(1));
    }
  }
  const double secs = Seconds(start);
  const bool pass = mean[1][1] > mean[0][1] && mean[1][2] > mean[0][2] &&
                    mean[1][0] - mean[0][0] >= -0.02 && secs < 3600;
  return {pass, Fmt("mean R@1 conmix+cl vs none: clean %.4f/%.4f typo %.4f/%.4f "
                    "synonym %.4f/%.4f, %.0fs;",
                    mean[1][0], mean[0][0], mean[1][1], mean[0][1], mean[1][2],
                    mean[0][2], secs) +
                    per_seed};
}

// --- 8: single-view degeneracy -------------------------------------------

// Plain dual-encoder step: mean CE over in-batch scores of CLS vectors.
double ReferenceStep(const EncoderParams& params, const Batch& batch,
                     EncoderParams* grads) {
  const int b = batch.Size();
  const int d = params.config().d_model;
  std::vector<EncodeCache> cc(b), rc(b);
  std::vector<Vector> c(b), r(b);
  for (int i = 0; i < b; ++i) {
    c[i] = Encode(batch.contexts[i], params, false, nullptr, &cc[i]);
    r[i] = Encode(batch.responses[i], params, false, nullptr, &rc[i]);
  }
  double loss = 0.0;
  std::vector<Vector> dc(b, Vector::Zero(d)), dr(b, Vector::Zero(d));
  for (int i = 0; i < b; ++i) {
    std::vector<double> s(b);
    double mx = -1e300;
    for (int k = 0; k < b; ++k) {
      s[k] = c[i].dot(r[k]);
      mx = std::max(mx, s[k]);
    }
    double z = 0.0;
    for (int k = 0; k < b; ++k) z += std::exp(s[k] - mx);
    loss += -(s[i] - mx - std::log(z)) / b;
    for (int k = 0; k < b; ++k) {
      const double g = (std::exp(s[k] - mx) / z - (k == i ? 1.0 : 0.0)) / b;
      dc[i] += g * r[k];
      dr[k] += g * c[i];
    }
  }
  for (double& v : grads->values()) v = 0.0;
  for (int i = 0; i < b; ++i) {
    EncodeBackward(dc[i], cc[i], params, grads);
    EncodeBackward(dr[i], rc[i], params, grads);
  }
  return loss;
}

Outcome SingleViewDegeneracy() {
  const auto start = Clock::now();
  SyntheticOptions opt;
  opt.n = 80;
  opt.seed = 801;
  const auto data = GenerateSynthetic(opt);
  const TrainConfig cfg = ConfigFromText(
      "epochs = 2\nbatch_size = 16\nlearning_rate = 0.003\nseed = 8\n"
      "aug_kind = none\nlambda_cl = 0\nd_model = 16\nn_layers = 1\n"
      "n_heads = 2\nd_ffn = 32\nproj_dim = 8\ndropout = 0\n");
  TrainHistory history;
  Train(data, cfg, &history);

  Checkpoint ref = InitCheckpoint(data, cfg);
  EncoderParams& params = ref.mutable_params();
  EncoderParams grads(params.config());
  const std::size_t n = params.NumValues();
  std::vector<double> m(n, 0.0), v(n, 0.0);
  std::vector<double> losses;
  long t = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto batches =
        MakeBatches(data, ref.vocab(), cfg.batch_size, ref.max_ctx(),
                    ref.max_resp(), DeriveSeed(cfg.seed, 2 * epoch));
    for (const Batch& batch : batches) {
      losses.push_back(ReferenceStep(params, batch, &grads));
      ++t;
      const double c1 = 1.0 - std::pow(0.9, t), c2 = 1.0 - std::pow(0.999, t);
      for (std::size_t i = 0; i < n; ++i) {
        const double g = grads.values()[i];
        m[i] = 0.9 * m[i] + 0.1 * g;
        v[i] = 0.999 * v[i] + 0.001 * g * g;
        params.values()[i] -= 0.003 * (m[i] / c1) / (std::sqrt(v[i] / c2) + 1e-8);
      }
    }
  }
  double worst = 0.0;
  const std::size_t steps = std::min(losses.size(), history.step_loss.size());
  for (std::size_t s = 0; s < steps; ++s) {
    worst = std::max(worst, std::abs(losses[s] - history.step_loss[s]));
  }
  const double secs = Seconds(start);
  return {steps >= 10 && losses.size() == history.step_loss.size() && worst < 1e-6,
          Fmt("max per-step loss gap %.2e over %zu steps, %.2fs", worst, steps,
              secs)};
}

// --- 9: CLI determinism --------------------------------------------------

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome CliDeterminism(const std::string& cli, const fs::path& workdir) {
  const auto start = Clock::now();
  if (cli.empty()) return {false, "no --cli binary given"};
  fs::remove_all(workdir);
  fs::create_directories(workdir);
  {
    std::ofstream cfg(workdir / "train.cfg");
    cfg << "epochs = 2\nbatch_size = 16\nd_model = 16\nn_layers = 1\n"
           "n_heads = 2\nd_ffn = 32\nproj_dim = 8\ndropout = 0.1\n"
           "aug_kind = conmix\naug_rate = 0.7\nlambda_cl = 0.5\n";
  }
  const std::string w = workdir.string() + "/";
  // Each entry writes {out} (and optionally {out}.syn) from fixed inputs.
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"gen-synthetic", "gen-synthetic --n 120 --seed 3 --out {out} "
                        "--synonyms-out {out}.syn"},
      {"build-vocab", "build-vocab --data " + w + "data.jsonl --out {out}"},
      {"train", "train --quiet --data " + w + "data.jsonl --config " + w +
                    "train.cfg --seed 5 --out {out}"},
      {"eval", "eval --data " + w + "data.jsonl --ckpt " + w +
                   "ckpt.json --candidates 10 --seed 5 --out {out}"},
      {"robustness", "robustness --data " + w + "data.jsonl --ckpt " + w +
                         "ckpt.json --candidates 10 --synonyms " + w +
                         "syn.tsv --seed 5 --out {out}"},
      {"augment", "augment --data " + w + "data.jsonl --vocab " + w +
                      "vocab.txt --kind conmix --seed 5 --out {out}"},
      {"perturb", "perturb --data " + w + "data.jsonl --kind typo --seed 5 "
                  "--out {out}"},
  };
  // Shared inputs for the downstream commands.
  auto run = [&](const std::string& args) {
    const std::string cmd = "\"" + cli + "\" " + args + " 2>>\"" + w + "stderr.log\"";
    return std::system(cmd.c_str());
  };
  if (run("gen-synthetic --n 120 --seed 3 --out " + w + "data.jsonl --synonyms-out " +
          w + "syn.tsv") != 0 ||
      run("build-vocab --data " + w + "data.jsonl --out " + w + "vocab.txt") != 0 ||
      run("train --quiet --data " + w + "data.jsonl --config " + w +
          "train.cfg --seed 5 --out " + w + "ckpt.json") != 0) {
    return {false, "setup commands failed; see " + w + "stderr.log"};
  }
  std::string detail;
  bool pass = true;
  for (const auto& [name, tmpl] : commands) {
    std::string outputs[2];
    bool ok = true;
    for (int rep = 0; rep < 2; ++rep) {
      const std::string out = w + name + "_" + std::to_string(rep) + ".out";
      std::string args = tmpl;
      for (std::size_t pos; (pos = args.find("{out}")) != std::string::npos;) {
        args.replace(pos, 5, out);
      }
      ok = ok && run(args) == 0;
      outputs[rep] = Slurp(out);
      if (fs::exists(out + ".syn")) outputs[rep] += Slurp(out + ".syn");
    }
    const bool same = ok && !outputs[0].empty() && outputs[0] == outputs[1];
    pass = pass && same;
    detail += " " + name + (same ? "=same" : ok ? "=DIFF" : "=ERROR");
  }
  const double secs = Seconds(start);
  return {pass, Fmt("%.1fs;", secs) + detail};
}

}  // namespace
}  // namespace dialaug

int main(int argc, char** argv) {
  CLI::App app{"DialAug acceptance checks"};
  std::vector<int> which;
  std::string cli;
  std::string workdir = "acceptance_cli";
  app.add_option("criteria", which, "criterion numbers (default: all)")
      ->check(CLI::Range(1, 9));
  app.add_option("--cli", cli, "path to the dialaug binary (criterion 9)");
  app.add_option("--workdir", workdir, "scratch directory (criterion 9)");
  CLI11_PARSE(app, argc, argv);
  if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7, 8, 9};

  using dialaug::Outcome;
  bool all = true;
  for (int n : which) {
    Outcome o;
    try {
      switch (n) {
        case 1: o = dialaug::ConMixStatistics(); break;
        case 2: o = dialaug::MixingExactness(); break;
        case 3: o = dialaug::LossOracles(); break;
        case 4: o = dialaug::GradientCheck(); break;
        case 5: o = dialaug::MetricOracles(); break;
        case 6: o = dialaug::TrainingSanity(); break;
        case 7: o = dialaug::DirectionalRobustness(); break;
        case 8: o = dialaug::SingleViewDegeneracy(); break;
        case 9: o = dialaug::CliDeterminism(cli, workdir); break;
      }
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d: %s %s\n", n, o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
