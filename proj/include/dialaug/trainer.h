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

#ifndef DIALAUG_TRAINER_H_
#define DIALAUG_TRAINER_H_

#include <cstdint>
#include <functional>
#include <istream>
#include <string>
#include <vector>

#include "dialaug/adam.h"
#include "dialaug/augment.h"
#include "dialaug/corpus.h"
#include "dialaug/encoder.h"
#include "dialaug/objective.h"

namespace dialaug {

struct TrainConfig {
  int epochs = 20;
  int batch_size = 32;
  AdamConfig adam;
  std::uint64_t seed = 0;
  AugmentationSpec augmentation;
  LossConfig loss;
  // vocab_size and max_len of 0 are filled in from the data.
  EncoderConfig encoder{.vocab_size = 0, .max_len = 0};
  // 0 selects the length_percentile of the training lengths.
  int max_ctx = 0;
  int max_resp = 0;
  double length_percentile = 0.95;
  int min_freq = 1;
  std::string checkpoint;

  void Validate() const;
};

// Flat `key = value` lines; '#' starts a comment. Unknown keys, duplicate
// keys and malformed values are errors. Seeds not given explicitly
// (encoder_seed, aug_seed) follow `seed`; aug_rate defaults per kind.
TrainConfig ParseTrainConfig(std::istream& in);
TrainConfig ReadTrainConfigFile(const std::string& path);
// Inverse of ParseTrainConfig, every key written.
std::string FormatTrainConfig(const TrainConfig& config);

// Trained (or freshly initialized) model plus what is needed to tokenize
// for it.
class Checkpoint {
 public:
  Checkpoint(Vocab vocab, EncoderParams params, int max_ctx, int max_resp);

  const Vocab& vocab() const { return vocab_; }
  const EncoderParams& params() const { return params_; }
  EncoderParams& mutable_params() { return params_; }
  int max_ctx() const { return max_ctx_; }
  int max_resp() const { return max_resp_; }

  TokenSequence EncodeContextIds(const std::vector<std::string>& turns) const;
  TokenSequence EncodeResponseIds(const std::string& text) const;
  // Eval-mode CLS vectors.
  Vector ContextVector(const std::vector<std::string>& turns) const;
  Vector ResponseVector(const std::string& text) const;

  std::string Serialize() const;
  static Checkpoint Deserialize(const std::string& text);
  void Save(const std::string& path) const;
  static Checkpoint Load(const std::string& path);

 private:
  Vocab vocab_;
  EncoderParams params_;
  int max_ctx_;
  int max_resp_;
};

// Builds the vocabulary, resolves sequence caps and initializes the
// encoder for a training run.
Checkpoint InitCheckpoint(const std::vector<Dialogue>& dataset,
                          const TrainConfig& config);

struct StepLoss {
  double total = 0.0;
  double ranking = 0.0;
  double contrastive = 0.0;
};

// Forward and backward over a batch whose aug_contexts are filled. grads is
// overwritten. With shared_aug_view the augmented view reuses the original
// context's forward pass (kind = none), so the two views are identical even
// under dropout.
StepLoss BatchLossAndGradients(const EncoderParams& params, const Batch& batch,
                               const LossConfig& loss, bool train_mode,
                               Rng* dropout_rng, bool shared_aug_view,
                               EncoderParams* grads);

struct TrainHistory {
  std::vector<double> epoch_loss;
  std::vector<double> step_loss;
};

using EpochCallback = std::function<void(int epoch, double mean_loss)>;

// Seed derivation per epoch e: shuffle DeriveSeed(seed, 2e), dropout
// DeriveSeed(seed, 2e + 1), augmentation DeriveSeed(DeriveSeed(aug_seed,
// e), batch).
Checkpoint Train(const std::vector<Dialogue>& dataset,
                 const TrainConfig& config, TrainHistory* history = nullptr,
                 const EpochCallback& on_epoch = nullptr);

// Continues training from an existing checkpoint.
void TrainFrom(Checkpoint& checkpoint, const std::vector<Dialogue>& dataset,
               const TrainConfig& config, TrainHistory* history = nullptr,
               const EpochCallback& on_epoch = nullptr);

// scores[k] = ctx_cls . cand_cls[k], computed as one matrix product.
std::vector<double> RankCandidates(const std::vector<std::string>& context,
                                   const std::vector<std::string>& candidates,
                                   const Checkpoint& checkpoint);

}  // namespace dialaug

#endif  // DIALAUG_TRAINER_H_
