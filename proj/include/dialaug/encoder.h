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

// Shared sequence encoder and projection head.
//
// The encoder embeds tokens plus learned positions and runs n_layers
// post-LayerNorm transformer blocks:
//
//   h = LN(x + Dropout(MultiHeadAttention(x)))
//   x' = LN(h + Dropout(W2 gelu(W1 h + b1) + b2))
//
// PAD keys are masked out of attention and only the CLS row is returned, so
// the output does not depend on anything past the last non-PAD token. The
// projection head is relu(cls P1 + c1) P2 + c2 and only feeds the
// contrastive loss.
//
// All weights live in one flat buffer; gradients use the same layout, which
// keeps the optimizer and checkpointing layout-agnostic.

#ifndef DIALAUG_ENCODER_H_
#define DIALAUG_ENCODER_H_

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dialaug/corpus.h"
#include "dialaug/objective.h"
#include "dialaug/rng.h"
#include "json.hpp"

namespace dialaug {

struct EncoderConfig {
  int vocab_size = 0;
  int d_model = 64;
  int n_layers = 2;
  int n_heads = 4;
  int d_ffn = 128;
  int max_len = 64;
  double dropout = 0.1;
  int proj_dim = 64;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument naming the violated constraint.
  void Validate() const;
  bool operator==(const EncoderConfig&) const = default;
};

nlohmann::ordered_json ConfigToJson(const EncoderConfig& config);
EncoderConfig ConfigFromJson(const nlohmann::json& j);

struct TensorSpec {
  std::string name;
  int rows = 0;
  int cols = 0;
  std::size_t offset = 0;

  std::size_t Size() const { return static_cast<std::size_t>(rows) * cols; }
};

using MatrixMap = Eigen::Map<Matrix>;
using ConstMatrixMap = Eigen::Map<const Matrix>;

class EncoderParams {
 public:
  // Tensor indices of one transformer block.
  struct Block {
    int wq, bq, wk, bk, wv, bv, wo, bo;
    int ln1_gain, ln1_bias;
    int w1, b1, w2, b2;
    int ln2_gain, ln2_bias;
  };

  // Zero-filled parameters with the layout implied by config.
  explicit EncoderParams(const EncoderConfig& config);

  const EncoderConfig& config() const { return config_; }
  const std::vector<TensorSpec>& tensors() const { return tensors_; }
  int FindTensor(const std::string& name) const;

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::size_t NumValues() const { return values_.size(); }

  MatrixMap Tensor(int index);
  ConstMatrixMap Tensor(int index) const;

  int token_embedding() const { return token_embedding_; }
  int position_embedding() const { return position_embedding_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  int proj_w1() const { return proj_w1_; }
  int proj_b1() const { return proj_b1_; }
  int proj_w2() const { return proj_w2_; }
  int proj_b2() const { return proj_b2_; }

  void SetZero();
  bool AllFinite() const;

  nlohmann::ordered_json ToJson() const;
  // Validates every tensor's shape against the embedded config.
  static EncoderParams FromJson(const nlohmann::json& j);

 private:
  int Add(const std::string& name, int rows, int cols);

  EncoderConfig config_;
  std::vector<TensorSpec> tensors_;
  std::vector<double> values_;
  int token_embedding_ = -1;
  int position_embedding_ = -1;
  std::vector<Block> blocks_;
  int proj_w1_ = -1, proj_b1_ = -1, proj_w2_ = -1, proj_b2_ = -1;
};

// Weight matrices and embeddings ~ N(0, 1 / fan_in) (fan_in = d_model for
// embeddings), biases zero, LayerNorm gains one.
EncoderParams InitParams(const EncoderConfig& config);

// Intermediate activations of one Encode call, consumed by EncodeBackward.
struct EncodeCache {
  struct LayerCache {
    Matrix x_in;
    Matrix q, k, v;
    std::vector<Matrix> probs;
    Matrix heads;
    Matrix attn_dropout;
    Matrix ln1_hat;
    Vector ln1_inv_std;
    Matrix h1;
    Matrix ffn_pre;
    Matrix ffn_act;
    Matrix ffn_dropout;
    Matrix ln2_hat;
    Vector ln2_inv_std;
  };

  bool valid = false;
  std::vector<int> ids;
  std::vector<bool> key_valid;
  Matrix embed_dropout;
  std::vector<LayerCache> layers;
};

// CLS hidden state of seq. Dropout is active only in train_mode and then
// draws from rng, which must be non-null.
Vector Encode(const TokenSequence& seq, const EncoderParams& params,
              bool train_mode, Rng* rng = nullptr,
              EncodeCache* cache = nullptr);

// Accumulates d loss / d params into grads given d loss / d cls.
void EncodeBackward(const Vector& d_cls, const EncodeCache& cache,
                    const EncoderParams& params, EncoderParams* grads);

struct ProjectCache {
  bool valid = false;
  Vector input;
  Vector hidden_pre;
};

Vector Project(const Vector& cls, const EncoderParams& params,
               ProjectCache* cache = nullptr);

// Accumulates projection-head gradients and returns d loss / d cls.
Vector ProjectBackward(const Vector& d_z, const ProjectCache& cache,
                       const EncoderParams& params, EncoderParams* grads);

}  // namespace dialaug

#endif  // DIALAUG_ENCODER_H_
