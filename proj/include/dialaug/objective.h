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

// Batch losses over encoder outputs and their gradients with respect to
// those outputs.
//
// Ranking loss: in-batch softmax cross-entropy of context i against all
// responses of the batch, averaged over the original and augmented views.
//
// Contrastive loss: for row i and every ordered positive pair (a, b) with
// a != b drawn from {ctx, aug, resp},
//
//   l = -log( exp(z_a[i] . z_b[i] / tau) /
//             sum_{k != i} sum_{q} exp(z_a[i] . z_q[k] / tau) )
//
// The denominator skips every row-i entry, the positive included. The loss
// is the mean of the 6 * B terms.

#ifndef DIALAUG_OBJECTIVE_H_
#define DIALAUG_OBJECTIVE_H_

#include <Eigen/Core>

namespace dialaug {

using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

struct BatchEmbeddings {
  Matrix ctx, aug, resp;        // B x d_model CLS vectors
  Matrix z_ctx, z_aug, z_resp;  // B x proj_dim projections

  int BatchSize() const { return static_cast<int>(ctx.rows()); }
  void Validate(bool need_projections) const;
};

struct LossConfig {
  double tau = 0.5;
  double lambda_cl = 0.5;

  void Validate() const;
};

struct EmbeddingGrads {
  Matrix ctx, aug, resp;
  Matrix z_ctx, z_aug, z_resp;
};

struct LossValue {
  double total = 0.0;
  double ranking = 0.0;
  double contrastive = 0.0;
  EmbeddingGrads grads;
};

// out(i, k) = a_i . b_k.
Matrix ScoreMatrix(const Matrix& a, const Matrix& b);

// Mean in-batch softmax cross-entropy with the gold on the diagonal.
// d_scores receives d loss / d scores when non-null.
double SoftmaxCrossEntropy(const Matrix& scores, Matrix* d_scores = nullptr);

// Fills grads.ctx, grads.aug, grads.resp.
double RankingLoss(const BatchEmbeddings& e, EmbeddingGrads* grads = nullptr);

// Fills grads.z_ctx, grads.z_aug, grads.z_resp.
double ContrastiveLoss(const BatchEmbeddings& e, double tau,
                       EmbeddingGrads* grads = nullptr);

// L = ranking + lambda_cl * contrastive. With lambda_cl == 0 the
// contrastive term is skipped and its gradients are zero.
LossValue TotalLoss(const BatchEmbeddings& e, const LossConfig& config);

}  // namespace dialaug

#endif  // DIALAUG_OBJECTIVE_H_
