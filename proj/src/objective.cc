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

#include "dialaug/objective.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dialaug {

void BatchEmbeddings::Validate(bool need_projections) const {
  const auto b = ctx.rows();
  if (b < 1) throw std::invalid_argument("empty batch");
  if (aug.rows() != b || resp.rows() != b) {
    throw std::invalid_argument("embedding batch sizes differ");
  }
  if (aug.cols() != ctx.cols() || resp.cols() != ctx.cols()) {
    throw std::invalid_argument("embedding widths differ");
  }
  if (need_projections) {
    if (z_ctx.rows() != b || z_aug.rows() != b || z_resp.rows() != b) {
      throw std::invalid_argument("projection batch sizes differ");
    }
    if (z_aug.cols() != z_ctx.cols() || z_resp.cols() != z_ctx.cols()) {
      throw std::invalid_argument("projection widths differ");
    }
  }
}

void LossConfig::Validate() const {
  if (!(tau > 0.0)) throw std::invalid_argument("temperature must be > 0");
  if (!(lambda_cl >= 0.0)) {
    throw std::invalid_argument("contrastive weight must be >= 0");
  }
}

Matrix ScoreMatrix(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) {
    throw std::invalid_argument("score_matrix: dimension mismatch");
  }
  return a * b.transpose();
}

double SoftmaxCrossEntropy(const Matrix& scores, Matrix* d_scores) {
  const auto b = scores.rows();
  if (scores.cols() != b) throw std::invalid_argument("scores must be square");
  double loss = 0.0;
  if (d_scores != nullptr) d_scores->resize(b, b);
  for (Eigen::Index i = 0; i < b; ++i) {
    const double m = scores.row(i).maxCoeff();
    const Eigen::RowVectorXd e = (scores.row(i).array() - m).exp().matrix();
    const double sum = e.sum();
    loss += std::log(sum) + m - scores(i, i);
    if (d_scores != nullptr) {
      d_scores->row(i) = e / sum;
      (*d_scores)(i, i) -= 1.0;
    }
  }
  if (d_scores != nullptr) *d_scores /= static_cast<double>(b);
  return loss / static_cast<double>(b);
}

double RankingLoss(const BatchEmbeddings& e, EmbeddingGrads* grads) {
  e.Validate(false);
  Matrix d_orig, d_aug;
  const bool want = grads != nullptr;
  const double l_orig = SoftmaxCrossEntropy(ScoreMatrix(e.ctx, e.resp),
                                            want ? &d_orig : nullptr);
  const double l_aug = SoftmaxCrossEntropy(ScoreMatrix(e.aug, e.resp),
                                           want ? &d_aug : nullptr);
  if (want) {
    d_orig *= 0.5;
    d_aug *= 0.5;
    grads->ctx = d_orig * e.resp;
    grads->aug = d_aug * e.resp;
    grads->resp = d_orig.transpose() * e.ctx + d_aug.transpose() * e.aug;
  }
  return 0.5 * (l_orig + l_aug);
}

double ContrastiveLoss(const BatchEmbeddings& e, double tau,
                       EmbeddingGrads* grads) {
  if (!(tau > 0.0)) throw std::invalid_argument("temperature must be > 0");
  e.Validate(true);
  const Eigen::Index b = e.z_ctx.rows();
  if (b < 2) {
    throw std::invalid_argument("contrastive loss needs at least 2 rows");
  }
  const Eigen::Index p = e.z_ctx.cols();
  // Row v * b + i holds view v of example i.
  Matrix z(3 * b, p);
  z << e.z_ctx, e.z_aug, e.z_resp;
  const Matrix g = z * z.transpose() / tau;

  const double n_terms = 6.0 * static_cast<double>(b);
  Matrix d_g = Matrix::Zero(3 * b, 3 * b);
  double loss = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (Eigen::Index i = 0; i < b; ++i) {
      const Eigen::Index r = a * b + i;
      double m = -std::numeric_limits<double>::infinity();
      for (Eigen::Index c = 0; c < 3 * b; ++c) {
        if (c % b != i) m = std::max(m, g(r, c));
      }
      double sum = 0.0;
      for (Eigen::Index c = 0; c < 3 * b; ++c) {
        if (c % b != i) sum += std::exp(g(r, c) - m);
      }
      const double lse = m + std::log(sum);
      // Both positives of anchor (a, i) share the denominator.
      loss += 2.0 * lse;
      for (int v = 0; v < 3; ++v) {
        if (v != a) loss -= g(r, v * b + i);
      }
      if (grads != nullptr) {
        for (Eigen::Index c = 0; c < 3 * b; ++c) {
          if (c % b != i) d_g(r, c) = 2.0 * std::exp(g(r, c) - lse) / n_terms;
        }
        for (int v = 0; v < 3; ++v) {
          if (v != a) d_g(r, v * b + i) -= 1.0 / n_terms;
        }
      }
    }
  }
  if (grads != nullptr) {
    const Matrix d_z = (d_g + d_g.transpose()) * z / tau;
    grads->z_ctx = d_z.topRows(b);
    grads->z_aug = d_z.middleRows(b, b);
    grads->z_resp = d_z.bottomRows(b);
  }
  return loss / n_terms;
}

LossValue TotalLoss(const BatchEmbeddings& e, const LossConfig& config) {
  config.Validate();
  LossValue out;
  out.ranking = RankingLoss(e, &out.grads);
  if (config.lambda_cl > 0.0) {
    EmbeddingGrads cl;
    out.contrastive = ContrastiveLoss(e, config.tau, &cl);
    out.grads.z_ctx = config.lambda_cl * cl.z_ctx;
    out.grads.z_aug = config.lambda_cl * cl.z_aug;
    out.grads.z_resp = config.lambda_cl * cl.z_resp;
    out.total = out.ranking + config.lambda_cl * out.contrastive;
  } else {
    const auto b = e.ctx.rows();
    const auto p = e.z_ctx.cols();
    out.grads.z_ctx = Matrix::Zero(b, p);
    out.grads.z_aug = Matrix::Zero(b, p);
    out.grads.z_resp = Matrix::Zero(b, p);
    out.total = out.ranking;
  }
  return out;
}

}  // namespace dialaug
