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

#include <cmath>
#include <functional>

#include <Eigen/QR>
#include <gtest/gtest.h>

#include "dialaug/objective.h"
#include "dialaug/rng.h"
#include "oracles.h"

namespace dialaug {
namespace {

using ::dialaug::oracles::BruteForceContrastive;
using ::dialaug::oracles::RandomEmbeddings;
using ::dialaug::oracles::RandomMatrix;

TEST(ScoreMatrixTest, Identity) {
  const Matrix eye = Matrix::Identity(2, 2);
  EXPECT_EQ(ScoreMatrix(eye, eye), eye);
}

TEST(ScoreMatrixTest, ScaledOrthonormal) {
  const Matrix b = Matrix::Identity(3, 3);
  const Matrix s = ScoreMatrix(2.0 * b, b);
  EXPECT_EQ(s, 2.0 * Matrix::Identity(3, 3));
}

TEST(ScoreMatrixTest, TripleLoop) {
  Rng rng(1);
  const Matrix a = RandomMatrix(rng, 4, 3);
  const Matrix b = RandomMatrix(rng, 4, 3);
  const Matrix s = ScoreMatrix(a, b);
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      double dot = 0.0;
      for (int d = 0; d < 3; ++d) dot += a(i, d) * b(k, d);
      EXPECT_NEAR(s(i, k), dot, 1e-12);
    }
  }
  EXPECT_THROW(ScoreMatrix(a, RandomMatrix(rng, 4, 2)), std::invalid_argument);
}

TEST(RankingLossTest, UniformScoresGiveLogB) {
  for (int b : {2, 3, 7}) {
    BatchEmbeddings e;
    e.ctx = Matrix::Zero(b, 4);
    e.aug = Matrix::Zero(b, 4);
    e.resp = Matrix::Zero(b, 4);
    EXPECT_NEAR(RankingLoss(e), std::log(b), 1e-12);
  }
}

TEST(RankingLossTest, BinaryClosedForm) {
  // ctx = aug = sqrt(s) * I, resp = sqrt(s) * I: score matrix s * I.
  const double s = 1.7;
  BatchEmbeddings e;
  e.ctx = std::sqrt(s) * Matrix::Identity(2, 2);
  e.aug = e.ctx;
  e.resp = e.ctx;
  EXPECT_NEAR(RankingLoss(e), std::log1p(std::exp(-s)), 1e-12);
}

TEST(RankingLossTest, MatchesReferenceAndFiniteDifferences) {
  Rng rng(2);
  BatchEmbeddings e = RandomEmbeddings(rng, 4, 5, 3);
  auto reference = [](const BatchEmbeddings& x) {
    auto ce = [](const Matrix& a, const Matrix& r) {
      double total = 0.0;
      for (int i = 0; i < a.rows(); ++i) {
        double denom = 0.0;
        for (int k = 0; k < r.rows(); ++k) denom += std::exp(a.row(i).dot(r.row(k)));
        total += -(a.row(i).dot(r.row(i)) - std::log(denom));
      }
      return total / a.rows();
    };
    return 0.5 * (ce(x.ctx, x.resp) + ce(x.aug, x.resp));
  };
  EmbeddingGrads g;
  EXPECT_NEAR(RankingLoss(e, &g), reference(e), 1e-12);
  const double h = 1e-6;
  for (Matrix BatchEmbeddings::*m :
       {&BatchEmbeddings::ctx, &BatchEmbeddings::aug, &BatchEmbeddings::resp}) {
    const Matrix& analytic = m == &BatchEmbeddings::ctx   ? g.ctx
                             : m == &BatchEmbeddings::aug ? g.aug
                                                          : g.resp;
    for (int i = 0; i < 4; ++i) {
      for (int d = 0; d < 5; ++d) {
        BatchEmbeddings p = e, q = e;
        (p.*m)(i, d) += h;
        (q.*m)(i, d) -= h;
        const double fd = (reference(p) - reference(q)) / (2 * h);
        EXPECT_NEAR(analytic(i, d), fd, 1e-4 * std::max(1.0, std::abs(fd)));
      }
    }
  }
}

TEST(RankingLossTest, PermutationInvariantAndSharper) {
  Rng rng(3);
  BatchEmbeddings e = RandomEmbeddings(rng, 5, 4, 2);
  BatchEmbeddings p = e;
  const int perm[5] = {3, 0, 4, 1, 2};
  for (int i = 0; i < 5; ++i) {
    p.ctx.row(i) = e.ctx.row(perm[i]);
    p.aug.row(i) = e.aug.row(perm[i]);
    p.resp.row(i) = e.resp.row(perm[i]);
  }
  EXPECT_NEAR(RankingLoss(e), RankingLoss(p), 1e-12);
  // Diagonal-dominant scores: doubling them lowers the loss.
  BatchEmbeddings d;
  d.ctx = Matrix::Identity(3, 3) + 0.1 * Matrix::Ones(3, 3);
  d.aug = d.ctx;
  d.resp = Matrix::Identity(3, 3);
  BatchEmbeddings d2 = d;
  d2.ctx *= 2.0;
  d2.aug *= 2.0;
  EXPECT_LT(RankingLoss(d2), RankingLoss(d));
  EXPECT_GE(RankingLoss(d2), 0.0);
}

TEST(ContrastiveLossTest, IdenticalPairGivesLogThree) {
  BatchEmbeddings e;
  const Matrix z = Matrix::Constant(2, 3, 0.4);
  e.ctx = e.aug = e.resp = Matrix::Zero(2, 3);
  e.z_ctx = e.z_aug = e.z_resp = z;
  EXPECT_NEAR(ContrastiveLoss(e, 0.5), std::log(3.0), 1e-12);
}

TEST(ContrastiveLossTest, MatchesExhaustiveEnumeration) {
  Rng rng(5);
  for (int b : {2, 3, 4}) {
    for (int p : {2, 8}) {
      for (double tau : {0.1, 0.5, 1.0}) {
        const BatchEmbeddings e = RandomEmbeddings(rng, b, 3, p);
        const double want = BruteForceContrastive(e, tau);
        EXPECT_NEAR(ContrastiveLoss(e, tau), want, 1e-10 * std::abs(want))
            << b << " " << p << " " << tau;
      }
    }
  }
}

TEST(ContrastiveLossTest, TemperatureScaling) {
  Rng rng(6);
  const BatchEmbeddings e = RandomEmbeddings(rng, 3, 2, 4);
  // exp(z.z / tau) is unchanged by z -> z / sqrt(c), tau -> tau / c.
  const double c = 3.0;
  BatchEmbeddings s = e;
  s.z_ctx /= std::sqrt(c);
  s.z_aug /= std::sqrt(c);
  s.z_resp /= std::sqrt(c);
  EXPECT_NEAR(ContrastiveLoss(e, 0.5), ContrastiveLoss(s, 0.5 / c), 1e-12);
}

TEST(ContrastiveLossTest, RotationInvariant) {
  Rng rng(7);
  const BatchEmbeddings e = RandomEmbeddings(rng, 3, 2, 4);
  const Eigen::HouseholderQR<Matrix> qr(RandomMatrix(rng, 4, 4));
  const Matrix q = qr.householderQ();
  BatchEmbeddings r = e;
  r.z_ctx = e.z_ctx * q;
  r.z_aug = e.z_aug * q;
  r.z_resp = e.z_resp * q;
  EXPECT_NEAR(ContrastiveLoss(e, 0.5), ContrastiveLoss(r, 0.5), 1e-12);
}

TEST(ContrastiveLossTest, GradientsMatchFiniteDifferences) {
  Rng rng(8);
  const BatchEmbeddings e = RandomEmbeddings(rng, 3, 2, 4);
  EmbeddingGrads g;
  ContrastiveLoss(e, 0.5, &g);
  const double h = 1e-6;
  const std::pair<Matrix BatchEmbeddings::*, const Matrix*> views[] = {
      {&BatchEmbeddings::z_ctx, &g.z_ctx},
      {&BatchEmbeddings::z_aug, &g.z_aug},
      {&BatchEmbeddings::z_resp, &g.z_resp}};
  for (const auto& [m, analytic] : views) {
    for (int i = 0; i < 3; ++i) {
      for (int d = 0; d < 4; ++d) {
        BatchEmbeddings p = e, q = e;
        (p.*m)(i, d) += h;
        (q.*m)(i, d) -= h;
        const double fd =
            (BruteForceContrastive(p, 0.5) - BruteForceContrastive(q, 0.5)) /
            (2 * h);
        EXPECT_NEAR((*analytic)(i, d), fd, 1e-5 * std::max(1.0, std::abs(fd)));
      }
    }
  }
}

TEST(ContrastiveLossTest, Errors) {
  Rng rng(9);
  const BatchEmbeddings e = RandomEmbeddings(rng, 3, 2, 4);
  EXPECT_THROW(ContrastiveLoss(e, 0.0), std::invalid_argument);
  EXPECT_THROW(ContrastiveLoss(e, -1.0), std::invalid_argument);
  const BatchEmbeddings one = RandomEmbeddings(rng, 1, 2, 4);
  EXPECT_THROW(ContrastiveLoss(one, 0.5), std::invalid_argument);
}

TEST(TotalLossTest, ComponentsCombine) {
  Rng rng(10);
  const BatchEmbeddings e = RandomEmbeddings(rng, 4, 3, 5);
  const LossValue zero = TotalLoss(e, {0.5, 0.0});
  EXPECT_EQ(zero.total, RankingLoss(e));
  EXPECT_EQ(zero.grads.z_ctx, Matrix::Zero(4, 5));
  const LossValue half = TotalLoss(e, {0.5, 0.5});
  EXPECT_NEAR(half.total, RankingLoss(e) + 0.5 * ContrastiveLoss(e, 0.5), 1e-12);
  EXPECT_DOUBLE_EQ(half.ranking, RankingLoss(e));
  EXPECT_DOUBLE_EQ(half.contrastive, ContrastiveLoss(e, 0.5));
  EmbeddingGrads cg;
  ContrastiveLoss(e, 0.5, &cg);
  EXPECT_TRUE(half.grads.z_resp.isApprox(0.5 * cg.z_resp, 1e-12));
  EXPECT_THROW(TotalLoss(e, {0.0, 0.5}), std::invalid_argument);
}

}  // namespace
}  // namespace dialaug
