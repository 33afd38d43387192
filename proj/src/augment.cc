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

#include "dialaug/augment.h"

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>

namespace dialaug {
namespace {

void CheckMixingCoefficient(double lambda_mix) {
  if (!(lambda_mix > 0.5 && lambda_mix <= 1.0)) {
    throw std::invalid_argument("mixing coefficient out of range");
  }
}

void CheckRate(double rate) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("augmentation rate must be in [0, 1]");
  }
}

std::vector<int> UnprotectedPositions(const TokenSequence& seq) {
  std::vector<int> out;
  for (int p = 0; p < seq.Length(); ++p) {
    if (!seq.protected_mask[p]) out.push_back(p);
  }
  return out;
}

TokenSequence Repad(std::vector<int> ids, int length) {
  ids.resize(length, kPadId);
  return MakeSequence(std::move(ids));
}

}  // namespace

std::string AugKindName(AugKind kind) {
  switch (kind) {
    case AugKind::kNone: return "none";
    case AugKind::kConMix: return "conmix";
    case AugKind::kSubsequence: return "subsequence";
    case AugKind::kDeletion: return "deletion";
    case AugKind::kReordering: return "reordering";
    case AugKind::kReplacement: return "replacement";
  }
  return "none";
}

AugKind ParseAugKind(const std::string& name) {
  for (AugKind k : {AugKind::kNone, AugKind::kConMix, AugKind::kSubsequence,
                    AugKind::kDeletion, AugKind::kReordering,
                    AugKind::kReplacement}) {
    if (AugKindName(k) == name) return k;
  }
  throw std::invalid_argument("unknown augmentation kind: " + name);
}

void AugmentationSpec::Validate() const {
  if (kind == AugKind::kConMix) {
    CheckMixingCoefficient(rate);
  } else {
    CheckRate(rate);
  }
}

double AugmentationSpec::DefaultRate(AugKind kind) {
  switch (kind) {
    case AugKind::kConMix: return 0.7;
    case AugKind::kDeletion: return 0.7;
    case AugKind::kReordering: return 0.3;
    case AugKind::kReplacement: return 0.3;
    default: return 0.0;
  }
}

MixMask SampleMixMask(const TokenSequence& seq, double lambda_mix, Rng& rng) {
  CheckMixingCoefficient(lambda_mix);
  MixMask mask;
  mask.lambda_mix = lambda_mix;
  mask.bits.resize(seq.ids.size());
  for (int p = 0; p < seq.Length(); ++p) {
    mask.bits[p] = seq.protected_mask[p] || rng.Bernoulli(lambda_mix);
  }
  return mask;
}

TokenSequence ApplyMixMask(const TokenSequence& original,
                           const TokenSequence& partner, const MixMask& mask) {
  const int n = original.Length();
  if (partner.Length() != n || static_cast<int>(mask.bits.size()) != n) {
    throw std::invalid_argument("mixing requires equal sequence lengths");
  }
  std::vector<int> ids(n);
  for (int p = 0; p < n; ++p) {
    const int m = (mask.bits[p] || original.protected_mask[p] ||
                   partner.ids[p] == kPadId) ? 1 : 0;
    ids[p] = m * original.ids[p] + (1 - m) * partner.ids[p];
  }
  return MakeSequence(std::move(ids));
}

Batch ConMixBatchWithMasks(const Batch& batch, const std::vector<int>& partner,
                           const std::vector<MixMask>& masks) {
  const int rows = batch.Size();
  if (rows < 2) throw std::invalid_argument("no mixing partner available");
  if (static_cast<int>(partner.size()) != rows ||
      static_cast<int>(masks.size()) != rows) {
    throw std::invalid_argument("one partner and mask per row required");
  }
  const int n = batch.contexts[0].Length();
  using IdMatrix =
      Eigen::Array<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  IdMatrix ctx(rows, n), other(rows, n), keep(rows, n);
  for (int i = 0; i < rows; ++i) {
    const int j = partner[i];
    if (j < 0 || j >= rows || j == i) {
      throw std::invalid_argument("partner must be another row of the batch");
    }
    const TokenSequence& ci = batch.contexts[i];
    const TokenSequence& cj = batch.contexts[j];
    if (ci.Length() != n || cj.Length() != n ||
        static_cast<int>(masks[i].bits.size()) != n) {
      throw std::invalid_argument("mixing requires equal sequence lengths");
    }
    for (int p = 0; p < n; ++p) {
      ctx(i, p) = ci.ids[p];
      other(i, p) = cj.ids[p];
      keep(i, p) = (masks[i].bits[p] || ci.protected_mask[p] ||
                    cj.ids[p] == kPadId) ? 1 : 0;
    }
  }
  const IdMatrix mixed = keep * ctx + (1 - keep) * other;

  Batch out = batch;
  out.partner = partner;
  out.aug_contexts.clear();
  out.aug_contexts.reserve(rows);
  for (int i = 0; i < rows; ++i) {
    std::vector<int> ids(mixed.row(i).begin(), mixed.row(i).end());
    out.aug_contexts.push_back(MakeSequence(std::move(ids)));
  }
  return out;
}

Batch ConMixBatch(const Batch& batch, double lambda_mix, Rng& rng) {
  CheckMixingCoefficient(lambda_mix);
  const int rows = batch.Size();
  if (rows < 2) throw std::invalid_argument("no mixing partner available");
  std::vector<int> partner(rows);
  std::vector<MixMask> masks;
  masks.reserve(rows);
  for (int i = 0; i < rows; ++i) {
    int j = static_cast<int>(rng.UniformInt(rows - 1));
    if (j >= i) ++j;
    partner[i] = j;
    masks.push_back(SampleMixMask(batch.contexts[i], lambda_mix, rng));
  }
  return ConMixBatchWithMasks(batch, partner, masks);
}

std::vector<std::pair<int, int>> TurnSpans(const TokenSequence& seq) {
  std::vector<std::pair<int, int>> spans;
  int begin = 1;
  for (int p = 1; p < seq.true_len; ++p) {
    if (seq.ids[p] == kEotId) {
      spans.emplace_back(begin, p + 1);
      begin = p + 1;
    }
  }
  if (begin < seq.true_len) spans.emplace_back(begin, seq.true_len);
  return spans;
}

TokenSequence KeepLastTurns(const TokenSequence& seq, int k) {
  const auto spans = TurnSpans(seq);
  const int turns = static_cast<int>(spans.size());
  if (turns == 0) throw std::invalid_argument("sequence has no turns");
  if (k < 1 || k > turns) throw std::invalid_argument("turn count out of range");
  std::vector<int> ids = {kClsId};
  ids.insert(ids.end(), seq.ids.begin() + spans[turns - k].first,
             seq.ids.begin() + spans.back().second);
  return Repad(std::move(ids), seq.Length());
}

TokenSequence SubsequenceSample(const TokenSequence& seq, Rng& rng) {
  const auto turns = TurnSpans(seq).size();
  if (turns == 0) throw std::invalid_argument("sequence has no turns");
  const int k = 1 + static_cast<int>(rng.UniformInt(turns));
  return KeepLastTurns(seq, k);
}

TokenSequence DeleteSelected(const TokenSequence& seq,
                             const std::vector<bool>& selected) {
  std::vector<int> ids;
  ids.reserve(seq.ids.size());
  for (int p = 0; p < seq.Length(); ++p) {
    if (!seq.protected_mask[p] && selected[p]) {
      if (ids.empty() || ids.back() != kDelId) ids.push_back(kDelId);
    } else if (seq.ids[p] != kPadId) {
      ids.push_back(seq.ids[p]);
    }
  }
  return Repad(std::move(ids), seq.Length());
}

TokenSequence WordDelete(const TokenSequence& seq, double rate, Rng& rng) {
  CheckRate(rate);
  std::vector<bool> selected(seq.ids.size(), false);
  for (int p = 0; p < seq.Length(); ++p) {
    if (!seq.protected_mask[p]) selected[p] = rng.Bernoulli(rate);
  }
  return DeleteSelected(seq, selected);
}

TokenSequence SwapPairs(const TokenSequence& seq,
                        const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> ids = seq.ids;
  for (auto [a, b] : pairs) {
    if (seq.protected_mask.at(a) || seq.protected_mask.at(b)) {
      throw std::invalid_argument("cannot swap a protected position");
    }
    std::swap(ids[a], ids[b]);
  }
  return MakeSequence(std::move(ids));
}

TokenSequence WordReorder(const TokenSequence& seq, double rate, Rng& rng) {
  CheckRate(rate);
  const std::vector<int> free = UnprotectedPositions(seq);
  const auto n_pairs = static_cast<std::size_t>(
      std::floor(rate * static_cast<double>(free.size()) / 2.0));
  const auto picks = rng.SampleWithoutReplacement(free.size(), 2 * n_pairs);
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t k = 0; k < n_pairs; ++k) {
    pairs.emplace_back(free[picks[2 * k]], free[picks[2 * k + 1]]);
  }
  return SwapPairs(seq, pairs);
}

TokenSequence WordReplace(const TokenSequence& seq, double rate,
                          const Vocab& vocab, Rng& rng) {
  CheckRate(rate);
  const int choices = vocab.Size() - kNumReserved;
  if (choices <= 0) {
    throw std::invalid_argument("vocab has no non-reserved tokens to sample");
  }
  std::vector<int> ids = seq.ids;
  for (int p = 0; p < seq.Length(); ++p) {
    if (!seq.protected_mask[p] && rng.Bernoulli(rate)) {
      ids[p] = kNumReserved + static_cast<int>(rng.UniformInt(choices));
    }
  }
  return MakeSequence(std::move(ids));
}

Batch AugmentBatch(const Batch& batch, const AugmentationSpec& spec,
                   const Vocab& vocab, std::uint64_t seed) {
  spec.Validate();
  if (spec.kind == AugKind::kConMix) {
    Rng rng(seed);
    return ConMixBatch(batch, spec.rate, rng);
  }
  Batch out = batch;
  out.partner.clear();
  out.aug_contexts.clear();
  out.aug_contexts.reserve(batch.contexts.size());
  for (std::size_t i = 0; i < batch.contexts.size(); ++i) {
    const TokenSequence& ctx = batch.contexts[i];
    Rng rng(DeriveSeed(seed, i));
    switch (spec.kind) {
      case AugKind::kNone:
        out.aug_contexts.push_back(ctx);
        break;
      case AugKind::kSubsequence:
        out.aug_contexts.push_back(SubsequenceSample(ctx, rng));
        break;
      case AugKind::kDeletion:
        out.aug_contexts.push_back(WordDelete(ctx, spec.rate, rng));
        break;
      case AugKind::kReordering:
        out.aug_contexts.push_back(WordReorder(ctx, spec.rate, rng));
        break;
      case AugKind::kReplacement:
        out.aug_contexts.push_back(WordReplace(ctx, spec.rate, vocab, rng));
        break;
      case AugKind::kConMix:
        break;
    }
  }
  return out;
}

std::vector<std::string> SequenceToTurns(const TokenSequence& seq,
                                         const Vocab& vocab) {
  std::vector<std::string> turns;
  for (auto [begin, end] : TurnSpans(seq)) {
    std::string turn;
    for (int p = begin; p < end; ++p) {
      const int id = seq.ids[p];
      if (id == kEotId || id == kPadId || id == kClsId) continue;
      if (!turn.empty()) turn += ' ';
      turn += vocab.Token(id);
    }
    turns.push_back(std::move(turn));
  }
  return turns;
}

}  // namespace dialaug
