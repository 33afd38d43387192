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

// Training-time augmented views of dialogue contexts. Every op leaves CLS,
// EOT and PAD positions of its input untouched and is a deterministic
// function of (input, generator state).

#ifndef DIALAUG_AUGMENT_H_
#define DIALAUG_AUGMENT_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dialaug/corpus.h"
#include "dialaug/rng.h"

namespace dialaug {

enum class AugKind { kNone, kConMix, kSubsequence, kDeletion, kReordering,
                     kReplacement };

std::string AugKindName(AugKind kind);
AugKind ParseAugKind(const std::string& name);

struct AugmentationSpec {
  AugKind kind = AugKind::kNone;
  // lambda_mix for ConMix; deletion, swap or replacement rate otherwise.
  double rate = 0.0;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument when rate is outside the kind's interval:
  // (0.5, 1] for ConMix, [0, 1] for the rest.
  void Validate() const;
  // Default rate for a kind: 0.7 mixing, 0.7 deletion, 0.3 swap and
  // replacement.
  static double DefaultRate(AugKind kind);
};

struct MixMask {
  // 1 keeps the original token, 0 takes the partner's.
  std::vector<bool> bits;
  double lambda_mix = 1.0;
};

MixMask SampleMixMask(const TokenSequence& seq, double lambda_mix, Rng& rng);

// Positionwise mask * original + (1 - mask) * partner. Protected positions
// of the original and positions where the partner holds PAD keep the
// original token.
TokenSequence ApplyMixMask(const TokenSequence& original,
                           const TokenSequence& partner, const MixMask& mask);

// Mixes every row with a partner drawn uniformly from the other rows.
Batch ConMixBatch(const Batch& batch, double lambda_mix, Rng& rng);

// ConMix with caller-fixed partners and masks, computed over the whole id
// matrix at once.
Batch ConMixBatchWithMasks(const Batch& batch, const std::vector<int>& partner,
                           const std::vector<MixMask>& masks);

// Turn spans of a context as half-open [begin, end) ranges; end points one
// past the turn's EOT.
std::vector<std::pair<int, int>> TurnSpans(const TokenSequence& seq);

// Keeps the last k turns, re-prepends CLS and re-pads to the input length.
TokenSequence KeepLastTurns(const TokenSequence& seq, int k);
TokenSequence SubsequenceSample(const TokenSequence& seq, Rng& rng);

// Replaces positions where selected is true (unprotected only) by DEL,
// merges runs of DEL and re-pads at the tail.
TokenSequence DeleteSelected(const TokenSequence& seq,
                             const std::vector<bool>& selected);
TokenSequence WordDelete(const TokenSequence& seq, double rate, Rng& rng);

TokenSequence SwapPairs(const TokenSequence& seq,
                        const std::vector<std::pair<int, int>>& pairs);
TokenSequence WordReorder(const TokenSequence& seq, double rate, Rng& rng);

TokenSequence WordReplace(const TokenSequence& seq, double rate,
                          const Vocab& vocab, Rng& rng);

// Fills batch.aug_contexts according to spec. The epoch seed drives
// ConMix directly; per-row ops use one stream per row derived from it.
Batch AugmentBatch(const Batch& batch, const AugmentationSpec& spec,
                   const Vocab& vocab, std::uint64_t seed);

// Turn strings of a sequence: tokens between EOTs joined by spaces.
std::vector<std::string> SequenceToTurns(const TokenSequence& seq,
                                         const Vocab& vocab);

}  // namespace dialaug

#endif  // DIALAUG_AUGMENT_H_
