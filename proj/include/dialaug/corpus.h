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

// Dialogue ingestion: vocabulary, [CLS] w.. [EOT] w.. [EOT] sequence
// encoding, and fixed-shape batching.

#ifndef DIALAUG_CORPUS_H_
#define DIALAUG_CORPUS_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dialaug {

struct Dialogue {
  std::string id;
  std::vector<std::string> turns;
  std::string response;
};

// Reserved token ids. They occupy the first lines of a vocab file in this
// order.
inline constexpr int kClsId = 0;
inline constexpr int kEotId = 1;
inline constexpr int kPadId = 2;
inline constexpr int kUnkId = 3;
inline constexpr int kDelId = 4;
inline constexpr int kNumReserved = 5;

inline bool IsReservedId(int id) { return id >= 0 && id < kNumReserved; }
inline bool IsProtectedId(int id) {
  return id == kClsId || id == kEotId || id == kPadId;
}

class Vocab {
 public:
  // Vocabulary holding only the reserved tokens.
  Vocab();

  // Builds from an explicit token list; the first kNumReserved entries must
  // be the reserved tokens in canonical order.
  static Vocab FromTokens(std::vector<std::string> tokens);

  int Size() const { return static_cast<int>(tokens_.size()); }
  // Id of a normalized token, or kUnkId.
  int Id(std::string_view token) const;
  const std::string& Token(int id) const;
  const std::vector<std::string>& Tokens() const { return tokens_; }

  void Save(std::ostream& out) const;
  static Vocab Load(std::istream& in);

  static const std::vector<std::string>& ReservedTokens();

 private:
  struct Uninit {};
  explicit Vocab(Uninit) {}

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

struct TokenSequence {
  std::vector<int> ids;
  // True exactly at CLS, EOT and PAD positions.
  std::vector<bool> protected_mask;
  int true_len = 0;

  int Length() const { return static_cast<int>(ids.size()); }
  int EotCount() const;
  bool operator==(const TokenSequence&) const = default;
};

// Rebuilds protected_mask and true_len from ids.
TokenSequence MakeSequence(std::vector<int> ids);

struct Batch {
  std::vector<TokenSequence> contexts;
  std::vector<TokenSequence> responses;
  std::vector<TokenSequence> aug_contexts;
  // ConMix partner j(i); empty unless ConMix produced aug_contexts.
  std::vector<int> partner;
  // Indices of the source dialogues.
  std::vector<std::size_t> source;

  int Size() const { return static_cast<int>(contexts.size()); }
};

// Lowercases (ASCII) and splits on whitespace.
std::vector<std::string> NormalizeWords(std::string_view text);

// Frequency-ordered vocabulary (descending count, then lexicographic) over
// context turns and responses.
Vocab BuildVocab(const std::vector<Dialogue>& dialogues, int min_freq);

TokenSequence TokenizeContext(const std::vector<std::string>& turns,
                              const Vocab& vocab, int max_len);
TokenSequence TokenizeResponse(std::string_view text, const Vocab& vocab,
                               int max_len);

// Non-reserved tokens of seq, in order.
std::vector<std::string> Detokenize(const TokenSequence& seq,
                                    const Vocab& vocab);

// Nearest-rank percentile: element ceil(p * N) - 1 of the sorted list.
int PercentileMaxLen(std::vector<int> lengths, double p);

// Token counts including CLS and EOT markers, as TokenizeContext would
// produce without truncation.
int ContextLength(const std::vector<std::string>& turns);
int ResponseLength(std::string_view text);

// Shuffles the dialogues by seed and cuts full batches; the trailing
// partial batch is dropped.
std::vector<Batch> MakeBatches(const std::vector<Dialogue>& dialogues,
                               const Vocab& vocab, int batch_size,
                               int max_ctx, int max_resp, std::uint64_t seed);

// The dialogue order MakeBatches uses for a seed.
std::vector<std::size_t> ShuffledOrder(std::size_t n, std::uint64_t seed);

// JSON-lines dataset: {"id": str, "context": [str, ...], "response": str}.
std::vector<Dialogue> ReadDialogues(std::istream& in);
void WriteDialogues(std::ostream& out, const std::vector<Dialogue>& dialogues);
std::vector<Dialogue> ReadDialoguesFile(const std::string& path);
void WriteDialoguesFile(const std::string& path,
                        const std::vector<Dialogue>& dialogues);

}  // namespace dialaug

#endif  // DIALAUG_CORPUS_H_
