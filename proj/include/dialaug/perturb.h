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

// Test-time perturbations of raw context text. Responses are never
// touched. Words are whitespace-separated; perturbed turns are re-joined
// with single spaces.

#ifndef DIALAUG_PERTURB_H_
#define DIALAUG_PERTURB_H_

#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dialaug/corpus.h"
#include "dialaug/rng.h"

namespace dialaug {

using Turns = std::vector<std::string>;
using SynonymTable = std::map<std::string, std::vector<std::string>>;

enum class PerturbKind { kTruncation, kDeletion, kReordering, kTypo,
                         kSynonym };

std::string PerturbKindName(PerturbKind kind);
PerturbKind ParsePerturbKind(const std::string& name);

struct PerturbationSpec {
  PerturbKind kind = PerturbKind::kDeletion;
  double word_rate = 0.3;
  double char_noise = 0.1;
  std::shared_ptr<const SynonymTable> synonyms;
  std::uint64_t seed = 0;

  void Validate() const;
};

Turns TruncateContext(const Turns& turns, Rng& rng);
Turns PerturbDelete(const Turns& turns, double rate, Rng& rng);
Turns PerturbReorder(const Turns& turns, double rate, Rng& rng);

// One pass of the character noise model: each character is independently
// hit with probability char_noise and a hit applies a uniformly chosen edit
// (substitute, delete, insert after, swap with next). Edits are applied
// right to left so hit positions refer to the original word. Returns the
// number of hits through n_edits when non-null.
std::string NoisyWord(const std::string& word, double char_noise, Rng& rng,
                      int* n_edits = nullptr);
// NoisyWord repeated until the word changes (at most 10 attempts), then a
// forced substitution.
std::string TypoWord(const std::string& word, double char_noise, Rng& rng);
Turns InjectTypos(const Turns& turns, double word_rate, double char_noise,
                  Rng& rng);

Turns SynonymReplace(const Turns& turns, double rate,
                     const SynonymTable* table, Rng& rng);

Turns PerturbTurns(const Turns& turns, const PerturbationSpec& spec, Rng& rng);

// Each dialogue gets its own stream derived from (seed, index).
std::vector<Dialogue> PerturbDataset(const std::vector<Dialogue>& dialogues,
                                     const PerturbationSpec& spec,
                                     std::uint64_t seed);

// Lines of `word<TAB>syn1,syn2,...`.
SynonymTable ReadSynonymTable(std::istream& in);
SynonymTable ReadSynonymTableFile(const std::string& path);
void WriteSynonymTable(std::ostream& out, const SynonymTable& table);

}  // namespace dialaug

#endif  // DIALAUG_PERTURB_H_
