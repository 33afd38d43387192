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

// Seed-deterministic templated ticket-booking dialogues. The gold response
// confirms the slot values gathered in the context, so it is recoverable
// from the context alone. Users sometimes phrase slot values and filler
// words with synonyms; responses always use the canonical word.

#ifndef DIALAUG_SYNTHETIC_H_
#define DIALAUG_SYNTHETIC_H_

#include <cstdint>
#include <vector>

#include "dialaug/corpus.h"
#include "dialaug/perturb.h"

namespace dialaug {

struct SyntheticOptions {
  int n = 1000;
  std::uint64_t seed = 0;
  // Chance that a user mentions a word by one of its synonyms.
  double synonym_prob = 0.1;
};

std::vector<Dialogue> GenerateSynthetic(const SyntheticOptions& options);

// Symmetric table over every canonical word and synonym the generator uses.
SynonymTable SyntheticSynonymTable();

}  // namespace dialaug

#endif  // DIALAUG_SYNTHETIC_H_
