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

#include "dialaug/perturb.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dialaug {
namespace {

std::vector<std::string> SplitWords(const std::string& text) {
  std::vector<std::string> words;
  std::istringstream in(text);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

std::string JoinWords(const std::vector<std::string>& words) {
  std::string out;
  for (const std::string& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

char RandomLetter(Rng& rng) {
  return static_cast<char>('a' + rng.UniformInt(26));
}

void CheckUnit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must be in [0, 1]");
  }
}

std::string Lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::string PerturbKindName(PerturbKind kind) {
  switch (kind) {
    case PerturbKind::kTruncation: return "truncation";
    case PerturbKind::kDeletion: return "deletion";
    case PerturbKind::kReordering: return "reordering";
    case PerturbKind::kTypo: return "typo";
    case PerturbKind::kSynonym: return "synonym";
  }
  return "deletion";
}

PerturbKind ParsePerturbKind(const std::string& name) {
  for (PerturbKind k : {PerturbKind::kTruncation, PerturbKind::kDeletion,
                        PerturbKind::kReordering, PerturbKind::kTypo,
                        PerturbKind::kSynonym}) {
    if (PerturbKindName(k) == name) return k;
  }
  throw std::invalid_argument("unknown perturbation kind: " + name);
}

void PerturbationSpec::Validate() const {
  CheckUnit(word_rate, "word_rate");
  CheckUnit(char_noise, "char_noise");
  if (kind == PerturbKind::kSynonym && (!synonyms || synonyms->empty())) {
    throw std::invalid_argument("synonym table required");
  }
}

Turns TruncateContext(const Turns& turns, Rng& rng) {
  if (turns.empty()) throw std::invalid_argument("empty context");
  const std::size_t k = 1 + rng.UniformInt(turns.size());
  return Turns(turns.end() - static_cast<std::ptrdiff_t>(k), turns.end());
}

Turns PerturbDelete(const Turns& turns, double rate, Rng& rng) {
  CheckUnit(rate, "deletion rate");
  Turns out;
  out.reserve(turns.size());
  for (const std::string& turn : turns) {
    const auto words = SplitWords(turn);
    std::vector<std::string> kept;
    for (const std::string& w : words) {
      if (!rng.Bernoulli(rate)) kept.push_back(w);
    }
    if (kept.empty() && !words.empty()) {
      kept.push_back(words[rng.UniformInt(words.size())]);
    }
    out.push_back(JoinWords(kept));
  }
  return out;
}

Turns PerturbReorder(const Turns& turns, double rate, Rng& rng) {
  CheckUnit(rate, "reorder rate");
  Turns out;
  out.reserve(turns.size());
  for (const std::string& turn : turns) {
    auto words = SplitWords(turn);
    const auto n_pairs = static_cast<std::size_t>(
        std::floor(rate * static_cast<double>(words.size()) / 2.0));
    const auto picks = rng.SampleWithoutReplacement(words.size(), 2 * n_pairs);
    for (std::size_t k = 0; k < n_pairs; ++k) {
      std::swap(words[picks[2 * k]], words[picks[2 * k + 1]]);
    }
    out.push_back(JoinWords(words));
  }
  return out;
}

std::string NoisyWord(const std::string& word, double char_noise, Rng& rng,
                      int* n_edits) {
  std::vector<std::size_t> hits;
  for (std::size_t p = 0; p < word.size(); ++p) {
    if (rng.Bernoulli(char_noise)) hits.push_back(p);
  }
  std::string out = word;
  for (auto it = hits.rbegin(); it != hits.rend(); ++it) {
    const std::size_t p = *it;
    switch (rng.UniformInt(4)) {
      case 0:
        out[p] = RandomLetter(rng);
        break;
      case 1:
        out.erase(p, 1);
        break;
      case 2:
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(p) + 1,
                   RandomLetter(rng));
        break;
      default:
        if (p + 1 < out.size()) std::swap(out[p], out[p + 1]);
        break;
    }
  }
  if (n_edits != nullptr) *n_edits = static_cast<int>(hits.size());
  return out;
}

std::string TypoWord(const std::string& word, double char_noise, Rng& rng) {
  if (word.empty()) return word;
  for (int attempt = 0; attempt < 10; ++attempt) {
    std::string noisy = NoisyWord(word, char_noise, rng);
    if (noisy != word && !noisy.empty()) return noisy;
  }
  std::string forced = word;
  const std::size_t p = rng.UniformInt(word.size());
  char c = RandomLetter(rng);
  while (c == word[p]) c = RandomLetter(rng);
  forced[p] = c;
  return forced;
}

Turns InjectTypos(const Turns& turns, double word_rate, double char_noise,
                  Rng& rng) {
  CheckUnit(word_rate, "word_rate");
  CheckUnit(char_noise, "char_noise");
  Turns out;
  out.reserve(turns.size());
  for (const std::string& turn : turns) {
    auto words = SplitWords(turn);
    for (std::string& w : words) {
      if (rng.Bernoulli(word_rate)) w = TypoWord(w, char_noise, rng);
    }
    out.push_back(JoinWords(words));
  }
  return out;
}

Turns SynonymReplace(const Turns& turns, double rate,
                     const SynonymTable* table, Rng& rng) {
  if (table == nullptr || table->empty()) {
    throw std::invalid_argument("synonym table required");
  }
  CheckUnit(rate, "synonym rate");
  Turns out;
  out.reserve(turns.size());
  for (const std::string& turn : turns) {
    auto words = SplitWords(turn);
    for (std::string& w : words) {
      auto it = table->find(Lowercase(w));
      if (it == table->end() || it->second.empty()) continue;
      if (rng.Bernoulli(rate)) w = it->second[rng.UniformInt(it->second.size())];
    }
    out.push_back(JoinWords(words));
  }
  return out;
}

Turns PerturbTurns(const Turns& turns, const PerturbationSpec& spec, Rng& rng) {
  switch (spec.kind) {
    case PerturbKind::kTruncation:
      return TruncateContext(turns, rng);
    case PerturbKind::kDeletion:
      return PerturbDelete(turns, spec.word_rate, rng);
    case PerturbKind::kReordering:
      return PerturbReorder(turns, spec.word_rate, rng);
    case PerturbKind::kTypo:
      return InjectTypos(turns, spec.word_rate, spec.char_noise, rng);
    case PerturbKind::kSynonym:
      return SynonymReplace(turns, spec.word_rate, spec.synonyms.get(), rng);
  }
  return turns;
}

std::vector<Dialogue> PerturbDataset(const std::vector<Dialogue>& dialogues,
                                     const PerturbationSpec& spec,
                                     std::uint64_t seed) {
  spec.Validate();
  std::vector<Dialogue> out = dialogues;
  for (std::size_t i = 0; i < out.size(); ++i) {
    Rng rng(DeriveSeed(seed, i));
    out[i].turns = PerturbTurns(dialogues[i].turns, spec, rng);
  }
  return out;
}

SynonymTable ReadSynonymTable(std::istream& in) {
  SynonymTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw std::runtime_error("synonym table line " + std::to_string(line_no) +
                               ": expected word<TAB>syn1,syn2,...");
    }
    auto& syns = table[Lowercase(line.substr(0, tab))];
    std::istringstream rest(line.substr(tab + 1));
    std::string syn;
    while (std::getline(rest, syn, ',')) {
      if (!syn.empty()) syns.push_back(syn);
    }
  }
  return table;
}

SynonymTable ReadSynonymTableFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return ReadSynonymTable(in);
}

void WriteSynonymTable(std::ostream& out, const SynonymTable& table) {
  for (const auto& [word, syns] : table) {
    out << word << '\t';
    for (std::size_t i = 0; i < syns.size(); ++i) {
      out << (i ? "," : "") << syns[i];
    }
    out << '\n';
  }
}

}  // namespace dialaug
