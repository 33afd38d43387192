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

#include "dialaug/corpus.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <utility>

#include "dialaug/rng.h"
#include "json.hpp"

namespace dialaug {
namespace {

std::vector<int> WordIds(std::string_view text, const Vocab& vocab) {
  std::vector<int> ids;
  for (const std::string& w : NormalizeWords(text)) ids.push_back(vocab.Id(w));
  return ids;
}

}  // namespace

const std::vector<std::string>& Vocab::ReservedTokens() {
  static const std::vector<std::string> kReserved = {"[CLS]", "[EOT]", "[PAD]",
                                                     "[UNK]", "[DEL]"};
  return kReserved;
}

Vocab::Vocab() : Vocab(FromTokens(ReservedTokens())) {}

Vocab Vocab::FromTokens(std::vector<std::string> tokens) {
  const auto& reserved = ReservedTokens();
  if (tokens.size() < reserved.size() ||
      !std::equal(reserved.begin(), reserved.end(), tokens.begin())) {
    throw std::invalid_argument(
        "vocab must start with [CLS] [EOT] [PAD] [UNK] [DEL]");
  }
  Vocab v{Uninit{}};
  v.tokens_ = std::move(tokens);
  for (int i = 0; i < v.Size(); ++i) {
    if (!v.index_.emplace(v.tokens_[i], i).second) {
      throw std::invalid_argument("duplicate vocab token: " + v.tokens_[i]);
    }
  }
  return v;
}

int Vocab::Id(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? kUnkId : it->second;
}

const std::string& Vocab::Token(int id) const {
  if (id < 0 || id >= Size()) {
    throw std::out_of_range("token id out of range: " + std::to_string(id));
  }
  return tokens_[id];
}

void Vocab::Save(std::ostream& out) const {
  for (const std::string& t : tokens_) out << t << '\n';
}

Vocab Vocab::Load(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    tokens.push_back(line);
  }
  return FromTokens(std::move(tokens));
}

int TokenSequence::EotCount() const {
  return static_cast<int>(std::count(ids.begin(), ids.end(), kEotId));
}

TokenSequence MakeSequence(std::vector<int> ids) {
  TokenSequence seq;
  seq.protected_mask.resize(ids.size());
  seq.true_len = 0;
  for (std::size_t p = 0; p < ids.size(); ++p) {
    seq.protected_mask[p] = IsProtectedId(ids[p]);
    if (ids[p] != kPadId) seq.true_len = static_cast<int>(p) + 1;
  }
  seq.ids = std::move(ids);
  return seq;
}

std::vector<std::string> NormalizeWords(std::string_view text) {
  std::vector<std::string> words;
  std::string cur;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) words.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

Vocab BuildVocab(const std::vector<Dialogue>& dialogues, int min_freq) {
  if (min_freq < 1) throw std::invalid_argument("min_freq must be >= 1");
  if (dialogues.empty()) throw std::invalid_argument("empty corpus");
  std::map<std::string, long> counts;
  auto add = [&](std::string_view text) {
    for (std::string& w : NormalizeWords(text)) ++counts[std::move(w)];
  };
  for (const Dialogue& d : dialogues) {
    for (const std::string& t : d.turns) add(t);
    add(d.response);
  }
  std::vector<std::pair<std::string, long>> kept;
  for (auto& [w, c] : counts) {
    if (c < min_freq) continue;
    // Tokens that collide with reserved spellings keep mapping to the
    // reserved id.
    const auto& reserved = Vocab::ReservedTokens();
    if (std::find(reserved.begin(), reserved.end(), w) != reserved.end()) {
      continue;
    }
    kept.emplace_back(w, c);
  }
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  std::vector<std::string> tokens = Vocab::ReservedTokens();
  for (auto& [w, c] : kept) tokens.push_back(w);
  return Vocab::FromTokens(std::move(tokens));
}

TokenSequence TokenizeContext(const std::vector<std::string>& turns,
                              const Vocab& vocab, int max_len) {
  if (max_len < 3) throw std::invalid_argument("max_len must be >= 3");
  if (turns.empty()) throw std::invalid_argument("empty context");
  std::vector<std::vector<int>> turn_ids;
  turn_ids.reserve(turns.size());
  int total = 1;
  for (const std::string& t : turns) {
    turn_ids.push_back(WordIds(t, vocab));
    total += static_cast<int>(turn_ids.back().size()) + 1;
  }
  // Drop whole turns from the front, then leading tokens of the last turn.
  std::size_t first = 0;
  while (total > max_len && first + 1 < turn_ids.size()) {
    total -= static_cast<int>(turn_ids[first].size()) + 1;
    ++first;
  }
  std::vector<int> ids;
  ids.reserve(max_len);
  ids.push_back(kClsId);
  if (total > max_len) {
    const std::vector<int>& last = turn_ids.back();
    ids.insert(ids.end(), last.end() - (max_len - 2), last.end());
    ids.push_back(kEotId);
  } else {
    for (std::size_t t = first; t < turn_ids.size(); ++t) {
      ids.insert(ids.end(), turn_ids[t].begin(), turn_ids[t].end());
      ids.push_back(kEotId);
    }
  }
  ids.resize(max_len, kPadId);
  return MakeSequence(std::move(ids));
}

TokenSequence TokenizeResponse(std::string_view text, const Vocab& vocab,
                               int max_len) {
  if (NormalizeWords(text).empty()) throw std::invalid_argument("empty context");
  return TokenizeContext({std::string(text)}, vocab, max_len);
}

std::vector<std::string> Detokenize(const TokenSequence& seq,
                                    const Vocab& vocab) {
  std::vector<std::string> words;
  for (int id : seq.ids) {
    if (!IsReservedId(id)) words.push_back(vocab.Token(id));
  }
  return words;
}

int PercentileMaxLen(std::vector<int> lengths, double p) {
  if (lengths.empty()) throw std::invalid_argument("empty length list");
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::invalid_argument("percentile must be in (0, 1]");
  }
  std::sort(lengths.begin(), lengths.end());
  const double n = static_cast<double>(lengths.size());
  // Guard against p * N landing a hair above an integer.
  auto rank = static_cast<std::size_t>(std::ceil(p * n - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, lengths.size());
  return lengths[rank - 1];
}

int ContextLength(const std::vector<std::string>& turns) {
  int n = 1;
  for (const std::string& t : turns) {
    n += static_cast<int>(NormalizeWords(t).size()) + 1;
  }
  return n;
}

int ResponseLength(std::string_view text) {
  return static_cast<int>(NormalizeWords(text).size()) + 2;
}

std::vector<std::size_t> ShuffledOrder(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  rng.Shuffle(order);
  return order;
}

std::vector<Batch> MakeBatches(const std::vector<Dialogue>& dialogues,
                               const Vocab& vocab, int batch_size,
                               int max_ctx, int max_resp, std::uint64_t seed) {
  if (batch_size < 2) throw std::invalid_argument("batch_size must be >= 2");
  if (dialogues.size() < static_cast<std::size_t>(batch_size)) {
    throw std::invalid_argument("dataset smaller than one batch");
  }
  const std::vector<std::size_t> order = ShuffledOrder(dialogues.size(), seed);
  const std::size_t n_batches = dialogues.size() / batch_size;
  std::vector<Batch> batches(n_batches);
  for (std::size_t b = 0; b < n_batches; ++b) {
    Batch& batch = batches[b];
    for (int r = 0; r < batch_size; ++r) {
      const std::size_t src = order[b * batch_size + r];
      const Dialogue& d = dialogues[src];
      batch.contexts.push_back(TokenizeContext(d.turns, vocab, max_ctx));
      batch.responses.push_back(TokenizeResponse(d.response, vocab, max_resp));
      batch.source.push_back(src);
    }
  }
  return batches;
}

std::vector<Dialogue> ReadDialogues(std::istream& in) {
  std::vector<Dialogue> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      Dialogue d;
      d.id = j.contains("id") ? j.at("id").get<std::string>()
                              : std::to_string(out.size());
      d.turns = j.at("context").get<std::vector<std::string>>();
      d.response = j.at("response").get<std::string>();
      if (d.turns.empty()) throw std::invalid_argument("empty context");
      if (d.response.empty()) throw std::invalid_argument("empty response");
      out.push_back(std::move(d));
    } catch (const std::exception& e) {
      throw std::runtime_error("dataset line " + std::to_string(line_no) +
                               ": " + e.what());
    }
  }
  return out;
}

void WriteDialogues(std::ostream& out,
                    const std::vector<Dialogue>& dialogues) {
  for (const Dialogue& d : dialogues) {
    nlohmann::ordered_json j;
    j["id"] = d.id;
    j["context"] = d.turns;
    j["response"] = d.response;
    out << j.dump() << '\n';
  }
}

std::vector<Dialogue> ReadDialoguesFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return ReadDialogues(in);
}

void WriteDialoguesFile(const std::string& path,
                        const std::vector<Dialogue>& dialogues) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  WriteDialogues(out, dialogues);
}

}  // namespace dialaug
