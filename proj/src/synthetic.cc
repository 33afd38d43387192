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

#include "dialaug/synthetic.h"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

#include "dialaug/rng.h"

namespace dialaug {
namespace {

struct Word {
  const char* canonical;
  std::vector<const char*> synonyms;
};

using WordList = std::vector<Word>;

enum Slot { kMovie, kTheater, kDay, kTime, kCount, kSeat, kNumSlots };

const std::array<WordList, kNumSlots>& SlotValues() {
  static const std::array<WordList, kNumSlots> kValues = {{
      // movie
      {{"avatar", {}}, {"inception", {}}, {"frozen", {}}, {"jaws", {}},
       {"alien", {}}, {"rocky", {}}, {"titanic", {}}, {"shrek", {}},
       {"matrix", {}}, {"gladiator", {}}, {"coco", {}}, {"tenet", {}}},
      // theater
      {{"downtown", {"central"}}, {"uptown", {"north"}},
       {"riverside", {"waterfront"}}, {"westfield", {"west"}},
       {"lakeside", {"lakefront"}}, {"midtown", {"middle"}},
       {"harbor", {"port", "dock"}}, {"hillcrest", {"hilltop"}}},
      // day
      {{"monday", {"mon"}}, {"tuesday", {"tue"}}, {"wednesday", {"wed"}},
       {"thursday", {"thu"}}, {"friday", {"fri"}}, {"saturday", {"sat"}},
       {"sunday", {"sun"}}},
      // time
      {{"morning", {"forenoon", "early"}}, {"noon", {"midday", "lunchtime"}},
       {"afternoon", {"matinee"}}, {"evening", {"dusk", "sundown"}},
       {"night", {"nighttime", "late"}}},
      // count
      {{"one", {"1", "single"}}, {"two", {"2", "pair"}},
       {"three", {"3", "trio"}}, {"four", {"4", "quartet"}},
       {"five", {"5"}}, {"six", {"6"}}},
      // seat
      {{"cheap", {"inexpensive", "budget", "affordable"}},
       {"premium", {"luxury", "deluxe", "vip"}},
       {"regular", {"standard", "normal", "ordinary"}},
       {"balcony", {"upstairs", "gallery"}}},
  }};
  return kValues;
}

const WordList& FillerWords() {
  static const WordList kFiller = {
      {"hello", {"hi", "hey"}},      {"want", {"need", "desire"}},
      {"tickets", {"passes"}},       {"please", {"kindly"}},
      {"movie", {"film", "picture"}}, {"book", {"reserve"}},
      {"thanks", {"cheers"}},        {"great", {"excellent", "wonderful"}},
      {"watch", {"see", "view"}},    {"show", {"screening"}},
  };
  return kFiller;
}

class Speaker {
 public:
  Speaker(Rng& rng, double synonym_prob)
      : rng_(rng), synonym_prob_(synonym_prob) {}

  // Surface form of a word: canonical or, sometimes, a synonym.
  std::string Say(const Word& w) {
    if (!w.synonyms.empty() && rng_.Bernoulli(synonym_prob_)) {
      return w.synonyms[rng_.UniformInt(w.synonyms.size())];
    }
    return w.canonical;
  }

  std::string Filler(const char* canonical) {
    for (const Word& w : FillerWords()) {
      if (std::string(w.canonical) == canonical) return Say(w);
    }
    throw std::logic_error(std::string("unknown filler word ") + canonical);
  }

  template <typename... T>
  const char* Pick(T... options) {
    const std::array<const char*, sizeof...(T)> all = {options...};
    return all[rng_.UniformInt(all.size())];
  }

 private:
  Rng& rng_;
  double synonym_prob_;
};

std::string Question(Slot slot, Speaker& s) {
  switch (slot) {
    case kMovie: return s.Pick("which movie would you like to see ?",
                               "what film are you interested in ?");
    case kTheater: return s.Pick("which theater would you like ?",
                                 "what location works for you ?");
    case kDay: return s.Pick("what day would you like to go ?",
                             "which day works best ?");
    case kTime: return s.Pick("what time do you prefer ?",
                              "which showtime would you like ?");
    case kCount: return s.Pick("how many tickets do you need ?",
                               "how many people are going ?");
    case kSeat: return s.Pick("what kind of seats would you like ?",
                              "which seating section ?");
    default: return "";
  }
}

std::string Answer(Slot slot, const std::string& value, Speaker& s) {
  switch (slot) {
    case kMovie:
      return s.Pick("i", "we") + std::string(" ") + s.Filler("want") +
             " to " + s.Filler("watch") + " " + value;
    case kTheater:
      return s.Pick("the ", "at ", "") + value + " " +
             s.Pick("theater", "one", "location");
    case kDay:
      return s.Pick("on ", "this ", "") + value;
    case kTime:
      return s.Pick("in the ", "around ", "") + value + " " +
             s.Filler("please");
    case kCount:
      return value + " " + s.Filler("tickets");
    case kSeat:
      return value + " seats " + s.Filler("please");
    default:
      return value;
  }
}

}  // namespace

std::vector<Dialogue> GenerateSynthetic(const SyntheticOptions& options) {
  if (options.n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(options.synonym_prob >= 0.0 && options.synonym_prob <= 1.0)) {
    throw std::invalid_argument("synonym_prob must be in [0, 1]");
  }
  const auto& slots = SlotValues();
  Rng rng(options.seed);
  Speaker speak(rng, options.synonym_prob);
  std::vector<Dialogue> out;
  out.reserve(options.n);
  for (int i = 0; i < options.n; ++i) {
    std::array<const Word*, kNumSlots> value{};
    for (int s = 0; s < kNumSlots; ++s) {
      value[s] = &slots[s][rng.UniformInt(slots[s].size())];
    }
    std::vector<Slot> order = {kMovie, kTheater, kDay, kTime, kCount, kSeat};
    rng.Shuffle(order);
    // The user volunteers a prefix of the slots in the opening turn.
    const std::size_t volunteered = rng.UniformInt(3);

    Dialogue d;
    d.id = "syn-" + std::to_string(options.seed) + "-" + std::to_string(i);
    std::string opening = speak.Filler("hello") + " , i " +
                          speak.Filler("want") + " to " + speak.Filler("book") +
                          " " + speak.Filler("movie") + " " +
                          speak.Filler("tickets");
    for (std::size_t k = 0; k < volunteered; ++k) {
      opening += std::string(k == 0 ? " for " : " and ") +
                 speak.Say(*value[order[k]]);
    }
    d.turns.push_back(opening);
    for (std::size_t k = volunteered; k < order.size(); ++k) {
      const Slot slot = order[k];
      d.turns.push_back(Question(slot, speak));
      d.turns.push_back(Answer(slot, speak.Say(*value[slot]), speak));
      // Occasional system read-back of the slot (canonical form).
      if (rng.Bernoulli(0.3)) {
        d.turns.push_back(std::string("ok , ") + value[slot]->canonical +
                          " noted .");
      }
    }
    if (rng.Bernoulli(0.5)) {
      d.turns.push_back("anything else ?");
      d.turns.push_back(std::string("no that is all ") + speak.Filler("thanks"));
    }

    const auto c = [&](Slot s) { return std::string(value[s]->canonical); };
    switch (rng.UniformInt(3)) {
      case 0:
        d.response = "great , " + c(kCount) + " " + c(kSeat) +
                     " tickets for " + c(kMovie) + " at " + c(kTheater) +
                     " on " + c(kDay) + " " + c(kTime) + " are booked .";
        break;
      case 1:
        d.response = "you are all set for " + c(kMovie) + " on " + c(kDay) +
                     " " + c(kTime) + " at " + c(kTheater) + " , " +
                     c(kCount) + " " + c(kSeat) + " seats .";
        break;
      default:
        d.response = "confirmed : " + c(kMovie) + " , " + c(kTheater) + " , " +
                     c(kDay) + " " + c(kTime) + " , " + c(kCount) + " " +
                     c(kSeat) + " tickets .";
        break;
    }
    out.push_back(std::move(d));
  }
  return out;
}

SynonymTable SyntheticSynonymTable() {
  SynonymTable table;
  auto add_group = [&table](const Word& w) {
    if (w.synonyms.empty()) return;
    std::vector<std::string> group = {w.canonical};
    for (const char* s : w.synonyms) group.emplace_back(s);
    for (const std::string& word : group) {
      auto& syns = table[word];
      for (const std::string& other : group) {
        if (other != word) syns.push_back(other);
      }
    }
  };
  for (const WordList& list : SlotValues()) {
    for (const Word& w : list) add_group(w);
  }
  for (const Word& w : FillerWords()) add_group(w);
  return table;
}

}  // namespace dialaug
