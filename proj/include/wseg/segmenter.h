// segmenter.h
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// \file
// Full segmentation model: the lexicon machine (with affixes attached),
// personal names and transliterations are unioned and plus-closed. A
// sentence is segmented by left-restricting the model with the sentence
// acceptor and reading words off the least-cost path, one word per
// epsilon:category arc.
//
// Characters outside the fallback table never reach the model: hanzi come
// out as single `unk` words, everything else as maximal same-class runs
// tagged `sym`. Both carry cost 0 and no pronunciation.

#ifndef WSEG_SEGMENTER_H_
#define WSEG_SEGMENTER_H_

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wseg/lexicon.h"
#include "wseg/morphology.h"
#include "wseg/names.h"
#include "wseg/translit.h"
#include "wseg/wfst.h"

namespace wseg {

inline constexpr std::string_view kUnknownCategory = "unk";
inline constexpr std::string_view kSymbolCategory = "sym";
inline constexpr std::string_view kNameCategory = "np";
inline constexpr std::string_view kTranslitCategory = "FN";

struct Word {
  std::string surface;
  std::string category;
  std::vector<std::string> pronunciation;
  double cost = 0.0;
  size_t start = 0;  // character offsets into the sentence, half-open
  size_t end = 0;
  std::string affix;  // affix surface for derived words, else empty
};

struct Segmentation {
  std::vector<Word> words;
  double total_cost = 0.0;
};

struct ModelConfig {
  bool morphology = false;
  bool names = false;
  bool translit = false;
  LexiconOptions lexicon;
  uint64_t bigram_threshold = 5;
};

struct ComponentMachines {
  Wfst dictionary;  // lexicon plus any attached affixes
  std::optional<Wfst> names;
  std::optional<Wfst> translit;
};

// closure_plus of the union of the enabled components. Throws ConfigError
// if an enabled component is missing or the symbol tables differ.
Wfst Assemble(const ModelConfig &config, const ComponentMachines &parts);

// Rejects stacked affixation and result tags that collide with lexicon or
// reserved categories.
void ValidateAffixRules(const std::vector<AffixRule> &rules,
                        const Lexicon &lexicon);

struct ModelData {
  std::shared_ptr<const Lexicon> lexicon;
  std::vector<AffixRule> affixes;
  std::vector<SeenDerived> seen;
  std::optional<NameModel> names;
  std::optional<TransliterationModel> translit;
};

class Segmenter {
 public:
  static Segmenter Build(const ModelConfig &config, const ModelData &data);

  Segmenter(std::shared_ptr<const Lexicon> lexicon,
            std::shared_ptr<SymbolTable> symbols, Wfst model,
            std::set<Label> affix_tags);

  // Least-cost segmentation of one line.
  Segmentation Segment(std::string_view sentence) const;

  // Left-restriction of the model with a run of covered characters: all
  // analyses before the best path is taken.
  Wfst Lattice(std::string_view covered_run) const;

  // Words along one path of a lattice; `offset` shifts character offsets.
  Segmentation ReadPath(const Path &path, size_t offset = 0) const;

  const Lexicon &lexicon() const { return *lexicon_; }
  std::shared_ptr<const Lexicon> shared_lexicon() const { return lexicon_; }
  const Wfst &model() const { return model_; }
  const std::shared_ptr<SymbolTable> &symbols() const { return symbols_; }
  const std::set<Label> &affix_tags() const { return affix_tags_; }

 private:
  std::shared_ptr<const Lexicon> lexicon_;
  std::shared_ptr<SymbolTable> symbols_;
  Wfst model_;
  std::set<Label> affix_tags_;
};

// Left-to-right longest dictionary match at each position; single-hanzi
// fallback where nothing matches.
Segmentation Greedy(const Lexicon &lexicon, std::string_view sentence);
// As Greedy with the shortest match.
Segmentation AntiGreedy(const Lexicon &lexicon, std::string_view sentence);

enum class OutputFormat { kPlain, kTagged, kTsv, kSpans };

OutputFormat ParseOutputFormat(const std::string &name);

// plain: surfaces joined by '/'; tagged: "surface_category" tokens;
// tsv: "surface<TAB>category<TAB>pronunciation<TAB>cost" per word followed
// by a blank line; spans: "sentence<TAB>start<TAB>end<TAB>tag" per word,
// where the tag of a derived word is its affix surface.
std::string FormatSegmentation(const Segmentation &seg, OutputFormat format,
                               size_t sentence_index = 0);

}  // namespace wseg

#endif  // WSEG_SEGMENTER_H_
