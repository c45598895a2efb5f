// morphology.h
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
// Productive affixation (plural 們, resultatives such as 不了) attached to
// the lexicon machine. Unseen derived words back off to the base cost plus
// a Good-Turing estimate for novel members of the construction; derived
// words seen in the corpus keep their own whole-word cost.
//
// Affix rule TSV:
//   affix<TAB>syllables<TAB>base_category<TAB>result_tag<TAB>N<TAB>N1<TAB>p_text
// Seen-derived TSV:
//   surface<TAB>affix<TAB>cost

#ifndef WSEG_MORPHOLOGY_H_
#define WSEG_MORPHOLOGY_H_

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "wseg/wfst.h"

namespace wseg {

struct AffixRule {
  std::string affix_surface;
  std::vector<std::string> affix_pronunciation;
  std::string base_category;
  std::string result_tag;
  uint64_t tokens = 0;      // N
  uint64_t singletons = 0;  // N1
  double prob_text_affix = 1.0;

  void Validate() const;
};

struct SeenDerived {
  std::string base_surface;
  std::string affix_surface;
  double whole_word_cost = 0.0;
};

// N1 / N. Throws ArgumentError when N is zero or N1 > N.
double GoodTuringUnseenProb(uint64_t tokens, uint64_t singletons);

// -ln((N1/N) * p_text(affix)); +infinity when N1 is zero.
double UnseenConstructionCost(const AffixRule &rule);

// Adds the affix sub-machine for `rule` to a lexicon machine built by
// BuildLexiconWfst. Every final node reached by an epsilon:base_category
// arc gets a free epsilon link into the affix path, whose closing
// epsilon:result_tag arc carries the unseen-construction cost. Each seen
// derived word gets a dedicated epsilon:base_category arc from the end of
// its base hanzi into the affix path, costed so that the whole path sums to
// its whole-word cost. Throws ValidationError when a seen base is missing
// or when the rule would stack on another affix's result tag.
Wfst AttachAffix(const Wfst &lexicon_wfst, const AffixRule &rule,
                 const std::vector<SeenDerived> &seen);

std::vector<AffixRule> ReadAffixRulesTsv(std::istream &in,
                                         const std::string &name);
// Splits each surface into base + affix using the known affix surfaces.
std::vector<SeenDerived> ReadSeenDerivedTsv(std::istream &in,
                                            const std::string &name,
                                            const std::vector<AffixRule> &rules);

}  // namespace wseg

#endif  // WSEG_MORPHOLOGY_H_
