// lexicon.h
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
// Word lexicon: entries with pronunciations, categories and unigram costs,
// plus a per-hanzi fallback table giving default pronunciations for hanzi
// that cannot be grouped into words.
//
// Lexicon TSV:
//   #lexicon v1 mode=counts|costs [total=N]
//   surface<TAB>syllables<TAB>category<TAB>count-or-cost<TAB>likeliest(0|1)
// Fallback TSV:
//   hanzi<TAB>pronunciation

#ifndef WSEG_LEXICON_H_
#define WSEG_LEXICON_H_

#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "wseg/wfst.h"

namespace wseg {

struct LexiconOptions {
  double large_cost = 20.0;     // non-likeliest pronunciations, zero counts
  double fallback_cost = 15.0;  // per isolated hanzi
  std::string fallback_category = "gm";
};

struct LexEntry {
  std::string surface;                     // UTF-8 hanzi
  std::vector<std::string> pronunciation;  // one syllable per hanzi
  std::string category;
  double cost = 0.0;
  bool likeliest = true;
};

// -ln(count / total); large_cost when count is zero. Throws ArgumentError
// if total is zero or count exceeds it.
double CostFromCounts(uint64_t count, uint64_t total, double large_cost = 20.0);

// Entries sharing one surface. Those whose pronunciation matches the
// designated likeliest entry get string_cost; the rest get large_cost.
std::vector<LexEntry> AssignStringCosts(std::vector<LexEntry> entries,
                                        double string_cost,
                                        double large_cost = 20.0);

// Syllable = romanization followed by a tone digit 0-4.
bool IsSyllable(const std::string &syllable);

class Lexicon {
 public:
  // Validates entries and the fallback table: pronunciation length equals
  // surface length, finite non-negative costs, unique (surface, category),
  // and every entry hanzi covered by the fallback table.
  Lexicon(std::vector<LexEntry> entries,
          std::map<std::string, std::string> fallback,
          LexiconOptions options = {});

  const std::vector<LexEntry> &entries() const { return entries_; }
  const std::map<std::string, std::string> &fallback() const {
    return fallback_;
  }
  const LexiconOptions &options() const { return options_; }

  bool Covers(const std::string &hanzi) const {
    return fallback_.count(hanzi) > 0;
  }
  // Default pronunciation, or empty when uncovered.
  std::string DefaultPronunciation(const std::string &hanzi) const;

  // Cheapest entry per surface, for the matching baselines.
  const LexEntry *CheapestEntry(const std::string &surface) const;
  size_t MaxSurfaceLength() const { return max_length_; }

 private:
  std::vector<LexEntry> entries_;
  std::map<std::string, std::string> fallback_;
  LexiconOptions options_;
  std::map<std::string, size_t> cheapest_;
  size_t max_length_ = 0;
};

// Readers name the source in error messages ("file:line: ...").
std::vector<LexEntry> ReadLexiconTsv(std::istream &in, const std::string &name,
                                     const LexiconOptions &options = {});
std::map<std::string, std::string> ReadFallbackTsv(std::istream &in,
                                                   const std::string &name);
// Writes mode=costs with costs to 4 decimals.
void WriteLexiconTsv(const std::vector<LexEntry> &entries, std::ostream &out);

// One path per entry: hanzi:syllable arcs at cost 0, then an
// epsilon:category arc with the entry cost into a final node shared by
// every entry of that category. Fallback hanzi compile the same way under
// the fallback category.
Wfst BuildLexiconWfst(const Lexicon &lexicon,
                      std::shared_ptr<SymbolTable> symbols);

}  // namespace wseg

#endif  // WSEG_LEXICON_H_
