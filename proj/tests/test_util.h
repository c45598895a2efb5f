// test_util.h
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
// Shared fixtures, generators and brute-force oracles for the tests.

#ifndef WSEG_TESTS_TEST_UTIL_H_
#define WSEG_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wseg/lexicon.h"
#include "wseg/segmenter.h"
#include "wseg/utf8.h"

namespace wseg::testing {

inline std::string FixturePath(const std::string &name) {
  return std::string(WSEG_FIXTURES) + "/" + name;
}

inline std::ifstream OpenFixture(const std::string &name) {
  std::ifstream in(FixturePath(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  return in;
}

inline std::shared_ptr<const Lexicon> LoadLexicon(const std::string &prefix,
                                                  LexiconOptions options = {}) {
  std::ifstream lex = OpenFixture(prefix + "_lexicon.tsv");
  std::ifstream fb = OpenFixture(prefix + "_fallback.tsv");
  auto entries = ReadLexiconTsv(lex, prefix + "_lexicon.tsv", options);
  auto fallback = ReadFallbackTsv(fb, prefix + "_fallback.tsv");
  return std::make_shared<const Lexicon>(std::move(entries), std::move(fallback),
                                         options);
}

inline Segmenter DictionaryOnly(std::shared_ptr<const Lexicon> lexicon) {
  ModelData data;
  data.lexicon = std::move(lexicon);
  return Segmenter::Build(ModelConfig{}, data);
}

inline std::vector<std::string> Surfaces(const Segmentation &seg) {
  std::vector<std::string> out;
  for (const Word &w : seg.words) out.push_back(w.surface);
  return out;
}

inline std::string Concat(const Segmentation &seg) {
  std::string s;
  for (const Word &w : seg.words) s += w.surface;
  return s;
}

// Exhaustive tiling oracle over a dictionary-only model: every split of the
// sentence into pieces, each piece priced at its cheapest entry or, for a
// single hanzi, the fallback cost.
struct Tiling {
  std::vector<std::string> pieces;
  double cost = 0.0;
};

inline double PieceCost(const Lexicon &lex, const std::string &piece,
                        size_t length) {
  double best = std::numeric_limits<double>::infinity();
  for (const LexEntry &e : lex.entries())
    if (e.surface == piece) best = std::min(best, e.cost);
  if (length == 1) best = std::min(best, lex.options().fallback_cost);
  return best;
}

inline std::vector<Tiling> AllTilings(const Lexicon &lex,
                                      const std::vector<std::string> &chars) {
  std::vector<Tiling> out;
  const size_t n = chars.size();
  // Each of the n-1 gaps is either a cut or not.
  for (uint64_t mask = 0; mask < (uint64_t{1} << (n ? n - 1 : 0)); ++mask) {
    Tiling t;
    size_t begin = 0;
    bool ok = true;
    for (size_t i = 1; i <= n; ++i) {
      if (i == n || ((mask >> (i - 1)) & 1)) {
        std::string piece;
        for (size_t k = begin; k < i; ++k) piece += chars[k];
        const double c = PieceCost(lex, piece, i - begin);
        if (!std::isfinite(c)) {
          ok = false;
          break;
        }
        t.pieces.push_back(piece);
        t.cost += c;
        begin = i;
      }
    }
    if (ok) out.push_back(std::move(t));
  }
  return out;
}

inline Tiling BestTiling(const Lexicon &lex, const std::string &sentence) {
  std::vector<Tiling> all = AllTilings(lex, SplitChars(sentence));
  if (all.empty()) throw std::runtime_error("no tiling");
  return *std::min_element(all.begin(), all.end(),
                           [](const Tiling &a, const Tiling &b) {
                             return a.cost < b.cost;
                           });
}

// Random small lexicon over an alphabet of hanzi with distinct syllables.
struct RandomLexiconSpec {
  size_t alphabet = 4;
  size_t max_entries = 8;
  size_t max_entry_length = 3;
};

inline const std::vector<std::pair<std::string, std::string>> &HanziPool() {
  static const std::vector<std::pair<std::string, std::string>> pool = {
      {"日", "ri4"},   {"文", "wen2"},  {"章", "zhang1"}, {"魚", "yu2"},
      {"怎", "zen3"},  {"麼", "mo0"},   {"說", "shuo1"},  {"研", "yan2"},
      {"究", "jiu1"},  {"生", "sheng1"}, {"命", "ming4"}, {"起", "qi3"}};
  return pool;
}

inline std::shared_ptr<const Lexicon> RandomLexicon(std::mt19937_64 &rng,
                                                    const RandomLexiconSpec &spec,
                                                    std::vector<std::string> *alphabet) {
  const auto &pool = HanziPool();
  std::map<std::string, std::string> fallback;
  alphabet->clear();
  for (size_t i = 0; i < spec.alphabet; ++i) {
    fallback[pool[i].first] = pool[i].second;
    alphabet->push_back(pool[i].first);
  }
  std::uniform_int_distribution<size_t> count(1, spec.max_entries);
  std::uniform_int_distribution<size_t> length(1, spec.max_entry_length);
  std::uniform_int_distribution<size_t> pick(0, spec.alphabet - 1);
  std::uniform_real_distribution<double> cost(0.5, 14.0);
  std::vector<LexEntry> entries;
  std::map<std::string, bool> used;
  const size_t n = count(rng);
  for (size_t i = 0; i < n; ++i) {
    LexEntry e;
    const size_t len = length(rng);
    for (size_t k = 0; k < len; ++k) {
      const size_t h = pick(rng);
      e.surface += pool[h].first;
      e.pronunciation.push_back(pool[h].second);
    }
    if (used[e.surface]) continue;
    used[e.surface] = true;
    e.category = (i % 2) ? "nc" : "vb";
    e.cost = cost(rng);
    entries.push_back(std::move(e));
  }
  return std::make_shared<const Lexicon>(std::move(entries), std::move(fallback));
}

inline std::string RandomSentence(std::mt19937_64 &rng,
                                  const std::vector<std::string> &alphabet,
                                  size_t max_length) {
  std::uniform_int_distribution<size_t> length(1, max_length);
  std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
  std::string s;
  const size_t n = length(rng);
  for (size_t i = 0; i < n; ++i) s += alphabet[pick(rng)];
  return s;
}

}  // namespace wseg::testing

#endif  // WSEG_TESTS_TEST_UTIL_H_
