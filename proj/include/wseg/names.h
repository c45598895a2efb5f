// names.h
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
// Chinese personal names: FAMILY+GIVEN with one or two hanzi on each side.
// A name's probability is the product of the chance of any name in text,
// the family-name probability, the positional given-name probabilities (or
// a pair probability when the pair is common enough), and the prior of the
// name shape. Given hanzi never seen in a position fall back on a
// Good-Turing estimate computed within the hanzi's semantic-radical class,
// with the singleton counts smoothed against class size.

#ifndef WSEG_NAMES_H_
#define WSEG_NAMES_H_

#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wseg/wfst.h"

namespace wseg {

enum class NameShape {
  kSingleFamilySingleGiven,  // SF+SG
  kSingleFamilyDoubleGiven,  // SF+DG
  kDoubleFamilySingleGiven,  // DF+SG
  kDoubleFamilyDoubleGiven,  // DF+DG
};

inline constexpr NameShape kAllNameShapes[] = {
    NameShape::kSingleFamilySingleGiven, NameShape::kSingleFamilyDoubleGiven,
    NameShape::kDoubleFamilySingleGiven, NameShape::kDoubleFamilyDoubleGiven};

std::string ShapeName(NameShape shape);
NameShape ParseShape(const std::string &name);

// S(size) = scale * size^exponent.
struct PowerLaw {
  double scale = 1.0;
  double exponent = 0.0;
  double operator()(double size) const;
};

// Least squares of log(N1_cls) on log(size) over classes with N1_cls > 0.
// Throws FitError with fewer than two such classes or a single distinct
// size.
PowerLaw FitRadicalSmooth(std::span<const std::pair<double, double>> size_n1);

struct RadicalClass {
  std::set<std::string> members;
  uint64_t unseen = 0;      // N0_cls: members never seen as given hanzi
  uint64_t singletons = 0;  // N1_cls: members seen exactly once
};

class RadicalClassTable {
 public:
  RadicalClassTable() = default;

  // Fits the smooth from the classes unless `smooth` is supplied. N is the
  // total given-hanzi tokens, N1 the number of types seen once.
  RadicalClassTable(std::map<std::string, RadicalClass> classes, uint64_t tokens,
                    uint64_t singletons,
                    std::optional<PowerLaw> smooth = std::nullopt);

  // Builds classes from a hanzi->class map and pooled given-hanzi counts.
  static RadicalClassTable FromCounts(
      const std::map<std::string, std::string> &radicals,
      const std::map<std::string, uint64_t> &given_counts);

  // p0 for one unseen hanzi of the class; 0 when the class has no unseen
  // members or is unknown.
  double UnseenProb(const std::string &cls) const;
  // -ln UnseenProb.
  double UnseenHanziCost(const std::string &cls) const;
  // Class id of a hanzi, or nullptr.
  const std::string *ClassOf(const std::string &hanzi) const;

  const std::map<std::string, RadicalClass> &classes() const { return classes_; }
  uint64_t tokens() const { return tokens_; }
  uint64_t singletons() const { return singletons_; }
  const PowerLaw &smooth() const { return smooth_; }
  double normalizer() const { return normalizer_; }

 private:
  std::map<std::string, RadicalClass> classes_;
  std::map<std::string, std::string> hanzi_class_;
  uint64_t tokens_ = 0;
  uint64_t singletons_ = 0;
  PowerLaw smooth_;
  double normalizer_ = 0.0;
};

struct NameModel {
  double p_name_in_text = 1.0;
  std::map<std::string, double> family_single;
  std::map<std::string, double> family_double;  // key: two hanzi
  std::map<std::string, double> given_pos1;
  std::map<std::string, double> given_pos2;
  std::map<std::string, double> given_single;
  std::map<NameShape, double> type_prior;
  std::map<std::pair<std::string, std::string>, double> bigram_override;
  RadicalClassTable unseen_given;

  // Probabilities in (0, 1], tables summing to <= 1, priors summing to 1.
  void Validate() const;
};

// Probability of a given hanzi in a position table, falling back on the
// radical-class estimate. 0 when neither applies.
double GivenHanziProb(const NameModel &model,
                      const std::map<std::string, double> &table,
                      const std::string &hanzi);

// Cost of FAMILY+GIVEN, +infinity when the family name is not listed or a
// given hanzi cannot be scored.
double NameCost(const NameModel &model, const std::string &family,
                const std::string &given);

struct NameTrainingOptions {
  double p_name_in_text = 0.01;
  std::map<NameShape, double> type_prior;
  uint64_t bigram_threshold = 5;
};

// Counts TSV: hanzi(or pair)<TAB>fam1|fam2|giv1|giv2|givS|giv12<TAB>count.
// giv12 rows carry double-given pairs used for the bigram overrides.
struct NameCounts {
  std::map<std::string, uint64_t> family_single;
  std::map<std::string, uint64_t> family_double;
  std::map<std::string, uint64_t> given_pos1;
  std::map<std::string, uint64_t> given_pos2;
  std::map<std::string, uint64_t> given_single;
  std::map<std::string, uint64_t> given_pairs;
};

NameCounts ReadNameCountsTsv(std::istream &in, const std::string &name);
// hanzi<TAB>class
std::map<std::string, std::string> ReadRadicalMapTsv(std::istream &in,
                                                     const std::string &name);

NameModel TrainNameModel(const NameCounts &counts,
                         const std::map<std::string, std::string> &radicals,
                         const NameTrainingOptions &options);

void WriteNameModel(const NameModel &model, std::ostream &out);
NameModel ReadNameModel(std::istream &in, const std::string &name);

// Accepts F G, F G1 G2, F1F2 G and F1F2 G1G2 over listed family names and
// scorable given hanzi that have a pronunciation; each path costs NameCost
// and ends in epsilon:np.
Wfst BuildNameWfst(const NameModel &model,
                   const std::map<std::string, std::string> &pronunciations,
                   std::shared_ptr<SymbolTable> symbols,
                   const std::string &tag = "np");

}  // namespace wseg

#endif  // WSEG_NAMES_H_
