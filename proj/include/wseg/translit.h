// translit.h
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
// Transliterated foreign names as unigram products over the hanzi that
// recur in known transliterations.

#ifndef WSEG_TRANSLIT_H_
#define WSEG_TRANSLIT_H_

#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "wseg/wfst.h"

namespace wseg {

struct TransliterationModel {
  double p_tn = 1.0;                   // any transliterated name in text
  std::map<std::string, double> p_char;  // hanzi seen at least twice
};

// p_char(h) = count(h) / all hanzi tokens, keeping hanzi with count >= 2.
// Dropped singletons stay in the denominator. Throws ValidationError on an
// empty name list.
TransliterationModel TrainTranslit(const std::vector<std::string> &names,
                                   double p_tn);

// -ln p_TN + sum_i -ln p_char(span_i); +infinity for an uncovered hanzi or
// an empty span.
double TranslitCost(const TransliterationModel &model, const std::string &span);

// start -eps/-ln p_TN-> s1 -h-> s2, s2 loops on every modeled hanzi, then
// eps:FN into the final state, so a span of n >= 1 hanzi costs TranslitCost.
Wfst BuildTranslitWfst(const TransliterationModel &model,
                       const std::map<std::string, std::string> &pronunciations,
                       std::shared_ptr<SymbolTable> symbols,
                       const std::string &tag = "FN");

// One name per line.
std::vector<std::string> ReadTranslitNames(std::istream &in,
                                           const std::string &name);

// "#translit v1", "p_tn<TAB>value", then "hanzi<TAB>prob" lines.
void WriteTranslitModel(const TransliterationModel &model, std::ostream &out);
TransliterationModel ReadTranslitModel(std::istream &in, const std::string &name);

}  // namespace wseg

#endif  // WSEG_TRANSLIT_H_
