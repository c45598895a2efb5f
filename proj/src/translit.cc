// translit.cc
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

#include "wseg/translit.h"

#include <charconv>
#include <cmath>
#include <limits>

#include "wseg/error.h"
#include "wseg/utf8.h"

namespace wseg {

TransliterationModel TrainTranslit(const std::vector<std::string> &names,
                                   double p_tn) {
  if (names.empty()) throw ValidationError("train_translit: no names");
  if (!(p_tn > 0.0 && p_tn <= 1.0))
    throw ValidationError("train_translit: p_TN must lie in (0, 1]");
  std::map<std::string, uint64_t> counts;
  uint64_t tokens = 0;
  for (const std::string &name : names) {
    for (const std::string &ch : SplitChars(name)) {
      ++counts[ch];
      ++tokens;
    }
  }
  if (tokens == 0) throw ValidationError("train_translit: names are empty");
  TransliterationModel model;
  model.p_tn = p_tn;
  for (const auto &[ch, n] : counts)
    if (n >= 2)
      model.p_char[ch] = static_cast<double>(n) / static_cast<double>(tokens);
  return model;
}

double TranslitCost(const TransliterationModel &model, const std::string &span) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<std::string> chars = SplitChars(span);
  if (chars.empty() || !(model.p_tn > 0.0)) return kInf;
  double cost = -std::log(model.p_tn);
  for (const std::string &ch : chars) {
    auto it = model.p_char.find(ch);
    if (it == model.p_char.end() || !(it->second > 0.0)) return kInf;
    cost += -std::log(it->second);
  }
  return cost;
}

Wfst BuildTranslitWfst(const TransliterationModel &model,
                       const std::map<std::string, std::string> &pronunciations,
                       std::shared_ptr<SymbolTable> symbols,
                       const std::string &tag) {
  if (model.p_char.empty())
    throw ValidationError("build_translit_wfst: empty model");
  if (!(model.p_tn > 0.0 && model.p_tn <= 1.0))
    throw ValidationError("build_translit_wfst: p_TN must lie in (0, 1]");
  Wfst m(symbols);
  const StateId start = m.AddState();
  const StateId entry = m.AddState();
  const StateId loop = m.AddState();
  const StateId final_state = m.AddState();
  m.SetStart(start);
  m.SetFinal(final_state);
  m.AddArc(start, Arc{kEpsilon, kEpsilon, TropicalWeight(-std::log(model.p_tn)),
                      entry});
  for (const auto &[ch, p] : model.p_char) {
    auto pron = pronunciations.find(ch);
    if (pron == pronunciations.end()) continue;
    Arc arc{symbols->AddSymbol(ch), symbols->AddSymbol(pron->second),
            TropicalWeight(-std::log(p)), loop};
    m.AddArc(entry, arc);
    m.AddArc(loop, arc);
  }
  m.AddArc(loop, Arc{kEpsilon, symbols->AddSymbol(tag), TropicalWeight::One(),
                     final_state});
  return m;
}

std::vector<std::string> ReadTranslitNames(std::istream &in,
                                           const std::string &name) {
  std::vector<std::string> names;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = StripCr(line);
    if (view.empty() || view.front() == '#') continue;
    try {
      SplitChars(view);
    } catch (const ValidationError &err) {
      throw ValidationError(Where(name, line_no) + err.what());
    }
    names.emplace_back(view);
  }
  return names;
}

void WriteTranslitModel(const TransliterationModel &model, std::ostream &out) {
  out << "#translit v1\n";
  out << "p_tn\t" << FormatDouble(model.p_tn) << '\n';
  for (const auto &[ch, p] : model.p_char)
    out << ch << '\t' << FormatDouble(p) << '\n';
}

TransliterationModel ReadTranslitModel(std::istream &in,
                                       const std::string &name) {
  TransliterationModel model;
  std::string line;
  size_t line_no = 0;
  bool have_header = false, have_ptn = false;
  double sum = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = StripCr(line);
    if (view.empty()) continue;
    const std::string where = Where(name, line_no);
    if (!have_header) {
      if (view != "#translit v1")
        throw ValidationError(where + "expected '#translit v1' header");
      have_header = true;
      continue;
    }
    std::vector<std::string> f = SplitFields(view, '\t');
    if (f.size() != 2) throw ValidationError(where + "expected 2 fields");
    double v = 0;
    auto res = std::from_chars(f[1].data(), f[1].data() + f[1].size(), v);
    if (res.ec != std::errc() || res.ptr != f[1].data() + f[1].size() ||
        !(v > 0.0 && v <= 1.0))
      throw ValidationError(where + "bad probability '" + f[1] + "'");
    if (f[0] == "p_tn") {
      model.p_tn = v;
      have_ptn = true;
    } else {
      model.p_char[f[0]] = v;
      sum += v;
    }
  }
  if (!have_header || !have_ptn)
    throw ValidationError(name + ": missing header or p_tn");
  if (sum > 1.0 + 1e-9)
    throw ValidationError(name + ": hanzi probabilities exceed 1");
  return model;
}

}  // namespace wseg
