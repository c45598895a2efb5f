// morphology.cc
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

#include "wseg/morphology.h"

#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "wseg/error.h"
#include "wseg/lexicon.h"
#include "wseg/utf8.h"

namespace wseg {

void AffixRule::Validate() const {
  std::vector<std::string> chars = SplitChars(affix_surface);
  if (chars.empty()) throw ValidationError("empty affix surface");
  if (chars.size() != affix_pronunciation.size())
    throw ValidationError("affix " + affix_surface +
                          ": pronunciation length mismatch");
  for (const std::string &s : affix_pronunciation)
    if (!IsSyllable(s))
      throw ValidationError("affix " + affix_surface + ": bad syllable " + s);
  if (base_category.empty() || result_tag.empty())
    throw ValidationError("affix " + affix_surface + ": empty tag");
  if (base_category == result_tag)
    throw ValidationError("affix " + affix_surface +
                          ": result tag equals base category");
  if (singletons > tokens)
    throw ValidationError("affix " + affix_surface + ": N1 exceeds N");
  if (tokens == 0) throw ValidationError("affix " + affix_surface + ": N is 0");
  if (!(prob_text_affix > 0.0 && prob_text_affix <= 1.0))
    throw ValidationError("affix " + affix_surface +
                          ": p_text must lie in (0, 1]");
}

double GoodTuringUnseenProb(uint64_t tokens, uint64_t singletons) {
  if (tokens == 0) throw ArgumentError("good_turing_unseen_prob: N must be >= 1");
  if (singletons > tokens)
    throw ArgumentError("good_turing_unseen_prob: N1 exceeds N");
  return static_cast<double>(singletons) / static_cast<double>(tokens);
}

double UnseenConstructionCost(const AffixRule &rule) {
  rule.Validate();
  double p = GoodTuringUnseenProb(rule.tokens, rule.singletons);
  if (p == 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(p * rule.prob_text_affix);
}

namespace {

// End states of paths spelling `chars` from the start, followed by an
// epsilon:category arc.
std::vector<StateId> FindEntryEnds(const Wfst &m,
                                   const std::vector<Label> &chars,
                                   Label category) {
  std::set<StateId> frontier{m.Start()};
  for (Label c : chars) {
    std::set<StateId> next;
    for (StateId s : frontier)
      for (const Arc &a : m.Arcs(s))
        if (a.ilabel == c) next.insert(a.nextstate);
    frontier = std::move(next);
  }
  std::vector<StateId> ends;
  for (StateId s : frontier) {
    for (const Arc &a : m.Arcs(s)) {
      if (a.ilabel == kEpsilon && a.olabel == category) {
        ends.push_back(s);
        break;
      }
    }
  }
  return ends;
}

}  // namespace

Wfst AttachAffix(const Wfst &lexicon_wfst, const AffixRule &rule,
                 const std::vector<SeenDerived> &seen) {
  rule.Validate();
  if (lexicon_wfst.Start() == kNoState)
    throw ValidationError("attach_affix: lexicon machine has no start state");
  Wfst m = lexicon_wfst;
  SymbolTable &syms = m.MutableSymbols();
  const Label base_tag = syms.AddSymbol(rule.base_category);
  const Label result_tag = syms.AddSymbol(rule.result_tag);
  const double unseen = UnseenConstructionCost(rule);
  const bool productive = std::isfinite(unseen);

  std::set<StateId> category_nodes;
  for (StateId s = 0; s < static_cast<StateId>(m.NumStates()); ++s)
    for (const Arc &a : m.Arcs(s))
      if (a.ilabel == kEpsilon && a.olabel == base_tag && m.IsFinal(a.nextstate))
        category_nodes.insert(a.nextstate);

  const StateId affix_start = m.AddState();
  StateId s = affix_start;
  std::vector<std::string> chars = SplitChars(rule.affix_surface);
  for (size_t i = 0; i < chars.size(); ++i) {
    StateId t = m.AddState();
    m.AddArc(s, Arc{syms.AddSymbol(chars[i]),
                    syms.AddSymbol(rule.affix_pronunciation[i]),
                    TropicalWeight::One(), t});
    s = t;
  }
  const StateId affix_final = m.AddState();
  m.SetFinal(affix_final);
  m.AddArc(s, Arc{kEpsilon, result_tag,
                  TropicalWeight(productive ? unseen : 0.0), affix_final});

  if (productive) {
    for (StateId node : category_nodes)
      m.AddArc(node, Arc{kEpsilon, kEpsilon, TropicalWeight::One(), affix_start});
  }

  for (const SeenDerived &d : seen) {
    if (d.affix_surface != rule.affix_surface) continue;
    if (!std::isfinite(d.whole_word_cost) || d.whole_word_cost < 0)
      throw ValidationError("seen derived " + d.base_surface + rule.affix_surface +
                            ": cost must be finite and >= 0");
    std::vector<Label> base;
    for (const std::string &ch : SplitChars(d.base_surface)) {
      Label l = syms.Find(ch);
      if (l == kNoLabel)
        throw ValidationError("seen derived base " + d.base_surface +
                              " is not in the lexicon");
      base.push_back(l);
    }
    std::vector<StateId> ends = FindEntryEnds(lexicon_wfst, base, base_tag);
    if (ends.empty())
      throw ValidationError("seen derived base " + d.base_surface +
                            " is not a lexicon entry of category " +
                            rule.base_category);
    double cost = productive ? d.whole_word_cost - unseen : d.whole_word_cost;
    m.AddArc(ends.front(), Arc{kEpsilon, base_tag, TropicalWeight(cost),
                               affix_start});
  }
  return m;
}

std::vector<AffixRule> ReadAffixRulesTsv(std::istream &in,
                                         const std::string &name) {
  std::vector<AffixRule> rules;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = StripCr(line);
    if (view.empty() || view.front() == '#') continue;
    const std::string where = Where(name, line_no);
    std::vector<std::string> f = SplitFields(view, '\t');
    if (f.size() != 7)
      throw ValidationError(where + "expected 7 tab-separated fields");
    AffixRule r;
    r.affix_surface = f[0];
    std::istringstream sylls(f[1]);
    for (std::string s; sylls >> s;) r.affix_pronunciation.push_back(s);
    r.base_category = f[2];
    r.result_tag = f[3];
    auto parse_u = [&](const std::string &field) {
      uint64_t v = 0;
      auto res = std::from_chars(field.data(), field.data() + field.size(), v);
      if (res.ec != std::errc() || res.ptr != field.data() + field.size())
        throw ValidationError(where + "bad count '" + field + "'");
      return v;
    };
    r.tokens = parse_u(f[4]);
    r.singletons = parse_u(f[5]);
    auto res = std::from_chars(f[6].data(), f[6].data() + f[6].size(),
                               r.prob_text_affix);
    if (res.ec != std::errc() || res.ptr != f[6].data() + f[6].size())
      throw ValidationError(where + "bad probability '" + f[6] + "'");
    try {
      r.Validate();
    } catch (const ValidationError &err) {
      throw ValidationError(where + err.what());
    }
    rules.push_back(std::move(r));
  }
  return rules;
}

std::vector<SeenDerived> ReadSeenDerivedTsv(
    std::istream &in, const std::string &name,
    const std::vector<AffixRule> &rules) {
  std::vector<SeenDerived> seen;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = StripCr(line);
    if (view.empty() || view.front() == '#') continue;
    const std::string where = Where(name, line_no);
    std::vector<std::string> f = SplitFields(view, '\t');
    if (f.size() != 3)
      throw ValidationError(where + "expected surface<TAB>affix<TAB>cost");
    bool known = false;
    for (const AffixRule &r : rules) known = known || r.affix_surface == f[1];
    if (!known) throw ValidationError(where + "unknown affix '" + f[1] + "'");
    if (f[0].size() <= f[1].size() ||
        f[0].compare(f[0].size() - f[1].size(), f[1].size(), f[1]) != 0)
      throw ValidationError(where + f[0] + " does not end in affix " + f[1]);
    SeenDerived d;
    d.base_surface = f[0].substr(0, f[0].size() - f[1].size());
    d.affix_surface = f[1];
    auto res = std::from_chars(f[2].data(), f[2].data() + f[2].size(),
                               d.whole_word_cost);
    if (res.ec != std::errc() || res.ptr != f[2].data() + f[2].size())
      throw ValidationError(where + "bad cost '" + f[2] + "'");
    if (!std::isfinite(d.whole_word_cost) || d.whole_word_cost < 0)
      throw ValidationError(where + "cost must be finite and >= 0");
    seen.push_back(std::move(d));
  }
  return seen;
}

}  // namespace wseg
