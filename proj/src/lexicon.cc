// lexicon.cc
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

#include "wseg/lexicon.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "wseg/error.h"
#include "wseg/utf8.h"

namespace wseg {

double CostFromCounts(uint64_t count, uint64_t total, double large_cost) {
  if (total == 0) throw ArgumentError("cost_from_counts: total must be positive");
  if (count > total)
    throw ArgumentError("cost_from_counts: count " + std::to_string(count) +
                        " exceeds total " + std::to_string(total));
  if (count == 0) return large_cost;
  return -std::log(static_cast<double>(count) / static_cast<double>(total));
}

std::vector<LexEntry> AssignStringCosts(std::vector<LexEntry> entries,
                                        double string_cost, double large_cost) {
  if (entries.empty()) throw ArgumentError("assign_string_costs: no entries");
  for (const LexEntry &e : entries) {
    if (e.surface != entries.front().surface)
      throw ArgumentError("assign_string_costs: entries differ in surface (" +
                          e.surface + " vs " + entries.front().surface + ")");
  }
  if (entries.size() == 1) {
    entries.front().cost = string_cost;
    return entries;
  }
  const LexEntry *designated = nullptr;
  for (const LexEntry &e : entries) {
    if (!e.likeliest) continue;
    if (designated && designated->pronunciation != e.pronunciation)
      throw ArgumentError("assign_string_costs: conflicting likeliest "
                          "pronunciations for " + e.surface);
    designated = &e;
  }
  if (!designated)
    throw ArgumentError("assign_string_costs: no likeliest pronunciation for " +
                        entries.front().surface);
  const std::vector<std::string> likeliest = designated->pronunciation;
  for (LexEntry &e : entries)
    e.cost = e.pronunciation == likeliest ? string_cost : large_cost;
  return entries;
}

bool IsSyllable(const std::string &syllable) {
  if (syllable.size() < 2) return false;
  char tone = syllable.back();
  if (tone < '0' || tone > '4') return false;
  for (size_t i = 0; i + 1 < syllable.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(syllable[i]);
    if (c <= ' ' || c == '\t' || (c >= '0' && c <= '9')) return false;
  }
  return true;
}

Lexicon::Lexicon(std::vector<LexEntry> entries,
                 std::map<std::string, std::string> fallback,
                 LexiconOptions options)
    : entries_(std::move(entries)),
      fallback_(std::move(fallback)),
      options_(std::move(options)) {
  if (!(options_.large_cost >= 0) || !std::isfinite(options_.large_cost) ||
      !(options_.fallback_cost >= 0) || !std::isfinite(options_.fallback_cost))
    throw ConfigError("lexicon constants must be finite and non-negative");
  for (const auto &[hanzi, pron] : fallback_) {
    if (SplitChars(hanzi).size() != 1)
      throw ValidationError("fallback key is not one character: " + hanzi);
    if (!IsSyllable(pron))
      throw ValidationError("bad fallback pronunciation for " + hanzi + ": " +
                            pron);
  }
  std::set<std::pair<std::string, std::string>> seen;
  for (size_t i = 0; i < entries_.size(); ++i) {
    const LexEntry &e = entries_[i];
    std::vector<std::string> chars = SplitChars(e.surface);
    if (chars.empty()) throw ValidationError("empty lexicon surface");
    if (chars.size() != e.pronunciation.size())
      throw ValidationError("pronunciation length mismatch for " + e.surface);
    for (const std::string &syl : e.pronunciation)
      if (!IsSyllable(syl))
        throw ValidationError("bad syllable '" + syl + "' in " + e.surface);
    if (e.category.empty())
      throw ValidationError("empty category for " + e.surface);
    if (!std::isfinite(e.cost) || e.cost < 0)
      throw ValidationError("cost of " + e.surface + " must be finite and >= 0");
    if (!seen.emplace(e.surface, e.category).second)
      throw ValidationError("duplicate entry " + e.surface + "/" + e.category);
    for (const std::string &ch : chars)
      if (!fallback_.count(ch))
        throw ValidationError("hanzi " + ch + " in " + e.surface +
                              " has no fallback pronunciation");
    auto it = cheapest_.find(e.surface);
    if (it == cheapest_.end() || e.cost < entries_[it->second].cost)
      cheapest_[e.surface] = i;
    max_length_ = std::max(max_length_, chars.size());
  }
}

std::string Lexicon::DefaultPronunciation(const std::string &hanzi) const {
  auto it = fallback_.find(hanzi);
  return it == fallback_.end() ? std::string() : it->second;
}

const LexEntry *Lexicon::CheapestEntry(const std::string &surface) const {
  auto it = cheapest_.find(surface);
  return it == cheapest_.end() ? nullptr : &entries_[it->second];
}

namespace {

double ParseNumber(const std::string &field, const std::string &where) {
  double v = 0;
  auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw ValidationError(where + "bad number '" + field + "'");
  return v;
}

uint64_t ParseCount(const std::string &field, const std::string &where) {
  uint64_t v = 0;
  auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size())
    throw ValidationError(where + "bad count '" + field + "'");
  return v;
}

}  // namespace

std::vector<LexEntry> ReadLexiconTsv(std::istream &in, const std::string &name,
                                     const LexiconOptions &options) {
  std::string line;
  size_t line_no = 0;
  bool counts_mode = false;
  uint64_t declared_total = 0;
  bool have_header = false;

  std::vector<LexEntry> entries;
  std::vector<uint64_t> counts;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = StripCr(line);
    if (view.empty()) continue;
    const std::string where = Where(name, line_no);
    if (!have_header) {
      std::istringstream header{std::string(view)};
      std::string tag, version;
      header >> tag >> version;
      if (tag != "#lexicon" || version != "v1")
        throw ValidationError(where + "expected header '#lexicon v1 mode=...'");
      bool have_mode = false;
      for (std::string kv; header >> kv;) {
        if (kv == "mode=counts") {
          counts_mode = true;
          have_mode = true;
        } else if (kv == "mode=costs") {
          have_mode = true;
        } else if (kv.rfind("total=", 0) == 0) {
          declared_total = ParseCount(kv.substr(6), where);
        } else {
          throw ValidationError(where + "unknown header field '" + kv + "'");
        }
      }
      if (!have_mode) throw ValidationError(where + "header lacks mode=");
      have_header = true;
      continue;
    }
    if (view.front() == '#') continue;
    std::vector<std::string> f = SplitFields(view, '\t');
    if (f.size() != 5)
      throw ValidationError(where + "expected 5 tab-separated fields, got " +
                            std::to_string(f.size()));
    LexEntry e;
    e.surface = f[0];
    std::istringstream sylls(f[1]);
    for (std::string s; sylls >> s;) e.pronunciation.push_back(s);
    e.category = f[2];
    if (f[4] != "0" && f[4] != "1")
      throw ValidationError(where + "likeliest flag must be 0 or 1");
    e.likeliest = f[4] == "1";
    try {
      if (SplitChars(e.surface).size() != e.pronunciation.size())
        throw ValidationError("pronunciation length differs from surface");
    } catch (const ValidationError &err) {
      throw ValidationError(where + err.what());
    }
    if (counts_mode) {
      counts.push_back(ParseCount(f[3], where));
    } else {
      e.cost = ParseNumber(f[3], where);
      if (!std::isfinite(e.cost) || e.cost < 0)
        throw ValidationError(where + "cost must be finite and >= 0");
    }
    entries.push_back(std::move(e));
  }
  if (!have_header) throw ValidationError(name + ": missing #lexicon header");
  if (!counts_mode) return entries;

  uint64_t total = declared_total;
  std::map<std::string, uint64_t> string_counts;
  uint64_t sum = 0;
  for (size_t i = 0; i < entries.size(); ++i) {
    string_counts[entries[i].surface] += counts[i];
    sum += counts[i];
  }
  if (total == 0) total = sum;
  if (total == 0) throw ValidationError(name + ": counts sum to zero");

  std::map<std::string, std::vector<LexEntry>> groups;
  std::vector<std::string> order;
  for (LexEntry &e : entries) {
    if (!groups.count(e.surface)) order.push_back(e.surface);
    groups[e.surface].push_back(std::move(e));
  }
  std::vector<LexEntry> out;
  for (const std::string &surface : order) {
    double cost;
    try {
      cost = CostFromCounts(string_counts[surface], total, options.large_cost);
      for (LexEntry &e : AssignStringCosts(std::move(groups[surface]), cost,
                                           options.large_cost))
        out.push_back(std::move(e));
    } catch (const ArgumentError &err) {
      throw ValidationError(name + ": " + err.what());
    }
  }
  return out;
}

std::map<std::string, std::string> ReadFallbackTsv(std::istream &in,
                                                   const std::string &name) {
  std::map<std::string, std::string> table;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = StripCr(line);
    if (view.empty() || view.front() == '#') continue;
    std::vector<std::string> f = SplitFields(view, '\t');
    const std::string where = Where(name, line_no);
    if (f.size() != 2)
      throw ValidationError(where + "expected hanzi<TAB>pronunciation");
    try {
      if (SplitChars(f[0]).size() != 1)
        throw ValidationError("key is not a single character");
    } catch (const ValidationError &err) {
      throw ValidationError(where + err.what());
    }
    if (!IsSyllable(f[1]))
      throw ValidationError(where + "bad pronunciation '" + f[1] + "'");
    if (!table.emplace(f[0], f[1]).second)
      throw ValidationError(where + "duplicate fallback for " + f[0]);
  }
  return table;
}

void WriteLexiconTsv(const std::vector<LexEntry> &entries, std::ostream &out) {
  out << "#lexicon v1 mode=costs\n";
  char cost[64];
  for (const LexEntry &e : entries) {
    std::snprintf(cost, sizeof(cost), "%.4f", e.cost);
    out << e.surface << '\t' << Join(e.pronunciation, " ") << '\t' << e.category
        << '\t' << cost << '\t' << (e.likeliest ? '1' : '0') << '\n';
  }
}

Wfst BuildLexiconWfst(const Lexicon &lexicon,
                      std::shared_ptr<SymbolTable> symbols) {
  Wfst m(symbols);
  StateId start = m.AddState();
  m.SetStart(start);
  std::map<Label, StateId> category_node;
  auto node_for = [&](Label tag) {
    auto it = category_node.find(tag);
    if (it != category_node.end()) return it->second;
    StateId s = m.AddState();
    m.SetFinal(s);
    category_node.emplace(tag, s);
    return s;
  };
  auto add_path = [&](const std::vector<std::string> &chars,
                      const std::vector<std::string> &pron,
                      const std::string &category, double cost) {
    if (chars.size() != pron.size())
      throw ValidationError("pronunciation length mismatch for " +
                            Join(chars, ""));
    StateId s = start;
    for (size_t i = 0; i < chars.size(); ++i) {
      StateId t = m.AddState();
      m.AddArc(s, Arc{symbols->AddSymbol(chars[i]), symbols->AddSymbol(pron[i]),
                      TropicalWeight::One(), t});
      s = t;
    }
    Label tag = symbols->AddSymbol(category);
    m.AddArc(s, Arc{kEpsilon, tag, TropicalWeight(cost), node_for(tag)});
  };
  for (const LexEntry &e : lexicon.entries())
    add_path(SplitChars(e.surface), e.pronunciation, e.category, e.cost);
  for (const auto &[hanzi, pron] : lexicon.fallback())
    add_path({hanzi}, {pron}, lexicon.options().fallback_category,
             lexicon.options().fallback_cost);
  return m;
}

}  // namespace wseg
