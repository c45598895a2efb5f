// segmenter.cc
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

#include "wseg/segmenter.h"

#include <cstdio>

#include "wseg/error.h"
#include "wseg/utf8.h"

namespace wseg {

Wfst Assemble(const ModelConfig &config, const ComponentMachines &parts) {
  Wfst combined = parts.dictionary;
  if (config.names) {
    if (!parts.names) throw ConfigError("names enabled but no name machine");
    combined = Union(combined, *parts.names);
  }
  if (config.translit) {
    if (!parts.translit)
      throw ConfigError("transliterations enabled but no translit machine");
    combined = Union(combined, *parts.translit);
  }
  return ClosurePlus(combined);
}

void ValidateAffixRules(const std::vector<AffixRule> &rules,
                        const Lexicon &lexicon) {
  std::set<std::string> reserved{lexicon.options().fallback_category,
                                 std::string(kUnknownCategory),
                                 std::string(kSymbolCategory),
                                 std::string(kNameCategory),
                                 std::string(kTranslitCategory)};
  for (const LexEntry &e : lexicon.entries()) reserved.insert(e.category);
  std::set<std::string> results;
  for (const AffixRule &r : rules) {
    r.Validate();
    if (reserved.count(r.result_tag))
      throw ValidationError("affix " + r.affix_surface + ": result tag " +
                            r.result_tag + " is already a category");
    results.insert(r.result_tag);
  }
  for (const AffixRule &r : rules) {
    if (results.count(r.base_category))
      throw ValidationError("affix " + r.affix_surface +
                            ": stacked affixation on " + r.base_category +
                            " is not supported");
  }
}

Segmenter Segmenter::Build(const ModelConfig &config, const ModelData &data) {
  if (!data.lexicon) throw ConfigError("the dictionary component is required");
  auto symbols = std::make_shared<SymbolTable>();
  Wfst dictionary = BuildLexiconWfst(*data.lexicon, symbols);
  std::set<Label> affix_tags;
  if (config.morphology) {
    ValidateAffixRules(data.affixes, *data.lexicon);
    for (const AffixRule &rule : data.affixes) {
      dictionary = AttachAffix(dictionary, rule, data.seen);
      affix_tags.insert(symbols->Find(rule.result_tag));
    }
  }
  ComponentMachines parts{std::move(dictionary), std::nullopt, std::nullopt};
  const auto &prons = data.lexicon->fallback();
  if (config.names) {
    if (!data.names) throw ConfigError("names enabled but no name model given");
    parts.names = BuildNameWfst(*data.names, prons, symbols,
                                std::string(kNameCategory));
  }
  if (config.translit) {
    if (!data.translit)
      throw ConfigError("transliterations enabled but no model given");
    parts.translit = BuildTranslitWfst(*data.translit, prons, symbols,
                                       std::string(kTranslitCategory));
  }
  Wfst model = Assemble(config, parts);
  return Segmenter(data.lexicon, symbols, std::move(model), std::move(affix_tags));
}

Segmenter::Segmenter(std::shared_ptr<const Lexicon> lexicon,
                     std::shared_ptr<SymbolTable> symbols, Wfst model,
                     std::set<Label> affix_tags)
    : lexicon_(std::move(lexicon)),
      symbols_(std::move(symbols)),
      model_(std::move(model)),
      affix_tags_(std::move(affix_tags)) {
  if (model_.Symbols() != symbols_)
    throw ConfigError("segmenter model uses a foreign symbol table");
}

namespace {

enum class PieceKind { kCovered, kUnknown, kSymbol };

struct Piece {
  PieceKind kind;
  size_t start;
  size_t end;
};

// Covered runs, unknown hanzi and same-class symbol runs, in order.
std::vector<Piece> SplitPieces(const Lexicon &lexicon,
                               const std::vector<std::string> &chars) {
  std::vector<Piece> pieces;
  size_t i = 0;
  while (i < chars.size()) {
    if (lexicon.Covers(chars[i])) {
      size_t j = i;
      while (j < chars.size() && lexicon.Covers(chars[j])) ++j;
      pieces.push_back({PieceKind::kCovered, i, j});
      i = j;
      continue;
    }
    CharClass cls = ClassifyChar(DecodeChar(chars[i]));
    if (cls == CharClass::kHanzi) {
      pieces.push_back({PieceKind::kUnknown, i, i + 1});
      ++i;
      continue;
    }
    size_t j = i + 1;
    while (j < chars.size() && !lexicon.Covers(chars[j]) &&
           ClassifyChar(DecodeChar(chars[j])) == cls)
      ++j;
    pieces.push_back({PieceKind::kSymbol, i, j});
    i = j;
  }
  return pieces;
}

std::string Slice(const std::vector<std::string> &chars, size_t b, size_t e) {
  std::string s;
  for (size_t k = b; k < e; ++k) s += chars[k];
  return s;
}

Word PassThrough(const std::vector<std::string> &chars, const Piece &p) {
  Word w;
  w.surface = Slice(chars, p.start, p.end);
  w.category = p.kind == PieceKind::kUnknown ? std::string(kUnknownCategory)
                                             : std::string(kSymbolCategory);
  w.start = p.start;
  w.end = p.end;
  return w;
}

void Append(Segmentation *into, Segmentation part) {
  for (Word &w : part.words) into->words.push_back(std::move(w));
  into->total_cost += part.total_cost;
}

Segmentation MatchBaseline(const Lexicon &lexicon, std::string_view sentence,
                           bool longest) {
  std::vector<std::string> chars = SplitChars(sentence);
  Segmentation seg;
  for (const Piece &p : SplitPieces(lexicon, chars)) {
    if (p.kind != PieceKind::kCovered) {
      seg.words.push_back(PassThrough(chars, p));
      continue;
    }
    size_t i = p.start;
    while (i < p.end) {
      const size_t max_len = std::min(lexicon.MaxSurfaceLength(), p.end - i);
      const LexEntry *match = nullptr;
      size_t len = 0;
      for (size_t k = 1; k <= max_len; ++k) {
        size_t l = longest ? max_len + 1 - k : k;
        if (const LexEntry *e = lexicon.CheapestEntry(Slice(chars, i, i + l))) {
          match = e;
          len = l;
          break;
        }
      }
      Word w;
      w.start = i;
      if (match) {
        w.surface = match->surface;
        w.category = match->category;
        w.pronunciation = match->pronunciation;
        w.cost = match->cost;
      } else {
        len = 1;
        w.surface = chars[i];
        w.category = lexicon.options().fallback_category;
        w.pronunciation = {lexicon.DefaultPronunciation(chars[i])};
        w.cost = lexicon.options().fallback_cost;
      }
      w.end = i + len;
      seg.total_cost += w.cost;
      seg.words.push_back(std::move(w));
      i += len;
    }
  }
  return seg;
}

}  // namespace

Wfst Segmenter::Lattice(std::string_view covered_run) const {
  std::vector<Label> labels;
  for (const std::string &ch : SplitChars(covered_run)) {
    Label l = symbols_->Find(ch);
    if (l == kNoLabel || !lexicon_->Covers(ch))
      throw ValidationError("character " + ch + " is not covered by the model");
    labels.push_back(l);
  }
  return LeftRestrict(model_, LinearAcceptor(symbols_, labels));
}

Segmentation Segmenter::ReadPath(const Path &path, size_t offset) const {
  struct Chunk {
    std::vector<std::string> chars;
    std::vector<std::string> prons;
    std::string tag;
    Label tag_label = kNoLabel;
    double cost = 0.0;
  };
  std::vector<Chunk> chunks;
  Chunk open;
  for (const PathArc &pa : path.arcs) {
    const Arc &a = pa.arc;
    open.cost += a.weight.Value();
    if (a.ilabel != kEpsilon) {
      open.chars.push_back(symbols_->Symbol(a.ilabel));
      if (a.olabel != kEpsilon) open.prons.push_back(symbols_->Symbol(a.olabel));
    } else if (a.olabel != kEpsilon) {
      open.tag = symbols_->Symbol(a.olabel);
      open.tag_label = a.olabel;
      chunks.push_back(std::move(open));
      open = Chunk();
    }
  }
  open.cost += path.total_cost.Value() - [&] {
    double sum = 0;
    for (const PathArc &pa : path.arcs) sum += pa.arc.weight.Value();
    return sum;
  }();
  if (!chunks.empty()) {
    chunks.back().cost += open.cost;
    for (auto &c : open.chars) chunks.back().chars.push_back(c);
  } else if (!open.chars.empty()) {
    throw ValidationError("path ends without a category arc");
  }

  Segmentation seg;
  size_t position = offset;
  for (Chunk &c : chunks) {
    const bool is_affix = affix_tags_.count(c.tag_label) > 0;
    if ((is_affix || c.chars.empty()) && !seg.words.empty()) {
      Word &w = seg.words.back();
      std::string affix;
      for (const std::string &ch : c.chars) affix += ch;
      w.surface += affix;
      for (auto &p : c.prons) w.pronunciation.push_back(std::move(p));
      w.cost += c.cost;
      w.end += c.chars.size();
      if (is_affix) {
        w.category = c.tag;
        w.affix = affix;
      }
      position += c.chars.size();
      continue;
    }
    Word w;
    for (const std::string &ch : c.chars) w.surface += ch;
    w.category = c.tag;
    w.pronunciation = std::move(c.prons);
    w.cost = c.cost;
    w.start = position;
    w.end = position + c.chars.size();
    position = w.end;
    seg.words.push_back(std::move(w));
  }
  for (const Word &w : seg.words) seg.total_cost += w.cost;
  return seg;
}

Segmentation Segmenter::Segment(std::string_view sentence) const {
  std::vector<std::string> chars = SplitChars(sentence);
  Segmentation seg;
  for (const Piece &p : SplitPieces(*lexicon_, chars)) {
    if (p.kind != PieceKind::kCovered) {
      seg.words.push_back(PassThrough(chars, p));
      continue;
    }
    Wfst lattice = Lattice(Slice(chars, p.start, p.end));
    Append(&seg, ReadPath(BestPath(lattice), p.start));
  }
  return seg;
}

Segmentation Greedy(const Lexicon &lexicon, std::string_view sentence) {
  return MatchBaseline(lexicon, sentence, true);
}

Segmentation AntiGreedy(const Lexicon &lexicon, std::string_view sentence) {
  return MatchBaseline(lexicon, sentence, false);
}

OutputFormat ParseOutputFormat(const std::string &name) {
  if (name == "plain") return OutputFormat::kPlain;
  if (name == "tagged") return OutputFormat::kTagged;
  if (name == "tsv") return OutputFormat::kTsv;
  if (name == "spans") return OutputFormat::kSpans;
  throw ConfigError("unknown output format '" + name + "'");
}

std::string FormatSegmentation(const Segmentation &seg, OutputFormat format,
                               size_t sentence_index) {
  std::string out;
  char cost[64];
  for (size_t i = 0; i < seg.words.size(); ++i) {
    const Word &w = seg.words[i];
    switch (format) {
      case OutputFormat::kPlain:
        if (i) out += '/';
        out += w.surface;
        break;
      case OutputFormat::kTagged:
        if (i) out += ' ';
        out += w.surface + "_" + w.category;
        break;
      case OutputFormat::kTsv:
        std::snprintf(cost, sizeof(cost), "%.4f", w.cost);
        out += w.surface + "\t" + w.category + "\t" +
               Join(w.pronunciation, " ") + "\t" + cost + "\n";
        break;
      case OutputFormat::kSpans:
        out += std::to_string(sentence_index) + "\t" + std::to_string(w.start) +
               "\t" + std::to_string(w.end) + "\t" +
               (w.affix.empty() ? w.category : w.affix) + "\n";
        break;
    }
  }
  if (format == OutputFormat::kPlain || format == OutputFormat::kTagged ||
      format == OutputFormat::kTsv)
    out += '\n';
  return out;
}

}  // namespace wseg
