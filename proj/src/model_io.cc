// model_io.cc
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

#include "wseg/model_io.h"

#include <cstdint>
#include <cstring>

#include "wseg/error.h"

namespace wseg {
namespace {

class Writer {
 public:
  explicit Writer(std::ostream &out) : out_(out) {}

  void U64(uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out_.write(reinterpret_cast<const char *>(b), 8);
  }
  void I64(int64_t v) { U64(static_cast<uint64_t>(v)); }
  void F64(double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    U64(bits);
  }
  void Str(const std::string &s) {
    U64(s.size());
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }

 private:
  std::ostream &out_;
};

class Reader {
 public:
  Reader(std::istream &in, const std::string &name) : in_(in), name_(name) {}

  uint64_t U64() {
    unsigned char b[8];
    if (!in_.read(reinterpret_cast<char *>(b), 8)) Truncated();
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
    return v;
  }
  int64_t I64() { return static_cast<int64_t>(U64()); }
  double F64() {
    const uint64_t bits = U64();
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }
  std::string Str() {
    const uint64_t n = U64();
    if (n > (1u << 24)) Corrupt("string length");
    std::string s(n, '\0');
    if (n && !in_.read(s.data(), static_cast<std::streamsize>(n))) Truncated();
    return s;
  }
  size_t Count(uint64_t limit = 1u << 26) {
    const uint64_t n = U64();
    if (n > limit) Corrupt("count");
    return static_cast<size_t>(n);
  }
  [[noreturn]] void Corrupt(const std::string &what) {
    throw ValidationError(name_ + ": corrupt model cache (" + what + ")");
  }

 private:
  [[noreturn]] void Truncated() {
    throw ValidationError(name_ + ": truncated model cache");
  }

  std::istream &in_;
  std::string name_;
};

}  // namespace

void SaveSegmenter(const Segmenter &segmenter, std::ostream &out) {
  out.write(kModelMagic, sizeof(kModelMagic) - 1);
  Writer w(out);
  const Lexicon &lex = segmenter.lexicon();
  w.F64(lex.options().large_cost);
  w.F64(lex.options().fallback_cost);
  w.Str(lex.options().fallback_category);
  w.U64(lex.entries().size());
  for (const LexEntry &e : lex.entries()) {
    w.Str(e.surface);
    w.U64(e.pronunciation.size());
    for (const std::string &p : e.pronunciation) w.Str(p);
    w.Str(e.category);
    w.F64(e.cost);
    w.U64(e.likeliest ? 1 : 0);
  }
  w.U64(lex.fallback().size());
  for (const auto &[h, p] : lex.fallback()) {
    w.Str(h);
    w.Str(p);
  }
  const SymbolTable &syms = *segmenter.symbols();
  w.U64(syms.size());
  for (size_t i = 0; i < syms.size(); ++i)
    w.Str(syms.Symbol(static_cast<Label>(i)));
  const Wfst &m = segmenter.model();
  w.U64(m.NumStates());
  w.I64(m.Start());
  for (StateId s = 0; s < static_cast<StateId>(m.NumStates()); ++s) {
    w.F64(m.Final(s).Value());
    w.U64(m.Arcs(s).size());
    for (const Arc &a : m.Arcs(s)) {
      w.I64(a.ilabel);
      w.I64(a.olabel);
      w.F64(a.weight.Value());
      w.I64(a.nextstate);
    }
  }
  w.U64(segmenter.affix_tags().size());
  for (Label l : segmenter.affix_tags()) w.I64(l);
  if (!out) throw IoError("failed writing model cache");
}

Segmenter LoadSegmenter(std::istream &in, const std::string &name) {
  char magic[sizeof(kModelMagic) - 1];
  if (!in.read(magic, sizeof magic) ||
      std::memcmp(magic, kModelMagic, sizeof magic) != 0)
    throw ValidationError(name + ": not a WSEG1 model cache");
  Reader r(in, name);
  LexiconOptions options;
  options.large_cost = r.F64();
  options.fallback_cost = r.F64();
  options.fallback_category = r.Str();
  std::vector<LexEntry> entries(r.Count());
  for (LexEntry &e : entries) {
    e.surface = r.Str();
    e.pronunciation.resize(r.Count(1024));
    for (std::string &p : e.pronunciation) p = r.Str();
    e.category = r.Str();
    e.cost = r.F64();
    e.likeliest = r.U64() != 0;
  }
  std::map<std::string, std::string> fallback;
  const size_t nfb = r.Count();
  for (size_t i = 0; i < nfb; ++i) {
    std::string h = r.Str();
    fallback[h] = r.Str();
  }
  auto lexicon = std::make_shared<const Lexicon>(std::move(entries),
                                                 std::move(fallback), options);

  auto symbols = std::make_shared<SymbolTable>();
  const size_t nsyms = r.Count();
  for (size_t i = 0; i < nsyms; ++i) {
    std::string sym = r.Str();
    if (i == 0) continue;  // epsilon
    if (symbols->AddSymbol(sym) != static_cast<Label>(i)) r.Corrupt("symbols");
  }
  Wfst model(symbols);
  const size_t nstates = r.Count();
  for (size_t i = 0; i < nstates; ++i) model.AddState();
  const int64_t start = r.I64();
  auto check_state = [&](int64_t s) {
    if (s < 0 || s >= static_cast<int64_t>(nstates)) r.Corrupt("state id");
    return static_cast<StateId>(s);
  };
  auto check_label = [&](int64_t l) {
    if (l < 0 || l >= static_cast<int64_t>(nsyms)) r.Corrupt("label");
    return static_cast<Label>(l);
  };
  if (start != kNoState) model.SetStart(check_state(start));
  for (size_t s = 0; s < nstates; ++s) {
    const StateId sid = static_cast<StateId>(s);
    model.SetFinal(sid, TropicalWeight(r.F64()));
    const size_t narcs = r.Count();
    for (size_t a = 0; a < narcs; ++a) {
      Arc arc;
      arc.ilabel = check_label(r.I64());
      arc.olabel = check_label(r.I64());
      arc.weight = TropicalWeight(r.F64());
      arc.nextstate = check_state(r.I64());
      model.AddArc(sid, arc);
    }
  }
  std::set<Label> tags;
  const size_t ntags = r.Count();
  for (size_t i = 0; i < ntags; ++i) tags.insert(check_label(r.I64()));
  return Segmenter(lexicon, symbols, std::move(model), std::move(tags));
}

}  // namespace wseg
