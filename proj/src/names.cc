// names.cc
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

#include "wseg/names.h"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "wseg/error.h"
#include "wseg/utf8.h"

namespace wseg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double NegLog(double p) { return p > 0.0 ? -std::log(p) : kInf; }

double ParseDouble(const std::string &field, const std::string &where) {
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

size_t CharCount(const std::string &s) { return SplitChars(s).size(); }

}  // namespace

std::string ShapeName(NameShape shape) {
  switch (shape) {
    case NameShape::kSingleFamilySingleGiven:
      return "SF+SG";
    case NameShape::kSingleFamilyDoubleGiven:
      return "SF+DG";
    case NameShape::kDoubleFamilySingleGiven:
      return "DF+SG";
    case NameShape::kDoubleFamilyDoubleGiven:
      return "DF+DG";
  }
  return "?";
}

NameShape ParseShape(const std::string &name) {
  for (NameShape s : kAllNameShapes)
    if (ShapeName(s) == name) return s;
  throw ValidationError("unknown name shape '" + name + "'");
}

double PowerLaw::operator()(double size) const {
  return scale * std::pow(size, exponent);
}

PowerLaw FitRadicalSmooth(std::span<const std::pair<double, double>> size_n1) {
  std::vector<std::pair<double, double>> logs;
  for (const auto &[size, n1] : size_n1) {
    if (n1 > 0 && size > 0) logs.emplace_back(std::log(size), std::log(n1));
  }
  if (logs.size() < 2)
    throw FitError("radical smooth needs at least two classes with N1 > 0");
  double mx = 0, my = 0;
  for (const auto &[x, y] : logs) {
    mx += x;
    my += y;
  }
  mx /= logs.size();
  my /= logs.size();
  double sxx = 0, sxy = 0;
  for (const auto &[x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx <= 1e-300)
    throw FitError("radical smooth is undefined: all classes have one size");
  PowerLaw law;
  law.exponent = sxy / sxx;
  law.scale = std::exp(my - law.exponent * mx);
  return law;
}

RadicalClassTable::RadicalClassTable(std::map<std::string, RadicalClass> classes,
                                     uint64_t tokens, uint64_t singletons,
                                     std::optional<PowerLaw> smooth)
    : classes_(std::move(classes)), tokens_(tokens), singletons_(singletons) {
  if (singletons_ > tokens_)
    throw ValidationError("radical table: N1 exceeds N");
  for (const auto &[cls, c] : classes_) {
    if (c.unseen > c.members.size() || c.singletons > c.members.size())
      throw ValidationError("radical class " + cls +
                            ": counts exceed class size");
    for (const std::string &h : c.members) {
      if (!hanzi_class_.emplace(h, cls).second)
        throw ValidationError("hanzi " + h + " belongs to two radical classes");
    }
  }
  if (tokens_ == 0 || singletons_ == 0) return;  // no unseen mass

  if (smooth) {
    smooth_ = *smooth;
  } else {
    std::vector<std::pair<double, double>> points;
    for (const auto &[cls, c] : classes_)
      points.emplace_back(static_cast<double>(c.members.size()),
                          static_cast<double>(c.singletons));
    smooth_ = FitRadicalSmooth(points);
  }
  double total = 0;
  for (const auto &[cls, c] : classes_)
    if (c.unseen > 0) total += smooth_(static_cast<double>(c.members.size()));
  if (total > 0) normalizer_ = static_cast<double>(singletons_) / total;
}

RadicalClassTable RadicalClassTable::FromCounts(
    const std::map<std::string, std::string> &radicals,
    const std::map<std::string, uint64_t> &given_counts) {
  std::map<std::string, RadicalClass> classes;
  for (const auto &[hanzi, cls] : radicals) classes[cls].members.insert(hanzi);
  uint64_t tokens = 0, singletons = 0;
  for (const auto &[hanzi, count] : given_counts) {
    tokens += count;
    if (count == 1) ++singletons;
  }
  for (auto &[cls, c] : classes) {
    for (const std::string &h : c.members) {
      auto it = given_counts.find(h);
      uint64_t n = it == given_counts.end() ? 0 : it->second;
      if (n == 0) ++c.unseen;
      if (n == 1) ++c.singletons;
    }
  }
  return RadicalClassTable(std::move(classes), tokens, singletons);
}

double RadicalClassTable::UnseenProb(const std::string &cls) const {
  auto it = classes_.find(cls);
  if (it == classes_.end() || it->second.unseen == 0 || normalizer_ == 0.0)
    return 0.0;
  const RadicalClass &c = it->second;
  return normalizer_ * smooth_(static_cast<double>(c.members.size())) /
         (static_cast<double>(tokens_) * static_cast<double>(c.unseen));
}

double RadicalClassTable::UnseenHanziCost(const std::string &cls) const {
  return NegLog(UnseenProb(cls));
}

const std::string *RadicalClassTable::ClassOf(const std::string &hanzi) const {
  auto it = hanzi_class_.find(hanzi);
  return it == hanzi_class_.end() ? nullptr : &it->second;
}

void NameModel::Validate() const {
  if (!(p_name_in_text > 0.0 && p_name_in_text <= 1.0))
    throw ValidationError("p_name_in_text must lie in (0, 1]");
  auto check_table = [](const std::map<std::string, double> &t,
                        const char *what, size_t key_chars) {
    double sum = 0;
    for (const auto &[k, p] : t) {
      if (!(p > 0.0 && p <= 1.0))
        throw ValidationError(std::string(what) + " probability of " + k +
                              " outside (0, 1]");
      if (CharCount(k) != key_chars)
        throw ValidationError(std::string(what) + " key " + k +
                              " has the wrong length");
      sum += p;
    }
    if (sum > 1.0 + 1e-9)
      throw ValidationError(std::string(what) + " probabilities exceed 1");
  };
  check_table(family_single, "fam1", 1);
  check_table(family_double, "fam2", 2);
  check_table(given_pos1, "giv1", 1);
  check_table(given_pos2, "giv2", 1);
  check_table(given_single, "givS", 1);
  double prior_sum = 0;
  for (NameShape s : kAllNameShapes) {
    auto it = type_prior.find(s);
    double p = it == type_prior.end() ? 0.0 : it->second;
    if (!(p >= 0.0 && p <= 1.0))
      throw ValidationError("prior " + ShapeName(s) + " outside [0, 1]");
    prior_sum += p;
  }
  if (std::abs(prior_sum - 1.0) > 1e-9)
    throw ValidationError("name-type priors must sum to 1");
  for (const auto &[pair, p] : bigram_override) {
    if (!(p > 0.0 && p <= 1.0))
      throw ValidationError("bigram override " + pair.first + pair.second +
                            " outside (0, 1]");
  }
}

double GivenHanziProb(const NameModel &model,
                      const std::map<std::string, double> &table,
                      const std::string &hanzi) {
  auto it = table.find(hanzi);
  if (it != table.end()) return it->second;
  const std::string *cls = model.unseen_given.ClassOf(hanzi);
  return cls ? model.unseen_given.UnseenProb(*cls) : 0.0;
}

namespace {

double PriorOf(const NameModel &model, NameShape shape) {
  auto it = model.type_prior.find(shape);
  return it == model.type_prior.end() ? 0.0 : it->second;
}

}  // namespace

double NameCost(const NameModel &model, const std::string &family,
                const std::string &given) {
  std::vector<std::string> fam = SplitChars(family);
  std::vector<std::string> giv = SplitChars(given);
  if (fam.empty() || fam.size() > 2 || giv.empty() || giv.size() > 2) return kInf;

  const auto &family_table = fam.size() == 1 ? model.family_single
                                             : model.family_double;
  auto fit = family_table.find(family);
  if (fit == family_table.end()) return kInf;

  NameShape shape;
  double given_cost;
  if (giv.size() == 1) {
    shape = fam.size() == 1 ? NameShape::kSingleFamilySingleGiven
                            : NameShape::kDoubleFamilySingleGiven;
    given_cost = NegLog(GivenHanziProb(model, model.given_single, giv[0]));
  } else {
    shape = fam.size() == 1 ? NameShape::kSingleFamilyDoubleGiven
                            : NameShape::kDoubleFamilyDoubleGiven;
    auto oit = model.bigram_override.find({giv[0], giv[1]});
    if (oit != model.bigram_override.end()) {
      given_cost = NegLog(oit->second);
    } else {
      given_cost = NegLog(GivenHanziProb(model, model.given_pos1, giv[0])) +
                   NegLog(GivenHanziProb(model, model.given_pos2, giv[1]));
    }
  }
  return NegLog(model.p_name_in_text) + NegLog(fit->second) + given_cost +
         NegLog(PriorOf(model, shape));
}

NameCounts ReadNameCountsTsv(std::istream &in, const std::string &name) {
  NameCounts counts;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = StripCr(line);
    if (view.empty() || view.front() == '#') continue;
    const std::string where = Where(name, line_no);
    std::vector<std::string> f = SplitFields(view, '\t');
    if (f.size() != 3)
      throw ValidationError(where + "expected hanzi<TAB>position<TAB>count");
    size_t chars;
    try {
      chars = CharCount(f[0]);
    } catch (const ValidationError &err) {
      throw ValidationError(where + err.what());
    }
    uint64_t count = ParseCount(f[2], where);
    std::map<std::string, uint64_t> *table = nullptr;
    size_t want = 1;
    if (f[1] == "fam1") {
      table = &counts.family_single;
    } else if (f[1] == "fam2") {
      table = &counts.family_double;
      want = 2;
    } else if (f[1] == "giv1") {
      table = &counts.given_pos1;
    } else if (f[1] == "giv2") {
      table = &counts.given_pos2;
    } else if (f[1] == "givS") {
      table = &counts.given_single;
    } else if (f[1] == "giv12") {
      table = &counts.given_pairs;
      want = 2;
    } else {
      throw ValidationError(where + "unknown position '" + f[1] + "'");
    }
    if (chars != want)
      throw ValidationError(where + "position " + f[1] + " needs " +
                            std::to_string(want) + " hanzi");
    (*table)[f[0]] += count;
  }
  return counts;
}

std::map<std::string, std::string> ReadRadicalMapTsv(std::istream &in,
                                                     const std::string &name) {
  std::map<std::string, std::string> radicals;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = StripCr(line);
    if (view.empty() || view.front() == '#') continue;
    const std::string where = Where(name, line_no);
    std::vector<std::string> f = SplitFields(view, '\t');
    if (f.size() != 2 || f[1].empty())
      throw ValidationError(where + "expected hanzi<TAB>class");
    try {
      if (CharCount(f[0]) != 1) throw ValidationError("key is not one hanzi");
    } catch (const ValidationError &err) {
      throw ValidationError(where + err.what());
    }
    if (!radicals.emplace(f[0], f[1]).second)
      throw ValidationError(where + "hanzi " + f[0] + " listed twice");
  }
  return radicals;
}

NameModel TrainNameModel(const NameCounts &counts,
                         const std::map<std::string, std::string> &radicals,
                         const NameTrainingOptions &options) {
  NameModel model;
  model.p_name_in_text = options.p_name_in_text;
  model.type_prior = options.type_prior;

  auto mle = [](const std::map<std::string, uint64_t> &c, double mass) {
    uint64_t total = 0;
    for (const auto &[k, n] : c) total += n;
    std::map<std::string, double> p;
    if (total == 0) return p;
    for (const auto &[k, n] : c)
      if (n > 0) p[k] = mass * static_cast<double>(n) / static_cast<double>(total);
    return p;
  };
  model.family_single = mle(counts.family_single, 1.0);
  model.family_double = mle(counts.family_double, 1.0);

  std::map<std::string, uint64_t> pooled;
  for (const auto *t : {&counts.given_pos1, &counts.given_pos2,
                        &counts.given_single})
    for (const auto &[k, n] : *t) pooled[k] += n;
  model.unseen_given = RadicalClassTable::FromCounts(radicals, pooled);
  const uint64_t n = model.unseen_given.tokens();
  const double unseen_mass =
      n == 0 ? 0.0
             : static_cast<double>(model.unseen_given.singletons()) /
                   static_cast<double>(n);
  model.given_pos1 = mle(counts.given_pos1, 1.0 - unseen_mass);
  model.given_pos2 = mle(counts.given_pos2, 1.0 - unseen_mass);
  model.given_single = mle(counts.given_single, 1.0 - unseen_mass);

  uint64_t pair_total = 0;
  for (const auto &[k, c] : counts.given_pairs) pair_total += c;
  for (const auto &[k, c] : counts.given_pairs) {
    if (c < options.bigram_threshold || c == 0) continue;
    std::vector<std::string> g = SplitChars(k);
    model.bigram_override[{g[0], g[1]}] =
        static_cast<double>(c) / static_cast<double>(pair_total);
  }
  model.Validate();
  return model;
}

void WriteNameModel(const NameModel &model, std::ostream &out) {
  out << "#namemodel v1\n";
  out << "p_name_in_text\t" << FormatDouble(model.p_name_in_text) << '\n';
  for (NameShape s : kAllNameShapes) {
    auto it = model.type_prior.find(s);
    out << "prior\t" << ShapeName(s) << '\t'
        << FormatDouble(it == model.type_prior.end() ? 0.0 : it->second) << '\n';
  }
  auto table = [&](const char *kind, const std::map<std::string, double> &t) {
    for (const auto &[k, p] : t)
      out << kind << '\t' << k << '\t' << FormatDouble(p) << '\n';
  };
  table("fam1", model.family_single);
  table("fam2", model.family_double);
  table("giv1", model.given_pos1);
  table("giv2", model.given_pos2);
  table("givS", model.given_single);
  for (const auto &[pair, p] : model.bigram_override)
    out << "override\t" << pair.first << '\t' << pair.second << '\t'
        << FormatDouble(p) << '\n';
  const RadicalClassTable &rt = model.unseen_given;
  out << "gt\t" << rt.tokens() << '\t' << rt.singletons() << '\n';
  out << "smooth\t" << FormatDouble(rt.smooth().scale) << '\t'
      << FormatDouble(rt.smooth().exponent) << '\n';
  for (const auto &[cls, c] : rt.classes()) {
    out << "class\t" << cls << '\t' << c.unseen << '\t' << c.singletons << '\n';
    for (const std::string &h : c.members)
      out << "radical\t" << h << '\t' << cls << '\n';
  }
}

NameModel ReadNameModel(std::istream &in, const std::string &name) {
  NameModel model;
  std::map<std::string, RadicalClass> classes;
  uint64_t tokens = 0, singletons = 0;
  PowerLaw smooth;
  std::string line;
  size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = StripCr(line);
    if (view.empty()) continue;
    const std::string where = Where(name, line_no);
    if (!have_header) {
      if (view != "#namemodel v1")
        throw ValidationError(where + "expected '#namemodel v1' header");
      have_header = true;
      continue;
    }
    std::vector<std::string> f = SplitFields(view, '\t');
    const std::string &kind = f[0];
    auto need = [&](size_t n) {
      if (f.size() != n)
        throw ValidationError(where + kind + " expects " + std::to_string(n) +
                              " fields");
    };
    if (kind == "p_name_in_text") {
      need(2);
      model.p_name_in_text = ParseDouble(f[1], where);
    } else if (kind == "prior") {
      need(3);
      model.type_prior[ParseShape(f[1])] = ParseDouble(f[2], where);
    } else if (kind == "fam1" || kind == "fam2" || kind == "giv1" ||
               kind == "giv2" || kind == "givS") {
      need(3);
      auto &t = kind == "fam1"   ? model.family_single
                : kind == "fam2" ? model.family_double
                : kind == "giv1" ? model.given_pos1
                : kind == "giv2" ? model.given_pos2
                                 : model.given_single;
      t[f[1]] = ParseDouble(f[2], where);
    } else if (kind == "override") {
      need(4);
      model.bigram_override[{f[1], f[2]}] = ParseDouble(f[3], where);
    } else if (kind == "gt") {
      need(3);
      tokens = ParseCount(f[1], where);
      singletons = ParseCount(f[2], where);
    } else if (kind == "smooth") {
      need(3);
      smooth.scale = ParseDouble(f[1], where);
      smooth.exponent = ParseDouble(f[2], where);
    } else if (kind == "class") {
      need(4);
      classes[f[1]].unseen = ParseCount(f[2], where);
      classes[f[1]].singletons = ParseCount(f[3], where);
    } else if (kind == "radical") {
      need(3);
      classes[f[2]].members.insert(f[1]);
    } else {
      throw ValidationError(where + "unknown record '" + kind + "'");
    }
  }
  if (!have_header) throw ValidationError(name + ": empty name model");
  try {
    model.unseen_given =
        RadicalClassTable(std::move(classes), tokens, singletons, smooth);
    model.Validate();
  } catch (const ValidationError &err) {
    throw ValidationError(name + ": " + err.what());
  }
  return model;
}

Wfst BuildNameWfst(const NameModel &model,
                   const std::map<std::string, std::string> &pronunciations,
                   std::shared_ptr<SymbolTable> symbols,
                   const std::string &tag) {
  model.Validate();
  Wfst m(symbols);
  const StateId start = m.AddState();
  m.SetStart(start);
  const StateId end = m.AddState();
  const StateId final_state = m.AddState();
  m.SetFinal(final_state);
  m.AddArc(end, Arc{kEpsilon, symbols->AddSymbol(tag), TropicalWeight::One(),
                    final_state});

  auto pron = [&](const std::string &h) -> const std::string * {
    auto it = pronunciations.find(h);
    return it == pronunciations.end() ? nullptr : &it->second;
  };
  auto add = [&](StateId s, const std::string &h, double cost, StateId t) {
    m.AddArc(s, Arc{symbols->AddSymbol(h), symbols->AddSymbol(*pron(h)),
                    TropicalWeight(cost), t});
  };

  const double text_cost = NegLog(model.p_name_in_text);
  const StateId after_single = m.AddState();
  const StateId after_double = m.AddState();
  for (const auto &[f, p] : model.family_single)
    if (pron(f)) add(start, f, text_cost + NegLog(p), after_single);
  std::map<std::string, StateId> family_mid;
  for (const auto &[ff, p] : model.family_double) {
    std::vector<std::string> c = SplitChars(ff);
    if (!pron(c[0]) || !pron(c[1])) continue;
    auto it = family_mid.find(c[0]);
    if (it == family_mid.end()) {
      it = family_mid.emplace(c[0], m.AddState()).first;
      add(start, c[0], text_cost, it->second);
    }
    add(it->second, c[1], NegLog(p), after_double);
  }

  // Candidate given hanzi: anything in a table or a radical class.
  std::set<std::string> universe;
  for (const auto *t : {&model.given_pos1, &model.given_pos2,
                        &model.given_single})
    for (const auto &[k, p] : *t) universe.insert(k);
  for (const auto &[cls, c] : model.unseen_given.classes())
    universe.insert(c.members.begin(), c.members.end());
  std::set<std::string> with_override;
  for (const auto &[pair, p] : model.bigram_override) {
    with_override.insert(pair.first);
    universe.insert(pair.first);
    universe.insert(pair.second);
  }

  for (auto [family_node, single_shape, double_shape] :
       {std::tuple{after_single, NameShape::kSingleFamilySingleGiven,
                   NameShape::kSingleFamilyDoubleGiven},
        std::tuple{after_double, NameShape::kDoubleFamilySingleGiven,
                   NameShape::kDoubleFamilyDoubleGiven}}) {
    const double single_prior = NegLog(PriorOf(model, single_shape));
    const double double_prior = NegLog(PriorOf(model, double_shape));
    if (std::isfinite(single_prior)) {
      for (const std::string &g : universe) {
        double c = NegLog(GivenHanziProb(model, model.given_single, g));
        if (pron(g) && std::isfinite(c)) add(family_node, g, c + single_prior, end);
      }
    }
    if (!std::isfinite(double_prior)) continue;
    const StateId shared = m.AddState();
    for (const std::string &g2 : universe) {
      double c = NegLog(GivenHanziProb(model, model.given_pos2, g2));
      if (pron(g2) && std::isfinite(c)) add(shared, g2, c, end);
    }
    for (const std::string &g1 : universe) {
      if (!pron(g1)) continue;
      double c1 = NegLog(GivenHanziProb(model, model.given_pos1, g1));
      if (!with_override.count(g1)) {
        if (std::isfinite(c1)) add(family_node, g1, c1 + double_prior, shared);
        continue;
      }
      // The pair probability replaces p(g1) p(g2) for overridden pairs.
      const double paid = std::isfinite(c1) ? c1 : 0.0;
      const StateId own = m.AddState();
      add(family_node, g1, paid + double_prior, own);
      for (const std::string &g2 : universe) {
        if (!pron(g2)) continue;
        auto oit = model.bigram_override.find({g1, g2});
        if (oit != model.bigram_override.end()) {
          add(own, g2, NegLog(oit->second) - paid, end);
        } else if (std::isfinite(c1)) {
          double c2 = NegLog(GivenHanziProb(model, model.given_pos2, g2));
          if (std::isfinite(c2)) add(own, g2, c2, end);
        }
      }
    }
  }
  return m;
}

}  // namespace wseg
