// test_segmenter.cc
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

#include <cmath>
#include <fstream>
#include <random>

#include "doctest.h"
#include "name_fixture.h"
#include "test_util.h"
#include "wseg/error.h"
#include "wseg/segmenter.h"

namespace wseg {
namespace {

using testing::Concat;
using testing::DictionaryOnly;
using testing::LoadLexicon;
using testing::OpenFixture;
using testing::Surfaces;

using Strings = std::vector<std::string>;

double SumCosts(const Segmentation &seg) {
  double s = 0;
  for (const Word &w : seg.words) s += w.cost;
  return s;
}

TEST_CASE("four-word analysis of the example sentence") {
  Segmenter seg = DictionaryOnly(LoadLexicon("example"));
  Segmentation out = seg.Segment("日文章魚怎麼說");
  CHECK(Surfaces(out) == Strings{"日文", "章魚", "怎麼", "說"});
  std::vector<std::string> cats;
  for (const Word &w : out.words) cats.push_back(w.category);
  CHECK(cats == Strings{"nc", "nc", "adv", "vb"});
  CHECK(out.total_cost == doctest::Approx(26.0));
  CHECK(out.words[0].pronunciation == Strings{"ri4", "wen2"});
  CHECK(out.words[3].start == 6);
  CHECK(out.words[3].end == 7);
}

TEST_CASE("lattice keeps the alternate analysis") {
  Segmenter seg = DictionaryOnly(LoadLexicon("example"));
  Wfst lattice = seg.Lattice("日文章魚怎麼說");
  bool alternate = false;
  for (const Path &p : EnumeratePaths(lattice)) {
    Segmentation s = seg.ReadPath(p);
    if (Surfaces(s) == Strings{"日", "文章", "魚", "怎麼", "說"}) {
      alternate = true;
      bool all_dictionary = true;
      for (const Word &w : s.words) all_dictionary = all_dictionary && w.category != "gm";
      if (all_dictionary) CHECK(s.total_cost == doctest::Approx(30.5));
    }
  }
  CHECK(alternate);
}

TEST_CASE("single dictionary word") {
  auto lex = LoadLexicon("example");
  Segmenter seg = DictionaryOnly(lex);
  CHECK(Surfaces(seg.Segment("章魚")) == Strings{"章魚"});
  CHECK(Surfaces(Greedy(*lex, "章魚")) == Strings{"章魚"});
}

TEST_CASE("greedy and least-cost differ on the crafted fixture") {
  auto lex = LoadLexicon("ambiguity");
  Segmenter seg = DictionaryOnly(lex);
  Segmentation st = seg.Segment("研究生命起源");
  Segmentation gr = Greedy(*lex, "研究生命起源");
  Segmentation ag = AntiGreedy(*lex, "研究生命起源");
  CHECK(Surfaces(st) == Strings{"研究", "生命", "起源"});
  CHECK(st.total_cost == doctest::Approx(21.0));
  CHECK(Surfaces(gr) == Strings{"研究生", "命", "起源"});
  CHECK(gr.total_cost == doctest::Approx(25.5));
  // Shortest match at each start; 生命 is the only entry starting with 生.
  CHECK(Surfaces(ag) == Strings{"研究", "生命", "起源"});
  CHECK(Surfaces(AntiGreedy(*lex, "研究生")) == Strings{"研究", "生"});
  CHECK(AntiGreedy(*lex, "研究生").words[1].category == "gm");
}

TEST_CASE("anti-greedy starts with the single-hanzi word") {
  auto lex = LoadLexicon("example");
  Segmentation ag = AntiGreedy(*lex, "日文章魚怎麼說");
  CHECK(ag.words.front().surface == "日");
  CHECK(Concat(ag) == "日文章魚怎麼說");
  Segmentation gr = Greedy(*lex, "日文章魚怎麼說");
  CHECK(gr.words.front().surface == "日文");
  CHECK(ag.words.size() >= gr.words.size());
}

TEST_CASE("homographs resolved by word affiliation") {
  Segmenter seg = DictionaryOnly(LoadLexicon("homograph"));
  Segmentation a = seg.Segment("我的");
  REQUIRE(a.words.size() == 2);
  CHECK(a.words[1].pronunciation == Strings{"de0"});
  Segmentation b = seg.Segment("我的目的");
  REQUIRE(Surfaces(b) == Strings{"我", "的", "目的"});
  CHECK(b.words[2].pronunciation == Strings{"mu4", "di4"});
  CHECK(b.words[1].pronunciation == Strings{"de0"});
}

TEST_CASE("derived words come out whole with the affix recorded") {
  ModelData data;
  data.lexicon = LoadLexicon("morph");
  std::ifstream rules_in = OpenFixture("morph_affixes.tsv");
  data.affixes = ReadAffixRulesTsv(rules_in, "morph_affixes.tsv");
  std::ifstream seen_in = OpenFixture("morph_seen.tsv");
  data.seen = ReadSeenDerivedTsv(seen_in, "morph_seen.tsv", data.affixes);
  ModelConfig config;
  config.morphology = true;
  Segmenter seg = Segmenter::Build(config, data);
  const double unseen = UnseenConstructionCost(data.affixes[0]);

  Segmentation p = seg.Segment("南瓜們");
  REQUIRE(p.words.size() == 1);
  CHECK(p.words[0].surface == "南瓜們");
  CHECK(p.words[0].category == "\\PL");
  CHECK(p.words[0].affix == "們");
  CHECK(p.words[0].pronunciation == Strings{"nan2", "gua1", "men0"});
  CHECK(std::abs(p.total_cost - (10.0 + unseen)) < 1e-9);

  Segmentation g = seg.Segment("將們");
  REQUIRE(g.words.size() == 1);
  CHECK(std::abs(g.total_cost - 15.02) < 1e-9);
  CHECK(g.words[0].pronunciation == Strings{"jiang4", "men0"});

  Segmentation both = seg.Segment("將們南瓜們");
  CHECK(Surfaces(both) == Strings{"將們", "南瓜們"});
  CHECK(std::abs(both.total_cost - (15.02 + 10.0 + unseen)) < 1e-9);
}

TEST_CASE("affix rules may not collide or stack") {
  auto lex = LoadLexicon("morph");
  AffixRule r;
  r.affix_surface = "們";
  r.affix_pronunciation = {"men0"};
  r.base_category = "nc";
  r.result_tag = "adv";
  r.tokens = 10;
  r.singletons = 1;
  r.prob_text_affix = 0.1;
  CHECK_THROWS_AS(ValidateAffixRules({r}, *lex), ValidationError);
  r.result_tag = "\\PL";
  AffixRule stacked = r;
  stacked.base_category = "\\PL";
  stacked.result_tag = "\\PL2";
  CHECK_THROWS_AS(ValidateAffixRules({r, stacked}, *lex), ValidationError);
  CHECK_NOTHROW(ValidateAffixRules({r}, *lex));
}

TEST_CASE("names join the model without disturbing cheaper dictionary paths") {
  std::map<std::string, std::string> fallback = testing::NamePronunciations();
  auto example = LoadLexicon("example");
  for (const auto &[h, p] : example->fallback()) fallback[h] = p;
  std::vector<LexEntry> entries = example->entries();
  ModelData data;
  data.lexicon = std::make_shared<const Lexicon>(entries, fallback);
  data.names = testing::SmallNameModel();
  ModelConfig plain, with_names;
  with_names.names = true;
  Segmenter a = Segmenter::Build(plain, data);
  Segmenter b = Segmenter::Build(with_names, data);

  Segmentation name = b.Segment("周恩來說");
  CHECK(Surfaces(name) == Strings{"周恩來", "說"});
  CHECK(name.words[0].category == "np");
  CHECK(name.words[0].pronunciation == Strings{"zhou1", "en1", "lai2"});
  CHECK(std::abs(name.words[0].cost -
                 NameCost(*data.names, "周", "恩來")) < 1e-9);
  CHECK(Surfaces(a.Segment("周恩來說")) == Strings{"周", "恩", "來", "說"});

  for (const std::string s : {"日文章魚怎麼說", "章魚", "說日文", "怎麼說"}) {
    CHECK(Surfaces(a.Segment(s)) == Surfaces(b.Segment(s)));
  }
}

TEST_CASE("transliterations are recognized as one word") {
  std::map<std::string, std::string> fallback{
      {"阿", "a1"}, {"拉", "la1"}, {"克", "ke4"}, {"說", "shuo1"}};
  LexEntry shuo;
  shuo.surface = "說";
  shuo.pronunciation = {"shuo1"};
  shuo.category = "vb";
  shuo.cost = 4.0;
  ModelData data;
  data.lexicon = std::make_shared<const Lexicon>(std::vector<LexEntry>{shuo}, fallback);
  TransliterationModel tm;
  tm.p_tn = 0.05;
  tm.p_char = {{"阿", 0.3}, {"拉", 0.3}, {"克", 0.2}};
  data.translit = tm;
  ModelConfig config;
  config.translit = true;
  Segmentation out = Segmenter::Build(config, data).Segment("阿拉克說");
  CHECK(Surfaces(out) == Strings{"阿拉克", "說"});
  CHECK(out.words[0].category == "FN");
  CHECK(std::abs(out.words[0].cost - TranslitCost(tm, "阿拉克")) < 1e-9);
}

TEST_CASE("unknown hanzi and symbols pass through") {
  auto lex = LoadLexicon("example");
  Segmenter seg = DictionaryOnly(lex);
  const std::string line = "日文abc123，說龍";
  for (const Segmentation &out : {seg.Segment(line), Greedy(*lex, line)}) {
    CHECK(Concat(out) == line);
    CHECK(Surfaces(out) == Strings{"日文", "abc", "123", "，", "說", "龍"});
    CHECK(out.words[1].category == "sym");
    CHECK(out.words[5].category == "unk");
    CHECK(out.words[5].pronunciation.empty());
    CHECK(out.words[5].start == 10);
  }
  Segmentation ag = AntiGreedy(*lex, line);
  CHECK(Surfaces(ag) == Strings{"日", "文", "abc", "123", "，", "說", "龍"});
  CHECK(ag.words.back().category == "unk");
}

TEST_CASE("least-cost output matches the tiling oracle") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::string> alphabet;
    auto lex = testing::RandomLexicon(rng, {}, &alphabet);
    Segmenter seg = DictionaryOnly(lex);
    for (int k = 0; k < 4; ++k) {
      const std::string s = testing::RandomSentence(rng, alphabet, 8);
      Segmentation out = seg.Segment(s);
      testing::Tiling best = testing::BestTiling(*lex, s);
      CHECK(std::abs(out.total_cost - best.cost) < 1e-9);
      CHECK(std::abs(SumCosts(out) - out.total_cost) < 1e-9);
      CHECK(Concat(out) == s);
      for (const testing::Tiling &t : testing::AllTilings(*lex, SplitChars(s)))
        CHECK(out.total_cost <= t.cost + 1e-9);
    }
  }
}

TEST_CASE("output formats") {
  Segmenter seg = DictionaryOnly(LoadLexicon("example"));
  Segmentation out = seg.Segment("日文章魚怎麼說");
  CHECK(FormatSegmentation(out, OutputFormat::kPlain) == "日文/章魚/怎麼/說\n");
  CHECK(FormatSegmentation(out, OutputFormat::kTagged) ==
        "日文_nc 章魚_nc 怎麼_adv 說_vb\n");
  CHECK(FormatSegmentation(out, OutputFormat::kTsv) ==
        "日文\tnc\tri4 wen2\t8.0000\n章魚\tnc\tzhang1 yu2\t9.0000\n"
        "怎麼\tadv\tzen3 mo0\t5.0000\n說\tvb\tshuo1\t4.0000\n\n");
  CHECK(FormatSegmentation(out, OutputFormat::kSpans, 3) ==
        "3\t0\t2\tnc\n3\t2\t4\tnc\n3\t4\t6\tadv\n3\t6\t7\tvb\n");
  CHECK(ParseOutputFormat("tsv") == OutputFormat::kTsv);
  CHECK_THROWS_AS(ParseOutputFormat("xml"), ConfigError);
}

TEST_CASE("segmentation is deterministic") {
  Segmenter a = DictionaryOnly(LoadLexicon("ambiguity"));
  Segmenter b = DictionaryOnly(LoadLexicon("ambiguity"));
  std::mt19937_64 rng(8);
  std::vector<std::string> alphabet{"研", "究", "生", "命", "起", "源"};
  for (int i = 0; i < 50; ++i) {
    const std::string s = testing::RandomSentence(rng, alphabet, 12);
    CHECK(FormatSegmentation(a.Segment(s), OutputFormat::kTsv) ==
          FormatSegmentation(b.Segment(s), OutputFormat::kTsv));
  }
}

}  // namespace
}  // namespace wseg
