// test_lexicon.cc
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
#include <sstream>

#include "doctest.h"
#include "test_util.h"
#include "wseg/error.h"
#include "wseg/lexicon.h"

namespace wseg {
namespace {

using testing::LoadLexicon;

LexEntry Entry(const std::string &surface, std::vector<std::string> pron,
               const std::string &cat, bool likeliest = true) {
  LexEntry e;
  e.surface = surface;
  e.pronunciation = std::move(pron);
  e.category = cat;
  e.likeliest = likeliest;
  return e;
}

TEST_CASE("cost from counts") {
  CHECK(CostFromCounts(7, 7) == 0.0);
  CHECK(CostFromCounts(1, 1000) == doctest::Approx(-std::log(0.001)).epsilon(1e-15));
  CHECK(CostFromCounts(1, 1000) == doctest::Approx(6.9078).epsilon(1e-5));
  CHECK(CostFromCounts(0, 10, 20.0) == 20.0);
  CHECK(CostFromCounts(0, 10, 33.0) == 33.0);
  CHECK_THROWS_AS(CostFromCounts(11, 10), ArgumentError);
  CHECK_THROWS_AS(CostFromCounts(0, 0), ArgumentError);
}

TEST_CASE("string costs go to the likeliest pronunciation") {
  std::vector<LexEntry> jiang{Entry("將", {"jiang1"}, "adv", true),
                              Entry("將", {"jiang4"}, "nc", false)};
  auto out = AssignStringCosts(jiang, 5.98, 20.0);
  CHECK(out[0].cost == 5.98);
  CHECK(out[1].cost == 20.0);

  auto single = AssignStringCosts({Entry("說", {"shuo1"}, "vb", false)}, 4.0);
  CHECK(single[0].cost == 4.0);

  std::vector<LexEntry> three{Entry("了", {"le0"}, "asp", true),
                              Entry("了", {"liao3"}, "vb", false),
                              Entry("了", {"liao4"}, "adv", false)};
  auto t = AssignStringCosts(three, 3.0, 20.0);
  int cheap = 0, large = 0;
  for (const LexEntry &e : t) (e.cost == 3.0 ? cheap : large) += 1;
  CHECK(cheap == 1);
  CHECK(large == 2);

  CHECK_THROWS_AS(AssignStringCosts({}, 1.0), ArgumentError);
}

TEST_CASE("syllables need a tone digit") {
  CHECK(IsSyllable("ri4"));
  CHECK(IsSyllable("mo0"));
  CHECK_FALSE(IsSyllable("ri5"));
  CHECK_FALSE(IsSyllable("ri"));
  CHECK_FALSE(IsSyllable("4"));
}

TEST_CASE("lexicon validation") {
  std::map<std::string, std::string> fb{{"日", "ri4"}, {"文", "wen2"}};
  CHECK_NOTHROW(Lexicon({Entry("日文", {"ri4", "wen2"}, "nc")}, fb));
  CHECK_THROWS_AS(Lexicon({Entry("日文", {"ri4"}, "nc")}, fb), ValidationError);
  CHECK_THROWS_AS(Lexicon({Entry("日魚", {"ri4", "yu2"}, "nc")}, fb),
                  ValidationError);
  CHECK_THROWS_AS(
      Lexicon({Entry("日", {"ri4"}, "nc"), Entry("日", {"ri4"}, "nc")}, fb),
      ValidationError);
  LexEntry bad = Entry("日", {"ri4"}, "nc");
  bad.cost = -1;
  CHECK_THROWS_AS(Lexicon({bad}, fb), ValidationError);
}

TEST_CASE("counts mode derives costs per surface") {
  std::istringstream in(
      "#lexicon v1 mode=counts total=1000\n"
      "將\tjiang1\tadv\t3\t1\n"
      "將\tjiang4\tnc\t2\t0\n"
      "說\tshuo1\tvb\t10\t1\n");
  auto entries = ReadLexiconTsv(in, "mem");
  REQUIRE(entries.size() == 3);
  CHECK(entries[0].cost == doctest::Approx(-std::log(5.0 / 1000)));
  CHECK(entries[1].cost == 20.0);
  CHECK(entries[2].cost == doctest::Approx(-std::log(10.0 / 1000)));

  std::istringstream no_total("#lexicon v1 mode=counts\n說\tshuo1\tvb\t4\t1\n");
  CHECK(ReadLexiconTsv(no_total, "mem")[0].cost == 0.0);
}

TEST_CASE("reader errors name the file and line") {
  std::istringstream in("#lexicon v1 mode=costs\n日\tri4\tnc\tx\t1\n");
  try {
    ReadLexiconTsv(in, "lex.tsv");
    FAIL("expected an error");
  } catch (const ValidationError &e) {
    CHECK(std::string(e.what()).find("lex.tsv:2:") == 0);
  }
  std::istringstream no_header("日\tri4\tnc\t1\t1\n");
  CHECK_THROWS_AS(ReadLexiconTsv(no_header, "x"), ValidationError);
}

TEST_CASE("TSV round trip") {
  auto lex = LoadLexicon("example");
  std::ostringstream out;
  WriteLexiconTsv(lex->entries(), out);
  std::istringstream back(out.str());
  auto again = ReadLexiconTsv(back, "round");
  std::ostringstream out2;
  WriteLexiconTsv(again, out2);
  CHECK(out.str() == out2.str());
  REQUIRE(again.size() == lex->entries().size());
  for (size_t i = 0; i < again.size(); ++i) {
    CHECK(again[i].surface == lex->entries()[i].surface);
    CHECK(again[i].pronunciation == lex->entries()[i].pronunciation);
    CHECK(again[i].cost == doctest::Approx(lex->entries()[i].cost).epsilon(1e-4));
  }
}

TEST_CASE("one-entry lexicon compiles to a two-arc path") {
  Lexicon lex({[] {
                 LexEntry e = Entry("說", {"shuo1"}, "vb");
                 e.cost = 4.0;
                 return e;
               }()},
              {{"說", "shuo1"}});
  auto syms = std::make_shared<SymbolTable>();
  Wfst m = BuildLexiconWfst(lex, syms);
  std::vector<Path> paths = EnumeratePaths(m);
  // The entry and its fallback twin.
  REQUIRE(paths.size() == 2);
  bool found = false;
  for (const Path &p : paths) {
    if (p.arcs.size() != 2) continue;
    if (syms->Symbol(p.arcs[1].arc.olabel) != "vb") continue;
    found = true;
    CHECK(syms->Symbol(p.arcs[0].arc.ilabel) == "說");
    CHECK(syms->Symbol(p.arcs[0].arc.olabel) == "shuo1");
    CHECK(p.arcs[0].arc.weight.Value() == 0.0);
    CHECK(p.arcs[1].arc.ilabel == kEpsilon);
    CHECK(p.total_cost.Value() == 4.0);
  }
  CHECK(found);
}

TEST_CASE("each entry is recovered by restricting to its surface") {
  auto lex = LoadLexicon("example");
  auto syms = std::make_shared<SymbolTable>();
  Wfst m = BuildLexiconWfst(*lex, syms);
  for (const LexEntry &e : lex->entries()) {
    std::vector<Label> labels;
    for (const std::string &ch : SplitChars(e.surface)) labels.push_back(syms->Find(ch));
    Wfst r = LeftRestrict(m, LinearAcceptor(syms, labels));
    bool found = false;
    for (const Path &p : EnumeratePaths(r)) {
      std::vector<std::string> pron;
      std::string tag;
      for (const PathArc &pa : p.arcs) {
        if (pa.arc.ilabel != kEpsilon) pron.push_back(syms->Symbol(pa.arc.olabel));
        else tag = syms->Symbol(pa.arc.olabel);
      }
      if (tag == e.category && pron == e.pronunciation) {
        found = true;
        CHECK(p.total_cost.Value() == doctest::Approx(e.cost).epsilon(1e-12));
      }
    }
    CHECK_MESSAGE(found, e.surface);
    // Best path for a surface is its cheapest entry or fallback.
    const double cheapest = lex->CheapestEntry(e.surface)->cost;
    const double expect = SplitChars(e.surface).size() == 1
                              ? std::min(cheapest, lex->options().fallback_cost)
                              : cheapest;
    CHECK(BestPath(r).total_cost.Value() == doctest::Approx(expect));
  }
}

TEST_CASE("homograph entries give two paths with distinct tags") {
  std::istringstream in(
      "#lexicon v1 mode=costs\n將\tjiang1\tadv\t5.98\t1\n將\tjiang4\tnc\t20\t0\n");
  auto entries = ReadLexiconTsv(in, "mem");
  Lexicon lex(entries, {{"將", "jiang1"}});
  auto syms = std::make_shared<SymbolTable>();
  Wfst m = BuildLexiconWfst(lex, syms);
  std::vector<Label> input{syms->Find("將")};
  std::map<std::string, double> by_tag;
  for (const Path &p : EnumeratePaths(LeftRestrict(m, LinearAcceptor(syms, input))))
    by_tag[syms->Symbol(p.arcs.back().arc.olabel)] = p.total_cost.Value();
  CHECK(by_tag.at("adv") == doctest::Approx(5.98));
  CHECK(by_tag.at("nc") == doctest::Approx(20.0));
  CHECK(by_tag.at("gm") == doctest::Approx(15.0));
}

TEST_CASE("totality over random strings of known hanzi") {
  std::mt19937_64 rng(3);
  auto lex = LoadLexicon("example");
  auto syms = std::make_shared<SymbolTable>();
  Wfst closed = ClosurePlus(BuildLexiconWfst(*lex, syms));
  std::vector<std::string> alphabet;
  for (const auto &[h, p] : lex->fallback()) alphabet.push_back(h);
  for (int trial = 0; trial < 100; ++trial) {
    std::string s = testing::RandomSentence(rng, alphabet, 10);
    std::vector<Label> labels;
    for (const std::string &ch : SplitChars(s)) labels.push_back(syms->Find(ch));
    Wfst r = LeftRestrict(closed, LinearAcceptor(syms, labels));
    CHECK(r.NumStates() > 0);
    CHECK_NOTHROW(BestPath(r));
  }
}

}  // namespace
}  // namespace wseg
