// test_translit.cc
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
#include <random>
#include <sstream>

#include "doctest.h"
#include "wseg/error.h"
#include "wseg/translit.h"
#include "wseg/utf8.h"

namespace wseg {
namespace {

TransliterationModel Abc() {
  TransliterationModel m;
  m.p_tn = 0.02;
  m.p_char = {{"阿", 0.3}, {"拉", 0.25}, {"克", 0.15}};
  return m;
}

std::vector<double> PathCosts(const Wfst &w, const std::string &s) {
  const auto &syms = w.Symbols();
  std::vector<Label> labels;
  for (const std::string &ch : SplitChars(s)) labels.push_back(syms->Find(ch));
  std::vector<double> out;
  for (const Path &p : EnumeratePaths(LeftRestrict(w, LinearAcceptor(syms, labels))))
    out.push_back(p.total_cost.Value());
  return out;
}

TEST_CASE("training keeps hanzi seen at least twice") {
  TransliterationModel m = TrainTranslit({"阿拉克", "阿拉", "克林"}, 0.05);
  // Tokens: 阿 2, 拉 2, 克 2, 林 1 -> 7.
  CHECK(m.p_char.size() == 3);
  CHECK(m.p_char.at("阿") == doctest::Approx(2.0 / 7.0));
  CHECK(m.p_char.count("林") == 0);
  CHECK(m.p_tn == 0.05);
  CHECK_THROWS_AS(TrainTranslit({}, 0.1), ValidationError);
  CHECK_THROWS_AS(TrainTranslit({"阿"}, 0.0), ValidationError);
}

TEST_CASE("cost is the prior plus per-hanzi costs") {
  TransliterationModel m = Abc();
  CHECK(TranslitCost(m, "阿拉") ==
        doctest::Approx(-std::log(0.02) - std::log(0.3) - std::log(0.25)).epsilon(1e-14));
  CHECK(std::isinf(TranslitCost(m, "")));
  CHECK(std::isinf(TranslitCost(m, "林")));
}

TEST_CASE("concatenation charges the prior once") {
  TransliterationModel m = Abc();
  const std::vector<std::string> alphabet{"阿", "拉", "克"};
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> len(1, 5), pick(0, 2);
  for (int trial = 0; trial < 200; ++trial) {
    std::string x, y;
    for (int i = len(rng); i > 0; --i) x += alphabet[pick(rng)];
    for (int i = len(rng); i > 0; --i) y += alphabet[pick(rng)];
    const double lhs = TranslitCost(m, x + y);
    const double rhs = TranslitCost(m, x) + TranslitCost(m, y) + std::log(m.p_tn);
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
}

TEST_CASE("machine path costs match translit_cost for spans up to three") {
  TransliterationModel m = Abc();
  auto syms = std::make_shared<SymbolTable>();
  std::map<std::string, std::string> prons{{"阿", "a1"}, {"拉", "la1"}, {"克", "ke4"}};
  Wfst w = BuildTranslitWfst(m, prons, syms);
  const std::vector<std::string> alphabet{"阿", "拉", "克"};
  std::vector<std::string> spans{""};
  size_t checked = 0;
  for (int length = 1; length <= 3; ++length) {
    std::vector<std::string> next;
    for (const std::string &s : spans)
      for (const std::string &h : alphabet) next.push_back(s + h);
    spans = next;
    for (const std::string &s : spans) {
      auto costs = PathCosts(w, s);
      REQUIRE(costs.size() == 1);
      CHECK(std::abs(costs[0] - TranslitCost(m, s)) < 1e-9);
      ++checked;
    }
  }
  CHECK(checked == 3 + 9 + 27);
}

TEST_CASE("model file round trip") {
  std::ostringstream out;
  WriteTranslitModel(Abc(), out);
  std::istringstream in(out.str());
  TransliterationModel back = ReadTranslitModel(in, "m");
  CHECK(back.p_tn == 0.02);
  CHECK(back.p_char == Abc().p_char);
  std::istringstream bad("#translit v1\np_tn\t0.1\n阿\t1.5\n");
  CHECK_THROWS_AS(ReadTranslitModel(bad, "m"), ValidationError);
}

}  // namespace
}  // namespace wseg
