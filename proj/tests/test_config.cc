// test_config.cc
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

#include <sstream>
#include <string>

#include "doctest.h"
#include "wseg/config.h"
#include "wseg/error.h"

namespace wseg {
namespace {

TEST_CASE("defaults") {
  Settings s;
  CHECK(s.lexicon.fallback_cost == 15.0);
  CHECK(s.p_tn == 0.01);
  double sum = 0;
  for (const auto &[shape, p] : s.names.type_prior) sum += p;
  CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("settings file") {
  std::istringstream in(
      "# comment\n"
      "fallback_cost = 12.5\n"
      "  p_TN=0.02\r\n"
      "prior.DF+DG=0.1\n"
      "bigram_threshold=3\n"
      "fallback_category=x\n");
  Settings s;
  ReadSettings(in, "conf", &s);
  CHECK(s.lexicon.fallback_cost == 12.5);
  CHECK(s.p_tn == 0.02);
  CHECK(s.names.type_prior.at(NameShape::kDoubleFamilyDoubleGiven) == 0.1);
  CHECK(s.names.bigram_threshold == 3);
  CHECK(s.lexicon.fallback_category == "x");
}

TEST_CASE("bad settings name the line") {
  Settings s;
  CHECK_THROWS_AS(ApplySetting(&s, "nope", "1"), ConfigError);
  CHECK_THROWS_AS(ApplySetting(&s, "p_TN", "0"), ConfigError);
  CHECK_THROWS_AS(ApplySetting(&s, "p_TN", "1.5"), ConfigError);
  CHECK_THROWS_AS(ApplySetting(&s, "large_cost", "-1"), ConfigError);
  CHECK_THROWS_AS(ApplySetting(&s, "bigram_threshold", "0"), ConfigError);
  CHECK_THROWS_AS(ApplySetting(&s, "prior.XX", "0.5"), ConfigError);
  std::istringstream in("p_TN=0.1\nfallback_cost\n");
  try {
    ReadSettings(in, "conf", &s);
    FAIL("expected an error");
  } catch (const ConfigError &e) {
    CHECK(std::string(e.what()).find("conf:2") != std::string::npos);
  }
}

}  // namespace
}  // namespace wseg
