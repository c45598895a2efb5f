// config.cc
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

#include "wseg/config.h"

#include <charconv>
#include <cmath>

#include "wseg/error.h"
#include "wseg/utf8.h"

namespace wseg {
namespace {

double ParseReal(const std::string &key, const std::string &value) {
  double v = 0;
  auto r = std::from_chars(value.data(), value.data() + value.size(), v);
  if (r.ec != std::errc() || r.ptr != value.data() + value.size() ||
      !std::isfinite(v))
    throw ConfigError("setting " + key + ": bad number '" + value + "'");
  return v;
}

double ParseProb(const std::string &key, const std::string &value) {
  const double v = ParseReal(key, value);
  if (!(v > 0.0 && v <= 1.0))
    throw ConfigError("setting " + key + ": must lie in (0, 1]");
  return v;
}

}  // namespace

NameTrainingOptions DefaultNameOptions() {
  NameTrainingOptions options;
  options.type_prior = {{NameShape::kSingleFamilySingleGiven, 0.2},
                        {NameShape::kSingleFamilyDoubleGiven, 0.7},
                        {NameShape::kDoubleFamilySingleGiven, 0.05},
                        {NameShape::kDoubleFamilyDoubleGiven, 0.05}};
  return options;
}

void ApplySetting(Settings *settings, const std::string &key,
                  const std::string &value) {
  if (key == "large_cost" || key == "fallback_cost") {
    const double v = ParseReal(key, value);
    if (v < 0) throw ConfigError("setting " + key + ": must be non-negative");
    (key == "large_cost" ? settings->lexicon.large_cost
                         : settings->lexicon.fallback_cost) = v;
  } else if (key == "fallback_category") {
    if (value.empty()) throw ConfigError("setting " + key + ": empty");
    settings->lexicon.fallback_category = value;
  } else if (key == "p_name_in_text") {
    settings->names.p_name_in_text = ParseProb(key, value);
  } else if (key == "p_TN") {
    settings->p_tn = ParseProb(key, value);
  } else if (key == "bigram_threshold") {
    uint64_t v = 0;
    auto r = std::from_chars(value.data(), value.data() + value.size(), v);
    if (r.ec != std::errc() || r.ptr != value.data() + value.size() || v == 0)
      throw ConfigError("setting " + key + ": expected a positive integer");
    settings->names.bigram_threshold = v;
  } else if (key.rfind("prior.", 0) == 0) {
    NameShape shape;
    try {
      shape = ParseShape(key.substr(6));
    } catch (const Error &) {
      throw ConfigError("setting " + key + ": unknown name shape");
    }
    settings->names.type_prior[shape] = ParseProb(key, value);
  } else {
    throw ConfigError("unknown setting '" + key + "'");
  }
}

void ReadSettings(std::istream &in, const std::string &name,
                  Settings *settings) {
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = StripCr(line);
    while (!view.empty() && (view.front() == ' ' || view.front() == '\t'))
      view.remove_prefix(1);
    if (view.empty() || view.front() == '#') continue;
    const size_t eq = view.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(Where(name, line_no) + "expected key=value");
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      return std::string(s);
    };
    try {
      ApplySetting(settings, trim(view.substr(0, eq)), trim(view.substr(eq + 1)));
    } catch (const ConfigError &err) {
      throw ConfigError(Where(name, line_no) + err.what());
    }
  }
}

}  // namespace wseg
