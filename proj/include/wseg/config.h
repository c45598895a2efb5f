// config.h
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
// \file
// Tunable constants, settable from "key=value" lines.
//
//   large_cost, fallback_cost, fallback_category
//   p_name_in_text, prior.<shape> (e.g. prior.SF+DG), bigram_threshold
//   p_TN

#ifndef WSEG_CONFIG_H_
#define WSEG_CONFIG_H_

#include <istream>
#include <string>

#include "wseg/lexicon.h"
#include "wseg/names.h"

namespace wseg {

// Name-training defaults with shape priors SF+DG 0.7, SF+SG 0.2 and
// 0.05 for each double-family shape.
NameTrainingOptions DefaultNameOptions();

struct Settings {
  LexiconOptions lexicon;
  NameTrainingOptions names = DefaultNameOptions();
  double p_tn = 0.01;
};

// Throws ConfigError on an unknown key or a malformed value.
void ApplySetting(Settings *settings, const std::string &key,
                  const std::string &value);

// "key=value" per line; '#' starts a comment line.
void ReadSettings(std::istream &in, const std::string &name, Settings *settings);

}  // namespace wseg

#endif  // WSEG_CONFIG_H_
