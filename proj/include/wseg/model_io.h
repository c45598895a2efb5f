// model_io.h
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
// Binary cache of a compiled segmenter. Layout: the magic "WSEG1", then
// little-endian length-prefixed sections for the lexicon, symbols, model
// machine and affix tags.

#ifndef WSEG_MODEL_IO_H_
#define WSEG_MODEL_IO_H_

#include <istream>
#include <ostream>
#include <string>

#include "wseg/segmenter.h"

namespace wseg {

inline constexpr char kModelMagic[] = "WSEG1";

void SaveSegmenter(const Segmenter &segmenter, std::ostream &out);

// Throws ValidationError on a bad magic or truncated file.
Segmenter LoadSegmenter(std::istream &in, const std::string &name);

}  // namespace wseg

#endif  // WSEG_MODEL_IO_H_
