// utf8.h
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

#ifndef WSEG_UTF8_H_
#define WSEG_UTF8_H_

#include <string>
#include <string_view>
#include <vector>

namespace wseg {

// Splits UTF-8 text into one string per code point. Throws ValidationError
// on malformed input.
std::vector<std::string> SplitChars(std::string_view text);

// Code point of a single-character UTF-8 string.
char32_t DecodeChar(std::string_view ch);

bool IsHanzi(char32_t cp);

enum class CharClass { kHanzi, kLetter, kDigit, kSpace, kOther };

CharClass ClassifyChar(char32_t cp);

std::string Join(const std::vector<std::string> &parts, std::string_view sep);

// Splits on a single-character separator; keeps empty fields.
std::vector<std::string> SplitFields(std::string_view line, char sep);

// Strips a trailing '\r' (CRLF input).
std::string_view StripCr(std::string_view line);

}  // namespace wseg

#endif  // WSEG_UTF8_H_
