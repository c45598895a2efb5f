// error.h
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
// Exception hierarchy shared by every module. The C API maps each class
// onto a status code.

#ifndef WSEG_ERROR_H_
#define WSEG_ERROR_H_

#include <stdexcept>
#include <string>

namespace wseg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed data: bad TSV rows, tiling violations, length mismatches.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Bad argument to a numeric routine (count > total, N = 0, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Machines built over different symbol tables, bad option values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// best_path found no route to a final state.
class NoAnalysisError : public Error {
 public:
  using Error::Error;
};

// Degenerate least-squares fit.
class FitError : public Error {
 public:
  using Error::Error;
};

// Prefixes a message with "file:line: ".
inline std::string Where(const std::string &file, size_t line) {
  return file + ":" + std::to_string(line) + ": ";
}

}  // namespace wseg

#endif  // WSEG_ERROR_H_
