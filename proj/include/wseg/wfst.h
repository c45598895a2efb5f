// wfst.h
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
// Weighted finite-state transducers over the tropical semiring: arc-list
// machines with integer state ids, union, plus-closure, left-restriction
// by an epsilon-free acceptor and least-cost path extraction.
//
// Costs are negative natural-log probabilities. Path weights add and
// alternatives take the minimum.

#ifndef WSEG_WFST_H_
#define WSEG_WFST_H_

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wseg {

using StateId = int32_t;
using Label = int32_t;

inline constexpr Label kEpsilon = 0;
inline constexpr Label kNoLabel = -1;
inline constexpr StateId kNoState = -1;

class TropicalWeight {
 public:
  constexpr TropicalWeight() = default;
  constexpr explicit TropicalWeight(double value) : value_(value) {}

  constexpr double Value() const { return value_; }
  constexpr bool IsZero() const {
    return value_ == std::numeric_limits<double>::infinity();
  }

  // Semiring zero (+infinity) and one (0).
  static constexpr TropicalWeight Zero() {
    return TropicalWeight(std::numeric_limits<double>::infinity());
  }
  static constexpr TropicalWeight One() { return TropicalWeight(0.0); }

  friend constexpr bool operator==(TropicalWeight a, TropicalWeight b) {
    return a.value_ == b.value_;
  }
  friend constexpr bool operator<(TropicalWeight a, TropicalWeight b) {
    return a.value_ < b.value_;
  }

 private:
  double value_ = 0.0;
};

// min
constexpr TropicalWeight Plus(TropicalWeight a, TropicalWeight b) {
  return b < a ? b : a;
}

// +, with Zero() annihilating
constexpr TropicalWeight Times(TropicalWeight a, TropicalWeight b) {
  if (a.IsZero() || b.IsZero()) return TropicalWeight::Zero();
  return TropicalWeight(a.Value() + b.Value());
}

// One table for hanzi, syllables and category tags. Label 0 is epsilon.
class SymbolTable {
 public:
  static constexpr std::string_view kEpsilonSymbol = "<eps>";

  SymbolTable();

  Label AddSymbol(std::string_view symbol);
  // kNoLabel when absent.
  Label Find(std::string_view symbol) const;
  const std::string &Symbol(Label label) const;
  size_t size() const { return symbols_.size(); }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Label> ids_;
};

struct Arc {
  Label ilabel = kEpsilon;
  Label olabel = kEpsilon;
  TropicalWeight weight;
  StateId nextstate = kNoState;
};

class Wfst {
 public:
  explicit Wfst(std::shared_ptr<SymbolTable> symbols);

  StateId AddState();
  void SetStart(StateId s);
  // An infinite weight removes finality.
  void SetFinal(StateId s, TropicalWeight w = TropicalWeight::One());
  void AddArc(StateId source, const Arc &arc);

  StateId Start() const { return start_; }
  TropicalWeight Final(StateId s) const { return finals_.at(s); }
  bool IsFinal(StateId s) const { return !finals_.at(s).IsZero(); }
  size_t NumStates() const { return arcs_.size(); }
  size_t NumArcs() const;
  std::span<const Arc> Arcs(StateId s) const { return arcs_.at(s); }

  const std::shared_ptr<SymbolTable> &Symbols() const { return symbols_; }
  SymbolTable &MutableSymbols() const { return *symbols_; }

  bool IsAcyclic() const;

 private:
  void CheckState(StateId s) const;

  std::shared_ptr<SymbolTable> symbols_;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<TropicalWeight> finals_;
  StateId start_ = kNoState;
};

struct PathArc {
  StateId source = kNoState;
  size_t index = 0;  // position within the source state's arc list
  Arc arc;
};

struct Path {
  std::vector<PathArc> arcs;
  TropicalWeight total_cost = TropicalWeight::Zero();
};

// Accepts either machine's relation with unchanged costs. Throws ConfigError
// when the machines use different symbol tables.
Wfst Union(const Wfst &a, const Wfst &b);

// One or more concatenations of a's relation. Throws ArgumentError if a has
// no final state.
Wfst ClosurePlus(const Wfst &a);

// Composition of dict with an epsilon-free acceptor on dict's input side.
// Epsilon-input arcs of dict advance dict alone. The result is trimmed to
// states on some complete path; it has no states when nothing matches.
Wfst LeftRestrict(const Wfst &dict, const Wfst &input);

// Minimum-cost path. Ties go to the lexicographically smallest sequence of
// arc indices (stopping beats continuing). On cyclic machines the fewest-arc
// optimal paths are considered first so the walk terminates. Tolerates
// negative arc weights as long as there is no negative cycle. Throws
// NoAnalysisError when no final state is reachable.
Path BestPath(const Wfst &m);

// All complete paths of an acyclic machine, in depth-first arc order.
// Throws ConfigError on a cyclic machine; stops after `limit` paths.
std::vector<Path> EnumeratePaths(const Wfst &m, size_t limit = 1000000);

// Linear acceptor over the given labels.
Wfst LinearAcceptor(std::shared_ptr<SymbolTable> symbols,
                    std::span<const Label> labels);

// Removes states that are not both accessible and coaccessible.
Wfst Connect(const Wfst &m);

// Debug text: one arc per line "src dst in out cost", finals as
// "state cost". The start state is listed first.
std::string ToText(const Wfst &m);
Wfst FromText(std::string_view text, std::shared_ptr<SymbolTable> symbols);

// Shortest round-trip decimal form.
std::string FormatDouble(double value);

}  // namespace wseg

#endif  // WSEG_WFST_H_
