// wfst.cc
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

#include "wseg/wfst.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <sstream>

#include "wseg/error.h"
#include "wseg/utf8.h"

namespace wseg {

SymbolTable::SymbolTable() { AddSymbol(kEpsilonSymbol); }

Label SymbolTable::AddSymbol(std::string_view symbol) {
  auto it = ids_.find(std::string(symbol));
  if (it != ids_.end()) return it->second;
  Label id = static_cast<Label>(symbols_.size());
  symbols_.emplace_back(symbol);
  ids_.emplace(symbols_.back(), id);
  return id;
}

Label SymbolTable::Find(std::string_view symbol) const {
  auto it = ids_.find(std::string(symbol));
  return it == ids_.end() ? kNoLabel : it->second;
}

const std::string &SymbolTable::Symbol(Label label) const {
  if (label < 0 || static_cast<size_t>(label) >= symbols_.size())
    throw ArgumentError("unknown label " + std::to_string(label));
  return symbols_[label];
}

Wfst::Wfst(std::shared_ptr<SymbolTable> symbols)
    : symbols_(std::move(symbols)) {
  if (!symbols_) throw ConfigError("machine needs a symbol table");
}

StateId Wfst::AddState() {
  arcs_.emplace_back();
  finals_.push_back(TropicalWeight::Zero());
  return static_cast<StateId>(arcs_.size() - 1);
}

void Wfst::CheckState(StateId s) const {
  if (s < 0 || static_cast<size_t>(s) >= arcs_.size())
    throw ArgumentError("no such state " + std::to_string(s));
}

void Wfst::SetStart(StateId s) {
  CheckState(s);
  start_ = s;
}

void Wfst::SetFinal(StateId s, TropicalWeight w) {
  CheckState(s);
  if (std::isnan(w.Value())) throw ArgumentError("NaN final weight");
  finals_[s] = w;
}

void Wfst::AddArc(StateId source, const Arc &arc) {
  CheckState(source);
  CheckState(arc.nextstate);
  if (std::isnan(arc.weight.Value())) throw ArgumentError("NaN arc weight");
  arcs_[source].push_back(arc);
}

size_t Wfst::NumArcs() const {
  size_t n = 0;
  for (const auto &v : arcs_) n += v.size();
  return n;
}

namespace {

// Topological order of all states, or empty if a cycle exists.
std::vector<StateId> TopologicalOrder(const Wfst &m) {
  const size_t n = m.NumStates();
  std::vector<int> indegree(n, 0);
  for (StateId s = 0; s < static_cast<StateId>(n); ++s)
    for (const Arc &a : m.Arcs(s)) ++indegree[a.nextstate];
  std::vector<StateId> order;
  order.reserve(n);
  std::deque<StateId> ready;
  for (StateId s = 0; s < static_cast<StateId>(n); ++s)
    if (indegree[s] == 0) ready.push_back(s);
  while (!ready.empty()) {
    StateId s = ready.front();
    ready.pop_front();
    order.push_back(s);
    for (const Arc &a : m.Arcs(s))
      if (--indegree[a.nextstate] == 0) ready.push_back(a.nextstate);
  }
  if (order.size() != n) order.clear();
  return order;
}

void CheckSameSymbols(const Wfst &a, const Wfst &b) {
  if (a.Symbols() != b.Symbols())
    throw ConfigError("machines do not share one symbol table");
}

// Copies src's states into dst, returning the state offset.
StateId Append(const Wfst &src, Wfst *dst) {
  StateId offset = static_cast<StateId>(dst->NumStates());
  for (size_t s = 0; s < src.NumStates(); ++s) dst->AddState();
  for (StateId s = 0; s < static_cast<StateId>(src.NumStates()); ++s) {
    for (Arc a : src.Arcs(s)) {
      a.nextstate += offset;
      dst->AddArc(s + offset, a);
    }
    if (src.IsFinal(s)) dst->SetFinal(s + offset, src.Final(s));
  }
  return offset;
}

}  // namespace

bool Wfst::IsAcyclic() const {
  return NumStates() == 0 || !TopologicalOrder(*this).empty();
}

Wfst Union(const Wfst &a, const Wfst &b) {
  CheckSameSymbols(a, b);
  Wfst result(a.Symbols());
  StateId start = result.AddState();
  result.SetStart(start);
  for (const Wfst *m : {&a, &b}) {
    StateId offset = Append(*m, &result);
    if (m->Start() != kNoState) {
      result.AddArc(start, Arc{kEpsilon, kEpsilon, TropicalWeight::One(),
                               m->Start() + offset});
    }
  }
  return result;
}

Wfst ClosurePlus(const Wfst &a) {
  if (a.Start() == kNoState)
    throw ArgumentError("closure of a machine without a start state");
  bool has_final = false;
  for (StateId s = 0; s < static_cast<StateId>(a.NumStates()); ++s)
    has_final = has_final || a.IsFinal(s);
  if (!has_final) throw ArgumentError("closure of a machine with no final state");

  Wfst result(a.Symbols());
  Append(a, &result);
  result.SetStart(a.Start());
  for (StateId s = 0; s < static_cast<StateId>(a.NumStates()); ++s) {
    if (a.IsFinal(s))
      result.AddArc(s, Arc{kEpsilon, kEpsilon, a.Final(s), a.Start()});
  }
  return result;
}

Wfst Connect(const Wfst &m) {
  const size_t n = m.NumStates();
  Wfst result(m.Symbols());
  if (m.Start() == kNoState) return result;

  std::vector<char> accessible(n, 0);
  std::vector<StateId> stack{m.Start()};
  accessible[m.Start()] = 1;
  std::vector<std::vector<StateId>> reverse(n);
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const Arc &a : m.Arcs(s)) {
      reverse[a.nextstate].push_back(s);
      if (!accessible[a.nextstate]) {
        accessible[a.nextstate] = 1;
        stack.push_back(a.nextstate);
      }
    }
  }
  std::vector<char> coaccessible(n, 0);
  for (StateId s = 0; s < static_cast<StateId>(n); ++s) {
    if (accessible[s] && m.IsFinal(s)) {
      coaccessible[s] = 1;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId p : reverse[s]) {
      if (!coaccessible[p]) {
        coaccessible[p] = 1;
        stack.push_back(p);
      }
    }
  }
  if (!coaccessible[m.Start()]) return result;

  std::vector<StateId> remap(n, kNoState);
  for (StateId s = 0; s < static_cast<StateId>(n); ++s)
    if (accessible[s] && coaccessible[s]) remap[s] = result.AddState();
  for (StateId s = 0; s < static_cast<StateId>(n); ++s) {
    if (remap[s] == kNoState) continue;
    for (Arc a : m.Arcs(s)) {
      if (remap[a.nextstate] == kNoState) continue;
      a.nextstate = remap[a.nextstate];
      result.AddArc(remap[s], a);
    }
    if (m.IsFinal(s)) result.SetFinal(remap[s], m.Final(s));
  }
  result.SetStart(remap[m.Start()]);
  return result;
}

Wfst LeftRestrict(const Wfst &dict, const Wfst &input) {
  CheckSameSymbols(dict, input);
  for (StateId s = 0; s < static_cast<StateId>(input.NumStates()); ++s) {
    for (const Arc &a : input.Arcs(s)) {
      if (a.ilabel == kEpsilon || a.ilabel != a.olabel)
        throw ArgumentError("left_restrict needs an epsilon-free acceptor");
    }
  }
  Wfst result(dict.Symbols());
  if (dict.Start() == kNoState || input.Start() == kNoState) return result;

  const uint64_t width = input.NumStates();
  std::unordered_map<uint64_t, StateId> pair_state;
  std::deque<std::pair<StateId, StateId>> queue;
  auto state_for = [&](StateId d, StateId i) {
    uint64_t key = static_cast<uint64_t>(d) * width + static_cast<uint64_t>(i);
    auto it = pair_state.find(key);
    if (it != pair_state.end()) return it->second;
    StateId s = result.AddState();
    pair_state.emplace(key, s);
    queue.emplace_back(d, i);
    return s;
  };

  result.SetStart(state_for(dict.Start(), input.Start()));
  while (!queue.empty()) {
    auto [d, i] = queue.front();
    queue.pop_front();
    StateId s = pair_state.at(static_cast<uint64_t>(d) * width +
                              static_cast<uint64_t>(i));
    if (dict.IsFinal(d) && input.IsFinal(i))
      result.SetFinal(s, Times(dict.Final(d), input.Final(i)));
    for (const Arc &da : dict.Arcs(d)) {
      if (da.ilabel == kEpsilon) {
        StateId t = state_for(da.nextstate, i);
        result.AddArc(s, Arc{kEpsilon, da.olabel, da.weight, t});
        continue;
      }
      for (const Arc &ia : input.Arcs(i)) {
        if (ia.ilabel != da.ilabel) continue;
        StateId t = state_for(da.nextstate, ia.nextstate);
        result.AddArc(s, Arc{da.ilabel, da.olabel, Times(da.weight, ia.weight),
                             t});
      }
    }
  }
  return Connect(result);
}

namespace {

// Shortest distance from every state to a final state. Label-correcting
// relaxation over reverse arcs; tolerates negative arcs without negative
// cycles.
std::vector<TropicalWeight> DistanceToFinal(const Wfst &m) {
  const size_t n = m.NumStates();
  std::vector<TropicalWeight> dist(n, TropicalWeight::Zero());
  std::vector<TropicalWeight> finals(n);
  for (StateId s = 0; s < static_cast<StateId>(n); ++s) finals[s] = m.Final(s);

  std::vector<StateId> order = TopologicalOrder(m);
  if (!order.empty() || n == 0) {
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      StateId s = *it;
      TropicalWeight best = finals[s];
      for (const Arc &a : m.Arcs(s))
        best = Plus(best, Times(a.weight, dist[a.nextstate]));
      dist[s] = best;
    }
    return dist;
  }

  struct Reverse {
    StateId source;
    TropicalWeight weight;
  };
  std::vector<std::vector<Reverse>> reverse(n);
  for (StateId s = 0; s < static_cast<StateId>(n); ++s)
    for (const Arc &a : m.Arcs(s))
      reverse[a.nextstate].push_back(Reverse{s, a.weight});

  std::deque<StateId> queue;
  std::vector<char> queued(n, 0);
  for (StateId s = 0; s < static_cast<StateId>(n); ++s) {
    dist[s] = finals[s];
    if (!dist[s].IsZero()) {
      queue.push_back(s);
      queued[s] = 1;
    }
  }
  const size_t budget = (n + 1) * (m.NumArcs() + 1) + 1;
  size_t steps = 0;
  while (!queue.empty()) {
    if (++steps > budget)
      throw ArgumentError("negative-cost cycle in best_path input");
    StateId s = queue.front();
    queue.pop_front();
    queued[s] = 0;
    for (const Reverse &r : reverse[s]) {
      TropicalWeight through = Times(r.weight, dist[s]);
      if (through < dist[r.source]) {
        dist[r.source] = through;
        if (!queued[r.source]) {
          queued[r.source] = 1;
          queue.push_back(r.source);
        }
      }
    }
  }
  // Settle exact equalities: each dist must equal the min over its arcs as
  // recomputed, so the greedy walk below finds an optimal arc.
  for (StateId s = 0; s < static_cast<StateId>(n); ++s) {
    TropicalWeight best = finals[s];
    for (const Arc &a : m.Arcs(s))
      best = Plus(best, Times(a.weight, dist[a.nextstate]));
    dist[s] = best;
  }
  return dist;
}

}  // namespace

Path BestPath(const Wfst &m) {
  if (m.Start() == kNoState) throw NoAnalysisError("no analysis: empty machine");
  const size_t n = m.NumStates();
  std::vector<TropicalWeight> dist = DistanceToFinal(m);
  if (dist[m.Start()].IsZero())
    throw NoAnalysisError("no analysis: no path to a final state");

  auto optimal = [&](StateId s, const Arc &a) {
    return !dist[s].IsZero() && Times(a.weight, dist[a.nextstate]) == dist[s];
  };
  auto stops = [&](StateId s) {
    return m.IsFinal(s) && m.Final(s) == dist[s];
  };

  // Hop counts over the optimal subgraph; only needed for cyclic machines.
  const bool acyclic = m.IsAcyclic();
  std::vector<size_t> hops;
  if (!acyclic) {
    const size_t kInf = std::numeric_limits<size_t>::max();
    hops.assign(n, kInf);
    std::vector<std::vector<StateId>> reverse(n);
    for (StateId s = 0; s < static_cast<StateId>(n); ++s)
      for (const Arc &a : m.Arcs(s))
        if (optimal(s, a)) reverse[a.nextstate].push_back(s);
    std::deque<StateId> queue;
    for (StateId s = 0; s < static_cast<StateId>(n); ++s) {
      if (stops(s)) {
        hops[s] = 0;
        queue.push_back(s);
      }
    }
    while (!queue.empty()) {
      StateId s = queue.front();
      queue.pop_front();
      for (StateId p : reverse[s]) {
        if (hops[p] == kInf) {
          hops[p] = hops[s] + 1;
          queue.push_back(p);
        }
      }
    }
  }

  Path path;
  TropicalWeight total = TropicalWeight::One();
  StateId s = m.Start();
  while (true) {
    if (acyclic ? stops(s) : hops[s] == 0) break;
    auto arcs = m.Arcs(s);
    size_t chosen = arcs.size();
    for (size_t k = 0; k < arcs.size(); ++k) {
      if (!optimal(s, arcs[k])) continue;
      if (!acyclic && hops[arcs[k].nextstate] + 1 != hops[s]) continue;
      chosen = k;
      break;
    }
    if (chosen == arcs.size())
      throw NoAnalysisError("no analysis: inconsistent shortest distances");
    path.arcs.push_back(PathArc{s, chosen, arcs[chosen]});
    total = Times(total, arcs[chosen].weight);
    s = arcs[chosen].nextstate;
  }
  path.total_cost = Times(total, m.Final(s));
  return path;
}

std::vector<Path> EnumeratePaths(const Wfst &m, size_t limit) {
  std::vector<Path> paths;
  if (m.Start() == kNoState) return paths;
  if (!m.IsAcyclic()) throw ConfigError("cannot enumerate paths of a cyclic machine");

  struct Frame {
    StateId state;
    size_t next_arc;
  };
  std::vector<Frame> stack{{m.Start(), 0}};
  std::vector<PathArc> prefix;
  bool emitted_final = false;
  while (!stack.empty() && paths.size() < limit) {
    Frame &top = stack.back();
    if (top.next_arc == 0 && !emitted_final && m.IsFinal(top.state)) {
      Path p;
      p.arcs = prefix;
      TropicalWeight w = TropicalWeight::One();
      for (const PathArc &pa : prefix) w = Times(w, pa.arc.weight);
      p.total_cost = Times(w, m.Final(top.state));
      paths.push_back(std::move(p));
      emitted_final = true;
      continue;
    }
    auto arcs = m.Arcs(top.state);
    if (top.next_arc >= arcs.size()) {
      stack.pop_back();
      if (!prefix.empty()) prefix.pop_back();
      emitted_final = true;
      continue;
    }
    size_t k = top.next_arc++;
    prefix.push_back(PathArc{top.state, k, arcs[k]});
    stack.push_back(Frame{arcs[k].nextstate, 0});
    emitted_final = false;
  }
  return paths;
}

Wfst LinearAcceptor(std::shared_ptr<SymbolTable> symbols,
                    std::span<const Label> labels) {
  Wfst fsa(std::move(symbols));
  StateId s = fsa.AddState();
  fsa.SetStart(s);
  for (Label l : labels) {
    if (l == kEpsilon || l == kNoLabel)
      throw ArgumentError("acceptor labels must be real symbols");
    StateId t = fsa.AddState();
    fsa.AddArc(s, Arc{l, l, TropicalWeight::One(), t});
    s = t;
  }
  fsa.SetFinal(s);
  return fsa;
}

std::string FormatDouble(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string ToText(const Wfst &m) {
  std::ostringstream out;
  const SymbolTable &syms = *m.Symbols();
  auto emit = [&](StateId s) {
    for (const Arc &a : m.Arcs(s)) {
      out << s << ' ' << a.nextstate << ' ' << syms.Symbol(a.ilabel) << ' '
          << syms.Symbol(a.olabel) << ' ' << FormatDouble(a.weight.Value())
          << '\n';
    }
    if (m.IsFinal(s)) out << s << ' ' << FormatDouble(m.Final(s).Value()) << '\n';
  };
  if (m.Start() == kNoState) return "";
  emit(m.Start());
  for (StateId s = 0; s < static_cast<StateId>(m.NumStates()); ++s)
    if (s != m.Start()) emit(s);
  return out.str();
}

Wfst FromText(std::string_view text, std::shared_ptr<SymbolTable> symbols) {
  Wfst m(std::move(symbols));
  auto ensure = [&](long s) {
    if (s < 0) throw ValidationError("negative state id");
    while (m.NumStates() <= static_cast<size_t>(s)) m.AddState();
    return static_cast<StateId>(s);
  };
  auto parse_cost = [](const std::string &field, size_t line_no) {
    if (field == "inf") return std::numeric_limits<double>::infinity();
    double v = 0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size())
      throw ValidationError("line " + std::to_string(line_no) + ": bad cost '" +
                            field + "'");
    return v;
  };
  auto parse_state = [](const std::string &field, size_t line_no) {
    long v = 0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size())
      throw ValidationError("line " + std::to_string(line_no) +
                            ": bad state '" + field + "'");
    return v;
  };

  size_t line_no = 0;
  bool have_start = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> f;
    for (std::string tok; fields >> tok;) f.push_back(tok);
    if (f.empty()) continue;
    StateId src = ensure(parse_state(f[0], line_no));
    if (!have_start) {
      m.SetStart(src);
      have_start = true;
    }
    if (f.size() == 2) {
      m.SetFinal(src, TropicalWeight(parse_cost(f[1], line_no)));
    } else if (f.size() == 5) {
      StateId dst = ensure(parse_state(f[1], line_no));
      Label in_label = m.MutableSymbols().AddSymbol(f[2]);
      Label out_label = m.MutableSymbols().AddSymbol(f[3]);
      m.AddArc(src, Arc{in_label, out_label,
                        TropicalWeight(parse_cost(f[4], line_no)), dst});
    } else {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": expected 2 or 5 fields");
    }
  }
  return m;
}

}  // namespace wseg
