// Copyright 2026 The cbcov Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "seqgen.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <utility>

namespace cbcov {

const char* criterion_name(Criterion c) {
  switch (c) {
    case Criterion::EventEvent: return "event-event";
    case Criterion::EventApiSync: return "event-api-sync";
    case Criterion::EventApiAsync: return "event-api-async";
    case Criterion::GuiPair: return "gui";
  }
  return "event-event";
}

std::string RequiredSequence::render() const {
  std::string text;
  for (const EndpointSymbol& symbol : symbols) {
    if (!text.empty()) text += " -> ";
    text += symbol.render();
  }
  return text;
}

std::string RequiredSet::render() const {
  std::string text;
  for (const RequiredSequence& seq : sequences) {
    text += criterion_name(criterion);
    text += '\t';
    text += seq.render();
    text += '\n';
  }
  return text;
}

bool RequiredSet::contains(const RequiredSequence& seq) const {
  return std::any_of(sequences.begin(), sequences.end(),
                     [&seq](const RequiredSequence& s) { return s == seq; });
}

namespace {

RequiredSet make_set(Criterion criterion,
                     std::set<std::vector<EndpointSymbol>> raw) {
  RequiredSet set;
  set.criterion = criterion;
  for (auto& symbols : raw)
    set.sequences.push_back({criterion, symbols});
  std::sort(set.sequences.begin(), set.sequences.end(),
            [](const RequiredSequence& a, const RequiredSequence& b) {
              return a.render() < b.render();
            });
  return set;
}

EndpointSymbol entry_of(const std::string& callback) {
  return {callback, Point::Entry};
}
EndpointSymbol exit_of(const std::string& callback) {
  return {callback, Point::Exit};
}

// Every event entry reachable from `start` without crossing another event
// entry; each transition used at most once per search. Entries of non-event
// callbacks do not block the search.
void collect_next_entries(
    const Ccfa& ccfa, const std::map<std::string, std::vector<std::size_t>>& out,
    const CallbackKindMap& kinds, const std::string& start,
    std::set<std::string>& found) {
  std::set<std::size_t> used;
  std::function<void(const std::string&)> walk = [&](const std::string& state) {
    auto oit = out.find(state);
    if (oit == out.end()) return;
    for (std::size_t ti : oit->second) {
      if (!used.insert(ti).second) continue;
      const Transition& t = ccfa.transitions[ti];
      if (t.is_entry() && kinds.at(t.endpoint()->callback) == CallbackKind::Event) {
        found.insert(t.endpoint()->callback);
        continue;  // an event entry ends this branch of the search
      }
      walk(t.to);
    }
  };
  walk(start);
}

}  // namespace

RequiredSet gen_event_event(const Ccfa& ccfa, const SeqGenOptions& options) {
  CallbackKindMap kinds = classify_callbacks(ccfa);
  Ccfa stripped = strip_api_regions(ccfa);
  auto out = outgoing_index(stripped);

  std::set<std::vector<EndpointSymbol>> raw;
  for (const Transition& t : stripped.transitions) {
    if (!t.is_exit()) continue;
    const std::string& first = t.endpoint()->callback;
    if (kinds.at(first) != CallbackKind::Event) continue;
    std::set<std::string> successors;
    collect_next_entries(stripped, out, kinds, t.to, successors);
    for (const std::string& second : successors) {
      if (second == first && !options.include_self_pairs) continue;
      raw.insert({entry_of(first), exit_of(first), entry_of(second)});
    }
  }
  return make_set(Criterion::EventEvent, std::move(raw));
}

RequiredSet gen_gui_pairs(const Ccfa& ccfa, const SeqGenOptions& options) {
  std::set<std::string> gui_callbacks;
  for (const Transition& t : ccfa.transitions) {
    if (t.is_entry() && t.guard.kind == Guard::Kind::ExternalEvent &&
        t.guard.category == EventCategory::Gui)
      gui_callbacks.insert(t.endpoint()->callback);
  }
  RequiredSet pairs = gen_event_event(ccfa, options);
  RequiredSet result;
  result.criterion = Criterion::GuiPair;
  for (RequiredSequence seq : pairs.sequences) {
    if (!gui_callbacks.count(seq.symbols.front().callback) ||
        !gui_callbacks.count(seq.symbols.back().callback))
      continue;
    seq.criterion = Criterion::GuiPair;
    result.sequences.push_back(std::move(seq));
  }
  return result;
}

namespace {

// Adjacent entries reachable from `start` crossing only connective
// transitions (epsilon brackets and silent bridges), stopping at `stop`.
std::vector<std::size_t> adjacent_entries(
    const Ccfa& ccfa, const std::map<std::string, std::vector<std::size_t>>& out,
    const std::string& start, std::size_t stop) {
  std::vector<std::size_t> found;
  std::set<std::string> visited{start};
  std::deque<std::string> frontier{start};
  while (!frontier.empty()) {
    std::string state = frontier.front();
    frontier.pop_front();
    auto oit = out.find(state);
    if (oit == out.end()) continue;
    for (std::size_t ti : oit->second) {
      if (ti == stop) continue;
      const Transition& t = ccfa.transitions[ti];
      if (t.is_entry()) {
        found.push_back(ti);
        continue;
      }
      if (t.epsilon() != nullptr || t.silent()) {
        if (visited.insert(t.to).second) frontier.push_back(t.to);
      }
      // Exits end the search: a foreign exit would break trace adjacency.
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

// Backward search for the entries of the callbacks whose activation encloses
// `state`: balanced blocks crossed on the way back are skipped.
std::vector<std::size_t> enclosing_entries(
    const Ccfa& ccfa, const std::map<std::string, std::vector<std::size_t>>& in,
    const std::string& state) {
  std::vector<std::size_t> found;
  std::set<std::pair<std::string, int>> visited{{state, 0}};
  std::deque<std::pair<std::string, int>> frontier{{state, 0}};
  while (!frontier.empty()) {
    auto [current, depth] = frontier.front();
    frontier.pop_front();
    auto iit = in.find(current);
    if (iit == in.end()) continue;
    for (std::size_t ti : iit->second) {
      const Transition& t = ccfa.transitions[ti];
      int next_depth = depth;
      if (t.is_exit()) next_depth = depth + 1;
      if (t.is_entry()) {
        if (depth == 0) {
          found.push_back(ti);
          continue;
        }
        next_depth = depth - 1;
      }
      if (visited.insert({t.from, next_depth}).second)
        frontier.push_back({t.from, next_depth});
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

}  // namespace

RequiredSet gen_event_api_sync(const Ccfa& ccfa) {
  Ccfa stripped = strip_async_in_api(ccfa);
  CallbackKindMap kinds = classify_callbacks(stripped);
  auto out = outgoing_index(stripped);
  auto in = incoming_index(stripped);

  std::set<std::vector<EndpointSymbol>> raw;
  for (const Region& region : find_regions(stripped)) {
    const Transition& open = stripped.transitions[region.open];

    // Callers pair with the first callee reachable on each path into the
    // region.
    std::vector<std::size_t> first = adjacent_entries(
        stripped, out, open.to, region.close);
    if (!first.empty()) {
      for (std::size_t caller_index : enclosing_entries(stripped, in, open.from)) {
        const std::string& caller =
            stripped.transitions[caller_index].endpoint()->callback;
        if (kinds.at(caller) == CallbackKind::ApiAsync) continue;
        for (std::size_t callee_index : first) {
          const std::string& callee =
              stripped.transitions[callee_index].endpoint()->callback;
          raw.insert({entry_of(caller), entry_of(callee)});
        }
      }
    }

    // Consecutive callbacks within the region pair exit to entry.
    for (std::size_t ti : region.inside) {
      const Transition& t = stripped.transitions[ti];
      if (!t.is_exit()) continue;
      const std::string& first_callback = t.endpoint()->callback;
      if (kinds.at(first_callback) != CallbackKind::ApiSync) continue;
      for (std::size_t next_index :
           adjacent_entries(stripped, out, t.to, region.close)) {
        const std::string& second_callback =
            stripped.transitions[next_index].endpoint()->callback;
        raw.insert({exit_of(first_callback), entry_of(second_callback)});
      }
    }
  }
  return make_set(Criterion::EventApiSync, std::move(raw));
}

namespace {

// Forward walk of the callback block opened by `entry_index`: returns the
// states reached right after the matching exit.
std::vector<std::string> completion_states(
    const Ccfa& ccfa, const std::map<std::string, std::vector<std::size_t>>& out,
    std::size_t entry_index) {
  std::vector<std::string> completions;
  std::set<std::pair<std::string, int>> visited{
      {ccfa.transitions[entry_index].to, 1}};
  std::deque<std::pair<std::string, int>> frontier{
      {ccfa.transitions[entry_index].to, 1}};
  while (!frontier.empty()) {
    auto [state, depth] = frontier.front();
    frontier.pop_front();
    auto oit = out.find(state);
    if (oit == out.end()) continue;
    for (std::size_t ti : oit->second) {
      const Transition& t = ccfa.transitions[ti];
      int next_depth = depth;
      if (t.is_entry()) next_depth = depth + 1;
      if (t.is_exit()) next_depth = depth - 1;
      if (next_depth == 0) {
        completions.push_back(t.to);
        continue;
      }
      if (visited.insert({t.to, next_depth}).second)
        frontier.push_back({t.to, next_depth});
    }
  }
  std::sort(completions.begin(), completions.end());
  completions.erase(std::unique(completions.begin(), completions.end()),
                    completions.end());
  return completions;
}

// Event callbacks whose asynchronous entry is the first such transition on
// some path from `state`; synchronous transitions are crossed, each used at
// most once per search.
void async_successors(
    const Ccfa& ccfa, const std::map<std::string, std::vector<std::size_t>>& out,
    const CallbackKindMap& kinds, const std::string& state,
    std::set<std::string>& found) {
  std::set<std::size_t> used;
  std::function<void(const std::string&)> walk = [&](const std::string& current) {
    auto oit = out.find(current);
    if (oit == out.end()) return;
    for (std::size_t ti : oit->second) {
      if (!used.insert(ti).second) continue;
      const Transition& t = ccfa.transitions[ti];
      if (t.delivery == Delivery::Async && t.is_entry()) {
        const std::string& callback = t.endpoint()->callback;
        if (t.guard.kind == Guard::Kind::ExternalEvent &&
            kinds.at(callback) == CallbackKind::Event)
          found.insert(callback);
        continue;  // first asynchronous entry ends the path either way
      }
      walk(t.to);
    }
  };
  walk(state);
}

}  // namespace

RequiredSet gen_event_api_async(const Ccfa& ccfa) {
  CallbackKindMap kinds = classify_callbacks(ccfa);
  auto out = outgoing_index(ccfa);
  auto in = incoming_index(ccfa);

  std::set<std::size_t> inside_any;
  for (const Region& region : find_regions(ccfa))
    inside_any.insert(region.inside.begin(), region.inside.end());

  std::set<std::vector<EndpointSymbol>> raw;
  for (std::size_t i = 0; i < ccfa.transitions.size(); ++i) {
    const Transition& message = ccfa.transitions[i];
    if (!message.is_entry() || message.guard.kind != Guard::Kind::Message)
      continue;
    if (!inside_any.count(i)) continue;
    const std::string& async_callback = message.endpoint()->callback;

    // The caller is the nearest asynchronous entry walking backwards.
    std::vector<std::size_t> callers;
    {
      std::set<std::pair<std::string, int>> visited{{message.from, 0}};
      std::deque<std::pair<std::string, int>> frontier{{message.from, 0}};
      while (!frontier.empty()) {
        auto [state, depth] = frontier.front();
        frontier.pop_front();
        auto iit = in.find(state);
        if (iit == in.end()) continue;
        for (std::size_t ti : iit->second) {
          const Transition& t = ccfa.transitions[ti];
          int next_depth = depth;
          if (t.is_exit()) next_depth = depth + 1;
          if (t.is_entry()) {
            if (depth == 0) {
              if (t.delivery == Delivery::Async) callers.push_back(ti);
              // A synchronous entry at depth zero is the enclosing callee;
              // keep walking back for the task that started it.
              if (t.delivery == Delivery::Async) continue;
              next_depth = 0;
            } else {
              next_depth = depth - 1;
            }
          }
          if (visited.insert({t.from, next_depth}).second)
            frontier.push_back({t.from, next_depth});
        }
      }
    }
    std::sort(callers.begin(), callers.end());
    callers.erase(std::unique(callers.begin(), callers.end()), callers.end());

    for (std::size_t caller_index : callers) {
      const std::string& caller =
          ccfa.transitions[caller_index].endpoint()->callback;
      if (kinds.at(caller) != CallbackKind::Event) continue;
      std::set<std::string> successors;
      for (const std::string& state : completion_states(ccfa, out, caller_index))
        async_successors(ccfa, out, kinds, state, successors);
      for (const std::string& successor : successors) {
        raw.insert({entry_of(caller), exit_of(caller), entry_of(async_callback),
                    exit_of(async_callback), entry_of(successor)});
        raw.insert({entry_of(caller), exit_of(caller), entry_of(successor),
                    exit_of(successor), entry_of(async_callback)});
      }
    }
  }
  return make_set(Criterion::EventApiAsync, std::move(raw));
}

std::set<std::vector<EndpointSymbol>> enumerate_bounded_runs(
    const Ccfa& ccfa, std::size_t max_symbols, std::size_t run_cap) {
  if (max_symbols < 1) throw CcfaError("max_symbols must be at least 1");
  auto out = outgoing_index(ccfa);

  std::set<std::vector<EndpointSymbol>> runs;
  std::vector<int> usage(ccfa.transitions.size(), 0);
  std::vector<EndpointSymbol> symbols;
  std::size_t explored = 0;

  std::function<void(const std::string&)> walk = [&](const std::string& state) {
    if (++explored > run_cap)
      throw CcfaError("enumeration cap exceeded (" + std::to_string(run_cap) +
                      " runs)");
    if (!symbols.empty()) runs.insert(symbols);
    if (symbols.size() >= max_symbols) return;
    auto oit = out.find(state);
    if (oit == out.end()) return;
    for (std::size_t ti : oit->second) {
      if (usage[ti] >= 2) continue;  // each cycle expanded at most twice
      ++usage[ti];
      const Transition& t = ccfa.transitions[ti];
      bool emits = t.endpoint() != nullptr;
      if (emits) symbols.push_back(*t.endpoint());
      walk(t.to);
      if (emits) symbols.pop_back();
      --usage[ti];
    }
  };
  walk(ccfa.initial);
  return runs;
}

}  // namespace cbcov
