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

#include "ccfa.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include <nlohmann/json.hpp>

namespace cbcov {

using nlohmann::ordered_json;

const char* to_string(Point p) {
  return p == Point::Entry ? "entry" : "exit";
}

std::string EndpointSymbol::render() const {
  return callback + ":" + to_string(point);
}

const char* to_string(EventCategory c) {
  switch (c) {
    case EventCategory::Gui: return "gui";
    case EventCategory::Sensor: return "sensor";
    case EventCategory::System: return "system";
    case EventCategory::Other: return "other";
  }
  return "other";
}

const char* to_string(CallbackKind k) {
  switch (k) {
    case CallbackKind::Event: return "event";
    case CallbackKind::ApiSync: return "api_sync";
    case CallbackKind::ApiAsync: return "api_async";
  }
  return "event";
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw CcfaError(msg); }

void reject_unknown_fields(const ordered_json& obj, const std::string& where,
                           std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* name : allowed) {
      if (item.key() == name) {
        known = true;
        break;
      }
    }
    if (!known) fail("unknown field \"" + item.key() + "\" in " + where);
  }
}

std::string require_string(const ordered_json& obj, const char* field,
                           const std::string& where) {
  if (!obj.contains(field)) fail(std::string("missing field \"") + field + "\" in " + where);
  if (!obj[field].is_string()) fail(std::string("field \"") + field + "\" in " + where + " must be a string");
  return obj[field].get<std::string>();
}

EventCategory parse_category(const std::string& text, const std::string& where) {
  if (text == "gui") return EventCategory::Gui;
  if (text == "sensor") return EventCategory::Sensor;
  if (text == "system") return EventCategory::System;
  if (text == "other") return EventCategory::Other;
  fail("unknown event category \"" + text + "\" in " + where);
}

TransitionLabel parse_label(const ordered_json& obj, const std::string& where) {
  if (!obj.is_object()) fail("label in " + where + " must be an object");
  if (obj.contains("epsilon")) {
    reject_unknown_fields(obj, where + " label", {"epsilon"});
    const auto& eps = obj["epsilon"];
    if (!eps.is_object()) fail("epsilon label in " + where + " must be an object");
    reject_unknown_fields(eps, where + " epsilon label", {"region", "bracket"});
    EpsilonLabel label;
    label.region = require_string(eps, "region", where + " epsilon label");
    if (label.region.empty()) fail("empty epsilon region id in " + where);
    std::string bracket = require_string(eps, "bracket", where + " epsilon label");
    if (bracket == "open") {
      label.bracket = Bracket::Open;
    } else if (bracket == "close") {
      label.bracket = Bracket::Close;
    } else {
      fail("unknown bracket \"" + bracket + "\" in " + where);
    }
    return label;
  }
  reject_unknown_fields(obj, where + " label", {"callback", "point"});
  EndpointSymbol symbol;
  symbol.callback = require_string(obj, "callback", where + " label");
  if (symbol.callback.empty()) fail("empty callback signature in " + where);
  std::string point = require_string(obj, "point", where + " label");
  if (point == "entry") {
    symbol.point = Point::Entry;
  } else if (point == "exit") {
    symbol.point = Point::Exit;
  } else {
    fail("unknown point \"" + point + "\" in " + where);
  }
  return symbol;
}

Guard parse_guard(const ordered_json& obj, const std::string& where) {
  if (!obj.is_object()) fail("guard in " + where + " must be an object");
  Guard guard;
  std::string kind = require_string(obj, "kind", where + " guard");
  if (kind == "event") {
    reject_unknown_fields(obj, where + " guard", {"kind", "label", "category"});
    guard.kind = Guard::Kind::ExternalEvent;
    guard.label = require_string(obj, "label", where + " guard");
    if (guard.label.empty()) fail("empty event label in " + where);
    guard.category = parse_category(require_string(obj, "category", where + " guard"), where);
  } else if (kind == "api_call") {
    reject_unknown_fields(obj, where + " guard", {"kind", "callsite"});
    guard.kind = Guard::Kind::ApiCall;
    guard.label = require_string(obj, "callsite", where + " guard");
    if (guard.label.empty()) fail("empty api_call callsite in " + where);
  } else if (kind == "message") {
    reject_unknown_fields(obj, where + " guard", {"kind", "callsite"});
    guard.kind = Guard::Kind::Message;
    guard.label = require_string(obj, "callsite", where + " guard");
    if (guard.label.empty()) fail("empty message callsite in " + where);
  } else if (kind == "always") {
    reject_unknown_fields(obj, where + " guard", {"kind"});
    guard.kind = Guard::Kind::Always;
  } else {
    fail("unknown guard kind \"" + kind + "\" in " + where);
  }
  return guard;
}

}  // namespace

Ccfa parse_ccfa(const std::string& document) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    fail(std::string("syntax error: ") + e.what());
  }
  if (!doc.is_object()) fail("document root must be an object");
  reject_unknown_fields(doc, "document", {"states", "initial", "transitions"});
  if (!doc.contains("states") || !doc["states"].is_array())
    fail("missing \"states\" array");
  if (!doc.contains("initial") || !doc["initial"].is_string())
    fail("missing \"initial\" state");
  if (!doc.contains("transitions") || !doc["transitions"].is_array())
    fail("missing \"transitions\" array");

  Ccfa ccfa;
  std::set<std::string> seen_states;
  for (const auto& s : doc["states"]) {
    if (!s.is_string()) fail("state ids must be strings");
    std::string id = s.get<std::string>();
    if (id.empty()) fail("empty state id");
    if (!seen_states.insert(id).second) fail("duplicate state id \"" + id + "\"");
    ccfa.states.push_back(id);
  }
  ccfa.initial = doc["initial"].get<std::string>();
  if (!seen_states.count(ccfa.initial)) fail("initial state missing");

  std::size_t index = 0;
  for (const auto& t : doc["transitions"]) {
    std::string where = "transition " + std::to_string(index);
    if (!t.is_object()) fail(where + " must be an object");
    reject_unknown_fields(t, where, {"from", "to", "label", "guard", "delivery"});
    Transition transition;
    transition.from = require_string(t, "from", where);
    transition.to = require_string(t, "to", where);
    if (!seen_states.count(transition.from))
      fail("dangling state reference \"" + transition.from + "\" in " + where);
    if (!seen_states.count(transition.to))
      fail("dangling state reference \"" + transition.to + "\" in " + where);
    if (!t.contains("label")) fail("missing label in " + where);
    transition.label = parse_label(t["label"], where);
    if (!t.contains("guard")) fail("missing guard in " + where);
    transition.guard = parse_guard(t["guard"], where);
    std::string delivery = require_string(t, "delivery", where);
    if (delivery == "sync") {
      transition.delivery = Delivery::Sync;
    } else if (delivery == "async") {
      transition.delivery = Delivery::Async;
    } else {
      fail("unknown delivery \"" + delivery + "\" in " + where);
    }
    ccfa.transitions.push_back(std::move(transition));
    ++index;
  }

  // Bracket matching is structural enough to reject at parse time.
  std::map<std::string, int> opens, closes;
  for (const auto& t : ccfa.transitions) {
    if (const auto* eps = t.epsilon()) {
      (eps->bracket == Bracket::Open ? opens : closes)[eps->region]++;
    }
  }
  for (const auto& [region, n] : opens) {
    if (!closes.count(region))
      fail("unmatched epsilon region \"" + region + "\" (open without close)");
    if (n > 1 || closes[region] > 1)
      fail("duplicate epsilon bracket for region \"" + region + "\"");
  }
  for (const auto& [region, n] : closes) {
    (void)n;
    if (!opens.count(region))
      fail("unmatched epsilon region \"" + region + "\" (close without open)");
  }
  return ccfa;
}

std::string serialize_ccfa(const Ccfa& ccfa) {
  ordered_json doc;
  doc["states"] = ccfa.states;
  doc["initial"] = ccfa.initial;
  doc["transitions"] = ordered_json::array();
  for (const auto& t : ccfa.transitions) {
    ordered_json obj;
    obj["from"] = t.from;
    obj["to"] = t.to;
    if (const auto* symbol = t.endpoint()) {
      obj["label"] = {{"callback", symbol->callback},
                      {"point", to_string(symbol->point)}};
    } else if (const auto* eps = t.epsilon()) {
      obj["label"] = {
          {"epsilon",
           {{"region", eps->region},
            {"bracket", eps->bracket == Bracket::Open ? "open" : "close"}}}};
    } else {
      fail("silent transitions are internal and cannot be serialized");
    }
    switch (t.guard.kind) {
      case Guard::Kind::ExternalEvent:
        obj["guard"] = {{"kind", "event"},
                        {"label", t.guard.label},
                        {"category", to_string(t.guard.category)}};
        break;
      case Guard::Kind::ApiCall:
        obj["guard"] = {{"kind", "api_call"}, {"callsite", t.guard.label}};
        break;
      case Guard::Kind::Message:
        obj["guard"] = {{"kind", "message"}, {"callsite", t.guard.label}};
        break;
      case Guard::Kind::Always:
        obj["guard"] = {{"kind", "always"}};
        break;
    }
    obj["delivery"] = t.delivery == Delivery::Sync ? "sync" : "async";
    doc["transitions"].push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

std::map<std::string, std::vector<std::size_t>> outgoing_index(const Ccfa& ccfa) {
  std::map<std::string, std::vector<std::size_t>> index;
  for (std::size_t i = 0; i < ccfa.transitions.size(); ++i)
    index[ccfa.transitions[i].from].push_back(i);
  return index;
}

std::map<std::string, std::vector<std::size_t>> incoming_index(const Ccfa& ccfa) {
  std::map<std::string, std::vector<std::size_t>> index;
  for (std::size_t i = 0; i < ccfa.transitions.size(); ++i)
    index[ccfa.transitions[i].to].push_back(i);
  return index;
}

std::vector<Region> find_regions(const Ccfa& ccfa) {
  std::map<std::string, std::size_t> opens, closes;
  for (std::size_t i = 0; i < ccfa.transitions.size(); ++i) {
    if (const auto* eps = ccfa.transitions[i].epsilon()) {
      auto& slot = (eps->bracket == Bracket::Open ? opens : closes);
      if (slot.count(eps->region))
        fail("duplicate epsilon bracket for region \"" + eps->region + "\"");
      slot[eps->region] = i;
    }
  }
  auto out = outgoing_index(ccfa);
  std::vector<Region> regions;
  for (const auto& [id, open] : opens) {
    auto it = closes.find(id);
    if (it == closes.end()) fail("unmatched epsilon region \"" + id + "\"");
    Region region{id, open, it->second, {}};
    // Everything reachable from the Open's target without taking the Close
    // transition is strictly inside the region.
    std::set<std::string> visited;
    std::set<std::size_t> inside;
    std::deque<std::string> frontier{ccfa.transitions[open].to};
    visited.insert(ccfa.transitions[open].to);
    while (!frontier.empty()) {
      std::string state = frontier.front();
      frontier.pop_front();
      auto oit = out.find(state);
      if (oit == out.end()) continue;
      for (std::size_t ti : oit->second) {
        if (ti == region.close) continue;
        inside.insert(ti);
        const std::string& next = ccfa.transitions[ti].to;
        if (visited.insert(next).second) frontier.push_back(next);
      }
    }
    region.inside.assign(inside.begin(), inside.end());
    regions.push_back(std::move(region));
  }
  std::sort(regions.begin(), regions.end(),
            [](const Region& a, const Region& b) { return a.open < b.open; });
  return regions;
}

namespace {

// Configuration for the path walk: current state plus the stacks of open
// callbacks and open regions.
struct WalkConfig {
  std::string state;
  std::vector<std::string> callbacks;
  std::vector<std::string> regions;

  auto operator<=>(const WalkConfig&) const = default;
};

constexpr std::size_t kWalkConfigCap = 100000;

}  // namespace

std::vector<Diagnostic> validate_ccfa(const Ccfa& ccfa) {
  std::vector<Diagnostic> diags;
  auto error = [&diags](const std::string& msg) {
    diags.push_back({Diagnostic::Severity::Error, msg});
  };
  auto warning = [&diags](const std::string& msg) {
    diags.push_back({Diagnostic::Severity::Warning, msg});
  };

  std::set<std::string> states(ccfa.states.begin(), ccfa.states.end());
  if (ccfa.states.empty() || !states.count(ccfa.initial)) {
    error("initial state missing");
    return diags;
  }

  std::map<std::string, int> entries, exits;
  std::map<std::string, int> opens, closes;
  for (std::size_t i = 0; i < ccfa.transitions.size(); ++i) {
    const Transition& t = ccfa.transitions[i];
    std::string where = "transition " + std::to_string(i);
    if (!states.count(t.from) || !states.count(t.to))
      error("dangling state reference in " + where);
    if (const auto* symbol = t.endpoint()) {
      if (symbol->callback.empty()) error("empty callback signature in " + where);
      (symbol->point == Point::Entry ? entries : exits)[symbol->callback]++;
      if (t.delivery == Delivery::Async && symbol->point == Point::Exit)
        error("async delivery on exit transition in " + where);
    } else if (const auto* eps = t.epsilon()) {
      if (eps->region.empty()) error("empty epsilon region id in " + where);
      if (t.guard.kind != Guard::Kind::Always)
        error("epsilon transition with non-trivial guard in " + where);
      (eps->bracket == Bracket::Open ? opens : closes)[eps->region]++;
    }
    if (t.guard.kind == Guard::Kind::ExternalEvent && t.guard.label.empty())
      error("empty event label in " + where);
    if ((t.guard.kind == Guard::Kind::ApiCall ||
         t.guard.kind == Guard::Kind::Message) &&
        t.guard.label.empty())
      error("empty callsite in " + where);
  }
  for (const auto& [cb, n] : entries) {
    (void)n;
    if (!exits.count(cb)) error("callback \"" + cb + "\" has an entry but no exit");
  }
  for (const auto& [cb, n] : exits) {
    (void)n;
    if (!entries.count(cb)) error("callback \"" + cb + "\" has an exit but no entry");
  }
  for (const auto& [region, n] : opens) {
    if (!closes.count(region))
      error("unmatched epsilon region \"" + region + "\" (open without close)");
    else if (n > 1 || closes[region] > 1)
      error("duplicate epsilon bracket for region \"" + region + "\"");
  }
  for (const auto& [region, n] : closes) {
    (void)n;
    if (!opens.count(region))
      error("unmatched epsilon region \"" + region + "\" (close without open)");
  }
  if (!diags.empty()) return diags;  // path walk needs the structure above

  // Path discipline: every entry/exit and open/close properly nested along
  // every path from the initial state.
  auto out = outgoing_index(ccfa);
  std::set<WalkConfig> visited;
  std::set<std::string> balance_reported, region_reported;
  bool nested_reported = false;
  std::deque<WalkConfig> frontier{{ccfa.initial, {}, {}}};
  visited.insert(frontier.front());
  bool capped = false;
  while (!frontier.empty()) {
    WalkConfig config = frontier.front();
    frontier.pop_front();
    auto oit = out.find(config.state);
    if (oit == out.end()) continue;
    for (std::size_t ti : oit->second) {
      const Transition& t = ccfa.transitions[ti];
      WalkConfig next = config;
      next.state = t.to;
      if (const auto* symbol = t.endpoint()) {
        if (symbol->point == Point::Entry) {
          if (std::find(next.callbacks.begin(), next.callbacks.end(),
                        symbol->callback) != next.callbacks.end()) {
            if (balance_reported.insert(symbol->callback).second)
              error("unbalanced endpoint: \"" + symbol->callback +
                    "\" re-entered before its exit");
            continue;
          }
          next.callbacks.push_back(symbol->callback);
        } else {
          if (next.callbacks.empty() || next.callbacks.back() != symbol->callback) {
            if (balance_reported.insert(symbol->callback).second)
              error("unbalanced endpoint: \"" + symbol->callback +
                    ":exit\" without matching entry");
            continue;
          }
          next.callbacks.pop_back();
        }
      } else if (const auto* eps = t.epsilon()) {
        if (eps->bracket == Bracket::Open) {
          if (std::find(next.regions.begin(), next.regions.end(), eps->region) !=
              next.regions.end()) {
            if (region_reported.insert(eps->region).second)
              error("epsilon region \"" + eps->region +
                    "\" re-opened before its close");
            continue;
          }
          if (!next.regions.empty() && !nested_reported) {
            nested_reported = true;
            warning("nested epsilon regions (\"" + eps->region + "\" inside \"" +
                    next.regions.back() + "\")");
          }
          next.regions.push_back(eps->region);
        } else {
          if (next.regions.empty() || next.regions.back() != eps->region) {
            if (region_reported.insert(eps->region).second)
              error("epsilon close for region \"" + eps->region +
                    "\" without matching open");
            continue;
          }
          next.regions.pop_back();
        }
      }
      if (visited.size() >= kWalkConfigCap) {
        capped = true;
        break;
      }
      if (visited.insert(next).second) frontier.push_back(next);
    }
    if (capped) break;
  }
  if (capped) warning("path validation capped; automaton too large to walk fully");

  // Dead ends inside an open region would make the Close unreachable.
  for (const Region& region : find_regions(ccfa)) {
    std::set<std::string> inside_states{ccfa.transitions[region.open].to};
    for (std::size_t ti : region.inside) inside_states.insert(ccfa.transitions[ti].to);
    for (const std::string& state : inside_states) {
      if (state == ccfa.transitions[region.close].from) continue;
      auto oit = out.find(state);
      if (oit == out.end() || oit->second.empty())
        error("epsilon region \"" + region.id + "\" has a dead end at state \"" +
              state + "\"");
    }
  }

  // Reachability from the initial state.
  std::set<std::string> reachable{ccfa.initial};
  std::deque<std::string> queue{ccfa.initial};
  while (!queue.empty()) {
    std::string state = queue.front();
    queue.pop_front();
    auto oit = out.find(state);
    if (oit == out.end()) continue;
    for (std::size_t ti : oit->second) {
      const std::string& next = ccfa.transitions[ti].to;
      if (reachable.insert(next).second) queue.push_back(next);
    }
  }
  for (const std::string& state : ccfa.states) {
    if (!reachable.count(state))
      warning("state \"" + state + "\" unreachable from initial");
  }
  return diags;
}

CallbackKindMap classify_callbacks(const Ccfa& ccfa) {
  std::set<std::size_t> inside_any;
  for (const Region& region : find_regions(ccfa))
    inside_any.insert(region.inside.begin(), region.inside.end());

  std::set<std::string> message_entries, event_entries, region_entries;
  std::set<std::string> callbacks;
  for (std::size_t i = 0; i < ccfa.transitions.size(); ++i) {
    const Transition& t = ccfa.transitions[i];
    const auto* symbol = t.endpoint();
    if (symbol == nullptr) continue;
    callbacks.insert(symbol->callback);
    if (symbol->point != Point::Entry) continue;
    if (t.guard.kind == Guard::Kind::Message) message_entries.insert(symbol->callback);
    if (t.guard.kind == Guard::Kind::ExternalEvent) event_entries.insert(symbol->callback);
    if (inside_any.count(i)) region_entries.insert(symbol->callback);
  }
  for (const std::string& cb : message_entries) {
    if (event_entries.count(cb))
      fail("conflicting classification evidence for callback \"" + cb +
           "\": both message-guarded and event-guarded entries");
  }

  CallbackKindMap kinds;
  for (const std::string& cb : callbacks) {
    if (message_entries.count(cb)) {
      kinds[cb] = CallbackKind::ApiAsync;
    } else if (region_entries.count(cb)) {
      kinds[cb] = CallbackKind::ApiSync;
    } else {
      kinds[cb] = CallbackKind::Event;
    }
  }
  return kinds;
}

Ccfa strip_api_regions(const Ccfa& ccfa) {
  std::vector<Region> regions = find_regions(ccfa);
  if (regions.empty()) return ccfa;

  std::set<std::size_t> removed;
  for (const Region& region : regions) {
    removed.insert(region.open);
    removed.insert(region.close);
    removed.insert(region.inside.begin(), region.inside.end());
  }
  // Only top-level regions get a bridge; nested ones vanish with the content.
  std::set<std::size_t> inside_any;
  for (const Region& region : regions)
    inside_any.insert(region.inside.begin(), region.inside.end());

  Ccfa result;
  result.states = ccfa.states;
  result.initial = ccfa.initial;
  for (std::size_t i = 0; i < ccfa.transitions.size(); ++i) {
    bool bridged = false;
    for (const Region& region : regions) {
      if (region.open == i && !inside_any.count(i)) {
        Transition bridge;
        bridge.from = ccfa.transitions[region.open].from;
        bridge.to = ccfa.transitions[region.close].to;
        bridge.label = SilentLabel{};
        result.transitions.push_back(std::move(bridge));
        bridged = true;
        break;
      }
    }
    if (bridged || removed.count(i)) continue;
    result.transitions.push_back(ccfa.transitions[i]);
  }
  return result;
}

CallbackBlock callback_block(const Ccfa& ccfa, std::size_t entry_index) {
  auto out = outgoing_index(ccfa);
  CallbackBlock block;
  std::set<std::pair<std::string, int>> visited;
  std::deque<std::pair<std::string, int>> frontier{
      {ccfa.transitions[entry_index].to, 1}};
  visited.insert(frontier.front());
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
        block.exits.push_back(ti);
        continue;
      }
      block.body.insert(ti);
      if (visited.insert({t.to, next_depth}).second)
        frontier.push_back({t.to, next_depth});
    }
  }
  std::sort(block.exits.begin(), block.exits.end());
  block.exits.erase(std::unique(block.exits.begin(), block.exits.end()),
                    block.exits.end());
  return block;
}

Ccfa strip_async_in_api(const Ccfa& ccfa) {
  std::set<std::size_t> inside_any;
  for (const Region& region : find_regions(ccfa))
    inside_any.insert(region.inside.begin(), region.inside.end());

  std::map<std::size_t, CallbackBlock> blocks;
  for (std::size_t i = 0; i < ccfa.transitions.size(); ++i) {
    const Transition& t = ccfa.transitions[i];
    if (!t.is_entry() || t.guard.kind != Guard::Kind::Message) continue;
    if (!inside_any.count(i)) continue;
    blocks[i] = callback_block(ccfa, i);
  }
  if (blocks.empty()) return ccfa;

  std::set<std::size_t> removed;
  for (const auto& [entry_index, block] : blocks) {
    removed.insert(entry_index);
    removed.insert(block.body.begin(), block.body.end());
    removed.insert(block.exits.begin(), block.exits.end());
  }
  // A message block nested inside another removed block vanishes with it and
  // needs no bridge of its own.
  std::map<std::size_t, std::vector<Transition>> bridges;
  for (const auto& [entry_index, block] : blocks) {
    bool nested = false;
    for (const auto& [other_index, other] : blocks) {
      if (other_index != entry_index && other.body.count(entry_index)) {
        nested = true;
        break;
      }
    }
    if (nested) continue;
    for (std::size_t exit_index : block.exits) {
      Transition bridge;
      bridge.from = ccfa.transitions[entry_index].from;
      bridge.to = ccfa.transitions[exit_index].to;
      bridge.label = SilentLabel{};
      bridges[entry_index].push_back(std::move(bridge));
    }
  }

  Ccfa result;
  result.states = ccfa.states;
  result.initial = ccfa.initial;
  for (std::size_t i = 0; i < ccfa.transitions.size(); ++i) {
    if (auto bit = bridges.find(i); bit != bridges.end()) {
      for (const Transition& bridge : bit->second)
        result.transitions.push_back(bridge);
      continue;
    }
    if (removed.count(i)) continue;
    result.transitions.push_back(ccfa.transitions[i]);
  }
  return result;
}

}  // namespace cbcov
