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

#ifndef CBCOV_CCFA_H_
#define CBCOV_CCFA_H_

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cbcov {

// Thrown by parsers and by operations whose preconditions are violated in a
// way we can name (bad document, conflicting classification evidence,
// exploration caps).
class CcfaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Point { Entry, Exit };

const char* to_string(Point p);

// One endpoint of a callback activation, e.g. "A.onCreate()" + Entry.
// Callback identity is the exact signature text.
struct EndpointSymbol {
  std::string callback;
  Point point = Point::Entry;

  std::string render() const;  // "<signature>:<entry|exit>"
  auto operator<=>(const EndpointSymbol&) const = default;
};

enum class EventCategory { Gui, Sensor, System, Other };

const char* to_string(EventCategory c);

struct Guard {
  enum class Kind { ExternalEvent, ApiCall, Message, Always };

  Kind kind = Kind::Always;
  // ExternalEvent: the event label (e.g. "launch"); ApiCall/Message: the
  // callsite text (e.g. "lm.initLoader()"). Empty for Always.
  std::string label;
  EventCategory category = EventCategory::Other;  // ExternalEvent only

  auto operator<=>(const Guard&) const = default;
};

enum class Bracket { Open, Close };

// The epsilon edges bracketing the callbacks a single API call may invoke.
// The region id names the callsite so Open/Close matching is unambiguous.
struct EpsilonLabel {
  std::string region;
  Bracket bracket = Bracket::Open;

  auto operator<=>(const EpsilonLabel&) const = default;
};

// Connector introduced by the strip transforms when a removed span is
// bridged. Never appears in a parsed document and is not serializable.
struct SilentLabel {
  auto operator<=>(const SilentLabel&) const = default;
};

using TransitionLabel = std::variant<EndpointSymbol, EpsilonLabel, SilentLabel>;

enum class Delivery { Sync, Async };

struct Transition {
  std::string from;
  std::string to;
  TransitionLabel label;
  Guard guard;
  Delivery delivery = Delivery::Sync;

  bool operator==(const Transition&) const = default;

  const EndpointSymbol* endpoint() const {
    return std::get_if<EndpointSymbol>(&label);
  }
  const EpsilonLabel* epsilon() const {
    return std::get_if<EpsilonLabel>(&label);
  }
  bool silent() const { return std::holds_alternative<SilentLabel>(label); }
  bool is_entry() const {
    const auto* s = endpoint();
    return s != nullptr && s->point == Point::Entry;
  }
  bool is_exit() const {
    const auto* s = endpoint();
    return s != nullptr && s->point == Point::Exit;
  }
};

struct Ccfa {
  std::vector<std::string> states;
  std::string initial;
  std::vector<Transition> transitions;

  bool operator==(const Ccfa&) const = default;
};

enum class CallbackKind { Event, ApiSync, ApiAsync };

const char* to_string(CallbackKind k);

// Total map over the callbacks of one CCFA; houses the criterion sets
// E (Event), Z (ApiSync) and Y (ApiAsync).
using CallbackKindMap = std::map<std::string, CallbackKind>;

struct Diagnostic {
  enum class Severity { Error, Warning };

  Severity severity = Severity::Error;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

// An API-call region: the Open/Close epsilon pair plus the transitions
// strictly between them (indices into Ccfa::transitions).
struct Region {
  std::string id;
  std::size_t open = 0;
  std::size_t close = 0;
  std::vector<std::size_t> inside;
};

// Parses the CCFA JSON document. Throws CcfaError on syntax errors (with
// line/column from the JSON parser), unknown fields, dangling state
// references and unmatched epsilon regions.
Ccfa parse_ccfa(const std::string& document);

// Inverse of parse_ccfa on parsed values; rejects transforms' silent edges.
std::string serialize_ccfa(const Ccfa& ccfa);

// Structural checks beyond what parse enforces: balanced endpoints along
// paths, region bracket discipline, entry/exit pairing, reachability.
// Empty result means the CCFA is clean.
std::vector<Diagnostic> validate_ccfa(const Ccfa& ccfa);

// Partitions the callbacks: a Message-guarded Entry makes a callback
// ApiAsync (this takes precedence); otherwise an Entry strictly inside an
// epsilon region makes it ApiSync; everything else handles an event.
// Throws CcfaError when one callback has both Message- and
// ExternalEvent-guarded entries.
CallbackKindMap classify_callbacks(const Ccfa& ccfa);

// Removes every API-call region (brackets included), bridging each with a
// single silent edge from the Open's source to the Close's target. The
// result carries only event-callback endpoints. Idempotent.
Ccfa strip_api_regions(const Ccfa& ccfa);

// Removes, within regions, the blocks introduced by Message-guarded
// entries, reconnecting the region path. Event and ApiSync callbacks are
// untouched. Idempotent.
Ccfa strip_async_in_api(const Ccfa& ccfa);

// The regions of the CCFA in Open-transition order. Requires each region id
// to have exactly one Open and one Close (parse guarantees this).
std::vector<Region> find_regions(const Ccfa& ccfa);

// The span a callback entry opens: every transition reachable from its
// target until the entry/exit nesting unwinds, plus the matching exit
// transitions.
struct CallbackBlock {
  std::set<std::size_t> body;
  std::vector<std::size_t> exits;
};

CallbackBlock callback_block(const Ccfa& ccfa, std::size_t entry_index);

// Outgoing transition indices per state, in transition-list order.
std::map<std::string, std::vector<std::size_t>> outgoing_index(const Ccfa& ccfa);

// Incoming transition indices per state, in transition-list order.
std::map<std::string, std::vector<std::size_t>> incoming_index(const Ccfa& ccfa);

}  // namespace cbcov

#endif  // CBCOV_CCFA_H_
