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

#ifndef CBCOV_SEQGEN_H_
#define CBCOV_SEQGEN_H_

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "ccfa.hpp"

namespace cbcov {

enum class Criterion { EventEvent, EventApiSync, EventApiAsync, GuiPair };

// The names used on the command line and as tags in sequence-set files.
const char* criterion_name(Criterion c);

// A required callback sequence, tagged by the criterion demanding it.
//   EventEvent / GuiPair: [c1:entry, c1:exit, c2:entry]
//   EventApiSync:         [caller:entry, callee:entry] or [c1:exit, c2:entry]
//   EventApiAsync:        five symbols spanning three activations
struct RequiredSequence {
  Criterion criterion = Criterion::EventEvent;
  std::vector<EndpointSymbol> symbols;

  std::string render() const;  // symbols joined by " -> "
  bool operator==(const RequiredSequence&) const = default;
};

// A deduplicated required set in canonical order (lexicographic by the
// rendered symbol text) so serialized output is reproducible byte for byte.
struct RequiredSet {
  Criterion criterion = Criterion::EventEvent;
  std::vector<RequiredSequence> sequences;

  std::string render() const;  // "<tag>\t<sequence>" per line
  bool contains(const RequiredSequence& seq) const;
};

struct SeqGenOptions {
  // Re-enables c1 == c2 pairs for the event-event criterion. Off by default:
  // repeated-event interleavings belong to the event-API async criterion.
  bool include_self_pairs = false;
};

// S_ee: every ordered pair of distinct event callbacks where the second's
// entry is reachable from the first's exit on the region-stripped CCFA
// without crossing another event entry, each transition used at most once
// per search (the loop-once rule).
RequiredSet gen_event_event(const Ccfa& ccfa, const SeqGenOptions& options = {});

// The GUI-coverage baseline: gen_event_event restricted to callbacks whose
// triggering external event has category gui.
RequiredSet gen_gui_pairs(const Ccfa& ccfa, const SeqGenOptions& options = {});

// S_eas: caller pairs [caller:entry, callee:entry] for each first callee of
// an API region, plus consecutive pairs [c1:exit, c2:entry] inside a region,
// computed on the async-stripped CCFA.
RequiredSet gen_event_api_sync(const Ccfa& ccfa);

// S_eaa: for each message-invoked callback c with event caller e and each
// event successor s of e's completion, both interleavings
//   [e:entry, e:exit, c:entry, c:exit, s:entry]
//   [e:entry, e:exit, s:entry, s:exit, c:entry]
RequiredSet gen_event_api_async(const Ccfa& ccfa);

// Independent oracle: exhaustively enumerates the symbol sequences of all
// partial runs from the initial state, up to max_symbols endpoint symbols,
// expanding each transition at most twice per run. Throws CcfaError once
// more than run_cap runs have been explored.
std::set<std::vector<EndpointSymbol>> enumerate_bounded_runs(
    const Ccfa& ccfa, std::size_t max_symbols, std::size_t run_cap = 1000000);

}  // namespace cbcov

#endif  // CBCOV_SEQGEN_H_
