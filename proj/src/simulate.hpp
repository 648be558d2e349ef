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

#ifndef CBCOV_SIMULATE_H_
#define CBCOV_SIMULATE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ccfa.hpp"
#include "trace.hpp"

namespace cbcov {

class SimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Script directives drive the looper: Event enqueues the matching external
// event's task, Drain dispatches the queue head, Choose resolves the next
// branch point hit while a task executes.
struct Directive {
  enum class Kind { Event, Drain, Choose };

  Kind kind = Kind::Drain;
  std::string label;       // Event only
  std::size_t index = 0;   // Choose only
};

struct Script {
  std::vector<Directive> directives;
};

// One directive per line: `event <label>` | `drain` | `choose <index>`.
// Blank lines and lines starting with '#' are skipped.
Script parse_script(const std::string& text);

struct SimConfig {
  enum class Mode { Scripted, Random };

  Mode mode = Mode::Scripted;
  Script script;                  // Scripted
  std::uint64_t seed = 0;         // Random
  std::size_t steps = 0;          // Random: number of top-level directives
  double defer_probability = 0.0; // Random: chance a posted task waits for
                                  // the next external event before queueing
};

// Single-threaded looper semantics over the CCFA. A dispatched task follows
// synchronous transitions and epsilon regions inline; message-guarded
// callbacks it passes are posted as new tasks, which enter the queue at the
// next drain (later event directives therefore run first). Emits records
// with timestamps 0,1,2,... in dispatch order. Deterministic for a fixed
// config. Throws SimError with the directive index on a disabled event,
// a drain of an empty queue, or an out-of-range choose.
Trace simulate(const Ccfa& ccfa, const SimConfig& config);

// True iff the record sequence is producible by some schedule under the
// queue semantics; decided by memoized nondeterministic replay against the
// trace. Throws SimError once more than config_cap configurations have been
// explored.
bool replay_check(const Ccfa& ccfa, const Trace& trace,
                  std::size_t config_cap = 1000000);

}  // namespace cbcov

#endif  // CBCOV_SIMULATE_H_
