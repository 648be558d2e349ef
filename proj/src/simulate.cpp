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

#include "simulate.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <utility>

namespace cbcov {

Script parse_script(const std::string& text) {
  Script script;
  std::istringstream stream(text);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    std::istringstream fields(line);
    std::string keyword;
    if (!(fields >> keyword) || keyword.front() == '#') continue;
    Directive directive;
    if (keyword == "event") {
      directive.kind = Directive::Kind::Event;
      std::string label;
      std::getline(fields, label);
      std::size_t begin = label.find_first_not_of(" \t");
      if (begin == std::string::npos)
        throw SimError("event directive without label at line " +
                       std::to_string(line_number));
      std::size_t end = label.find_last_not_of(" \t\r");
      directive.label = label.substr(begin, end - begin + 1);
    } else if (keyword == "drain") {
      directive.kind = Directive::Kind::Drain;
    } else if (keyword == "choose") {
      directive.kind = Directive::Kind::Choose;
      std::string index_text;
      if (!(fields >> index_text))
        throw SimError("choose directive without index at line " +
                       std::to_string(line_number));
      auto [ptr, ec] = std::from_chars(
          index_text.data(), index_text.data() + index_text.size(),
          directive.index);
      if (ec != std::errc() || ptr != index_text.data() + index_text.size())
        throw SimError("malformed choose index at line " +
                       std::to_string(line_number));
    } else {
      throw SimError("unknown directive \"" + keyword + "\" at line " +
                     std::to_string(line_number));
    }
    script.directives.push_back(std::move(directive));
  }
  return script;
}

namespace {

// A branch available to the executing task: either follow a transition
// inline, or post the message-guarded block as a new task and continue past
// its matching exit.
struct Continuation {
  std::size_t transition = 0;
  bool post = false;
  std::size_t resume_exit = 0;  // post only
};

class Looper {
 public:
  Looper(const Ccfa& ccfa, const SimConfig& config)
      : ccfa_(ccfa),
        config_(config),
        out_(outgoing_index(ccfa)),
        state_(ccfa.initial),
        rng_(config.seed) {}

  Trace run() {
    if (config_.mode == SimConfig::Mode::Scripted) {
      while (cursor_ < config_.script.directives.size()) {
        const Directive& directive = config_.script.directives[cursor_++];
        switch (directive.kind) {
          case Directive::Kind::Event:
            post_event(directive.label);
            break;
          case Directive::Kind::Drain:
            drain();
            break;
          case Directive::Kind::Choose:
            throw SimError("unexpected choose outside a running task (directive " +
                           std::to_string(cursor_) + ")");
        }
      }
    } else {
      for (std::size_t step = 0; step < config_.steps; ++step) {
        std::vector<std::string> labels = enabled_event_labels();
        bool drainable = !queue_.empty() || !pending_.empty();
        std::size_t options = labels.size() + (drainable ? 1 : 0);
        if (options == 0) break;
        ++cursor_;
        std::size_t pick =
            std::uniform_int_distribution<std::size_t>(0, options - 1)(rng_);
        if (pick < labels.size()) {
          post_event(labels[pick]);
        } else {
          drain();
        }
      }
    }
    return std::move(trace_);
  }

 private:
  struct Task {
    std::size_t transition = 0;
    bool api_async = false;
  };

  [[noreturn]] void fail(const std::string& msg) const {
    throw SimError(msg + " (directive " + std::to_string(cursor_) + ")");
  }

  std::vector<std::string> enabled_event_labels() const {
    std::vector<std::string> labels;
    auto oit = out_.find(state_);
    if (oit == out_.end()) return labels;
    for (std::size_t ti : oit->second) {
      const Transition& t = ccfa_.transitions[ti];
      if (t.is_entry() && t.delivery == Delivery::Async &&
          t.guard.kind == Guard::Kind::ExternalEvent &&
          std::find(labels.begin(), labels.end(), t.guard.label) == labels.end())
        labels.push_back(t.guard.label);
    }
    return labels;
  }

  void post_event(const std::string& label) {
    auto oit = out_.find(state_);
    if (oit != out_.end()) {
      for (std::size_t ti : oit->second) {
        const Transition& t = ccfa_.transitions[ti];
        if (t.is_entry() && t.delivery == Delivery::Async &&
            t.guard.kind == Guard::Kind::ExternalEvent && t.guard.label == label) {
          queue_.push_back({ti, false});
          // A deferred task waits exactly until the next event arrives.
          flush_pending(/*deferred_only=*/true);
          return;
        }
      }
    }
    fail("event \"" + label + "\" not enabled at state \"" + state_ + "\"");
  }

  void flush_pending(bool deferred_only) {
    std::vector<std::pair<std::size_t, bool>> keep;
    for (const auto& [transition, deferred] : pending_) {
      if (deferred_only ? deferred : !deferred) {
        queue_.push_back({transition, true});
      } else {
        keep.push_back({transition, deferred});
      }
    }
    pending_ = std::move(keep);
  }

  void drain() {
    flush_pending(/*deferred_only=*/false);
    if (queue_.empty()) flush_pending(/*deferred_only=*/true);
    if (queue_.empty()) fail("drain on empty queue");
    Task task = queue_.front();
    queue_.pop_front();
    dispatch(task);
  }

  const std::vector<std::size_t>& message_exits(std::size_t entry_index) {
    auto it = block_exits_.find(entry_index);
    if (it == block_exits_.end()) {
      it = block_exits_
               .emplace(entry_index, callback_block(ccfa_, entry_index).exits)
               .first;
    }
    return it->second;
  }

  std::vector<Continuation> continuations(const std::string& state) {
    std::vector<Continuation> conts;
    auto oit = out_.find(state);
    if (oit == out_.end()) return conts;
    for (std::size_t ti : oit->second) {
      const Transition& t = ccfa_.transitions[ti];
      if (t.is_entry() && t.delivery == Delivery::Async) {
        if (t.guard.kind == Guard::Kind::Message) {
          for (std::size_t exit_index : message_exits(ti))
            conts.push_back({ti, true, exit_index});
        }
        // Other asynchronous entries wait for their external event.
        continue;
      }
      conts.push_back({ti, false, 0});
    }
    return conts;
  }

  std::size_t choose(std::size_t branches) {
    if (config_.mode == SimConfig::Mode::Random)
      return std::uniform_int_distribution<std::size_t>(0, branches - 1)(rng_);
    if (cursor_ >= config_.script.directives.size())
      fail("branch point requires a choose directive");
    const Directive& directive = config_.script.directives[cursor_++];
    if (directive.kind != Directive::Kind::Choose)
      fail("branch point requires a choose directive");
    if (directive.index >= branches)
      fail("choose " + std::to_string(directive.index) + " out of range (" +
           std::to_string(branches) + " branches)");
    return directive.index;
  }

  bool defer_roll() {
    if (config_.mode != SimConfig::Mode::Random) return false;
    if (config_.defer_probability <= 0.0) return false;
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) <
           config_.defer_probability;
  }

  void emit(const EndpointSymbol& symbol) {
    trace_.records.push_back({timestamp_++, symbol.callback, symbol.point});
  }

  void dispatch(const Task& task) {
    const Transition& entry = ccfa_.transitions[task.transition];
    emit(*entry.endpoint());
    std::string state = entry.to;
    int depth = 1;
    std::size_t stale = 0;
    const std::size_t stale_cap = 2 * ccfa_.transitions.size() + 16;
    while (true) {
      std::vector<Continuation> conts = continuations(state);
      if (conts.empty()) {
        if (task.api_async && depth > 0)
          fail("asynchronous task stuck before its exit");
        break;
      }
      std::size_t pick = conts.size() == 1 ? 0 : choose(conts.size());
      const Continuation& cont = conts[pick];
      const Transition& t = ccfa_.transitions[cont.transition];
      if (cont.post) {
        pending_.push_back({cont.transition, defer_roll()});
        state = ccfa_.transitions[cont.resume_exit].to;
        ++stale;
      } else {
        if (const auto* symbol = t.endpoint()) {
          emit(*symbol);
          depth += symbol->point == Point::Entry ? 1 : -1;
          stale = 0;
        } else {
          ++stale;
        }
        state = t.to;
        if (task.api_async && depth == 0) break;
      }
      if (stale > stale_cap) fail("task makes no progress");
    }
    // A posted task runs detached; only event tasks move the looper state.
    if (!task.api_async) state_ = state;
  }

  const Ccfa& ccfa_;
  const SimConfig& config_;
  std::map<std::string, std::vector<std::size_t>> out_;
  std::string state_;
  std::deque<Task> queue_;
  std::vector<std::pair<std::size_t, bool>> pending_;  // (transition, deferred)
  std::map<std::size_t, std::vector<std::size_t>> block_exits_;
  Trace trace_;
  std::int64_t timestamp_ = 0;
  std::size_t cursor_ = 0;
  std::mt19937_64 rng_;
};

}  // namespace

Trace simulate(const Ccfa& ccfa, const SimConfig& config) {
  if (config.defer_probability < 0.0 || config.defer_probability > 1.0)
    throw SimError("defer probability must be within [0, 1]");
  Looper looper(ccfa, config);
  Trace trace = looper.run();
  trace.source = "simulated";
  return trace;
}

namespace {

// Replay explores every schedule the looper could take: which events fire,
// how drains interleave, how branch points resolve and whether each posted
// task defers. Configurations are memoized; emission order must match the
// trace exactly.
class Replayer {
 public:
  Replayer(const Ccfa& ccfa, const Trace& trace, std::size_t config_cap)
      : ccfa_(ccfa),
        trace_(trace),
        config_cap_(config_cap),
        out_(outgoing_index(ccfa)) {
    remaining_entries_.resize(trace.records.size() + 1, 0);
    for (std::size_t i = trace.records.size(); i-- > 0;) {
      remaining_entries_[i] = remaining_entries_[i + 1] +
                              (trace.records[i].point == Point::Entry ? 1 : 0);
    }
  }

  bool run() {
    if (trace_.records.empty()) return true;
    Config initial{ccfa_.initial, {}, {}, 0};
    visited_.insert(initial);
    frontier_.push_back(initial);
    while (!frontier_.empty()) {
      Config config = frontier_.front();
      frontier_.pop_front();
      if (expand(config)) return true;
    }
    return false;
  }

 private:
  struct QueuedTask {
    std::size_t transition = 0;
    bool api_async = false;
    auto operator<=>(const QueuedTask&) const = default;
  };

  struct Config {
    std::string state;
    std::vector<QueuedTask> queue;
    std::vector<std::pair<std::size_t, bool>> pending;
    std::size_t pos = 0;
    auto operator<=>(const Config&) const = default;
  };

  // Result of running one dispatch against the trace.
  struct DispatchEnd {
    std::size_t pos = 0;
    std::vector<std::size_t> posted;
    std::string end_state;  // empty: detached task, looper state unchanged
    auto operator<=>(const DispatchEnd&) const = default;
  };

  void bump() {
    if (++explored_ > config_cap_)
      throw SimError("replay search cap exceeded (" +
                     std::to_string(config_cap_) + " configurations)");
  }

  bool offer(Config config) {
    bump();
    if (config.pos == trace_.records.size()) return true;
    if (visited_.insert(config).second) frontier_.push_back(std::move(config));
    return false;
  }

  bool expand(const Config& config) {
    // Fire any enabled external event; the looper takes the first transition
    // carrying a label, so replay does too.
    if (config.queue.size() + config.pending.size() <
        remaining_entries_[config.pos]) {
      auto oit = out_.find(config.state);
      std::set<std::string> labels_seen;
      if (oit != out_.end()) {
        for (std::size_t ti : oit->second) {
          const Transition& t = ccfa_.transitions[ti];
          if (!t.is_entry() || t.delivery != Delivery::Async ||
              t.guard.kind != Guard::Kind::ExternalEvent)
            continue;
          if (!labels_seen.insert(t.guard.label).second) continue;
          Config next = config;
          next.queue.push_back({ti, false});
          std::vector<std::pair<std::size_t, bool>> keep;
          for (const auto& [transition, deferred] : next.pending) {
            if (deferred) {
              next.queue.push_back({transition, true});
            } else {
              keep.push_back({transition, deferred});
            }
          }
          next.pending = std::move(keep);
          if (offer(std::move(next))) return true;
        }
      }
    }

    // Drain: committed pending tasks join the queue ahead of the pop.
    std::vector<QueuedTask> queue = config.queue;
    std::vector<std::pair<std::size_t, bool>> leftover;
    for (const auto& [transition, deferred] : config.pending) {
      if (deferred) {
        leftover.push_back({transition, deferred});
      } else {
        queue.push_back({transition, true});
      }
    }
    if (queue.empty()) {
      for (const auto& [transition, deferred] : leftover) {
        (void)deferred;
        queue.push_back({transition, true});
      }
      leftover.clear();
    }
    if (queue.empty()) return false;
    QueuedTask head = queue.front();
    queue.erase(queue.begin());

    std::set<DispatchEnd> ends;
    explore_dispatch(head, config.pos, ends);
    for (const DispatchEnd& end : ends) {
      // Each posted task either defers or not; enumerate both.
      std::size_t variants = std::size_t{1} << end.posted.size();
      for (std::size_t mask = 0; mask < variants; ++mask) {
        Config next;
        next.state = end.end_state.empty() ? config.state : end.end_state;
        next.queue = queue;
        next.pending = leftover;
        for (std::size_t k = 0; k < end.posted.size(); ++k)
          next.pending.push_back({end.posted[k], (mask >> k & 1) != 0});
        next.pos = end.pos;
        if (offer(std::move(next))) return true;
      }
    }
    return false;
  }

  const std::vector<std::size_t>& message_exits(std::size_t entry_index) {
    auto it = block_exits_.find(entry_index);
    if (it == block_exits_.end()) {
      it = block_exits_
               .emplace(entry_index, callback_block(ccfa_, entry_index).exits)
               .first;
    }
    return it->second;
  }

  void explore_dispatch(const QueuedTask& task, std::size_t pos,
                        std::set<DispatchEnd>& ends) {
    const Transition& entry = ccfa_.transitions[task.transition];
    if (pos >= trace_.records.size()) return;
    const TraceRecord& record = trace_.records[pos];
    if (record.callback != entry.endpoint()->callback ||
        record.point != Point::Entry)
      return;
    std::vector<std::size_t> posted;
    walk(task, entry.to, 1, pos + 1, posted, 0, ends);
  }

  void walk(const QueuedTask& task, const std::string& state, int depth,
            std::size_t pos, std::vector<std::size_t>& posted,
            std::size_t stale, std::set<DispatchEnd>& ends) {
    bump();
    const std::size_t stale_cap = 2 * ccfa_.transitions.size() + 16;
    if (stale > stale_cap) return;

    std::vector<Continuation> conts;
    auto oit = out_.find(state);
    if (oit != out_.end()) {
      for (std::size_t ti : oit->second) {
        const Transition& t = ccfa_.transitions[ti];
        if (t.is_entry() && t.delivery == Delivery::Async) {
          if (t.guard.kind == Guard::Kind::Message) {
            for (std::size_t exit_index : message_exits(ti))
              conts.push_back({ti, true, exit_index});
          }
          continue;
        }
        conts.push_back({ti, false, 0});
      }
    }
    if (conts.empty()) {
      if (!task.api_async || depth == 0)
        ends.insert({pos, posted, task.api_async ? "" : state});
      return;
    }
    for (const Continuation& cont : conts) {
      const Transition& t = ccfa_.transitions[cont.transition];
      if (cont.post) {
        posted.push_back(cont.transition);
        walk(task, ccfa_.transitions[cont.resume_exit].to, depth, pos, posted,
             stale + 1, ends);
        posted.pop_back();
        continue;
      }
      if (const auto* symbol = t.endpoint()) {
        if (pos >= trace_.records.size()) continue;  // mid-task truncation
        const TraceRecord& record = trace_.records[pos];
        if (record.callback != symbol->callback || record.point != symbol->point)
          continue;
        int next_depth = depth + (symbol->point == Point::Entry ? 1 : -1);
        if (task.api_async && next_depth == 0) {
          ends.insert({pos + 1, posted, ""});
          continue;
        }
        walk(task, t.to, next_depth, pos + 1, posted, 0, ends);
      } else {
        walk(task, t.to, depth, pos, posted, stale + 1, ends);
      }
    }
  }

  const Ccfa& ccfa_;
  const Trace& trace_;
  std::size_t config_cap_;
  std::map<std::string, std::vector<std::size_t>> out_;
  std::vector<std::size_t> remaining_entries_;
  std::map<std::size_t, std::vector<std::size_t>> block_exits_;
  std::set<Config> visited_;
  std::deque<Config> frontier_;
  std::size_t explored_ = 0;
};

}  // namespace

bool replay_check(const Ccfa& ccfa, const Trace& trace, std::size_t config_cap) {
  Replayer replayer(ccfa, trace, config_cap);
  return replayer.run();
}

}  // namespace cbcov
