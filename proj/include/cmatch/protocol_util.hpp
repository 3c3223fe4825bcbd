#pragma once

#include <deque>
#include <map>

#include "cmatch/sim.hpp"

namespace cmatch::detail {

/// Node program with one outbound FIFO per incident edge; at most one queued
/// message leaves per edge per round, which keeps every protocol built on it
/// within the bandwidth discipline by construction.
class QueuedProgram : public sim::NodeProgram {
  public:
    void round(sim::Env& env) final {
        on_round(env);
        flush(env);
        if (idle() && quiescent(env))
            env.passive();
    }

  protected:
    virtual void on_round(sim::Env& env) = 0;
    /// Extra condition a subclass may add before going passive.
    virtual bool quiescent(sim::Env&) { return true; }

    void push(EdgeId e, const sim::Message& msg) { queue_[e].push_back(msg); }
    bool idle() const {
        for (auto& [e, q] : queue_)
            if (!q.empty()) return false;
        return true;
    }
    void flush(sim::Env& env) {
        for (auto& [e, q] : queue_) {
            if (q.empty()) continue;
            env.send(e, q.front());
            q.pop_front();
        }
    }

  private:
    std::map<EdgeId, std::deque<sim::Message>> queue_;
};

}  // namespace cmatch::detail
