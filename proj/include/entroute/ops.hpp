#pragma once

#include <cstdint>

namespace entroute {

// Instrumentation counters shared by the routing schemes. The headline count
// n_o is scheme-specific: greedy step total for the decentralized scheme,
// edge relaxation total for the Dijkstra-based baselines.
struct OpCounter {
    std::int64_t relaxations = 0;
    std::int64_t queue_ops = 0;
    std::int64_t greedy_steps = 0;
    std::int64_t n_o = 0;

    OpCounter& operator+=(const OpCounter& other) {
        relaxations += other.relaxations;
        queue_ops += other.queue_ops;
        greedy_steps += other.greedy_steps;
        n_o += other.n_o;
        return *this;
    }
};

} // namespace entroute
