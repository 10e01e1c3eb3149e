#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mscr/errors.hpp"

namespace mscr {

constexpr int64_t kInfiniteCapacity = int64_t{1} << 40;

/// Capacitated directed graph of a repair scenario (information flow graph).
struct FlowGraph {
    struct Edge {
        uint32_t from, to;
        int64_t cap;
    };
    std::vector<std::string> node_names;
    std::vector<Edge> edges;
    uint32_t source = 0;
    uint32_t sink = 0;

    uint32_t add_node(std::string name);
    void add_edge(uint32_t from, uint32_t to, int64_t cap);
    std::string to_dot() const;
};

/// Max-flow (BFS augmenting paths) = min source-to-collector cut capacity.
int64_t min_cut(const FlowGraph& g);

/// A repair of t simultaneous failures (the first t systematic devices)
/// helped by all d live devices, with the data collector contacting the t
/// newcomers plus k - t live devices (redundancy devices first, so the
/// collector is not the aligned device itself).
struct FlowScenario {
    uint32_t k = 3;
    uint32_t d = 4;
    uint32_t t = 2;
    int64_t beta = 1;
    int64_t beta_prime = 1;
    /// When set, the first live systematic device must send the same beta
    /// units to every newcomer: its collect edges route through one shared
    /// capacity-beta node.
    bool aligned = false;
};

FlowGraph build_repair_flow_graph(const FlowScenario& s);

}  // namespace mscr
