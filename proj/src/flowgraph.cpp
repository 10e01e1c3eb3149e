#include "mscr/flowgraph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace mscr {

uint32_t FlowGraph::add_node(std::string name) {
    node_names.push_back(std::move(name));
    return static_cast<uint32_t>(node_names.size() - 1);
}

void FlowGraph::add_edge(uint32_t from, uint32_t to, int64_t cap) {
    if (from >= node_names.size() || to >= node_names.size()) throw Error("bad edge endpoint");
    if (cap < 0) throw Error("negative capacity");
    edges.push_back({from, to, cap});
}

std::string FlowGraph::to_dot() const {
    std::ostringstream os;
    os << "digraph ifg {\n";
    for (size_t i = 0; i < node_names.size(); ++i)
        os << "  n" << i << " [label=\"" << node_names[i] << "\"];\n";
    for (const auto& e : edges) {
        os << "  n" << e.from << " -> n" << e.to << " [label=\"";
        if (e.cap >= kInfiniteCapacity)
            os << "inf";
        else
            os << e.cap;
        os << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

int64_t min_cut(const FlowGraph& g) {
    size_t n = g.node_names.size();
    // Residual adjacency: paired forward/backward edge slots.
    struct REdge {
        uint32_t to;
        int64_t cap;
        size_t rev;
    };
    std::vector<std::vector<REdge>> adj(n);
    for (const auto& e : g.edges) {
        adj[e.from].push_back({e.to, e.cap, adj[e.to].size()});
        adj[e.to].push_back({e.from, 0, adj[e.from].size() - 1});
    }

    int64_t flow = 0;
    while (true) {
        std::vector<int> prev_node(n, -1);
        std::vector<size_t> prev_edge(n, 0);
        std::queue<uint32_t> q;
        q.push(g.source);
        prev_node[g.source] = static_cast<int>(g.source);
        while (!q.empty() && prev_node[g.sink] == -1) {
            uint32_t u = q.front();
            q.pop();
            for (size_t i = 0; i < adj[u].size(); ++i) {
                const REdge& e = adj[u][i];
                if (e.cap > 0 && prev_node[e.to] == -1) {
                    prev_node[e.to] = static_cast<int>(u);
                    prev_edge[e.to] = i;
                    q.push(e.to);
                }
            }
        }
        if (prev_node[g.sink] == -1) break;
        int64_t aug = kInfiniteCapacity;
        for (uint32_t v = g.sink; v != g.source; v = static_cast<uint32_t>(prev_node[v]))
            aug = std::min(aug, adj[prev_node[v]][prev_edge[v]].cap);
        for (uint32_t v = g.sink; v != g.source; v = static_cast<uint32_t>(prev_node[v])) {
            REdge& e = adj[prev_node[v]][prev_edge[v]];
            e.cap -= aug;
            adj[v][e.rev].cap += aug;
        }
        flow += aug;
    }
    return flow;
}

FlowGraph build_repair_flow_graph(const FlowScenario& s) {
    if (s.t < 1 || s.t > s.k) throw Error("scenario requires 1 <= t <= k");
    if (s.d <= s.k - s.t) throw Error("not enough live devices to act as helpers");
    uint32_t n = s.d + s.t;
    uint32_t alpha_units = s.d - s.k + s.t;  // alpha in units of beta
    int64_t alpha = alpha_units * s.beta;

    FlowGraph g;
    g.source = g.add_node("S");
    uint32_t live_systematics = s.k - s.t;
    uint32_t redundancy_count = n - s.k;

    struct Dev {
        uint32_t in, out;
        bool systematic;
    };
    std::vector<Dev> live;
    for (uint32_t i = 0; i < live_systematics; ++i) {
        uint32_t in = g.add_node("sys" + std::to_string(s.t + i) + "_in");
        uint32_t out = g.add_node("sys" + std::to_string(s.t + i) + "_out");
        live.push_back({in, out, true});
    }
    for (uint32_t i = 0; i < redundancy_count; ++i) {
        uint32_t in = g.add_node("red" + std::to_string(i) + "_in");
        uint32_t out = g.add_node("red" + std::to_string(i) + "_out");
        live.push_back({in, out, false});
    }
    for (const Dev& dev : live) {
        g.add_edge(g.source, dev.in, kInfiniteCapacity);
        g.add_edge(dev.in, dev.out, alpha);
    }

    std::vector<Dev> newcomers;
    for (uint32_t i = 0; i < s.t; ++i) {
        uint32_t in = g.add_node("x" + std::to_string(i) + "_in");
        uint32_t out = g.add_node("x" + std::to_string(i) + "_out");
        g.add_edge(in, out, alpha);
        newcomers.push_back({in, out, false});
    }

    // Collect edges: every live device sends beta to every newcomer. The
    // aligned interfering systematic device routes through one shared
    // capacity-beta node instead.
    for (size_t i = 0; i < live.size(); ++i) {
        if (s.aligned && s.t >= 2 && live[i].systematic && i == 0) {
            uint32_t shared = g.add_node("aligned");
            g.add_edge(live[i].out, shared, s.beta);
            for (const Dev& x : newcomers) g.add_edge(shared, x.in, s.beta);
        } else {
            for (const Dev& x : newcomers) g.add_edge(live[i].out, x.in, s.beta);
        }
    }
    // Coordination: beta' each direction between newcomers.
    for (size_t i = 0; i < newcomers.size(); ++i)
        for (size_t j = 0; j < newcomers.size(); ++j)
            if (i != j) g.add_edge(newcomers[i].in, newcomers[j].in, s.beta_prime);

    // Data collector: the t newcomers plus k - t live devices, redundancy
    // devices first so the aligned device is not contacted directly.
    g.sink = g.add_node("DC");
    for (const Dev& x : newcomers) g.add_edge(x.out, g.sink, kInfiniteCapacity);
    uint32_t wanted = s.k - s.t;
    std::vector<size_t> order;
    for (size_t i = 0; i < live.size(); ++i)
        if (!live[i].systematic) order.push_back(i);
    for (size_t i = 0; i < live.size(); ++i)
        if (live[i].systematic) order.push_back(i);
    for (uint32_t i = 0; i < wanted; ++i) g.add_edge(live[order[i]].out, g.sink, kInfiniteCapacity);
    return g;
}

}  // namespace mscr
