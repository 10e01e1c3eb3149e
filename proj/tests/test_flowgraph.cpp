#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "mscr/flowgraph.hpp"

using namespace mscr;

TEST_CASE("max-flow on a hand-built diamond") {
    FlowGraph g;
    uint32_t s = g.add_node("s");
    uint32_t a = g.add_node("a");
    uint32_t b = g.add_node("b");
    uint32_t t = g.add_node("t");
    g.source = s;
    g.sink = t;
    g.add_edge(s, a, 3);
    g.add_edge(s, b, 2);
    g.add_edge(a, t, 2);
    g.add_edge(b, t, 3);
    g.add_edge(a, b, 10);
    // 2 along s-a-t, 2 along s-b-t, and 1 rerouted s-a-b-t.
    CHECK(min_cut(g) == 5);
}

TEST_CASE("disconnected sink has zero cut") {
    FlowGraph g;
    uint32_t s = g.add_node("s");
    g.add_node("mid");
    uint32_t t = g.add_node("t");
    g.source = s;
    g.sink = t;
    g.add_edge(s, 1, 5);
    CHECK(min_cut(g) == 0);
}

TEST_CASE("aligned repair graph reproduces the deficient 8 < 9 cut") {
    FlowScenario s;  // k=3, d=4, t=2, beta=beta'=1
    s.aligned = true;
    CHECK(min_cut(build_repair_flow_graph(s)) == 8);
    s.aligned = false;
    CHECK(min_cut(build_repair_flow_graph(s)) >= 9);
}

TEST_CASE("single-failure graphs carry the full file") {
    for (uint32_t k : {2u, 3u}) {
        FlowScenario s;
        s.k = k;
        s.d = 4;
        s.t = 1;
        int64_t M = static_cast<int64_t>(k) * (s.d - k + s.t);
        s.aligned = false;
        CHECK(min_cut(build_repair_flow_graph(s)) >= M);
        s.aligned = true;  // no shared constraint is active for t=1
        CHECK(min_cut(build_repair_flow_graph(s)) >= M);
    }
}

TEST_CASE("k=2 coordinated repair is not cut-deficient") {
    FlowScenario s;
    s.k = 2;
    s.d = 3;
    s.t = 2;
    s.aligned = true;
    CHECK(min_cut(build_repair_flow_graph(s)) >= 6);  // M = 2 * 3
}

TEST_CASE("dot export names every node") {
    FlowScenario s;
    s.aligned = true;
    FlowGraph g = build_repair_flow_graph(s);
    std::string dot = g.to_dot();
    CHECK(dot.find("digraph") != std::string::npos);
    for (const auto& name : g.node_names) CHECK(dot.find(name) != std::string::npos);
}
