#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "mscr/sim.hpp"

using namespace mscr;

namespace {
Cluster gf7_cluster(const Row& data) {
    return Cluster::create(CodeParams::make(3), Field::prime(7, 3), data);
}
const Row kData{1, 2, 3, 4, 5, 6};
}  // namespace

TEST_CASE("creation encodes n blocks of alpha symbols") {
    Cluster c = gf7_cluster(kData);
    for (uint32_t m = 0; m < 5; ++m) {
        CHECK(c.alive(m));
        CHECK(c.block(m).size() == 3);
    }
    CHECK(c.block(2) == Row{5, 3, 1});
    CHECK(c.failed_devices().empty());
    CHECK(c.event_log().size() == 1);
    CHECK(c.event_log()[0].kind == "encode");
    CHECK_THROWS_AS(Cluster::create(CodeParams::make(3), Field::prime(7, 3), Row{}), Error);
}

TEST_CASE("failure injection guards") {
    Cluster c = gf7_cluster(kData);
    c.fail_devices({0, 1});
    CHECK(c.failed_devices() == std::vector<uint32_t>{0, 1});
    CHECK(!c.alive(0));
    CHECK_THROWS_AS(c.fail_devices({0}), Error);  // already failed
    CHECK_THROWS_AS(c.fail_devices({2}), Error);  // would exceed n - d down
    Cluster c2 = gf7_cluster(kData);
    CHECK_THROWS_AS(c2.fail_devices({0, 1, 2}), Error);
}

TEST_CASE("pair repair restores state and reports 8 vs 9 symbols") {
    Cluster c = gf7_cluster(kData);
    c.fail_devices({1, 3});
    BandwidthReport rep = c.run_repair();
    CHECK(rep.transfers == 8);
    CHECK(rep.naive_baseline == 9);
    CHECK(rep.savings_ratio == doctest::Approx(8.0 / 9.0));
    CHECK(c.failed_devices().empty());
    CHECK(c.exactness_violations() == 0);
    CHECK(c.decode_from(0, 4) == kData);
}

TEST_CASE("single repair costs alpha+1 and a no-op repair is free") {
    Cluster c = gf7_cluster(kData);
    c.fail_devices({4});
    BandwidthReport rep = c.run_repair();
    CHECK(rep.transfers == 4);
    CHECK(c.exactness_violations() == 0);
    BandwidthReport noop = c.run_repair();
    CHECK(noop.transfers == 0);
}

TEST_CASE("decode_from requires live devices") {
    Cluster c = gf7_cluster(kData);
    c.fail_devices({2});
    CHECK_THROWS_AS(c.decode_from(2, 3), Error);
    CHECK(c.decode_from(0, 1) == kData);
}

TEST_CASE("churn preserves exactness and accounts bandwidth") {
    Cluster c = gf7_cluster(kData);
    ChurnSummary s = c.churn(100, 42);
    CHECK(s.rounds == 100);
    CHECK(s.violations == 0);
    CHECK(s.pair_repairs + s.single_repairs == 100);
    CHECK(s.total_transfers == s.pair_repairs * 8 + s.single_repairs * 4);
    CHECK(c.decode_from(0, 1) == kData);
    CHECK(c.exactness_violations() == 0);
}

TEST_CASE("churn is seed-deterministic") {
    Cluster a = gf7_cluster(kData);
    Cluster b = gf7_cluster(kData);
    CHECK(a.churn(50, 7).to_text() == b.churn(50, 7).to_text());
    Cluster c = gf7_cluster(kData);
    CHECK(c.churn(50, 8).to_text() != a.churn(0, 7).to_text());
}

TEST_CASE("zero rounds yields an empty summary") {
    Cluster c = gf7_cluster(kData);
    ChurnSummary s = c.churn(0, 1);
    CHECK(s.rounds == 0);
    CHECK(s.total_transfers == 0);
}

TEST_CASE("event log lists one event per line with transfer counts") {
    Cluster c = gf7_cluster(kData);
    c.fail_devices({0});
    c.run_repair();
    std::string log = c.event_log_text();
    CHECK(log.find("encode") != std::string::npos);
    CHECK(log.find("fail") != std::string::npos);
    CHECK(log.find("repair") != std::string::npos);
    CHECK(log.find("transfers=4") != std::string::npos);
}
