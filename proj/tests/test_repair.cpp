#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "mscr/repair.hpp"

using namespace mscr;

namespace {
Code gf7_fixture() { return Code::build(CodeParams::make(3), Field::prime(7, 3)); }

std::vector<Row> stored_blocks(const Code& c, const Row& data) {
    std::vector<Row> stored;
    for (const auto& blk : c.encode(data)) stored.push_back(blk.symbols);
    return stored;
}
}  // namespace

TEST_CASE("alignment vector validation") {
    auto f = Field::prime(7, 3);
    AlignmentVector sigma = AlignmentVector::sigma(3);
    CHECK(sigma.z == Row{1, 1, 1});
    CHECK_NOTHROW(sigma.validate(*f, 3));
    CHECK_THROWS_AS((AlignmentVector{{1, 0, 1}}).validate(*f, 3), Error);
    CHECK_THROWS_AS((AlignmentVector{{1, 1}}).validate(*f, 3), Error);
    CHECK_THROWS_AS((AlignmentVector{{1, 9, 1}}).validate(*f, 3), FieldError);
}

TEST_CASE("repair rows match the closed form for the systematic pair") {
    Code c = gf7_fixture();
    auto eq = c.change_of_variables(0, 1);
    AlignmentVector sigma = AlignmentVector::sigma(3);
    // Redundancy device i sends (w^-i, ..., w^-(i+alpha-1)) r_i to the first
    // device: over GF(7) with omega=3 the inverse powers are 1, 5, 4.
    CHECK(repair_row_for(eq, 2, true, sigma) == Row{1, 5, 4});
    CHECK(repair_row_for(eq, 3, true, sigma) == Row{5, 4, 1});
    CHECK(repair_row_for(eq, 4, true, sigma) == Row{4, 1, 5});
    // ... and sigma itself to the second device (A_i = I).
    CHECK(repair_row_for(eq, 2, false, sigma) == Row{1, 1, 1});

    // Scaling z scales the rows.
    AlignmentVector z2{{2, 2, 2}};
    CHECK(repair_row_for(eq, 2, true, z2) == Row{2, 3, 1});
}

TEST_CASE("coordination row matches the closed form for the systematic pair") {
    Code c = gf7_fixture();
    auto eq = c.change_of_variables(0, 1);
    AlignmentVector sigma = AlignmentVector::sigma(3);
    PairRepairPlan plan = plan_pair_repair(eq, sigma);
    // Received by the first device: (omega^0 + omega^1 + omega^2)^-1 sigma
    // = 6^-1 sigma = 6 sigma over GF(7); received by the second device:
    // (omega^-0 + omega^-1 + omega^-2)^-1 sigma = 3^-1 sigma = 5 sigma.
    CHECK(plan.coordination_rows[0] == Row{6, 6, 6});
    CHECK(plan.coordination_rows[1] == Row{5, 5, 5});
    CHECK(plan.z_used[0] == sigma.z);
    CHECK(plan.z_used[1] == sigma.z);
    // Solved row satisfies v0 * stack = z exactly.
    const Field& f = *c.field();
    for (uint32_t j = 0; j < 3; ++j) {
        uint32_t acc = 0;
        for (size_t i = 0; i < 3; ++i)
            acc = f.add(acc, f.mul(plan.coordination_rows[0][i], plan.desired_rows[1][i][j]));
        CHECK(acc == 1);
    }
}

TEST_CASE("recover solves the full fixture") {
    Code c = gf7_fixture();
    Row data{1, 2, 3, 4, 5, 6};
    auto stored = stored_blocks(c, data);
    RepairTranscript tr = repair_pair(c, {0, 1}, stored);
    CHECK(tr.recovered[0].symbols == Row{1, 2, 3});
    CHECK(tr.recovered[1].symbols == Row{4, 5, 6});
    CHECK(tr.transfer_count() == 8);
    CHECK(tr.collects.size() == 2);
    CHECK(tr.coordinations.size() == 2);

    // Zero data: zero recovery and all transmitted symbols zero.
    auto zero = stored_blocks(c, Row(6, 0));
    RepairTranscript trz = repair_pair(c, {0, 1}, zero);
    CHECK(trz.recovered[0].symbols == Row{0, 0, 0});
    for (const auto& round : trz.collects)
        for (const auto& t : round.contributions) CHECK(t.symbol == 0);
}

TEST_CASE("recovered interference aggregate equals z * other block") {
    Code c = gf7_fixture();
    Row data{1, 2, 3, 4, 5, 6};
    auto stored = stored_blocks(c, data);
    auto eq = c.change_of_variables(0, 1);
    AlignmentVector sigma = AlignmentVector::sigma(3);
    PairRepairPlan plan = plan_pair_repair(eq, sigma);
    Row symbols;
    for (size_t i = 0; i < plan.helpers.size(); ++i)
        symbols.push_back(dot(*c.field(), plan.repair_rows[0][i], stored[plan.helpers[i]]));
    Row collected_b;
    for (size_t i = 0; i < plan.helpers.size(); ++i)
        collected_b.push_back(dot(*c.field(), plan.repair_rows[1][i], stored[plan.helpers[i]]));
    symbols.push_back(dot(*c.field(), plan.coordination_rows[0], collected_b));
    std::vector<Row> rows = plan.desired_rows[0];
    rows.push_back(plan.coordination_desired[0]);
    Recovery rec = recover(c.field(), rows, symbols);
    CHECK(rec.block == Row{1, 2, 3});
    CHECK(rec.interference == 1);  // sigma * b = 4+5+6 = 15 = 1 mod 7

    CHECK_THROWS_AS(recover(c.field(), rows, Row{1, 2}), Error);
}

TEST_CASE("every failure pair repairs exactly") {
    for (auto field : {Field::prime(7, 3), Field::gf256()}) {
        Code c = Code::build(CodeParams::make(3), field);
        std::mt19937_64 rng(17);
        Row data(6);
        for (auto& v : data) v = static_cast<uint32_t>(rng() % field->order());
        auto stored = stored_blocks(c, data);
        for (uint32_t f1 = 0; f1 < 5; ++f1) {
            for (uint32_t f2 = f1 + 1; f2 < 5; ++f2) {
                RepairTranscript tr = repair_pair(c, {f1, f2}, stored);
                CHECK(tr.recovered[0].symbols == stored[f1]);
                CHECK(tr.recovered[1].symbols == stored[f2]);
                CHECK(tr.transfer_count() == 8);
            }
        }
    }
}

TEST_CASE("recovered blocks are invariant under the alignment vector") {
    Code c = gf7_fixture();
    Row data{2, 0, 6, 1, 3, 5};
    auto stored = stored_blocks(c, data);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        AlignmentVector z;
        z.z.resize(3);
        for (auto& v : z.z) v = 1 + static_cast<uint32_t>(rng() % 6);
        uint32_t f1 = static_cast<uint32_t>(rng() % 5);
        uint32_t f2 = (f1 + 1 + static_cast<uint32_t>(rng() % 4)) % 5;
        RepairTranscript tr = repair_pair(c, {f1, f2}, stored, z);
        CHECK(tr.recovered[0].symbols == stored[f1]);
        CHECK(tr.recovered[1].symbols == stored[f2]);
    }
}

TEST_CASE("helpers must be exactly the live devices") {
    Code c = gf7_fixture();
    auto stored = stored_blocks(c, Row{1, 2, 3, 4, 5, 6});
    CHECK_NOTHROW(repair_pair(c, {0, 1}, stored, {}, std::vector<uint32_t>{2, 3, 4}));
    CHECK_THROWS_AS(repair_pair(c, {0, 1}, stored, {}, std::vector<uint32_t>{1, 3, 4}), Error);
}

TEST_CASE("single repair restores each device with alpha+1 transfers") {
    for (auto field : {Field::prime(7, 3), Field::gf256()}) {
        Code c = Code::build(CodeParams::make(3), field);
        std::mt19937_64 rng(29);
        Row data(6);
        for (auto& v : data) v = static_cast<uint32_t>(rng() % field->order());
        auto stored = stored_blocks(c, data);
        for (uint32_t fdev = 0; fdev < 5; ++fdev) {
            RepairTranscript tr = repair_single(c, fdev, stored);
            CHECK(tr.recovered[0].symbols == stored[fdev]);
            CHECK(tr.transfer_count() == 4);
            CHECK(tr.coordinations.empty());
        }
    }
}

TEST_CASE("single repair accepts an explicit partner") {
    Code c = gf7_fixture();
    auto stored = stored_blocks(c, Row{1, 2, 3, 4, 5, 6});
    RepairTranscript tr = repair_single(c, 0, stored, {}, 3);
    CHECK(tr.recovered[0].symbols == Row{1, 2, 3});
    CHECK_THROWS_AS(repair_single(c, 0, stored, {}, 0), Error);
}

TEST_CASE("transcript text is one transfer per line") {
    Code c = gf7_fixture();
    auto stored = stored_blocks(c, Row{1, 2, 3, 4, 5, 6});
    RepairTranscript tr = repair_pair(c, {0, 1}, stored);
    std::string text = tr.to_text();
    CHECK(std::count(text.begin(), text.end(), '\n') == 8);
    CHECK(text.find("collect 2 0 1,5,4 ") == 0);
    CHECK(text.find("coordinate") != std::string::npos);
}
