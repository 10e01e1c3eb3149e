// Acceptance gate: one line per criterion, [PASS]/[FAIL], nonzero exit if
// any criterion fails. Every check is exact (no tolerances) and each
// criterion carries a pinned wall-clock budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mscr/analyzer.hpp"
#include "mscr/flowgraph.hpp"
#include "mscr/sim.hpp"

using namespace mscr;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void criterion(int index, const std::string& name, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    auto t0 = Clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (secs > budget_seconds) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::printf("[%s] criterion %d: %s (%.2fs/%.0fs)%s%s\n", ok ? "PASS" : "FAIL", index,
                name.c_str(), secs, budget_seconds, detail.empty() ? "" : " -- ",
                detail.c_str());
    if (!ok) ++g_failures;
}

std::vector<Row> stored_blocks(const Code& c, const Row& data) {
    std::vector<Row> stored;
    for (const auto& blk : c.encode(data)) stored.push_back(blk.symbols);
    return stored;
}

Row random_data(const Code& c, std::mt19937_64& rng) {
    Row data(c.params().file_symbols);
    for (auto& v : data) v = static_cast<uint32_t>(rng() % c.field()->order());
    return data;
}

bool mds_property(std::string& detail) {
    std::mt19937_64 rng(1001);
    for (uint32_t d : {3u, 5u}) {
        for (auto field : {Field::prime(7, 3), Field::gf256()}) {
            Code c = Code::build(CodeParams::make(d), field);
            uint32_t n = c.params().n;
            for (int file = 0; file < 100; ++file) {
                Row data = random_data(c, rng);
                auto blocks = c.encode(data);
                for (uint32_t x = 0; x < n; ++x) {
                    for (uint32_t y = x + 1; y < n; ++y) {
                        if (c.decode(blocks[x], blocks[y]) != data) {
                            detail = "decode mismatch at d=" + std::to_string(d) + " pair {" +
                                     std::to_string(x) + "," + std::to_string(y) + "} over " +
                                     field->describe();
                            return false;
                        }
                    }
                }
            }
        }
    }
    detail = "2 geometries x 2 fields x 100 files x all pairs";
    return true;
}

bool exact_pair_repair(std::string& detail) {
    std::mt19937_64 rng(1002);
    size_t repairs = 0;
    for (auto field : {Field::prime(7, 3), Field::gf256()}) {
        Code c = Code::build(CodeParams::make(3), field);
        Row data = random_data(c, rng);
        auto stored = stored_blocks(c, data);
        for (uint32_t f1 = 0; f1 < 5; ++f1) {
            for (uint32_t f2 = f1 + 1; f2 < 5; ++f2) {
                RepairTranscript tr = repair_pair(c, {f1, f2}, stored);
                if (tr.recovered[0].symbols != stored[f1] ||
                    tr.recovered[1].symbols != stored[f2]) {
                    detail = "pair {" + std::to_string(f1) + "," + std::to_string(f2) +
                             "} not exact over " + field->describe();
                    return false;
                }
                if (tr.transfer_count() != 8) {
                    detail = "expected 8 transfers, got " + std::to_string(tr.transfer_count());
                    return false;
                }
                ++repairs;
            }
        }
    }
    size_t naive = 2 * 3 + 1 * 3;  // k*alpha + (t-1)*alpha
    detail = std::to_string(repairs) + " pair repairs, 8 symbols each vs naive " +
             std::to_string(naive);
    return naive == 9;
}

bool exact_single_repair(std::string& detail) {
    std::mt19937_64 rng(1003);
    Code c = Code::build(CodeParams::make(3), Field::prime(7, 3));
    Row data = random_data(c, rng);
    auto stored = stored_blocks(c, data);
    for (uint32_t fdev = 0; fdev < 5; ++fdev) {
        RepairTranscript tr = repair_single(c, fdev, stored);
        if (tr.recovered[0].symbols != stored[fdev]) {
            detail = "device " + std::to_string(fdev) + " not exact";
            return false;
        }
        if (tr.transfer_count() != 4) {
            detail = "expected 4 transfers, got " + std::to_string(tr.transfer_count());
            return false;
        }
    }
    detail = "5 single repairs, alpha+1 = 4 transfers each";
    return true;
}

bool alignment_invariant(std::string& detail) {
    std::mt19937_64 rng(1004);
    for (auto field : {Field::prime(7, 3), Field::gf256()}) {
        Code c = Code::build(CodeParams::make(3), field);
        for (int trial = 0; trial < 20; ++trial) {
            Row data = random_data(c, rng);
            auto stored = stored_blocks(c, data);
            AlignmentVector z;
            z.z.resize(3);
            for (auto& v : z.z) v = 1 + static_cast<uint32_t>(rng() % (field->order() - 1));
            uint32_t f1 = static_cast<uint32_t>(rng() % 5);
            uint32_t f2 = (f1 + 1 + static_cast<uint32_t>(rng() % 4)) % 5;
            RepairTranscript tr = repair_pair(c, {f1, f2}, stored, z);
            RepairAlignmentCheck chk = check_repair_alignment(c, tr);
            if (chk.interference_rank[0] != 1 || chk.interference_rank[1] != 1) {
                detail = "interference rank not 1 for pair {" + std::to_string(f1) + "," +
                         std::to_string(f2) + "}";
                return false;
            }
            if (chk.system_rank[0] != 4 || chk.system_rank[1] != 4) {
                detail = "desired system rank not alpha+1";
                return false;
            }
        }
    }
    detail = "40 random (z, data, pair) transcripts: rank 1 interference, rank 4 systems";
    return true;
}

bool impossibility_certificate(std::string& detail) {
    struct Case {
        FieldPtr field;
        uint64_t expected;
    };
    for (const Case& cs : {Case{Field::binary(2), 21}, Case{Field::prime(5), 31}}) {
        for (uint64_t seed = 1; seed <= 10; ++seed) {
            IAInstance inst = IAInstance::random(3, 4, 2, cs.field, seed);
            if (!inst.is_mds()) {
                detail = "instance not MDS over " + cs.field->describe();
                return false;
            }
            SearchCertificate cert = exhaustive_search(inst);
            if (cert.examined != cs.expected || cert.space_size != cs.expected) {
                detail = "expected " + std::to_string(cs.expected) + " candidates, examined " +
                         std::to_string(cert.examined);
                return false;
            }
            if (cert.feasible_count != 0) {
                detail = "found feasible assignment over " + cs.field->describe() + " seed " +
                         std::to_string(seed);
                return false;
            }
        }
    }
    detail = "10 GF(4) instances x 21 candidates, 10 GF(5) x 31: zero feasible";
    return true;
}

bool flow_cut(std::string& detail) {
    FlowScenario s;  // k=3, d=4, t=2, beta=beta'=1, M=9
    s.aligned = true;
    int64_t aligned = min_cut(build_repair_flow_graph(s));
    s.aligned = false;
    int64_t unconstrained = min_cut(build_repair_flow_graph(s));
    detail = "aligned cut " + std::to_string(aligned) + ", unconstrained " +
             std::to_string(unconstrained) + ", M 9";
    return aligned == 8 && unconstrained >= 9;
}

bool churn_endurance(std::string& detail) {
    Code c = Code::build(CodeParams::make(3), Field::prime(7, 3));
    Cluster cluster = Cluster::create(c.params(), c.field(), Row{1, 2, 3, 4, 5, 6});
    ChurnSummary s = cluster.churn(1000, 20260826);
    size_t expected = s.pair_repairs * 8 + s.single_repairs * 4;
    detail = s.to_text();
    if (!detail.empty() && detail.back() == '\n') detail.pop_back();
    return s.rounds == 1000 && s.violations == 0 && s.total_transfers == expected &&
           cluster.exactness_violations() == 0;
}

bool feasibility_cross_check(std::string& detail) {
    Code c = Code::build(CodeParams::make(3), Field::prime(7, 3));
    Row data{1, 2, 3, 4, 5, 6};
    auto stored = stored_blocks(c, data);
    RepairTranscript tr = repair_pair(c, {0, 1}, stored);
    RepairAlignmentCheck chk = check_repair_alignment(c, tr);
    detail = "engine repair vectors accepted by the rank checker";
    return chk.ok;
}

}  // namespace

int main() {
    criterion(1, "MDS decode from every device pair", 5.0, mds_property);
    criterion(2, "exact pair repair, 8 transfers vs naive 9", 5.0, exact_pair_repair);
    criterion(3, "exact single repair, alpha+1 transfers", 1.0, exact_single_repair);
    criterion(4, "interference rank 1, recovery rank alpha+1", 5.0, alignment_invariant);
    criterion(5, "k=3 impossibility certificates over GF(4) and GF(5)", 60.0,
              impossibility_certificate);
    criterion(6, "aligned flow cut 8 < M 9, unconstrained >= 9", 1.0, flow_cut);
    criterion(7, "1000-round churn, zero violations, exact bandwidth", 30.0, churn_endurance);
    criterion(8, "k=2 repair vectors accepted by feasibility checker", 1.0,
              feasibility_cross_check);
    if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
