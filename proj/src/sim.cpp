#include "mscr/sim.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace mscr {

namespace {

std::string join_indices(const std::vector<uint32_t>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    return os.str();
}

}  // namespace

std::string ChurnSummary::to_text() const {
    std::ostringstream os;
    os << "rounds=" << rounds << " seed=" << seed << " pair_repairs=" << pair_repairs
       << " single_repairs=" << single_repairs << " total_transfers=" << total_transfers
       << " violations=" << violations << '\n';
    return os.str();
}

Cluster::Cluster(Code code, Row data) : code_(std::move(code)), data_(std::move(data)) {}

Cluster Cluster::create(const CodeParams& params, FieldPtr field, const Row& data) {
    if (data.empty()) throw Error("cannot create a cluster for zero-length data");
    Code code = Code::build(params, std::move(field));
    Cluster cl(std::move(code), data);
    auto blocks = cl.code_.encode(cl.data_);
    for (auto& b : blocks) cl.blocks_.emplace_back(std::move(b.symbols));
    cl.log_.push_back({"encode", "n=" + std::to_string(params.n), 0});
    return cl;
}

bool Cluster::alive(uint32_t device) const { return blocks_.at(device).has_value(); }

std::vector<uint32_t> Cluster::failed_devices() const {
    std::vector<uint32_t> failed;
    for (uint32_t m = 0; m < blocks_.size(); ++m)
        if (!blocks_[m]) failed.push_back(m);
    return failed;
}

const Row& Cluster::block(uint32_t device) const {
    if (!blocks_.at(device)) throw Error("device " + std::to_string(device) + " is failed");
    return *blocks_[device];
}

void Cluster::fail_devices(const std::vector<uint32_t>& devices) {
    uint32_t down = static_cast<uint32_t>(failed_devices().size());
    uint32_t max_down = code_.params().n - code_.params().d;
    for (uint32_t m : devices) {
        if (m >= blocks_.size()) throw Error("device index out of range");
        if (!blocks_[m]) throw Error("device " + std::to_string(m) + " already failed");
    }
    if (down + devices.size() > max_down)
        throw Error("failing " + std::to_string(devices.size()) + " more devices leaves fewer "
                    "than d helpers");
    for (uint32_t m : devices) blocks_[m].reset();
    log_.push_back({"fail", "devices=" + join_indices(devices), 0});
}

BandwidthReport Cluster::run_repair(const AlignmentVector& z) {
    auto failed = failed_devices();
    const auto& p = code_.params();
    if (failed.empty()) {
        log_.push_back({"repair", "noop", 0});
        return {0, 0, 0.0};
    }

    std::vector<Row> stored(p.n, Row(p.alpha, 0));
    for (uint32_t m = 0; m < p.n; ++m)
        if (blocks_[m]) stored[m] = *blocks_[m];

    RepairTranscript transcript =
        failed.size() == 2 ? repair_pair(code_, {failed[0], failed[1]}, stored, z)
                           : repair_single(code_, failed[0], stored, z);
    for (const auto& rec : transcript.recovered) blocks_[rec.device] = rec.symbols;

    BandwidthReport report;
    report.transfers = transcript.transfer_count();
    report.naive_baseline = p.k * p.alpha + (failed.size() - 1) * p.alpha;
    report.savings_ratio =
        static_cast<double>(report.transfers) / static_cast<double>(report.naive_baseline);
    log_.push_back({"repair",
                    (failed.size() == 2 ? std::string("pair") : std::string("single")) +
                        " devices=" + join_indices(failed) +
                        " baseline=" + std::to_string(report.naive_baseline),
                    report.transfers});
    return report;
}

Row Cluster::decode_from(uint32_t x, uint32_t y) const {
    Row data = code_.decode({x, block(x)}, {y, block(y)});
    return data;
}

uint32_t Cluster::exactness_violations() const {
    uint32_t bad = 0;
    for (uint32_t m = 0; m < blocks_.size(); ++m)
        if (blocks_[m] && *blocks_[m] != code_.encode_device(m, data_)) ++bad;
    return bad;
}

ChurnSummary Cluster::churn(uint32_t rounds, uint64_t seed) {
    ChurnSummary summary;
    summary.rounds = rounds;
    summary.seed = seed;
    std::mt19937_64 rng(seed);
    uint32_t n = code_.params().n;
    for (uint32_t round = 0; round < rounds; ++round) {
        uint32_t count = 1 + static_cast<uint32_t>(rng() % 2);
        std::vector<uint32_t> victims;
        while (victims.size() < count) {
            uint32_t m = static_cast<uint32_t>(rng() % n);
            if (std::find(victims.begin(), victims.end(), m) == victims.end())
                victims.push_back(m);
        }
        fail_devices(victims);
        BandwidthReport report = run_repair();
        summary.total_transfers += report.transfers;
        if (count == 2)
            ++summary.pair_repairs;
        else
            ++summary.single_repairs;
        summary.violations += exactness_violations();
    }
    return summary;
}

std::string Cluster::event_log_text() const {
    std::ostringstream os;
    for (const auto& e : log_)
        os << e.kind << ' ' << e.detail << " transfers=" << e.transfers << '\n';
    return os.str();
}

}  // namespace mscr
