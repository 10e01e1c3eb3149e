#pragma once

#include <optional>
#include <string>

#include "mscr/repair.hpp"

namespace mscr {

struct BandwidthReport {
    size_t transfers = 0;
    size_t naive_baseline = 0;  // k*alpha + (t_failed - 1)*alpha
    double savings_ratio = 0.0;
};

struct SimEvent {
    std::string kind;  // encode | fail | repair | decode
    std::string detail;
    size_t transfers = 0;
};

struct ChurnSummary {
    uint32_t rounds = 0;
    uint64_t seed = 0;
    size_t total_transfers = 0;
    size_t pair_repairs = 0;
    size_t single_repairs = 0;
    uint32_t violations = 0;
    std::string to_text() const;
};

/// A simulated n-device system: encoded blocks, failure injection, repair
/// dispatch, and bandwidth accounting against the naive decode-and-reencode
/// baseline. Discrete and synchronous; one logical timeline.
class Cluster {
public:
    static Cluster create(const CodeParams& params, FieldPtr field, const Row& data);

    const Code& code() const { return code_; }
    bool alive(uint32_t device) const;
    std::vector<uint32_t> failed_devices() const;
    const Row& block(uint32_t device) const;

    /// At most t = 2 devices may be down before a repair is required.
    void fail_devices(const std::vector<uint32_t>& devices);

    /// Dispatches to pair or single repair by failed count; no-op report
    /// when nothing failed.
    BandwidthReport run_repair(const AlignmentVector& z = {});

    Row decode_from(uint32_t x, uint32_t y) const;

    /// Repeated seeded fail/repair rounds (1 or 2 failures each), asserting
    /// exactness after every repair.
    ChurnSummary churn(uint32_t rounds, uint64_t seed);

    /// Invariant: every alive block equals the re-encoding of the original
    /// data. Returns the number of violating devices.
    uint32_t exactness_violations() const;

    const std::vector<SimEvent>& event_log() const { return log_; }
    /// One event per line: "kind detail transfers=N".
    std::string event_log_text() const;

private:
    Cluster(Code code, Row data);
    Code code_;
    Row data_;
    std::vector<std::optional<Row>> blocks_;
    std::vector<SimEvent> log_;
};

}  // namespace mscr
