#pragma once

#include <optional>
#include <string>

#include "mscr/code.hpp"

namespace mscr {

/// Alignment vector z: a 1 x alpha row with every entry nonzero. The
/// default is sigma = (1,...,1). Entries must be nonzero: a zero entry
/// zeroes a column of the single-repair recovery system.
struct AlignmentVector {
    Row z;
    static AlignmentVector sigma(uint32_t alpha) { return {Row(alpha, 1)}; }
    void validate(const Field& f, uint32_t alpha) const;
};

enum class RoundKind : uint8_t { Collect = 0, Coordinate = 1 };

/// One symbol crossing the network: receiver gets row * (sender's column),
/// where the column is the sender's stored block (collect) or its collected
/// vector (coordinate).
struct Transfer {
    RoundKind round;
    uint32_t sender;
    uint32_t receiver;
    Row row;
    uint32_t symbol;
};

struct CollectRound {
    uint32_t target;  // repaired device index
    std::vector<Transfer> contributions;  // exactly one per helper (beta = 1)
};

struct CoordinationRound {
    Transfer transfer;  // row is the 1 x d coordination row v0 (beta' = 1)
};

struct RepairTranscript {
    std::vector<uint32_t> failed;
    std::vector<CollectRound> collects;
    std::vector<CoordinationRound> coordinations;  // empty for single repair
    std::vector<DeviceBlock> recovered;
    size_t transfer_count() const;
    /// Line-oriented text: "round sender receiver coeff,coeff,... symbol".
    std::string to_text() const;
};

/// z * B_m^{-1} (target a') or z * A_m^{-1} (target b') for helper m of the
/// equivalent code; the transmitted symbol's interference component then
/// equals z * b' (resp. z * a') exactly.
Row repair_row_for(const EquivalentCode& eq, uint32_t helper, bool target_a,
                   const AlignmentVector& z);

/// Coefficient-level plan of one pair repair; no data involved. Shared by
/// the live repair path and build-time validation.
struct PairRepairPlan {
    std::vector<uint32_t> helpers;  // d live devices
    // Per target (index 0 = a' / f1, 1 = b' / f2):
    std::array<Row, 2> z_used;                     // alignment vector of each target
    std::array<std::vector<Row>, 2> repair_rows;   // v_i per helper
    std::array<std::vector<Row>, 2> desired_rows;  // v_i * own-matrix per helper
    std::array<Row, 2> coordination_rows;          // v0 received by this target
    std::array<Row, 2> coordination_desired;       // w0: own-block row of the received symbol
    std::vector<Matrix> systems;                   // (d+1) x (alpha+1) recovery systems, [0]=a', [1]=b'
};

/// Plans one pair repair. The first target aligns with the caller's z; the
/// second target gets its own alignment vector, chosen from a deterministic
/// ladder (z scaled coordinatewise by powers of omega) so that both recovery
/// systems are full rank. A single shared vector can be structurally
/// degenerate: when one failed device is systematic, the surviving
/// systematic device's two coefficient diagonals in the equivalent code are
/// proportional, and with equal alignment vectors the coordination symbol
/// duplicates that helper's collect symbol for every choice of z.
PairRepairPlan plan_pair_repair(const EquivalentCode& eq, const AlignmentVector& z);

/// Solves the 1 x d system v0 * stack(sender_desired) = z_target; for the
/// repair of the original systematic pair with z = sigma this reduces to
/// (omega^0 + ... + omega^{alpha-1})^{-1} * sigma.
Row coordination_row(const EquivalentCode& eq, const std::vector<Row>& sender_desired_rows,
                     const AlignmentVector& z_target);

struct Recovery {
    Row block;              // the alpha lost symbols
    uint32_t interference;  // the aggregate s = z * (other block)
};

/// Solves the (d+1) equations over (alpha+1) unknowns (block symbols plus
/// the aligned interference aggregate). Each equation reads
/// desired_rows[i] * block + s = symbols[i].
Recovery recover(const FieldPtr& field, const std::vector<Row>& desired_rows,
                 const Row& symbols);

/// Six-step exact repair of two simultaneous failures. `stored` is indexed
/// by device; entries for failed devices are ignored. Helpers default to
/// all d live devices.
RepairTranscript repair_pair(const Code& code, std::pair<uint32_t, uint32_t> failed,
                             const std::vector<Row>& stored,
                             const AlignmentVector& z = {},
                             std::optional<std::vector<uint32_t>> helpers = std::nullopt);

/// Coordination-free exact repair of one failure (the adaptive t=1 case):
/// alpha helpers send aligned projections, the partner sends z * (its block)
/// directly; alpha+1 transfers total.
RepairTranscript repair_single(const Code& code, uint32_t failed,
                               const std::vector<Row>& stored,
                               const AlignmentVector& z = {},
                               std::optional<uint32_t> partner = std::nullopt);

}  // namespace mscr
