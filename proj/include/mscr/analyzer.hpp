#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mscr/repair.hpp"

namespace mscr {

/// A systematic scalar MSCR instance with k >= 3 for the independent
/// interference alignment feasibility search: n = d + t devices, the first
/// k systematic, the remaining n - k storing r_j = A_j a + B_j b + C_j c + ...
/// with every block matrix alpha x alpha invertible and the stacked
/// generator of any k devices invertible (MDS).
struct IAInstance {
    uint32_t k = 3, d = 4, t = 2;
    uint32_t alpha = 3, n = 6;
    FieldPtr field;
    uint64_t seed = 0;
    /// redundancy[j][b] = block-b matrix of redundancy device j.
    std::vector<std::vector<Matrix>> redundancy;

    /// Seeded rejection sampling: random monomial (diagonal times
    /// permutation) matrices, resampled until the MDS property holds.
    static IAInstance random(uint32_t k, uint32_t d, uint32_t t, FieldPtr field, uint64_t seed);

    /// Identity matrices for every block; the degenerate fully-aligned case.
    static IAInstance identity(uint32_t k, uint32_t d, uint32_t t, FieldPtr field);

    bool is_mds() const;
    std::string describe() const;
};

/// Nonzero 1 x alpha row canonicalized so the first nonzero entry is 1;
/// one representative per collinearity class, (q^alpha - 1)/(q - 1) total.
struct ProjectivePoint {
    Row row;
};

uint64_t projective_point_count(uint64_t q, uint32_t alpha);
Row canonical_projective(const Field& f, Row row);
/// Deterministic enumeration: index -> point, indices 0..count-1 ordered by
/// leading-coordinate position then lexicographically on the free entries.
ProjectivePoint projective_point_at(const FieldPtr& f, uint32_t alpha, uint64_t index);

/// The rows forced by a choice of v_gamma: v_alpha_i = nu_i v_gamma C_i^{-1}
/// and v_beta_i = mu_i v_gamma C_i^{-1}. For k = 2 there is no third block
/// and nothing is forced.
struct ForcedRows {
    bool constrained = false;
    std::vector<Row> v_alpha;
    std::vector<Row> v_beta;
};
ForcedRows enumerate_constraints(const IAInstance& inst, const Row& v_gamma);

/// One candidate repair-vector assignment: v_gamma plus the per-device
/// scalars; explicit rows may be supplied to exercise the checker on
/// non-forced (e.g. deliberately misaligned) assignments.
struct IAAssignment {
    Row v_gamma;
    Row nu;  // one nonzero scalar per redundancy device
    Row mu;
    std::optional<std::vector<Row>> explicit_v_alpha;
    std::optional<std::vector<Row>> explicit_v_beta;
};

struct Feasibility {
    bool feasible = false;
    std::string reason;  // violated condition when infeasible
};

/// Evaluates the rank conditions for the simultaneous exact repair of the
/// devices storing a and b: every interfering block's stack must have rank 1
/// at each repaired device, and each desired-information stack (collects
/// plus the coordination row) must have rank alpha.
Feasibility check_feasibility(const IAInstance& inst, const IAAssignment& assignment);

struct CandidateResult {
    uint64_t index = 0;
    Row v_gamma;
    bool feasible = false;
    std::string reason;
};

struct SearchCertificate {
    std::string instance;
    uint64_t space_size = 0;
    uint64_t examined = 0;
    uint64_t feasible_count = 0;
    std::vector<std::string> forcing_chain;
    std::vector<CandidateResult> candidates;
    std::string to_text() const;
    /// One JSON record per candidate.
    std::string to_jsonl() const;
};

/// Enumerates every projective v_gamma candidate; all other repair vectors
/// are eliminated symbolically through the forcing chain, and the rank
/// conditions are scalar-invariant, so the scalars are not enumerated.
/// Requires k >= 3 and t = 2; guard: at most 10^6 candidates.
SearchCertificate exhaustive_search(const IAInstance& inst, bool parallel = true);

/// Consistency check between the negative and positive halves: verifies the
/// alignment and recovery rank conditions on the repair vectors actually
/// emitted by the repair engine for a k=2 pair repair.
struct RepairAlignmentCheck {
    bool ok = false;
    std::array<size_t, 2> interference_rank{};  // per repaired device, expect 1
    std::array<size_t, 2> system_rank{};        // expect alpha + 1
};
RepairAlignmentCheck check_repair_alignment(const Code& code, const RepairTranscript& transcript,
                                            const AlignmentVector& z = {});

}  // namespace mscr
