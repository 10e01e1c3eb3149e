#include "mscr/analyzer.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mscr {

namespace {

constexpr uint64_t kMaxCandidates = 1000000;
constexpr int kMaxRejections = 5000;

std::vector<std::vector<uint32_t>> combinations(uint32_t n, uint32_t k) {
    std::vector<std::vector<uint32_t>> out;
    std::vector<uint32_t> idx(k);
    for (uint32_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (uint32_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

Matrix random_monomial(const FieldPtr& field, uint32_t alpha, std::mt19937_64& rng) {
    const Field& f = *field;
    std::vector<uint32_t> perm(alpha);
    for (uint32_t i = 0; i < alpha; ++i) perm[i] = i;
    for (uint32_t i = alpha - 1; i > 0; --i)
        std::swap(perm[i], perm[rng() % (i + 1)]);
    Matrix m(field, alpha, alpha);
    for (uint32_t i = 0; i < alpha; ++i)
        m.set(i, perm[i], 1 + static_cast<uint32_t>(rng() % (f.order() - 1)));
    return m;
}

std::string row_str(const Row& r) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < r.size(); ++i) {
        if (i) os << ',';
        os << r[i];
    }
    os << ')';
    return os.str();
}

}  // namespace

uint64_t projective_point_count(uint64_t q, uint32_t alpha) {
    uint64_t qa = 1;
    for (uint32_t i = 0; i < alpha; ++i) qa *= q;
    return (qa - 1) / (q - 1);
}

Row canonical_projective(const Field& f, Row row) {
    for (uint32_t v : row) {
        if (v != 0) {
            uint32_t s = f.inv(v);
            for (uint32_t& x : row) x = f.mul(s, x);
            return row;
        }
    }
    throw Error("projective point must be nonzero");
}

ProjectivePoint projective_point_at(const FieldPtr& f, uint32_t alpha, uint64_t index) {
    uint64_t q = f->order();
    // Candidates with leading 1 at position p: q^(alpha-1-p) of them.
    for (uint32_t p = 0; p < alpha; ++p) {
        uint64_t block = 1;
        for (uint32_t i = 0; i < alpha - 1 - p; ++i) block *= q;
        if (index >= block) {
            index -= block;
            continue;
        }
        Row row(alpha, 0);
        row[p] = 1;
        for (uint32_t j = alpha; j-- > p + 1;) {
            row[j] = static_cast<uint32_t>(index % q);
            index /= q;
        }
        return {row};
    }
    throw Error("projective index out of range");
}

IAInstance IAInstance::identity(uint32_t k, uint32_t d, uint32_t t, FieldPtr field) {
    IAInstance inst;
    inst.k = k;
    inst.d = d;
    inst.t = t;
    inst.alpha = d - k + t;
    inst.n = d + t;
    inst.field = std::move(field);
    for (uint32_t j = 0; j < inst.n - inst.k; ++j) {
        std::vector<Matrix> blocks;
        for (uint32_t b = 0; b < k; ++b) blocks.push_back(Matrix::identity(inst.field, inst.alpha));
        inst.redundancy.push_back(std::move(blocks));
    }
    return inst;
}

IAInstance IAInstance::random(uint32_t k, uint32_t d, uint32_t t, FieldPtr field, uint64_t seed) {
    if (d <= k) throw Error("instances require d > k");
    IAInstance inst = identity(k, d, t, field);
    inst.seed = seed;
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        for (auto& blocks : inst.redundancy)
            for (auto& m : blocks) m = random_monomial(inst.field, inst.alpha, rng);
        if (inst.is_mds()) return inst;
    }
    throw FieldUnsuitable("could not sample an MDS instance over " + field->describe());
}

bool IAInstance::is_mds() const {
    uint32_t ka = k * alpha;
    for (const auto& subset : combinations(n, k)) {
        Matrix stacked(field, ka, ka);
        uint32_t r0 = 0;
        for (uint32_t dev : subset) {
            if (dev < k) {
                for (uint32_t j = 0; j < alpha; ++j) stacked.set(r0 + j, dev * alpha + j, 1);
            } else {
                const auto& blocks = redundancy[dev - k];
                for (uint32_t b = 0; b < k; ++b)
                    for (uint32_t r = 0; r < alpha; ++r)
                        for (uint32_t c = 0; c < alpha; ++c)
                            stacked.set(r0 + r, b * alpha + c, blocks[b].at(r, c));
            }
            r0 += alpha;
        }
        if (mat_rank(stacked) != ka) return false;
    }
    return true;
}

std::string IAInstance::describe() const {
    std::ostringstream os;
    os << "k=" << k << " d=" << d << " t=" << t << " alpha=" << alpha << " n=" << n << " "
       << field->describe() << " seed=" << seed;
    return os.str();
}

ForcedRows enumerate_constraints(const IAInstance& inst, const Row& v_gamma) {
    ForcedRows out;
    if (inst.k < 3) return out;  // no third block, nothing forced
    if (is_zero_row(v_gamma)) throw Error("v_gamma must be nonzero");
    out.constrained = true;
    for (const auto& blocks : inst.redundancy) {
        Matrix cinv = mat_inverse(blocks[2]);
        Row forced = row_mul(v_gamma, cinv);
        out.v_alpha.push_back(forced);
        out.v_beta.push_back(forced);  // same direction, scalars are free
    }
    return out;
}

Feasibility check_feasibility(const IAInstance& inst, const IAAssignment& assignment) {
    const Field& f = *inst.field;
    uint32_t r = inst.n - inst.k;
    if (assignment.v_gamma.size() != inst.alpha) throw Error("v_gamma dimension mismatch");
    if (assignment.nu.size() != r || assignment.mu.size() != r)
        throw Error("scalar vector dimension mismatch");
    for (uint32_t i = 0; i < r; ++i)
        if (assignment.nu[i] == 0 || assignment.mu[i] == 0)
            throw Error("alignment scalars must be nonzero");

    std::vector<Row> v_alpha, v_beta;
    if (assignment.explicit_v_alpha) {
        v_alpha = *assignment.explicit_v_alpha;
        v_beta = assignment.explicit_v_beta.value_or(v_alpha);
    } else {
        ForcedRows forced = enumerate_constraints(inst, assignment.v_gamma);
        for (uint32_t i = 0; i < r; ++i) {
            v_alpha.push_back(row_scale(f, assignment.nu[i], forced.v_alpha[i]));
            v_beta.push_back(row_scale(f, assignment.mu[i], forced.v_beta[i]));
        }
    }
    if (v_alpha.size() != r || v_beta.size() != r) throw Error("repair row count mismatch");

    auto stack_times = [&](const std::vector<Row>& vs, uint32_t block) {
        std::vector<Row> rows;
        for (uint32_t i = 0; i < r; ++i) rows.push_back(row_mul(vs[i], inst.redundancy[i][block]));
        return rows;
    };
    auto rank_of = [&](std::vector<Row> rows) {
        return mat_rank(Matrix::from_rows(inst.field, rows));
    };

    // Interference from block c (and any further block) must be aligned at
    // both repaired devices; the systematic projection v_gamma joins the
    // stacks.
    for (uint32_t b = 2; b < inst.k; ++b) {
        auto at_a = stack_times(v_alpha, b);
        at_a.push_back(assignment.v_gamma);
        if (rank_of(at_a) != 1)
            return {false, "block-" + std::to_string(b) + " interference at device-a not aligned"};
        auto at_b = stack_times(v_beta, b);
        at_b.push_back(assignment.v_gamma);
        if (rank_of(at_b) != 1)
            return {false, "block-" + std::to_string(b) + " interference at device-b not aligned"};
    }

    auto b_at_a = stack_times(v_alpha, 1);
    if (rank_of(b_at_a) != 1) return {false, "b-interference at device-a not aligned"};
    auto a_at_b = stack_times(v_beta, 0);
    if (rank_of(a_at_b) != 1) return {false, "a-interference at device-b not aligned"};

    // Coordination rows live in the span of the sender's collected
    // own-block components, and must be preparable in the receiver's
    // aligned interference direction.
    auto a_rows = stack_times(v_alpha, 0);  // desired at a
    auto b_rows = stack_times(v_beta, 1);   // desired at b
    Row coord_to_a = a_at_b.front();        // direction of w_A
    Row coord_to_b = b_at_a.front();        // direction of w_B
    Row ignored;
    if (!try_solve(transpose(Matrix::from_rows(inst.field, a_rows)), coord_to_a, &ignored))
        return {false, "no aligned coordination toward device-a"};
    if (!try_solve(transpose(Matrix::from_rows(inst.field, b_rows)), coord_to_b, &ignored))
        return {false, "no aligned coordination toward device-b"};

    auto a_sys = a_rows;
    a_sys.push_back(coord_to_a);
    if (rank_of(a_sys) != inst.alpha) return {false, "a-recovery at device-a rank-deficient"};
    auto b_sys = b_rows;
    b_sys.push_back(coord_to_b);
    if (rank_of(b_sys) != inst.alpha) return {false, "b-recovery at device-b rank-deficient"};
    return {true, ""};
}

std::string SearchCertificate::to_text() const {
    std::ostringstream os;
    os << "instance: " << instance << '\n';
    os << "projective candidates: " << space_size << '\n';
    os << "examined: " << examined << '\n';
    os << "feasible: " << feasible_count << '\n';
    os << "forcing chain:\n";
    for (const auto& line : forcing_chain) os << "  - " << line << '\n';
    for (const auto& c : candidates) {
        os << "candidate " << c.index << " v_gamma=" << row_str(c.v_gamma) << ' '
           << (c.feasible ? "FEASIBLE" : "infeasible: " + c.reason) << '\n';
    }
    return os.str();
}

std::string SearchCertificate::to_jsonl() const {
    std::ostringstream os;
    for (const auto& c : candidates) {
        nlohmann::json rec{{"index", c.index},
                           {"v_gamma", c.v_gamma},
                           {"feasible", c.feasible},
                           {"reason", c.reason}};
        os << rec.dump() << '\n';
    }
    return os.str();
}

SearchCertificate exhaustive_search(const IAInstance& inst, bool parallel) {
    if (inst.k < 3)
        throw Error("the infeasibility search applies to k >= 3; k=2 codes are constructible");
    if (inst.t != 2)
        throw Error("only the two-failure (t=2) certificate is implemented");
    uint64_t count = projective_point_count(inst.field->order(), inst.alpha);
    if (count > kMaxCandidates)
        throw SearchSpaceTooLarge("projective space has " + std::to_string(count) +
                                  " points (cap " + std::to_string(kMaxCandidates) + ")");

    SearchCertificate cert;
    cert.instance = inst.describe();
    cert.space_size = count;
    cert.forcing_chain = {
        "alignment of block-c interference forces v_alpha_i = nu_i v_gamma C_i^-1",
        "the coordination symbol is collinear with v_gamma, forcing v_beta_i = mu_i v_gamma C_i^-1",
        "hence v_alpha_i and v_beta_i are collinear; the nonzero scalars nu_i, mu_i do not affect "
        "any rank condition and are not enumerated",
    };
    cert.candidates.resize(count);

    uint32_t r = inst.n - inst.k;
    auto evaluate = [&](uint64_t idx) {
        ProjectivePoint p = projective_point_at(inst.field, inst.alpha, idx);
        IAAssignment assignment{p.row, Row(r, 1), Row(r, 1), std::nullopt, std::nullopt};
        Feasibility fz = check_feasibility(inst, assignment);
        cert.candidates[idx] = {idx, p.row, fz.feasible, fz.reason};
    };

    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int64_t idx = 0; idx < static_cast<int64_t>(count); ++idx)
            evaluate(static_cast<uint64_t>(idx));
    } else {
        for (uint64_t idx = 0; idx < count; ++idx) evaluate(idx);
    }

    cert.examined = count;
    for (const auto& c : cert.candidates)
        if (c.feasible) ++cert.feasible_count;
    return cert;
}

RepairAlignmentCheck check_repair_alignment(const Code& code, const RepairTranscript& transcript,
                                            const AlignmentVector& z_in) {
    if (transcript.failed.size() != 2 || transcript.collects.size() != 2 ||
        transcript.coordinations.size() != 2)
        throw Error("alignment check expects a pair-repair transcript");
    const Field& f = *code.field();
    uint32_t alpha = code.params().alpha;
    AlignmentVector z = z_in.z.empty() ? AlignmentVector::sigma(alpha) : z_in;
    z.validate(f, alpha);
    EquivalentCode eq = code.change_of_variables(transcript.failed[0], transcript.failed[1]);

    // Interference/desired coefficient rows of each collected symbol,
    // recomputed from the transcript's repair rows and the equivalent code.
    std::array<std::vector<Row>, 2> desired, interference;
    for (int side = 0; side < 2; ++side) {
        for (const Transfer& tr : transcript.collects[side].contributions) {
            const DeviceSpec& dev = eq.devices.at(tr.sender);
            Row des(alpha), intf(alpha);
            for (uint32_t j = 0; j < alpha; ++j) {
                uint32_t own = side == 0 ? dev.coeffs[j].first : dev.coeffs[j].second;
                uint32_t other = side == 0 ? dev.coeffs[j].second : dev.coeffs[j].first;
                des[j] = f.mul(tr.row[j], own);
                intf[j] = f.mul(tr.row[j], other);
            }
            desired[side].push_back(std::move(des));
            interference[side].push_back(std::move(intf));
        }
    }

    RepairAlignmentCheck out;
    for (int side = 0; side < 2; ++side) {
        const Transfer* coord = nullptr;
        for (const auto& c : transcript.coordinations)
            if (c.transfer.receiver == transcript.failed[side]) coord = &c.transfer;
        if (!coord) throw Error("missing coordination transfer");
        // The received coordination symbol reads w0 * own + (v0 * D_other) * other.
        Row w0 = row_mul(coord->row, Matrix::from_rows(code.field(), interference[1 - side]));
        Row coord_intf = row_mul(coord->row, Matrix::from_rows(code.field(), desired[1 - side]));

        auto intf_stack = interference[side];
        intf_stack.push_back(coord_intf);
        out.interference_rank[side] = mat_rank(Matrix::from_rows(code.field(), intf_stack));

        std::vector<Row> sys_rows;
        for (const Row& dr : desired[side]) {
            Row rr = dr;
            rr.push_back(1);
            sys_rows.push_back(std::move(rr));
        }
        Row rr = w0;
        rr.push_back(1);
        sys_rows.push_back(std::move(rr));
        out.system_rank[side] = mat_rank(Matrix::from_rows(code.field(), sys_rows));
    }
    out.ok = out.interference_rank[0] == 1 && out.interference_rank[1] == 1 &&
             out.system_rank[0] == alpha + 1 && out.system_rank[1] == alpha + 1;
    return out;
}

}  // namespace mscr
