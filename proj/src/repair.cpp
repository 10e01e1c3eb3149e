#include "mscr/repair.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mscr {

void AlignmentVector::validate(const Field& f, uint32_t alpha) const {
    if (z.size() != alpha) throw Error("alignment vector must have alpha entries");
    for (uint32_t v : z) {
        if (v == 0) throw Error("alignment vector entries must be nonzero");
        if (v >= f.order()) throw FieldError("alignment entry out of range");
    }
}

size_t RepairTranscript::transfer_count() const {
    size_t n = coordinations.size();
    for (const auto& c : collects) n += c.contributions.size();
    return n;
}

namespace {

std::string row_csv(const Row& r) {
    std::ostringstream os;
    for (size_t i = 0; i < r.size(); ++i) {
        if (i) os << ',';
        os << r[i];
    }
    return os.str();
}

void format_transfer(std::ostringstream& os, const Transfer& t) {
    os << (t.round == RoundKind::Collect ? "collect" : "coordinate") << ' ' << t.sender << ' '
       << t.receiver << ' ' << row_csv(t.row) << ' ' << t.symbol << '\n';
}

std::vector<uint32_t> live_devices(uint32_t n, std::initializer_list<uint32_t> failed) {
    std::vector<uint32_t> live;
    for (uint32_t m = 0; m < n; ++m)
        if (std::find(failed.begin(), failed.end(), m) == failed.end()) live.push_back(m);
    return live;
}

}  // namespace

std::string RepairTranscript::to_text() const {
    std::ostringstream os;
    for (const auto& round : collects)
        for (const auto& t : round.contributions) format_transfer(os, t);
    for (const auto& round : coordinations) format_transfer(os, round.transfer);
    return os.str();
}

Row repair_row_for(const EquivalentCode& eq, uint32_t helper, bool target_a,
                   const AlignmentVector& z) {
    const Code& code = *eq.base;
    const Field& f = *code.field();
    const DeviceSpec& dev = eq.devices.at(helper);
    Row v(dev.coeffs.size());
    for (size_t j = 0; j < dev.coeffs.size(); ++j) {
        // Interference matrix is diagonal: B (target a') or A (target b').
        uint32_t entry = target_a ? dev.coeffs[j].second : dev.coeffs[j].first;
        if (entry == 0)
            throw SingularInterference("helper " + std::to_string(helper) +
                                       " has singular interference matrix");
        v[j] = f.mul(z.z[j], f.inv(entry));
    }
    return v;
}

Row coordination_row(const EquivalentCode& eq, const std::vector<Row>& sender_desired_rows,
                     const AlignmentVector& z_target) {
    const FieldPtr& field = eq.base->field();
    Matrix stack = Matrix::from_rows(field, sender_desired_rows);
    // Row solve v0 * stack = z via the transposed column system.
    Row v0;
    if (!try_solve(transpose(stack), z_target.z, &v0))
        throw NoAlignedCoordination("coordination system has no aligned solution");
    return v0;
}

PairRepairPlan plan_pair_repair(const EquivalentCode& eq, const AlignmentVector& z) {
    const Code& code = *eq.base;
    const Field& f = *code.field();
    uint32_t alpha = code.params().alpha;
    uint32_t d = code.params().d;
    z.validate(f, alpha);

    PairRepairPlan plan;
    plan.helpers = live_devices(code.params().n, {eq.f1, eq.f2});
    if (plan.helpers.size() != d) throw Error("expected exactly d live helpers");

    auto side_rows = [&](bool target_a, const AlignmentVector& zz,
                         std::vector<Row>* vs, std::vector<Row>* ds) {
        vs->clear();
        ds->clear();
        for (uint32_t h : plan.helpers) {
            Row v = repair_row_for(eq, h, target_a, zz);
            const DeviceSpec& dev = eq.devices.at(h);
            Row desired(alpha);
            for (uint32_t j = 0; j < alpha; ++j) {
                uint32_t own = target_a ? dev.coeffs[j].first : dev.coeffs[j].second;
                desired[j] = f.mul(v[j], own);
            }
            vs->push_back(std::move(v));
            ds->push_back(std::move(desired));
        }
    };

    auto make_system = [&](const std::vector<Row>& desired, const Row& w0) {
        std::vector<Row> rows;
        for (const Row& dr : desired) {
            Row r = dr;
            r.push_back(1);  // coefficient of the aggregate s = z * (other block)
            rows.push_back(std::move(r));
        }
        Row r = w0;
        r.push_back(1);
        rows.push_back(std::move(r));
        return Matrix::from_rows(code.field(), rows);
    };

    auto row_sum = [&](const Row& r) {
        uint32_t s = 0;
        for (uint32_t c : r) s = f.add(s, c);
        return s;
    };

    // Target 0 aligns with the caller's z; target 1 walks the omega ladder
    // (first rung: the same z) until both recovery systems are full rank.
    side_rows(true, z, &plan.repair_rows[0], &plan.desired_rows[0]);
    plan.z_used[0] = z.z;
    uint64_t ladder = std::min<uint64_t>(f.order() - 1, 64);
    for (uint64_t m = 0; m < ladder; ++m) {
        AlignmentVector zb;
        zb.z.resize(alpha);
        for (uint32_t j = 0; j < alpha; ++j)
            zb.z[j] = f.mul(z.z[j], f.omega_pow(static_cast<int64_t>(m) * j));
        side_rows(false, zb, &plan.repair_rows[1], &plan.desired_rows[1]);
        try {
            // Each target receives a projection of the other target's
            // collected column, aligned with the receiver's own z.
            plan.coordination_rows[0] = coordination_row(eq, plan.desired_rows[1], z);
            plan.coordination_rows[1] = coordination_row(eq, plan.desired_rows[0], zb);
        } catch (const NoAlignedCoordination&) {
            continue;
        }
        // The received symbol's own-block coefficients: the sender's collects
        // each carry the sender's z on the receiver's block.
        plan.coordination_desired[0] = row_scale(f, row_sum(plan.coordination_rows[0]), zb.z);
        plan.coordination_desired[1] = row_scale(f, row_sum(plan.coordination_rows[1]), z.z);
        plan.systems.clear();
        plan.systems.push_back(make_system(plan.desired_rows[0], plan.coordination_desired[0]));
        plan.systems.push_back(make_system(plan.desired_rows[1], plan.coordination_desired[1]));
        if (mat_rank(plan.systems[0]) == alpha + 1 && mat_rank(plan.systems[1]) == alpha + 1) {
            plan.z_used[1] = zb.z;
            return plan;
        }
    }
    throw SingularRecovery("no alignment vector pair yields full-rank recovery systems");
}

Recovery recover(const FieldPtr& field, const std::vector<Row>& desired_rows,
                 const Row& symbols) {
    if (desired_rows.size() != symbols.size()) throw Error("equation/symbol count mismatch");
    std::vector<Row> rows;
    for (const Row& dr : desired_rows) {
        Row r = dr;
        r.push_back(1);
        rows.push_back(std::move(r));
    }
    Matrix sys = Matrix::from_rows(field, rows);
    Row sol;
    if (!try_solve(sys, symbols, &sol) || mat_rank(sys) != sys.cols())
        throw SingularRecovery("recovery system is singular");
    Recovery rec;
    rec.block = Row(sol.begin(), sol.end() - 1);
    rec.interference = sol.back();
    return rec;
}

RepairTranscript repair_pair(const Code& code, std::pair<uint32_t, uint32_t> failed,
                             const std::vector<Row>& stored, const AlignmentVector& z_in,
                             std::optional<std::vector<uint32_t>> helpers) {
    auto [f1, f2] = failed;
    const Field& f = *code.field();
    uint32_t alpha = code.params().alpha;
    AlignmentVector z = z_in.z.empty() ? AlignmentVector::sigma(alpha) : z_in;

    EquivalentCode eq = code.change_of_variables(f1, f2);
    PairRepairPlan plan = plan_pair_repair(eq, z);
    if (helpers) {
        std::vector<uint32_t> h = *helpers;
        std::sort(h.begin(), h.end());
        if (h != plan.helpers) throw Error("helpers must be the d live devices");
    }

    RepairTranscript out;
    out.failed = {f1, f2};
    std::array<Row, 2> collected;
    std::array<uint32_t, 2> targets{f1, f2};
    for (int side = 0; side < 2; ++side) {
        CollectRound round{targets[side], {}};
        for (size_t i = 0; i < plan.helpers.size(); ++i) {
            uint32_t h = plan.helpers[i];
            uint32_t symbol = dot(f, plan.repair_rows[side][i], stored.at(h));
            round.contributions.push_back(
                {RoundKind::Collect, h, targets[side], plan.repair_rows[side][i], symbol});
            collected[side].push_back(symbol);
        }
        out.collects.push_back(std::move(round));
    }
    // Coordination: each target receives a projection of the other target's
    // collected column; both collect rounds must have completed.
    std::array<uint32_t, 2> coord_symbols;
    for (int side = 0; side < 2; ++side) {
        uint32_t symbol = dot(f, plan.coordination_rows[side], collected[1 - side]);
        coord_symbols[side] = symbol;
        out.coordinations.push_back(
            {{RoundKind::Coordinate, targets[1 - side], targets[side],
              plan.coordination_rows[side], symbol}});
    }
    for (int side = 0; side < 2; ++side) {
        std::vector<Row> rows = plan.desired_rows[side];
        rows.push_back(plan.coordination_desired[side]);
        Row symbols = collected[side];
        symbols.push_back(coord_symbols[side]);
        Recovery rec = recover(code.field(), rows, symbols);
        out.recovered.push_back({targets[side], std::move(rec.block)});
    }
    return out;
}

RepairTranscript repair_single(const Code& code, uint32_t failed,
                               const std::vector<Row>& stored, const AlignmentVector& z_in,
                               std::optional<uint32_t> partner_in) {
    const Field& f = *code.field();
    uint32_t alpha = code.params().alpha;
    AlignmentVector z = z_in.z.empty() ? AlignmentVector::sigma(alpha) : z_in;
    z.validate(f, alpha);

    auto live = live_devices(code.params().n, {failed});
    uint32_t partner = partner_in.value_or(live.front());
    if (partner == failed || partner >= code.params().n) throw Error("invalid partner device");

    EquivalentCode eq = code.change_of_variables(failed, partner);
    RepairTranscript out;
    out.failed = {failed};
    CollectRound round{failed, {}};
    std::vector<Row> desired;
    Row symbols;
    for (uint32_t h : live) {
        if (h == partner) continue;
        Row v = repair_row_for(eq, h, /*target_a=*/true, z);
        const DeviceSpec& dev = eq.devices.at(h);
        Row dr(alpha);
        for (uint32_t j = 0; j < alpha; ++j) dr[j] = f.mul(v[j], dev.coeffs[j].first);
        uint32_t symbol = dot(f, v, stored.at(h));
        round.contributions.push_back({RoundKind::Collect, h, failed, v, symbol});
        desired.push_back(std::move(dr));
        symbols.push_back(symbol);
    }
    // The partner is systematic-b' in the equivalent code and sends
    // z * b' directly; its desired-information row is zero.
    uint32_t psymbol = dot(f, z.z, stored.at(partner));
    round.contributions.push_back({RoundKind::Collect, partner, failed, z.z, psymbol});
    desired.push_back(Row(alpha, 0));
    symbols.push_back(psymbol);
    out.collects.push_back(std::move(round));

    Recovery rec = recover(code.field(), desired, symbols);
    out.recovered.push_back({failed, std::move(rec.block)});
    return out;
}

}  // namespace mscr
