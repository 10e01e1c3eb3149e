#include "mscr/code.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "mscr/repair.hpp"

namespace mscr {

CodeParams CodeParams::make(uint32_t d, std::optional<uint32_t> n) {
    CodeParams p;
    p.d = d;
    p.n = n.value_or(d + p.t);
    p.alpha = p.d - p.k + p.t;
    p.file_symbols = p.k * p.alpha;
    p.validate();
    return p;
}

void CodeParams::validate() const {
    if (k != 2 || t != 2) throw Error("only k=2, t=2 codes are supported");
    if (d <= k) throw Error("non-degenerate regime requires d > k");
    if (n < d + t) throw Error("n must be at least d + t (repair needs d live helpers)");
    if (alpha != d - k + t) throw Error("alpha must equal d - k + t");
    if (file_symbols != k * alpha) throw Error("M must equal k * alpha");
}

Code::Code(CodeParams params, FieldPtr field)
    : params_(params), field_(std::move(field)) {}

Code Code::build(const CodeParams& params, FieldPtr field) {
    params.validate();
    Code code(params, std::move(field));
    const Field& f = *code.field_;
    uint32_t alpha = params.alpha;
    uint32_t s = params.n - 2;
    if (s > alpha)
        throw Error("duplicate redundancy exponent offsets: s = n-2 = " + std::to_string(s) +
                    " exceeds alpha = " + std::to_string(alpha));

    DeviceSpec a{0, DeviceRole::SystematicA, 0, {}};
    DeviceSpec b{1, DeviceRole::SystematicB, 0, {}};
    for (uint32_t j = 0; j < alpha; ++j) {
        a.coeffs.emplace_back(1, 0);
        b.coeffs.emplace_back(0, 1);
    }
    code.devices_.push_back(std::move(a));
    code.devices_.push_back(std::move(b));
    for (uint32_t i = 0; i < s; ++i) {
        DeviceSpec r{2 + i, DeviceRole::Redundancy, i, {}};
        for (uint32_t j = 1; j <= alpha; ++j)
            r.coeffs.emplace_back(1, f.omega_pow((i + j - 1) % alpha));
        code.devices_.push_back(std::move(r));
    }

    // Coordinate-wise MDS: every device pair, every coordinate.
    for (uint32_t x = 0; x < params.n; ++x)
        for (uint32_t y = x + 1; y < params.n; ++y)
            for (uint32_t j = 0; j < alpha; ++j) {
                auto [ux, wx] = code.devices_[x].coeffs[j];
                auto [uy, wy] = code.devices_[y].coeffs[j];
                if (f.sub(f.mul(ux, wy), f.mul(uy, wx)) == 0)
                    throw FieldUnsuitable("devices " + std::to_string(x) + "," +
                                          std::to_string(y) + " are dependent at coordinate " +
                                          std::to_string(j));
            }

    code.validate_repairability();
    return code;
}

void Code::validate_repairability() const {
    uint32_t alpha = params_.alpha;
    auto z = AlignmentVector::sigma(alpha);
    // Every failure pair: both recovery systems full rank, coordination
    // solvable in both directions, and the desired stacks full rank so
    // that repair stays solvable for any entrywise-nonzero z.
    for (uint32_t f1 = 0; f1 < params_.n; ++f1) {
        for (uint32_t f2 = f1 + 1; f2 < params_.n; ++f2) {
            try {
                auto eq = change_of_variables(f1, f2);
                auto plan = plan_pair_repair(eq, z);
                for (int side = 0; side < 2; ++side) {
                    if (mat_rank(plan.systems[side]) != alpha + 1)
                        throw SingularRecovery("recovery system is rank-deficient");
                    if (mat_rank(Matrix::from_rows(field_, plan.desired_rows[side])) != alpha)
                        throw SingularRecovery("desired stack is rank-deficient");
                }
            } catch (const Error& e) {
                throw FieldUnsuitable("pair {" + std::to_string(f1) + "," + std::to_string(f2) +
                                      "} not repairable over " + field_->describe() + ": " +
                                      e.what());
            }
        }
    }
    // Every single failure with the default partner policy. Singularity of
    // the recovery system is data-independent, so zero blocks suffice.
    Row zero_data(params_.file_symbols, 0);
    auto blocks = encode(zero_data);
    std::vector<Row> stored;
    for (auto& blk : blocks) stored.push_back(blk.symbols);
    for (uint32_t fdev = 0; fdev < params_.n; ++fdev) {
        try {
            (void)repair_single(*this, fdev, stored, z);
        } catch (const Error& e) {
            throw FieldUnsuitable("single failure " + std::to_string(fdev) +
                                  " not repairable over " + field_->describe() + ": " + e.what());
        }
    }
}

std::vector<DeviceBlock> Code::encode(const Row& data) const {
    if (data.size() != params_.file_symbols)
        throw Error("data must have M = " + std::to_string(params_.file_symbols) + " symbols");
    std::vector<DeviceBlock> out;
    out.reserve(params_.n);
    for (uint32_t m = 0; m < params_.n; ++m)
        out.push_back({m, encode_device(m, data)});
    return out;
}

Row Code::encode_device(uint32_t m, const Row& data) const {
    if (data.size() != params_.file_symbols) throw Error("data length mismatch");
    const Field& f = *field_;
    uint32_t alpha = params_.alpha;
    const DeviceSpec& dev = devices_.at(m);
    Row block(alpha);
    for (uint32_t j = 0; j < alpha; ++j) {
        auto [u, w] = dev.coeffs[j];
        block[j] = f.add(f.mul(u, data[j]), f.mul(w, data[alpha + j]));
    }
    return block;
}

Row Code::decode(const DeviceBlock& x, const DeviceBlock& y) const {
    if (x.device == y.device) throw Error("decode needs two distinct devices");
    uint32_t alpha = params_.alpha;
    if (x.symbols.size() != alpha || y.symbols.size() != alpha)
        throw Error("inconsistent block length");
    const DeviceSpec& dx = devices_.at(x.device);
    const DeviceSpec& dy = devices_.at(y.device);
    Row data(params_.file_symbols);
    // alpha independent 2x2 systems, one per coordinate.
    for (uint32_t j = 0; j < alpha; ++j) {
        Matrix sys = Matrix::from_rows(field_, {{dx.coeffs[j].first, dx.coeffs[j].second},
                                                {dy.coeffs[j].first, dy.coeffs[j].second}});
        Row sol = mat_solve(sys, {x.symbols[j], y.symbols[j]});
        data[j] = sol[0];
        data[alpha + j] = sol[1];
    }
    return data;
}

EquivalentCode Code::change_of_variables(uint32_t f1, uint32_t f2) const {
    if (f1 == f2) throw Error("failed devices must be distinct");
    if (f1 >= params_.n || f2 >= params_.n) throw Error("device index out of range");
    const Field& f = *field_;
    uint32_t alpha = params_.alpha;
    EquivalentCode eq;
    eq.f1 = f1;
    eq.f2 = f2;
    eq.base = this;
    for (uint32_t j = 0; j < alpha; ++j) {
        auto [u1, w1] = devices_[f1].coeffs[j];
        auto [u2, w2] = devices_[f2].coeffs[j];
        // T_j rows are f1's and f2's coefficient pairs; invertible by
        // coordinate-wise MDS.
        uint32_t det = f.sub(f.mul(u1, w2), f.mul(u2, w1));
        uint32_t dinv = f.inv(det);
        std::array<uint32_t, 4> T{u1, w1, u2, w2};
        std::array<uint32_t, 4> Tinv{f.mul(dinv, w2), f.mul(dinv, f.neg(w1)),
                                     f.mul(dinv, f.neg(u2)), f.mul(dinv, u1)};
        eq.transforms.push_back(T);
        eq.inv_transforms.push_back(Tinv);
    }
    for (const DeviceSpec& dev : devices_) {
        DeviceSpec tdev = dev;
        if (dev.index == f1) {
            tdev.role = DeviceRole::SystematicA;
            for (uint32_t j = 0; j < alpha; ++j) tdev.coeffs[j] = {1, 0};
        } else if (dev.index == f2) {
            tdev.role = DeviceRole::SystematicB;
            for (uint32_t j = 0; j < alpha; ++j) tdev.coeffs[j] = {0, 1};
        } else {
            for (uint32_t j = 0; j < alpha; ++j) {
                auto [u, w] = dev.coeffs[j];
                const auto& Ti = eq.inv_transforms[j];
                tdev.coeffs[j] = {f.add(f.mul(u, Ti[0]), f.mul(w, Ti[2])),
                                  f.add(f.mul(u, Ti[1]), f.mul(w, Ti[3]))};
            }
        }
        eq.devices.push_back(std::move(tdev));
    }
    return eq;
}

std::pair<Matrix, Matrix> Code::systematic_view(uint32_t m) const {
    return device_matrices(field_, devices_.at(m));
}

std::pair<Matrix, Matrix> device_matrices(const FieldPtr& field, const DeviceSpec& dev) {
    Row u, w;
    for (auto [uj, wj] : dev.coeffs) {
        u.push_back(uj);
        w.push_back(wj);
    }
    return {Matrix::diagonal(field, u), Matrix::diagonal(field, w)};
}

}  // namespace mscr
