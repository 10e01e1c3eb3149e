#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "mscr/matrix.hpp"

namespace mscr {

/// (n, k=2, d, t=2) MSCR parameters. alpha = d - k + t, M = k * alpha,
/// beta = beta' = 1 (scalar code: every transfer is one symbol).
struct CodeParams {
    uint32_t n = 0;
    uint32_t k = 2;
    uint32_t d = 0;
    uint32_t t = 2;
    uint32_t alpha = 0;
    uint32_t file_symbols = 0;  // M

    /// n defaults to d + t.
    static CodeParams make(uint32_t d, std::optional<uint32_t> n = std::nullopt);
    void validate() const;
};

enum class DeviceRole : uint8_t { SystematicA = 0, SystematicB = 1, Redundancy = 2 };

/// Per-device generator: symbol_j = u_j * a_j + w_j * b_j.
struct DeviceSpec {
    uint32_t index = 0;
    DeviceRole role = DeviceRole::Redundancy;
    uint32_t redundancy_id = 0;  // i for redundancy devices, unused otherwise
    std::vector<std::pair<uint32_t, uint32_t>> coeffs;  // alpha pairs (u_j, w_j)
};

struct DeviceBlock {
    uint32_t device = 0;
    Row symbols;  // exactly alpha
};

class Code;

/// The code after a change of variables making the failed pair {f1, f2}
/// systematic: a' = f1's stored block, b' = f2's. Per coordinate j the
/// 2x2 basis change T_j maps (a_j, b_j) to (a'_j, b'_j); live devices'
/// coefficient pairs are multiplied by T_j^{-1} on the right.
struct EquivalentCode {
    uint32_t f1 = 0, f2 = 0;
    std::vector<std::array<uint32_t, 4>> transforms;      // T_j, row-major 2x2
    std::vector<std::array<uint32_t, 4>> inv_transforms;  // T_j^{-1}
    std::vector<DeviceSpec> devices;                      // transformed table
    const Code* base = nullptr;
};

/// The k=2 exact MSCR code: two systematic devices plus s = n-2 redundancy
/// devices, redundancy i carrying coefficients (1, omega^{(i+j-1) mod alpha})
/// at coordinate j. build() validates repairability of every failure pair and
/// every single failure and throws FieldUnsuitable on a singular system.
class Code {
public:
    static Code build(const CodeParams& params, FieldPtr field);

    const CodeParams& params() const { return params_; }
    const FieldPtr& field() const { return field_; }
    const std::vector<DeviceSpec>& devices() const { return devices_; }
    const DeviceSpec& device(uint32_t m) const { return devices_.at(m); }

    /// data = (a_1..a_alpha, b_1..b_alpha), M symbols.
    std::vector<DeviceBlock> encode(const Row& data) const;
    Row encode_device(uint32_t m, const Row& data) const;

    /// MDS decode from any two distinct devices.
    Row decode(const DeviceBlock& x, const DeviceBlock& y) const;

    EquivalentCode change_of_variables(uint32_t f1, uint32_t f2) const;

    /// Expands device m's coefficient pairs to diagonal alpha x alpha
    /// matrices (A_m, B_m) with r_m = A_m a + B_m b.
    std::pair<Matrix, Matrix> systematic_view(uint32_t m) const;

private:
    Code(CodeParams params, FieldPtr field);
    void validate_repairability() const;

    CodeParams params_;
    FieldPtr field_;
    std::vector<DeviceSpec> devices_;
};

/// (A_m, B_m) for a device table entry, usable on EquivalentCode tables too.
std::pair<Matrix, Matrix> device_matrices(const FieldPtr& field, const DeviceSpec& dev);

}  // namespace mscr
