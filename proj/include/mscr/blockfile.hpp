#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mscr/code.hpp"

namespace mscr {

struct IoError : Error {
    using Error::Error;
};

/// On-disk per-device block file: a fixed little-endian header carrying the
/// field spec, code parameters and device identity, followed by
/// stripes * alpha symbols at 1 byte each for q <= 256, 2 bytes otherwise.
struct BlockFileHeader {
    static constexpr char kMagic[8] = {'M', 'S', 'C', 'R', 'B', 'L', 'K', '\0'};
    static constexpr uint16_t kVersion = 1;

    FieldKind field_kind = FieldKind::Binary;
    uint32_t order = 256;
    uint32_t reduction_poly = 0;
    uint32_t omega = 0;
    CodeParams params;
    uint32_t device_index = 0;
    DeviceRole role = DeviceRole::SystematicA;
    uint32_t redundancy_id = 0;
    uint32_t stripes = 0;
    uint64_t original_size = 0;  // true input length in bytes, pre-padding

    uint32_t symbol_width() const { return order <= 256 ? 1 : 2; }
    /// Everything except the device identity must agree for two block files
    /// to belong to the same encoded object.
    bool compatible_with(const BlockFileHeader& o) const;
    FieldPtr make_field() const;
    static BlockFileHeader for_device(const Code& code, uint32_t device, uint32_t stripes,
                                      uint64_t original_size);
};

struct BlockFile {
    BlockFileHeader header;
    Row symbols;  // stripes * alpha
};

std::vector<uint8_t> serialize_block_file(const BlockFile& bf);
BlockFile parse_block_file(const std::vector<uint8_t>& bytes);

void write_block_file(const std::string& path, const BlockFile& bf);
BlockFile read_block_file(const std::string& path);

}  // namespace mscr
