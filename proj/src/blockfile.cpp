#include "mscr/blockfile.hpp"

#include <cstring>
#include <fstream>

namespace mscr {

namespace {

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(v & 0xFF);
    out.push_back(v >> 8);
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xFF);
}

void put_u64(std::vector<uint8_t>& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back((v >> (8 * i)) & 0xFF);
}

struct Reader {
    const std::vector<uint8_t>& buf;
    size_t pos = 0;
    uint8_t u8() {
        if (pos >= buf.size()) throw IoError("truncated block file");
        return buf[pos++];
    }
    uint16_t u16() { return static_cast<uint16_t>(u8() | (u8() << 8)); }
    uint32_t u32() {
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(u8()) << (8 * i);
        return v;
    }
    uint64_t u64() {
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(u8()) << (8 * i);
        return v;
    }
};

}  // namespace

bool BlockFileHeader::compatible_with(const BlockFileHeader& o) const {
    return field_kind == o.field_kind && order == o.order && reduction_poly == o.reduction_poly &&
           omega == o.omega && params.n == o.params.n && params.d == o.params.d &&
           params.t == o.params.t && params.alpha == o.params.alpha && stripes == o.stripes &&
           original_size == o.original_size;
}

FieldPtr BlockFileHeader::make_field() const {
    if (field_kind == FieldKind::Prime) return Field::prime(order, omega);
    uint32_t m = 0;
    while ((1u << m) < order) ++m;
    return Field::binary(m, reduction_poly, omega);
}

BlockFileHeader BlockFileHeader::for_device(const Code& code, uint32_t device, uint32_t stripes,
                                            uint64_t original_size) {
    const Field& f = *code.field();
    BlockFileHeader h;
    h.field_kind = f.kind();
    h.order = f.order();
    h.reduction_poly = f.reduction_poly();
    h.omega = f.generator();
    h.params = code.params();
    h.device_index = device;
    h.role = code.device(device).role;
    h.redundancy_id = code.device(device).redundancy_id;
    h.stripes = stripes;
    h.original_size = original_size;
    return h;
}

std::vector<uint8_t> serialize_block_file(const BlockFile& bf) {
    const BlockFileHeader& h = bf.header;
    if (bf.symbols.size() != static_cast<size_t>(h.stripes) * h.params.alpha)
        throw IoError("payload length must be stripes * alpha");
    std::vector<uint8_t> out;
    out.insert(out.end(), h.kMagic, h.kMagic + 8);
    put_u16(out, BlockFileHeader::kVersion);
    out.push_back(static_cast<uint8_t>(h.field_kind));
    out.push_back(0);  // reserved
    put_u32(out, h.order);
    put_u32(out, h.reduction_poly);
    put_u32(out, h.omega);
    put_u16(out, static_cast<uint16_t>(h.params.n));
    put_u16(out, static_cast<uint16_t>(h.params.k));
    put_u16(out, static_cast<uint16_t>(h.params.d));
    put_u16(out, static_cast<uint16_t>(h.params.t));
    put_u16(out, static_cast<uint16_t>(h.params.alpha));
    put_u16(out, static_cast<uint16_t>(h.device_index));
    out.push_back(static_cast<uint8_t>(h.role));
    out.push_back(0);  // reserved
    put_u32(out, h.redundancy_id);
    put_u32(out, h.stripes);
    put_u64(out, h.original_size);

    uint32_t width = h.symbol_width();
    for (uint32_t s : bf.symbols) {
        if (s >= h.order) throw IoError("symbol out of field range");
        out.push_back(s & 0xFF);
        if (width == 2) out.push_back((s >> 8) & 0xFF);
    }
    return out;
}

BlockFile parse_block_file(const std::vector<uint8_t>& bytes) {
    Reader r{bytes};
    char magic[8];
    for (char& c : magic) c = static_cast<char>(r.u8());
    if (std::memcmp(magic, BlockFileHeader::kMagic, 8) != 0)
        throw IoError("not a block file (bad magic)");
    uint16_t version = r.u16();
    if (version != BlockFileHeader::kVersion)
        throw IoError("unsupported block file version " + std::to_string(version));

    BlockFile bf;
    BlockFileHeader& h = bf.header;
    uint8_t kind = r.u8();
    if (kind > 1) throw IoError("bad field kind");
    h.field_kind = static_cast<FieldKind>(kind);
    r.u8();
    h.order = r.u32();
    h.reduction_poly = r.u32();
    h.omega = r.u32();
    h.params.n = r.u16();
    h.params.k = r.u16();
    h.params.d = r.u16();
    h.params.t = r.u16();
    h.params.alpha = r.u16();
    h.params.file_symbols = h.params.k * h.params.alpha;
    h.device_index = r.u16();
    uint8_t role = r.u8();
    if (role > 2) throw IoError("bad device role");
    h.role = static_cast<DeviceRole>(role);
    r.u8();
    h.redundancy_id = r.u32();
    h.stripes = r.u32();
    h.original_size = r.u64();

    uint32_t width = h.symbol_width();
    size_t count = static_cast<size_t>(h.stripes) * h.params.alpha;
    if (bytes.size() - r.pos != count * width)
        throw IoError("payload length mismatch");
    bf.symbols.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        uint32_t v = r.u8();
        if (width == 2) v |= static_cast<uint32_t>(r.u8()) << 8;
        if (v >= h.order) throw IoError("symbol out of field range");
        bf.symbols.push_back(v);
    }
    return bf;
}

void write_block_file(const std::string& path, const BlockFile& bf) {
    auto bytes = serialize_block_file(bf);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + path + " for writing");
    os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!os) throw IoError("short write to " + path);
}

BlockFile read_block_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(is)),
                               std::istreambuf_iterator<char>());
    return parse_block_file(bytes);
}

}  // namespace mscr
