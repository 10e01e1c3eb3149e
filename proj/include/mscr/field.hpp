#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mscr/errors.hpp"

namespace mscr {

enum class FieldKind : uint8_t { Prime = 0, Binary = 1 };

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// A finite field GF(p) with p prime <= 2^16, or GF(2^m) with m <= 16.
/// Elements are canonical residues in [0, q): integer residues for prime
/// fields, polynomial bit representations for binary extensions. Every
/// operation returns a canonical value. A Field is immutable after
/// construction and safe to share across threads.
class Field {
public:
    static FieldPtr prime(uint32_t p, std::optional<uint32_t> generator = std::nullopt);
    static FieldPtr binary(uint32_t m, std::optional<uint32_t> reduction_poly = std::nullopt,
                           std::optional<uint32_t> generator = std::nullopt);

    /// The default field: GF(2^8) with reduction polynomial 0x11d and
    /// omega = the class of x.
    static FieldPtr gf256();

    FieldKind kind() const { return kind_; }
    uint32_t order() const { return q_; }
    uint32_t characteristic() const { return kind_ == FieldKind::Prime ? q_ : 2; }
    uint32_t generator() const { return omega_; }
    uint32_t reduction_poly() const { return poly_; }
    uint32_t ext_degree() const { return m_; }

    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t sub(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t mul(uint32_t a, uint32_t b) const;
    /// Multiplicative inverse; inverting zero throws SingularMatrix-free
    /// FieldError (never a silent value).
    uint32_t inv(uint32_t a) const;
    /// a^e with e possibly negative (meaning inv(a)^|e|). pow(0, 0) = 1.
    uint32_t pow(uint32_t a, int64_t e) const;
    uint32_t omega_pow(int64_t e) const { return pow(omega_, e); }

    bool same_as(const Field& other) const;
    std::string describe() const;

private:
    Field() = default;
    void build_binary_tables();

    FieldKind kind_ = FieldKind::Prime;
    uint32_t q_ = 0;
    uint32_t m_ = 0;       // extension degree, 0 for prime fields
    uint32_t poly_ = 0;    // reduction polynomial, 0 for prime fields
    uint32_t omega_ = 0;
    std::vector<uint32_t> log_;      // binary fields only
    std::vector<uint32_t> antilog_;  // binary fields only
};

/// An element tagged with its field; arithmetic on mixed-field operands is
/// rejected. The untagged fast path is Field's uint32_t interface.
class FieldElement {
public:
    FieldElement(FieldPtr field, uint32_t value);

    uint32_t value() const { return value_; }
    const FieldPtr& field() const { return field_; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement inverse() const;
    FieldElement pow(int64_t e) const;
    bool operator==(const FieldElement& o) const;

private:
    void check_same(const FieldElement& o) const;
    FieldPtr field_;
    uint32_t value_;
};

}  // namespace mscr
