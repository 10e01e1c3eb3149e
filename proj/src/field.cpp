#include "mscr/field.hpp"

#include <sstream>

namespace mscr {
namespace {

bool is_prime(uint32_t p) {
    if (p < 2) return false;
    for (uint32_t f = 2; f * f <= p; ++f)
        if (p % f == 0) return false;
    return true;
}

std::vector<uint32_t> prime_factors(uint32_t n) {
    std::vector<uint32_t> fs;
    for (uint32_t f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            fs.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

uint32_t mod_pow(uint64_t base, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    base %= p;
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<uint32_t>(r);
}

// Carryless multiply modulo the reduction polynomial.
uint32_t clmul_mod(uint32_t a, uint32_t b, uint32_t poly, uint32_t m) {
    uint64_t acc = 0;
    uint64_t aa = a;
    while (b) {
        if (b & 1) acc ^= aa;
        aa <<= 1;
        b >>= 1;
    }
    for (int bit = 2 * static_cast<int>(m) - 2; bit >= static_cast<int>(m); --bit) {
        if (acc >> bit & 1) acc ^= static_cast<uint64_t>(poly) << (bit - m);
    }
    return static_cast<uint32_t>(acc);
}

int poly_degree(uint32_t p) {
    int d = -1;
    while (p) {
        ++d;
        p >>= 1;
    }
    return d;
}

// Remainder of polynomial division over GF(2).
uint32_t poly_mod(uint64_t a, uint32_t b) {
    int db = poly_degree(b);
    for (int bit = 63; bit >= db; --bit) {
        if (a >> bit & 1) a ^= static_cast<uint64_t>(b) << (bit - db);
    }
    return static_cast<uint32_t>(a);
}

bool poly_irreducible(uint32_t poly, uint32_t m) {
    // Trial division by every polynomial of degree 1..m/2.
    for (uint32_t d = 1; 2 * d <= m; ++d) {
        for (uint32_t f = (1u << d); f < (1u << (d + 1)); ++f) {
            if (poly_mod(poly, f) == 0) return false;
        }
    }
    return true;
}

// Conventional primitive polynomials for GF(2^m), m = 1..16; x is a
// generator for each of these.
constexpr uint32_t kDefaultPoly[17] = {
    0,      0x3,    0x7,    0xB,    0x13,   0x25,   0x43,   0x89,  0x11D,
    0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B};

}  // namespace

FieldPtr Field::prime(uint32_t p, std::optional<uint32_t> generator) {
    if (p < 2 || p > (1u << 16))
        throw FieldError("prime field order must be in [2, 2^16], got " + std::to_string(p));
    if (!is_prime(p)) throw FieldError(std::to_string(p) + " is not prime");

    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = FieldKind::Prime;
    f->q_ = p;

    auto is_generator = [&](uint32_t g) {
        if (g == 0 || g % p == 0) return false;
        for (uint32_t fac : prime_factors(p - 1))
            if (mod_pow(g, (p - 1) / fac, p) == 1) return false;
        return true;
    };
    if (generator) {
        if (p > 2 && !is_generator(*generator))
            throw FieldError(std::to_string(*generator) + " does not generate GF(" +
                             std::to_string(p) + ")*");
        f->omega_ = *generator % p;
    } else {
        uint32_t g = 1;
        while (p > 2 && !is_generator(g)) ++g;
        f->omega_ = g % p;
    }
    if (p == 2) f->omega_ = 1;
    return f;
}

FieldPtr Field::binary(uint32_t m, std::optional<uint32_t> reduction_poly,
                       std::optional<uint32_t> generator) {
    if (m < 1 || m > 16)
        throw FieldError("binary extension degree must be in [1, 16], got " + std::to_string(m));
    uint32_t poly = reduction_poly.value_or(kDefaultPoly[m]);
    if (poly_degree(poly) != static_cast<int>(m))
        throw FieldError("reduction polynomial degree mismatch");
    if (!poly_irreducible(poly, m))
        throw FieldError("reduction polynomial is reducible");

    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = FieldKind::Binary;
    f->q_ = 1u << m;
    f->m_ = m;
    f->poly_ = poly;
    f->omega_ = generator.value_or(m == 1 ? 1 : 2);
    f->build_binary_tables();
    return f;
}

FieldPtr Field::gf256() {
    static FieldPtr f = binary(8, 0x11D, 2);
    return f;
}

void Field::build_binary_tables() {
    // Walk powers of omega; omega generates iff the first q-1 powers are
    // pairwise distinct (equivalently log gets filled exactly once each).
    log_.assign(q_, UINT32_MAX);
    antilog_.assign(2 * (q_ - 1), 0);
    uint32_t x = 1;
    for (uint32_t i = 0; i < q_ - 1; ++i) {
        if (log_[x] != UINT32_MAX)
            throw FieldError("omega=" + std::to_string(omega_) + " does not generate GF(2^" +
                             std::to_string(m_) + ")*");
        log_[x] = i;
        antilog_[i] = x;
        antilog_[i + q_ - 1] = x;
        x = clmul_mod(x, omega_, poly_, m_);
    }
    if (x != 1) throw FieldError("omega does not generate the multiplicative group");
}

uint32_t Field::add(uint32_t a, uint32_t b) const {
    if (kind_ == FieldKind::Binary) return a ^ b;
    return (a + b) % q_;
}

uint32_t Field::sub(uint32_t a, uint32_t b) const {
    if (kind_ == FieldKind::Binary) return a ^ b;
    return (a + q_ - b) % q_;
}

uint32_t Field::neg(uint32_t a) const {
    if (kind_ == FieldKind::Binary) return a;
    return a == 0 ? 0 : q_ - a;
}

uint32_t Field::mul(uint32_t a, uint32_t b) const {
    if (kind_ == FieldKind::Binary) {
        if (a == 0 || b == 0) return 0;
        return antilog_[log_[a] + log_[b]];
    }
    return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % q_);
}

uint32_t Field::inv(uint32_t a) const {
    if (a == 0) throw FieldError("inversion of zero in " + describe());
    if (kind_ == FieldKind::Binary) return antilog_[(q_ - 1) - log_[a]];
    return mod_pow(a, q_ - 2, q_);
}

uint32_t Field::pow(uint32_t a, int64_t e) const {
    if (a == 0) {
        if (e < 0) throw FieldError("inversion of zero in " + describe());
        return e == 0 ? 1 : 0;
    }
    int64_t qm1 = q_ - 1;
    int64_t r = e % qm1;
    if (r < 0) r += qm1;
    if (kind_ == FieldKind::Binary)
        return antilog_[static_cast<uint64_t>(log_[a]) * r % (q_ - 1)];
    return mod_pow(a, static_cast<uint64_t>(r), q_);
}

bool Field::same_as(const Field& o) const {
    return kind_ == o.kind_ && q_ == o.q_ && poly_ == o.poly_ && omega_ == o.omega_;
}

std::string Field::describe() const {
    std::ostringstream os;
    if (kind_ == FieldKind::Prime) {
        os << "GF(" << q_ << ")";
    } else {
        os << "GF(2^" << m_ << ", poly=0x" << std::hex << poly_ << std::dec << ")";
    }
    os << " omega=" << omega_;
    return os.str();
}

FieldElement::FieldElement(FieldPtr field, uint32_t value)
    : field_(std::move(field)), value_(value) {
    if (value_ >= field_->order()) throw FieldError("element out of range");
}

void FieldElement::check_same(const FieldElement& o) const {
    if (!field_->same_as(*o.field_)) throw FieldError("mixed-field operands");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same(o);
    return {field_, field_->add(value_, o.value_)};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same(o);
    return {field_, field_->sub(value_, o.value_)};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same(o);
    return {field_, field_->mul(value_, o.value_)};
}

FieldElement FieldElement::inverse() const { return {field_, field_->inv(value_)}; }

FieldElement FieldElement::pow(int64_t e) const { return {field_, field_->pow(value_, e)}; }

bool FieldElement::operator==(const FieldElement& o) const {
    return field_->same_as(*o.field_) && value_ == o.value_;
}

}  // namespace mscr
