#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "mscr/matrix.hpp"

using namespace mscr;

namespace {
Matrix random_matrix(const FieldPtr& f, size_t n, std::mt19937_64& rng) {
    Matrix m(f, n, n);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c)
            m.set(r, c, static_cast<uint32_t>(rng() % f->order()));
    return m;
}
}  // namespace

TEST_CASE("identity, rank and known inverse over GF(7)") {
    auto f = Field::prime(7, 3);
    Matrix i3 = Matrix::identity(f, 3);
    CHECK(mat_rank(i3) == 3);
    CHECK(mat_inverse(i3) == i3);

    Matrix m = Matrix::from_rows(f, {{1, 1}, {1, 3}});
    Matrix mi = mat_inverse(m);
    CHECK(mat_mul(m, mi) == Matrix::identity(f, 2));
    CHECK(mat_mul(mi, m) == Matrix::identity(f, 2));

    Matrix sing = Matrix::from_rows(f, {{1, 2}, {2, 4}});
    CHECK(mat_rank(sing) == 1);
    CHECK_THROWS_AS(mat_inverse(sing), SingularMatrix);
    CHECK_THROWS_AS(mat_solve(sing, Row{1, 1}), SingularMatrix);
}

TEST_CASE("solve round-trips against multiplication") {
    auto f = Field::gf256();
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix m = random_matrix(f, 4, rng);
        if (mat_rank(m) != 4) continue;
        Row x(4);
        for (auto& v : x) v = static_cast<uint32_t>(rng() % 256);
        Row rhs(4, 0);
        for (size_t r = 0; r < 4; ++r)
            for (size_t c = 0; c < 4; ++c) rhs[r] = f->add(rhs[r], f->mul(m.at(r, c), x[c]));
        CHECK(mat_solve(m, rhs) == x);
    }
}

TEST_CASE("try_solve reports inconsistency and handles wide systems") {
    auto f = Field::prime(7, 3);
    // x + y = 1 and 2x + 2y = 3 is inconsistent.
    Matrix bad = Matrix::from_rows(f, {{1, 1}, {2, 2}});
    Row sol;
    CHECK(!try_solve(bad, Row{1, 3}, &sol));
    // Consistent but underdetermined: any solution is accepted.
    Matrix wide = Matrix::from_rows(f, {{1, 2, 3}});
    REQUIRE(try_solve(wide, Row{5}, &sol));
    uint32_t acc = 0;
    for (size_t c = 0; c < 3; ++c) acc = f->add(acc, f->mul(wide.at(0, c), sol[c]));
    CHECK(acc == 5);
}

TEST_CASE("row helpers") {
    auto f = Field::prime(7, 3);
    Matrix m = Matrix::from_rows(f, {{1, 2}, {3, 4}});
    CHECK(row_mul(Row{1, 1}, m) == Row{4, 6});
    CHECK(dot(*f, Row{1, 2, 3}, Row{4, 5, 6}) == 4);  // 4 + 10 + 18 = 32 = 4 mod 7
    CHECK(row_scale(*f, 3, Row{1, 2, 3}) == Row{3, 6, 2});
    CHECK(is_zero_row(Row{0, 0}));
    CHECK(!is_zero_row(Row{0, 1}));
    Matrix t = transpose(m);
    CHECK(t.at(0, 1) == 3);
    CHECK(t.at(1, 0) == 2);
    CHECK(Matrix::diagonal(f, {1, 3, 2}).at(1, 1) == 3);
}

TEST_CASE("inverse is an involution on random invertible matrices") {
    auto f = Field::prime(13);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix m = random_matrix(f, 3, rng);
        if (mat_rank(m) != 3) continue;
        CHECK(mat_inverse(mat_inverse(m)) == m);
    }
}
