#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "invforge/fqlin.hpp"

#include <random>

using namespace invforge;

namespace {

FqMatrix random_matrix(const FieldPtr& F, std::size_t r, std::size_t c,
                       std::mt19937_64& rng, double density = 0.6) {
    FqMatrix m(F, r, c);
    std::uniform_int_distribution<unsigned> coin(0, 99);
    std::uniform_int_distribution<unsigned> val(1, F->q() - 1);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (coin(rng) < unsigned(density * 100)) m.at(i, j) = Felt(val(rng));
    return m;
}

} // namespace

TEST_CASE("tuned rref matches the serial reference (RREF is unique)") {
    std::mt19937_64 rng(12345);
    for (auto [p, e] : {std::pair(2u, 1u), {3u, 1u}, {2u, 2u}, {5u, 1u}, {3u, 2u}}) {
        auto F = Field::make(p, e);
        for (int trial = 0; trial < 8; ++trial) {
            FqMatrix a = random_matrix(F, 24, 17, rng);
            FqMatrix b = a;
            Rref ra = rref_reference(a);
            Rref rb = rref(b);
            CHECK(ra.rank == rb.rank);
            CHECK(ra.pivot_cols == rb.pivot_cols);
            CHECK(a == b);
        }
    }
}

TEST_CASE("kernel basis is an exact null space") {
    std::mt19937_64 rng(777);
    auto F = Field::make(3, 1);
    for (int trial = 0; trial < 10; ++trial) {
        FqMatrix m = random_matrix(F, 15, 22, rng, 0.4);
        const std::size_t rk = rank(m);
        FqMatrix k = kernel_basis(m);
        CHECK(k.rows() == m.cols() - rk);
        for (std::size_t v = 0; v < k.rows(); ++v)
            for (std::size_t i = 0; i < m.rows(); ++i) {
                Felt acc = 0;
                for (std::size_t j = 0; j < m.cols(); ++j)
                    acc = F->add(acc, F->mul(m.at(i, j), k.at(v, j)));
                CHECK(acc == 0);
            }
    }
}

TEST_CASE("rref is idempotent and rank bounded") {
    std::mt19937_64 rng(31337);
    auto F = Field::make(2, 2);
    for (int trial = 0; trial < 6; ++trial) {
        FqMatrix m = random_matrix(F, 20, 20, rng);
        rref(m);
        FqMatrix again = m;
        Rref r2 = rref(again);
        CHECK(again == m);
        CHECK(r2.rank <= 20);
    }
}

TEST_CASE("row span membership") {
    auto F = Field::make(5, 1);
    FqMatrix m(F, 2, 3);
    // rows (1,2,0) and (0,1,1)
    m.at(0, 0) = 1; m.at(0, 1) = 2;
    m.at(1, 1) = 1; m.at(1, 2) = 1;
    FqMatrix r = m;
    Rref info = rref(r);
    std::vector<Felt> in = {1, 3, 1};  // row0 + row1
    std::vector<Felt> out = {0, 0, 1};
    CHECK(in_row_span(r, info, in));
    CHECK_FALSE(in_row_span(r, info, out));
}

TEST_CASE("identity and zero matrices") {
    auto F = Field::make(7, 1);
    FqMatrix id(F, 4, 4);
    for (unsigned i = 0; i < 4; ++i) id.at(i, i) = 1;
    CHECK(rank(id) == 4);
    CHECK(kernel_basis(id).rows() == 0);
    FqMatrix zero(F, 3, 5);
    CHECK(rank(zero) == 0);
    CHECK(kernel_basis(zero).rows() == 5);
}
