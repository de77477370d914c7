#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "invforge/lab.hpp"
#include "invforge/steenrod.hpp"

using namespace invforge;

namespace {

FieldPtr field_q(unsigned q) {
    auto pe = prime_power(q);
    REQUIRE(pe.has_value());
    return Field::make(pe->first, pe->second);
}

} // namespace

TEST_CASE("invariant basis examples") {
    auto F2 = field_q(2);
    Action a = conjugation_action(GroupKind::GL2, SpaceKind::Gl2, F2);
    // degree 1: only the trace
    auto b1 = invariant_basis(a, 1);
    REQUIRE(b1.size() == 1);
    const Poly tr = Poly::variable(a.ring, 0) + Poly::variable(a.ring, 3);
    CHECK(b1[0] == tr);
    // degree 2: dimension 3
    CHECK(invariant_dim(a, 2) == 3);
    // degree 0: constants
    CHECK(invariant_dim(a, 0) == 1);
    auto b0 = invariant_basis(a, 0);
    REQUIRE(b0.size() == 1);
    CHECK(b0[0] == Poly::constant(a.ring, 1));
}

TEST_CASE("oracle agreement: generators vs full image") {
    for (unsigned q : {2u, 3u}) {
        auto F = field_q(q);
        for (const Case& c : table_cases(F)) {
            Action a = conjugation_action(c.group, c.space, F);
            const unsigned D = c.space == SpaceKind::Gl2 ? 6 : 8;
            CHECK(invariant_dims_upto(a, D, false) == invariant_dims_upto(a, D, true));
        }
    }
    // spot check at q = 4
    auto F4 = field_q(4);
    Action a4 = conjugation_action(GroupKind::GL2, SpaceKind::Gl2, F4);
    for (unsigned d : {1u, 3u, 5u, 6u})
        CHECK(invariant_dim(a4, d, false) == invariant_dim(a4, d, true));
}

TEST_CASE("expected series") {
    // gl2/GL2 q=2: (1 + z^4) / ((1-z)(1-z^2)(1-z^3)(1-z^2))
    {
        Case c{GroupKind::GL2, SpaceKind::Gl2, field_q(2)};
        CHECK(expected_series(c, 6) ==
              std::vector<std::int64_t>{1, 1, 3, 4, 8, 10, 17});
        CHECK(expected_a_invariant(c) == -4);
    }
    // gl2/GL2 q=3: expansion of (1+z^9)/((1-z)(1-z^2)(1-z^4)(1-z^6))
    {
        Case c{GroupKind::GL2, SpaceKind::Gl2, field_q(3)};
        CHECK(expected_series(c, 4) == std::vector<std::int64_t>{1, 1, 2, 2, 4});
        CHECK(expected_a_invariant(c) == -4);
    }
    // O2 symmetric q=2: 1/((1-z)^2 (1-z^2))
    {
        Case c{GroupKind::O2, SpaceKind::Symmetric, field_q(2)};
        CHECK(expected_series(c, 3) == std::vector<std::int64_t>{1, 2, 4, 6});
        CHECK(expected_a_invariant(c) == -4); // -(1 + 2 + 1)
    }
    // alternating O2 q=3: 1/(1-z^2)
    {
        Case c{GroupKind::O2, SpaceKind::Alternating, field_q(3)};
        CHECK(expected_series(c, 5) == std::vector<std::int64_t>{1, 0, 1, 0, 1, 0});
    }
    // SL2 gl2 q=3: numerator exponent C(4,2) = 6
    {
        Case c{GroupKind::SL2, SpaceKind::Gl2, field_q(3)};
        const SeriesSpec s = case_series(c);
        CHECK(s.numer_exps == std::vector<int>{6});
        CHECK(s.denom_degrees == std::vector<int>{1, 2, 4, 3});
        CHECK(expected_a_invariant(c) == -4);
    }
    // 3-variable hypersurface cases have a-invariant -3
    for (unsigned q : {3u, 5u}) {
        CHECK(expected_a_invariant(Case{GroupKind::GL2, SpaceKind::Sl2, field_q(q)}) ==
              -3);
        CHECK(expected_a_invariant(Case{GroupKind::SL2, SpaceKind::Sl2, field_q(q)}) ==
              -3);
    }
    // polynomial cases: a-invariant is minus the sum of generator degrees
    for (unsigned q : {2u, 4u}) {
        const int qi = int(q);
        CHECK(expected_a_invariant(Case{GroupKind::GL2, SpaceKind::Sl2, field_q(q)}) ==
              -(3 + qi + qi * (qi - 1) / 2));
    }
}

TEST_CASE("hilbert function vs series") {
    // GL2(F_2) on gl2 up to degree 6: frozen expansion, oracle cross-checked
    {
        Case c{GroupKind::GL2, SpaceKind::Gl2, field_q(2)};
        Action a = conjugation_action(c.group, c.space, c.field);
        HilbertData h = hilbert_function(c, a, 6);
        CHECK(h.dims == std::vector<std::int64_t>{1, 1, 3, 4, 8, 10, 17});
        CHECK(h.dims == h.expected);
    }
    // O2(F_3) on gl2 up to degree 3
    {
        Case c{GroupKind::O2, SpaceKind::Gl2, field_q(3)};
        Action a = conjugation_action(c.group, c.space, c.field);
        HilbertData h = hilbert_function(c, a, 3);
        CHECK(h.dims == std::vector<std::int64_t>{1, 1, 4, 5});
        CHECK(h.dims == h.expected);
    }
    // trivial observation: the full ring when the group is trivial
    {
        auto F = field_q(2);
        Action triv = conjugation_action(GroupKind::O2, SpaceKind::Gl2, F);
        triv.subs = {identity_sub(triv.ring)};
        triv.gens = triv.subs;
        CHECK(invariant_dims_upto(triv, 2) ==
              std::vector<std::int64_t>{1, 4, 10});
    }
}

TEST_CASE("hsop check") {
    auto F2 = field_q(2);
    Suite s2 = gl2_suite(F2, find_irreducible_quadratic(*F2));
    CHECK(hsop_check(s2.primaries));

    // plain variables always qualify
    auto ring = space_ring(SpaceKind::Gl2, F2);
    std::vector<Poly> vars;
    for (unsigned i = 0; i < 4; ++i) vars.push_back(Poly::variable(ring, i));
    CHECK(hsop_check(vars));

    // degenerate set: (f1, f1^2, f3, f4) shares the zero locus of (f1, f3, f4)
    auto F3 = field_q(3);
    Suite s3 = gl2_suite(F3, find_irreducible_quadratic(*F3));
    std::vector<Poly> degen{s3.primaries[0], s3.primaries[0] * s3.primaries[0],
                            s3.primaries[2], s3.primaries[3]};
    CHECK_FALSE(hsop_check(degen));

    std::vector<Poly> three(vars.begin(), vars.begin() + 3);
    CHECK_THROWS_AS(hsop_check(three), std::invalid_argument);
}

TEST_CASE("subring membership of the Jacobian") {
    // odd characteristic: h^2 in R, h not in R
    {
        auto F = field_q(3);
        Suite s = gl2_suite(F, find_irreducible_quadratic(*F));
        const Poly& h = *s.secondary;
        CHECK(subring_membership(h * h, s.primaries));
        CHECK_FALSE(subring_membership(h, s.primaries));
    }
    // char 2: h lies in R
    for (unsigned q : {2u, 4u}) {
        auto F = field_q(q);
        Suite s = gl2_suite(F, find_irreducible_quadratic(*F));
        CHECK(subring_membership(*s.secondary, s.primaries));
    }
}

TEST_CASE("find_secondary") {
    // q=2: eta of degree 4 exists
    {
        auto F = field_q(2);
        Action a = conjugation_action(GroupKind::GL2, SpaceKind::Gl2, F);
        Suite s = gl2_suite(F, find_irreducible_quadratic(*F));
        const Poly eta = find_secondary(a, s.primaries, 4);
        CHECK(eta.degree() == 4);
        CHECK_FALSE(subring_membership(eta, s.primaries));
        for (const LinSub& sub : a.subs) CHECK(apply_substitution(eta, sub) == eta);
    }
    // q=3: eta exists at degree 9 (h is one witness), none at degree 8
    {
        auto F = field_q(3);
        Action a = conjugation_action(GroupKind::GL2, SpaceKind::Gl2, F);
        Suite s = gl2_suite(F, find_irreducible_quadratic(*F));
        const Poly eta = find_secondary(a, s.primaries, 9);
        CHECK_FALSE(subring_membership(eta, s.primaries));
        CHECK_THROWS_AS(find_secondary(a, s.primaries, 8), std::domain_error);
    }
}

TEST_CASE("decomposition count R + R*eta") {
    // dims_d = ci_d + ci_{d - q^2} for the gl2 case
    for (unsigned q : {2u, 3u}) {
        Case c{GroupKind::GL2, SpaceKind::Gl2, field_q(q)};
        Action a = conjugation_action(c.group, c.space, c.field);
        const unsigned D = 10;
        auto dims = invariant_dims_upto(a, D);
        const std::vector<int> degs{1, 2, int(q) + 1, int(q * q - q)};
        auto ci = product_series(degs, D);
        for (unsigned d = 0; d <= D; ++d) {
            std::int64_t want = ci[d];
            if (d >= q * q) want += ci[d - q * q];
            CHECK(dims[d] == want);
        }
    }
}

TEST_CASE("independence of the irreducible quadratic at q=3") {
    auto F = field_q(3);
    const Quadratic g1 = find_irreducible_quadratic(*F);
    const Quadratic g2{1, 2}; // x^2 - x + 2, also irreducible
    Suite s1 = gl2_suite(F, g1), s2 = gl2_suite(F, g2);
    for (unsigned d = 1; d <= 8; ++d) {
        FqMatrix m1 = span_matrix(s1.primaries, d);
        FqMatrix m2 = span_matrix(s2.primaries, d);
        const Rref r1 = rref(m1), r2 = rref(m2);
        CHECK(r1.rank == r2.rank);
        // identical row spaces: the RREF of the span is canonical
        for (std::size_t i = 0; i < r1.rank; ++i)
            for (std::size_t j = 0; j < m1.cols(); ++j)
                CHECK(m1.at(i, j) == m2.at(i, j));
    }
}

TEST_CASE("verify_case smoke runs") {
    {
        Report r = verify_case(Case{GroupKind::GL2, SpaceKind::Gl2, field_q(2)}, 8);
        CHECK(r.all_pass());
        CHECK(r.dims.size() == 9);
        // UFD flag true for even characteristic
        bool saw_ufd = false;
        for (const Check& ch : r.checks)
            if (ch.name == "ufd") {
                saw_ufd = true;
                CHECK(ch.expected == "true");
                CHECK(ch.pass);
            }
        CHECK(saw_ufd);
    }
    {
        Report r = verify_case(Case{GroupKind::GL2, SpaceKind::Gl2, field_q(3)}, 8);
        CHECK(r.all_pass());
        for (const Check& ch : r.checks)
            if (ch.name == "class_group_order") CHECK(ch.observed == "2");
    }
    {
        Report r = verify_case(Case{GroupKind::O2, SpaceKind::Symmetric, field_q(4)}, 8);
        CHECK(r.all_pass());
    }
    {
        Report r = verify_case(Case{GroupKind::O2, SpaceKind::Alternating, field_q(3)}, 6);
        CHECK(r.all_pass());
    }
}

TEST_CASE("report serialization") {
    Report r = verify_case(Case{GroupKind::O2, SpaceKind::Alternating, field_q(2)}, 4);
    const std::string j = report_json(r);
    CHECK(j.find("\"group\": \"o2\"") != std::string::npos);
    CHECK(j.find("\"space\": \"alternating\"") != std::string::npos);
    const std::string csv = report_csv(r);
    CHECK(csv.find("group,space,q,degree,computed,expected") == 0);
    const std::string txt = report_text(r);
    CHECK(txt.find("[pass]") != std::string::npos);
}
