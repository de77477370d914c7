#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "invforge/groups.hpp"
#include "invforge/steenrod.hpp"

#include <random>

using namespace invforge;

namespace {

Poly rand_poly(const RingPtr& ring, std::mt19937_64& rng, int max_deg = 2,
               int nterms = 4) {
    const unsigned n = ring->arity();
    std::uniform_int_distribution<unsigned> cdist(0, ring->field().q() - 1);
    std::uniform_int_distribution<unsigned> edist(0, unsigned(max_deg));
    std::vector<Term> ts;
    for (int t = 0; t < nterms; ++t) {
        Mono m = 0;
        for (unsigned i = 0; i < n; ++i) m |= mono_var(i, n, edist(rng));
        ts.push_back({m, Felt(cdist(rng))});
    }
    return Poly(ring, std::move(ts));
}

Poly det_poly(const RingPtr& ring) {
    return Poly::variable(ring, 0) * Poly::variable(ring, 3) -
           Poly::variable(ring, 1) * Poly::variable(ring, 2);
}

Poly f3_formula(const RingPtr& ring) {
    const unsigned q = ring->field().q();
    const Poly a = Poly::variable(ring, 0), b = Poly::variable(ring, 1),
               c = Poly::variable(ring, 2), d = Poly::variable(ring, 3);
    return a.pow(q) * d + a * d.pow(q) - b.pow(q) * c - b * c.pow(q);
}

} // namespace

TEST_CASE("Lucas binomials") {
    CHECK(binomial_mod_p(4, 2, 2) == 0);
    CHECK(binomial_mod_p(5, 2, 5) == 0);
    CHECK(binomial_mod_p(6, 3, 5) == 0);   // 20 = 0 mod 5
    CHECK(binomial_mod_p(7, 3, 5) == 0);   // 35
    CHECK(binomial_mod_p(8, 4, 7) == 0);   // 70
    CHECK(binomial_mod_p(9, 4, 7) == 126 % 7);
    CHECK(binomial_mod_p(3, 1, 3) == 0);
    CHECK(binomial_mod_p(4, 1, 3) == 1);
    for (unsigned q : {4u, 8u, 9u}) {
        auto [p, e] = *prime_power(q);
        for (unsigned k = 1; k < q; ++k) CHECK(binomial_mod_p(q, k, p) == 0);
    }
}

TEST_CASE("total expansion basics") {
    auto F3 = Field::make(3, 1);
    auto ring = space_ring(SpaceKind::Gl2, F3);
    // constants are fixed by the algebra map
    auto e0 = steenrod_total(Poly::constant(ring, 2));
    CHECK(e0.size() == 1);
    CHECK(e0[0] == Poly::constant(ring, 2));

    // P(a) = a + a^q T
    const Poly a = Poly::variable(ring, 0);
    auto ea = steenrod_total(a);
    REQUIRE(ea.size() == 2);
    CHECK(ea[0] == a);
    CHECK(ea[1] == a.pow(3));
}

TEST_CASE("P1(det) equals the third primary invariant") {
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        auto [p, e] = *prime_power(q);
        auto ring = space_ring(SpaceKind::Gl2, Field::make(p, e));
        CHECK(steenrod_component(det_poly(ring), 1) == f3_formula(ring));
    }
}

TEST_CASE("components of det") {
    auto ring2 = space_ring(SpaceKind::Gl2, Field::make(2, 1));
    // q=2: signs collapse, a^2 d + a d^2 + b^2 c + b c^2
    CHECK(to_text(steenrod_component(det_poly(ring2), 1)) ==
          "1*a^2*d + 1*a*d^2 + 1*b^2*c + 1*b*c^2");

    auto ring3 = space_ring(SpaceKind::Gl2, Field::make(3, 1));
    const Poly det = det_poly(ring3);
    CHECK(steenrod_component(det, 0) == det);
    for (unsigned i : {3u, 4u, 7u})
        CHECK(steenrod_component(det, i).is_zero());
    // P^2(det) is the Frobenius twist of det
    const Poly a = Poly::variable(ring3, 0), b = Poly::variable(ring3, 1),
               c = Poly::variable(ring3, 2), d = Poly::variable(ring3, 3);
    CHECK(steenrod_component(det, 2) == a.pow(3) * d.pow(3) - b.pow(3) * c.pow(3));
}

TEST_CASE("P^i raises degree by i(q-1)") {
    std::mt19937_64 rng(3);
    auto ring = space_ring(SpaceKind::Gl2, Field::make(3, 1));
    const Poly f = det_poly(ring) * det_poly(ring);
    auto exp = steenrod_total(f);
    for (std::size_t i = 0; i < exp.size(); ++i) {
        if (exp[i].is_zero()) continue;
        CHECK(exp[i].is_homogeneous());
        CHECK(exp[i].degree() == f.degree() + int(i) * 2);
    }
}

TEST_CASE("naturality under degree-preserving substitutions") {
    std::mt19937_64 rng(17);
    for (unsigned q : {2u, 3u}) {
        auto [p, e] = *prime_power(q);
        auto F = Field::make(p, e);
        auto ring = space_ring(SpaceKind::Gl2, F);
        const Action act = conjugation_action(GroupKind::GL2, SpaceKind::Gl2, F);
        std::uniform_int_distribution<std::size_t> pick(0, act.subs.size() - 1);
        for (int t = 0; t < 6; ++t) {
            const Poly f = rand_poly(ring, rng);
            const LinSub& s = act.subs[pick(rng)];
            for (unsigned i = 0; i < 3; ++i)
                CHECK(steenrod_component(apply_substitution(f, s), i) ==
                      apply_substitution(steenrod_component(f, i), s));
        }
    }
}

TEST_CASE("invariance propagation for det") {
    for (unsigned q : {2u, 3u, 4u}) {
        auto [p, e] = *prime_power(q);
        auto F = Field::make(p, e);
        const Action act = conjugation_action(GroupKind::GL2, SpaceKind::Gl2, F);
        const Poly det = det_poly(act.ring);
        auto exp = steenrod_total(det);
        for (std::size_t i = 0; i < exp.size(); ++i)
            for (const LinSub& s : act.subs)
                CHECK(apply_substitution(exp[i], s) == exp[i]);
    }
}

TEST_CASE("Cartan multiplicativity") {
    std::mt19937_64 rng(23);
    auto ring = space_ring(SpaceKind::Gl2, Field::make(2, 2));
    for (int t = 0; t < 6; ++t) {
        const Poly f = rand_poly(ring, rng), g = rand_poly(ring, rng);
        auto ef = steenrod_total(f), eg = steenrod_total(g), efg = steenrod_total(f * g);
        // compare T-series coefficients
        for (std::size_t i = 0; i < efg.size() + 2; ++i) {
            Poly want(ring);
            for (std::size_t j = 0; j <= i; ++j) {
                if (j >= ef.size() || i - j >= eg.size()) continue;
                want = want + ef[j] * eg[i - j];
            }
            const Poly got = i < efg.size() ? efg[i] : Poly(ring);
            CHECK(got == want);
        }
    }
}
