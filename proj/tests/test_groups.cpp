#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "invforge/groups.hpp"

#include <random>

using namespace invforge;

namespace {

FieldPtr field_q(unsigned q) {
    auto pe = prime_power(q);
    REQUIRE(pe.has_value());
    return Field::make(pe->first, pe->second);
}

} // namespace

TEST_CASE("group orders") {
    CHECK(enumerate_group(GroupKind::GL2, *field_q(2)).size() == 6);
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        auto F = field_q(q);
        CHECK(enumerate_group(GroupKind::GL2, *F).size() ==
              (q * q - 1) * (q * q - q));
        CHECK(enumerate_group(GroupKind::SL2, *F).size() == (q * q - 1) * q);
        CHECK(enumerate_group(GroupKind::Unipotent, *F).size() == q);
    }
    // O2 orders per parity of q, through q = 9
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
        auto F = field_q(q);
        const auto got = enumerate_group(GroupKind::O2, *F).size();
        std::size_t want = q % 2 == 0 ? q : (q % 4 == 1 ? 2 * (q - 1) : 2 * (q + 1));
        CHECK(got == want);
        CHECK(got == group_order(GroupKind::O2, *F));
    }
    // O2(F_2) = {I, swap}
    auto o2f2 = enumerate_group(GroupKind::O2, *field_q(2));
    REQUIRE(o2f2.size() == 2);
    CHECK(std::find(o2f2.begin(), o2f2.end(), mat2_identity()) != o2f2.end());
    CHECK(std::find(o2f2.begin(), o2f2.end(), Mat2{{0, 1, 1, 0}}) != o2f2.end());

    // parametrized O2 agrees with the orthogonality filter over GL2
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        auto F = field_q(q);
        std::size_t filtered = 0;
        for (const Mat2& m : enumerate_group(GroupKind::GL2, *F))
            if (mat2_mul(*F, mat2_transpose(m), m) == mat2_identity()) ++filtered;
        CHECK(filtered == enumerate_group(GroupKind::O2, *F).size());
    }
}

TEST_CASE("group closure and inverse sanity") {
    std::mt19937_64 rng(2024);
    for (unsigned q : {2u, 3u, 4u}) {
        auto F = field_q(q);
        for (GroupKind g : {GroupKind::GL2, GroupKind::SL2, GroupKind::O2,
                            GroupKind::Unipotent}) {
            auto els = enumerate_group(g, *F);
            std::uniform_int_distribution<std::size_t> pick(0, els.size() - 1);
            for (int t = 0; t < 20; ++t) {
                const Mat2 x = els[pick(rng)], y = els[pick(rng)];
                const Mat2 p = mat2_mul(*F, x, y);
                CHECK(std::find(els.begin(), els.end(), p) != els.end());
                CHECK(mat2_mul(*F, x, mat2_inverse(*F, x)) == mat2_identity());
            }
        }
    }
    // sampled closure beyond the exhaustive range
    auto F5 = field_q(5);
    auto els = enumerate_group(GroupKind::SL2, *F5);
    std::uniform_int_distribution<std::size_t> pick(0, els.size() - 1);
    for (int t = 0; t < 30; ++t) {
        const Mat2 p = mat2_mul(*F5, els[pick(rng)], els[pick(rng)]);
        CHECK(mat2_det(*F5, p) == 1);
    }
}

TEST_CASE("generators generate") {
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        auto F = field_q(q);
        for (GroupKind g : {GroupKind::GL2, GroupKind::SL2}) {
            // close the generator set inside the group and compare sizes
            auto gens = group_generators(g, *F);
            std::vector<Mat2> seen{mat2_identity()};
            std::vector<Mat2> frontier = seen;
            while (!frontier.empty()) {
                std::vector<Mat2> next;
                for (const Mat2& x : frontier)
                    for (const Mat2& gen : gens) {
                        const Mat2 y = mat2_mul(*F, x, gen);
                        if (std::find(seen.begin(), seen.end(), y) == seen.end()) {
                            seen.push_back(y);
                            next.push_back(y);
                        }
                    }
                frontier = std::move(next);
            }
            CHECK(seen.size() == group_order(g, *F));
        }
    }
}

TEST_CASE("conjugation action structure") {
    // faithful image orders: PGL2 for GL2, kernel = scalars
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        auto F = field_q(q);
        Action a = conjugation_action(GroupKind::GL2, SpaceKind::Gl2, F);
        CHECK(a.image_order == q * (q * q - 1));
        CHECK(a.image_order * (q - 1) == a.source_order);

        Action s = conjugation_action(GroupKind::SL2, SpaceKind::Gl2, F);
        CHECK(s.image_order ==
              (F->p() == 2 ? q * (q * q - 1) : q * (q * q - 1) / 2));
        // even q: PSL2 = PGL2 gives the identical substitution set
        if (F->p() == 2) CHECK(s.subs.size() == a.subs.size());
    }
    // GL2(F_3) on gl2 -> image order 24
    CHECK(conjugation_action(GroupKind::GL2, SpaceKind::Gl2, field_q(3)).image_order ==
          24);
    // char-2 traceless kernel: |phi(G)| = q(q-1)(q+1)
    for (unsigned q : {2u, 4u}) {
        auto F = field_q(q);
        Action a = conjugation_action(GroupKind::GL2, SpaceKind::Sl2, F);
        CHECK(a.image_order == q * (q - 1) * (q + 1));
    }
    // O2 images
    CHECK(conjugation_action(GroupKind::O2, SpaceKind::Gl2, field_q(3)).image_order == 4);
    CHECK(conjugation_action(GroupKind::O2, SpaceKind::Gl2, field_q(2)).image_order == 2);
    // alternating space: the action factors through det
    CHECK(conjugation_action(GroupKind::O2, SpaceKind::Alternating, field_q(2))
              .image_order == 1);
    CHECK(conjugation_action(GroupKind::O2, SpaceKind::Alternating, field_q(3))
              .image_order == 2);

    CHECK_THROWS_AS(conjugation_action(GroupKind::GL2, SpaceKind::Symmetric, field_q(2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(conjugation_action(GroupKind::O2, SpaceKind::Sl2, field_q(3)),
                    std::invalid_argument);
}

TEST_CASE("action is a homomorphism on polynomials") {
    std::mt19937_64 rng(5150);
    for (unsigned q : {2u, 3u}) {
        auto F = field_q(q);
        auto els = enumerate_group(GroupKind::GL2, *F);
        auto ring = space_ring(SpaceKind::Gl2, F);
        std::uniform_int_distribution<std::size_t> pick(0, els.size() - 1);
        std::uniform_int_distribution<unsigned> cdist(0, q - 1);
        for (int t = 0; t < 12; ++t) {
            const Mat2 x = els[pick(rng)], y = els[pick(rng)];
            const LinSub sx = substitution_of(x, SpaceKind::Gl2, ring);
            const LinSub sy = substitution_of(y, SpaceKind::Gl2, ring);
            const LinSub sxy =
                substitution_of(mat2_mul(*F, x, y), SpaceKind::Gl2, ring);
            std::vector<Term> ts;
            for (int k = 0; k < 4; ++k) {
                Mono m = mono_var(unsigned(k), 4, 1 + (k % 2));
                ts.push_back({m, Felt(1 + cdist(rng) % (q - 1 ? q - 1 : 1))});
            }
            const Poly f(ring, std::move(ts));
            // (xy).f = x.(y.f)
            CHECK(apply_substitution(f, sxy) ==
                  apply_substitution(apply_substitution(f, sy), sx));
        }
    }
}

TEST_CASE("O2 explicit action formula") {
    // entry (1,1) of the conjugated matrix: s^2 a - s t eps (b + c) + t^2 d,
    // and (b - c) maps to eps (b - c)
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        auto F = field_q(q);
        auto ring = space_ring(SpaceKind::Gl2, F);
        const Poly a = Poly::variable(ring, 0), b = Poly::variable(ring, 1),
                   c = Poly::variable(ring, 2), d = Poly::variable(ring, 3);
        for (const Mat2& m : enumerate_group(GroupKind::O2, *F)) {
            const Felt s = m.a[0], t = m.a[1];
            // eps from the (1,1) entry: eps * s = m.a[3], eps * t = -m.a[2]
            Felt eps = 1;
            if (F->p() != 2) {
                if (s != 0)
                    eps = F->div(m.a[3], s);
                else
                    eps = F->div(F->neg(m.a[2]), t);
            }
            const LinSub sub = substitution_of(m, SpaceKind::Gl2, ring);
            const Poly img_a = apply_substitution(a, sub);
            const Poly want_a = a.scaled(F->mul(s, s)) +
                                (b + c).scaled(F->neg(F->mul(F->mul(s, t), eps))) +
                                d.scaled(F->mul(t, t));
            CHECK(img_a == want_a);
            const Poly img_bc = apply_substitution(b - c, sub);
            CHECK(img_bc == (b - c).scaled(eps));
        }
    }
}

TEST_CASE("dual action compatibility") {
    // substitution matrix of sigma^tr is the transpose of that of sigma
    for (unsigned q : {2u, 3u}) {
        auto F = field_q(q);
        auto ring = space_ring(SpaceKind::Gl2, F);
        for (const Mat2& m : enumerate_group(GroupKind::GL2, *F)) {
            const LinSub s = substitution_of(m, SpaceKind::Gl2, ring);
            const LinSub st = substitution_of(mat2_transpose(m), SpaceKind::Gl2, ring);
            for (unsigned i = 0; i < 4; ++i)
                for (unsigned j = 0; j < 4; ++j) CHECK(s.at(i, j) == st.at(j, i));
        }
    }
}

TEST_CASE("tau_ad and the Gamma closure") {
    auto F2 = field_q(2);
    auto ring = space_ring(SpaceKind::Gl2, F2);
    const LinSub tau = tau_ad_substitution(ring);
    CHECK(compose(tau, tau) == identity_sub(ring));

    Action a2 = conjugation_action(GroupKind::GL2, SpaceKind::Gl2, F2);
    Action g2 = extend_gamma(a2);
    CHECK(g2.image_order == 12); // 2 * |PGL2(F_2)|

    for (unsigned q : {3u, 4u}) {
        auto F = field_q(q);
        Action a = conjugation_action(GroupKind::GL2, SpaceKind::Gl2, F);
        Action g = extend_gamma(a);
        CHECK(g.image_order == 2 * a.image_order);
    }
    Action sl = conjugation_action(GroupKind::GL2, SpaceKind::Sl2, field_q(2));
    CHECK_THROWS_AS(extend_gamma(sl), std::invalid_argument);
}

TEST_CASE("omega orbit") {
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        auto F = field_q(q);
        const Quadratic g = find_irreducible_quadratic(*F);
        Action act = conjugation_action(GroupKind::GL2, SpaceKind::Gl2, F);
        auto ring = act.ring;
        // seed (A=0, B=1): b - g(0) c + tau d
        std::vector<Term> ts{{mono_var(1, 4), 1}};
        if (g.delta) ts.push_back({mono_var(2, 4), F->neg(g.delta)});
        if (g.tau) ts.push_back({mono_var(3, 4), g.tau});
        const Poly seed(ring, std::move(ts));
        const auto orb = orbit(seed, act);
        CHECK(orb.size() == q * q - q);

        // tau_ad maps the orbit set into itself
        const LinSub tau = tau_ad_substitution(ring);
        for (const Poly& f : orb) {
            const Poly img = apply_substitution(f, tau);
            CHECK(std::find(orb.begin(), orb.end(), img) != orb.end());
        }
        // trace is a fixed point: orbit of f1 = {f1}
        const Poly f1 = Poly::variable(ring, 0) + Poly::variable(ring, 3);
        CHECK(orbit(f1, act).size() == 1);
    }
}

TEST_CASE("orbit of a under O2") {
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        auto F = field_q(q);
        Action act = conjugation_action(GroupKind::O2, SpaceKind::Gl2, F);
        const Poly a = Poly::variable(act.ring, 0);
        const std::size_t want =
            q % 2 == 0 ? act.source_order : act.source_order / 4;
        CHECK(orbit(a, act).size() == want);
    }
}

TEST_CASE("fixed subspace dimensions") {
    for (unsigned q : {2u, 3u, 4u}) {
        auto F = field_q(q);
        const auto P = enumerate_group(GroupKind::Unipotent, *F);
        Action gl = conjugation_action(GroupKind::GL2, SpaceKind::Gl2, F);
        CHECK(fixed_subspace_dim(gl, P) == 2);
        // identity subgroup fixes everything
        const std::vector<Mat2> id{mat2_identity()};
        CHECK(fixed_subspace_dim(gl, id) == 4);
        Action sl = conjugation_action(GroupKind::GL2, SpaceKind::Sl2, F);
        const int want_sl = F->p() == 2 ? 2 : 1;
        CHECK(fixed_subspace_dim(sl, P) == want_sl);
    }
}

TEST_CASE("pseudoreflection counts") {
    for (unsigned q : {2u, 3u, 4u}) {
        auto F = field_q(q);
        Action gl = conjugation_action(GroupKind::GL2, SpaceKind::Gl2, F);
        CHECK(pseudoreflection_count(gl) == 0);
        Action gamma = extend_gamma(gl);
        CHECK(pseudoreflection_count(gamma) >= 1);
        Action sl = conjugation_action(GroupKind::GL2, SpaceKind::Sl2, F);
        if (F->p() == 2)
            CHECK(pseudoreflection_count(sl) >= 1);
        else
            CHECK(pseudoreflection_count(sl) == 0);
    }
    // tau_ad itself has rank(s - id) = 1: visible through the Gamma count
    auto ring = space_ring(SpaceKind::Gl2, field_q(3));
    const LinSub tau = tau_ad_substitution(ring);
    int diff = 0;
    for (unsigned i = 0; i < 4; ++i)
        for (unsigned j = 0; j < 4; ++j)
            if (tau.at(i, j) != (i == j ? 1 : 0)) ++diff;
    CHECK(diff == 4); // the 2x2 swap block differs in four entries, rank 1
}

TEST_CASE("representation determinants") {
    for (unsigned q : {2u, 3u, 4u}) {
        auto F = field_q(q);
        Action gl = conjugation_action(GroupKind::GL2, SpaceKind::Gl2, F);
        const auto dets = representation_dets(gl);
        CHECK(dets == std::set<Felt>{1});
        Action gamma = extend_gamma(gl);
        const auto gdets = representation_dets(gamma);
        if (F->p() == 2)
            CHECK(gdets == std::set<Felt>{1});
        else
            CHECK(gdets == std::set<Felt>{1, F->neg(1)});
    }
}

TEST_CASE("abelianization and class group orders") {
    // PGL2(F_3) = S4: abelianization Z/2, two homs to K^x
    {
        Action a = conjugation_action(GroupKind::GL2, SpaceKind::Gl2, field_q(3));
        CHECK(abelianization(a.subs) == std::vector<std::uint64_t>{2});
        CHECK(class_group_order(a) == 2);
    }
    // PGL2(F_4) = A5 is perfect
    {
        Action a = conjugation_action(GroupKind::GL2, SpaceKind::Gl2, field_q(4));
        CHECK(abelianization(a.subs).empty());
        CHECK(class_group_order(a) == 1);
    }
    // PGL2(F_2) = S3: abelianization Z/2 but K^x is trivial
    {
        Action a = conjugation_action(GroupKind::GL2, SpaceKind::Gl2, field_q(2));
        CHECK(abelianization(a.subs) == std::vector<std::uint64_t>{2});
        CHECK(class_group_order(a) == 1);
    }
    // PGL2(F_5): abelianization Z/2
    {
        Action a = conjugation_action(GroupKind::GL2, SpaceKind::Gl2, field_q(5));
        CHECK(abelianization(a.subs) == std::vector<std::uint64_t>{2});
        CHECK(class_group_order(a) == 2);
    }
    // PSL2(F_3) = A4: abelianization Z/3, gcd(3, 2) = 1
    {
        Action a = conjugation_action(GroupKind::SL2, SpaceKind::Gl2, field_q(3));
        CHECK(abelianization(a.subs) == std::vector<std::uint64_t>{3});
        CHECK(class_group_order(a) == 1);
    }
    // O2 images in odd characteristic: (Z/2)^2
    for (unsigned q : {3u, 5u}) {
        Action a = conjugation_action(GroupKind::O2, SpaceKind::Gl2, field_q(q));
        CHECK(abelianization(a.subs) == std::vector<std::uint64_t>{2, 2});
        CHECK(class_group_order(a) == 4);
    }
}
