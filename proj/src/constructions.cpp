#include "invforge/constructions.hpp"
#include "invforge/steenrod.hpp"

#include <stdexcept>

namespace invforge {

std::string Case::name() const {
    return group_name(group) + "/" + space_name(space) + "/q=" + std::to_string(field->q());
}

std::vector<int> Suite::degrees() const {
    std::vector<int> d;
    d.reserve(primaries.size());
    for (const Poly& f : primaries) d.push_back(f.degree());
    return d;
}

namespace {

Poly linear_form(const RingPtr& ring, std::span<const Felt> coeffs) {
    std::vector<Term> ts;
    for (unsigned i = 0; i < ring->arity(); ++i)
        if (coeffs[i] != 0) ts.push_back({mono_var(i, ring->arity()), coeffs[i]});
    return Poly(ring, std::move(ts));
}

// A*a + B*b - (g(A)/B)*c + (tau - A)*d
Poly omega_factor(const RingPtr& ring, const Quadratic& g, Felt A, Felt B) {
    const Field& F = ring->field();
    const Felt cc = F.neg(F.div(eval_quadratic(F, g, A), B));
    const Felt dd = F.sub(g.tau, A);
    const Felt coeffs[4] = {A, B, cc, dd};
    return linear_form(ring, coeffs);
}

} // namespace

Suite gl2_suite(FieldPtr F, const Quadratic& g) {
    const unsigned q = F->q();
    RingPtr ring = space_ring(SpaceKind::Gl2, F);
    const Poly a = Poly::variable(ring, 0), b = Poly::variable(ring, 1),
               c = Poly::variable(ring, 2), d = Poly::variable(ring, 3);

    Suite s;
    s.ring = ring;
    s.names = {"f1", "f2", "f3", "f4"};
    s.primaries.push_back(a + d);
    s.primaries.push_back(a * d - b * c);
    // a^q d + a d^q - b^q c - b c^q
    s.primaries.push_back(a.pow(q) * d + a * d.pow(q) - b.pow(q) * c - b * c.pow(q));

    Poly f4 = Poly::constant(ring, 1);
    for (unsigned A = 0; A < q; ++A)
        for (unsigned B = 1; B < q; ++B)
            f4 = f4 * omega_factor(ring, g, Felt(A), Felt(B));
    s.primaries.push_back(std::move(f4));

    s.kind = Suite::Kind::Hypersurface;
    s.secondary_degree = int(q) * int(q);
    s.secondary = jacobian_secondary(s);
    return s;
}

Poly jacobian_secondary(const Suite& s) {
    if (s.primaries.size() != s.ring->arity())
        throw std::invalid_argument("jacobian_secondary: primaries count != arity");
    Poly h = jacobian_det(s.primaries);
    if (h.is_zero())
        throw std::domain_error("jacobian_secondary: degenerate primary set");
    return h;
}

std::pair<Poly, Poly> sl2_f4_and_halfroot(FieldPtr F, Felt delta) {
    if (F->p() == 2)
        throw std::invalid_argument("sl2_f4_and_halfroot: q must be odd");
    const unsigned q = F->q();
    RingPtr ring = space_ring(SpaceKind::Gl2, F);

    auto lambda = [&](Felt A, Felt B) {
        // A*a + B*b - ((A^2 + delta)/B)*c - A*d
        const Felt cc = F->neg(F->div(F->add(F->mul(A, A), delta), B));
        const Felt coeffs[4] = {A, B, cc, F->neg(A)};
        return linear_form(ring, coeffs);
    };

    Poly f4 = Poly::constant(ring, 1);
    for (unsigned A = 0; A < q; ++A)
        for (unsigned B = 1; B < q; ++B) f4 = f4 * lambda(Felt(A), Felt(B));
    f4 = -f4;

    // half of K^x: keep B when its index is below the index of -B
    Poly f = Poly::constant(ring, 1);
    for (unsigned A = 0; A < q; ++A)
        for (unsigned B = 1; B < q; ++B)
            if (Felt(B) < F->neg(Felt(B))) f = f * lambda(Felt(A), Felt(B));

    if (!(f * f == f4)) {
        // q = 1 mod 4: rescale by a square root of -1
        auto i = F->sqrt(F->neg(1));
        if (!i) throw std::logic_error("sl2_f4_and_halfroot: sign correction failed");
        f = f.scaled(*i);
        if (!(f * f == f4))
            throw std::logic_error("sl2_f4_and_halfroot: f^2 != f4");
    }
    return {std::move(f4), std::move(f)};
}

Suite sl2_gl2_suite(FieldPtr F) {
    if (F->p() == 2) {
        Suite s = gl2_suite(F, find_irreducible_quadratic(*F));
        s.same_as_gl2 = true;
        return s;
    }
    const Quadratic g = find_irreducible_quadratic(*F); // tau = 0 for odd q
    auto [f4, f] = sl2_f4_and_halfroot(F, g.delta);
    (void)f4;

    const unsigned q = F->q();
    RingPtr ring = space_ring(SpaceKind::Gl2, F);
    const Poly a = Poly::variable(ring, 0), b = Poly::variable(ring, 1),
               c = Poly::variable(ring, 2), d = Poly::variable(ring, 3);

    Suite s;
    s.ring = ring;
    s.names = {"f1", "f2", "f3", "f4"};
    s.primaries.push_back(a + d);
    s.primaries.push_back(a * d - b * c);
    s.primaries.push_back(a.pow(q) * d + a * d.pow(q) - b.pow(q) * c - b * c.pow(q));
    s.primaries.push_back(std::move(f));
    s.kind = Suite::Kind::Hypersurface;
    s.secondary_degree = int(q) * (int(q) + 1) / 2;
    s.secondary = jacobian_secondary(s);
    return s;
}

Suite o2_gl2_suite(FieldPtr F) {
    const unsigned q = F->q();
    Action act = conjugation_action(GroupKind::O2, SpaceKind::Gl2, F);
    RingPtr ring = act.ring;
    const Poly a = Poly::variable(ring, 0), b = Poly::variable(ring, 1),
               c = Poly::variable(ring, 2), d = Poly::variable(ring, 3);

    Suite s;
    s.ring = ring;
    s.names = {"f1", "f2", "f3", "f4"};
    s.primaries.push_back(a + d);
    s.primaries.push_back(a * d - b * c);
    Poly bc = b - c;
    s.primaries.push_back(q % 2 == 0 ? bc : bc * bc);
    s.primaries.push_back(orbit_product(a, act));

    s.kind = Suite::Kind::Hypersurface;
    int degsum = 0;
    for (const Poly& f : s.primaries) degsum += f.degree();
    s.secondary_degree = degsum - 4;
    if (q % 2 == 1) s.secondary = jacobian_secondary(s);
    return s;
}

Poly symmetric_f3(FieldPtr F) {
    const unsigned q = F->q();
    RingPtr ring = space_ring(SpaceKind::Symmetric, F);
    if (q % 2 == 1) {
        Action act = conjugation_action(GroupKind::O2, SpaceKind::Symmetric, F);
        return orbit_product(Poly::variable(ring, 0), act);
    }
    // q = 2^(e+1): sum_k b^(2^k) (a+d)^(2^e - 2^k)
    unsigned e = 0;
    while ((2u << e) < q) ++e;
    const Poly b = Poly::variable(ring, 1);
    const Poly tr = Poly::variable(ring, 0) + Poly::variable(ring, 2);
    Poly f3(ring);
    for (unsigned k = 0; k <= e; ++k)
        f3 = f3 + b.pow(1u << k) * tr.pow((1u << e) - (1u << k));
    return f3;
}

Suite o2_symmetric_suite(FieldPtr F) {
    RingPtr ring = space_ring(SpaceKind::Symmetric, F);
    const Poly a = Poly::variable(ring, 0), b = Poly::variable(ring, 1),
               d = Poly::variable(ring, 2);
    Suite s;
    s.ring = ring;
    s.names = {"f1", "f2", "f3"};
    s.primaries.push_back(a + d);
    s.primaries.push_back(a * d - b * b);
    s.primaries.push_back(symmetric_f3(F));
    s.kind = Suite::Kind::Polynomial;
    return s;
}

Suite o2_alternating_suite(FieldPtr F) {
    RingPtr ring = space_ring(SpaceKind::Alternating, F);
    const Poly b = Poly::variable(ring, 0);
    Suite s;
    s.ring = ring;
    s.names = {"f1"};
    s.primaries.push_back(F->p() == 2 ? b : b * b);
    s.kind = Suite::Kind::Polynomial;
    return s;
}

Poly project_traceless(const Poly& f, const RingPtr& sl2_ring) {
    const Poly a = Poly::variable(sl2_ring, 0);
    const std::vector<Poly> images{a, Poly::variable(sl2_ring, 1),
                                   Poly::variable(sl2_ring, 2), -a};
    return map_ring(f, sl2_ring, images);
}

Poly project_symmetric(const Poly& f, const RingPtr& sym_ring) {
    const Poly b = Poly::variable(sym_ring, 1);
    const std::vector<Poly> images{Poly::variable(sym_ring, 0), b, b,
                                   Poly::variable(sym_ring, 2)};
    return map_ring(f, sym_ring, images);
}

Suite traceless_suite(GroupKind g, FieldPtr F, const Suite& base) {
    if (base.ring->arity() != 4)
        throw std::invalid_argument("traceless_suite: base must be a gl2 suite");
    const unsigned q = F->q();
    RingPtr ring = space_ring(SpaceKind::Sl2, F);

    const Poly det = project_traceless(base.primaries[1], ring);
    const Poly p1det = project_traceless(base.primaries[2], ring);
    const Poly pf4 = project_traceless(base.primaries[3], ring);

    Suite s;
    s.ring = ring;
    if (g == GroupKind::GL2 && q % 2 == 0) {
        s.names = {"f1", "f2", "f3"};
        s.primaries = {det, p1det, sqrt_char2(pf4)};
        s.kind = Suite::Kind::Polynomial;
        s.same_as_gl2 = base.same_as_gl2;
        return s;
    }
    if (F->p() == 2) { // SL2, even q: identical to the GL2 description
        Suite t = traceless_suite(GroupKind::GL2, F, base);
        t.same_as_gl2 = true;
        return t;
    }
    s.names = {"f1", "f2", "f3"};
    s.primaries = {det, p1det, pf4}; // for SL2 the base f4 is already the half root
    s.kind = Suite::Kind::Hypersurface;
    s.secondary_degree =
        g == GroupKind::GL2 ? int(q) * int(q) : int(q) * (int(q) + 1) / 2;
    if (base.secondary) s.secondary = project_traceless(*base.secondary, ring);
    return s;
}

Suite build_suite(const Case& c) {
    switch (c.group) {
        case GroupKind::GL2:
            if (c.space == SpaceKind::Gl2)
                return gl2_suite(c.field, find_irreducible_quadratic(*c.field));
            if (c.space == SpaceKind::Sl2)
                return traceless_suite(
                    GroupKind::GL2, c.field,
                    gl2_suite(c.field, find_irreducible_quadratic(*c.field)));
            break;
        case GroupKind::SL2:
            if (c.space == SpaceKind::Gl2) return sl2_gl2_suite(c.field);
            if (c.space == SpaceKind::Sl2)
                return traceless_suite(GroupKind::SL2, c.field, sl2_gl2_suite(c.field));
            break;
        case GroupKind::O2:
            if (c.space == SpaceKind::Gl2) return o2_gl2_suite(c.field);
            if (c.space == SpaceKind::Symmetric) return o2_symmetric_suite(c.field);
            if (c.space == SpaceKind::Alternating) return o2_alternating_suite(c.field);
            break;
        case GroupKind::Unipotent:
            break;
    }
    throw std::invalid_argument("build_suite: case not in the supported table");
}

std::vector<Case> table_cases(FieldPtr F) {
    return {
        {GroupKind::GL2, SpaceKind::Gl2, F},  {GroupKind::GL2, SpaceKind::Sl2, F},
        {GroupKind::SL2, SpaceKind::Gl2, F},  {GroupKind::SL2, SpaceKind::Sl2, F},
        {GroupKind::O2, SpaceKind::Gl2, F},   {GroupKind::O2, SpaceKind::Alternating, F},
        {GroupKind::O2, SpaceKind::Symmetric, F},
    };
}

} // namespace invforge
