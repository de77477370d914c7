#ifndef INVFORGE_CONSTRUCTIONS_HPP
#define INVFORGE_CONSTRUCTIONS_HPP

#include "invforge/field.hpp"
#include "invforge/groups.hpp"
#include "invforge/poly.hpp"

#include <optional>

namespace invforge {

struct Case {
    GroupKind group;
    SpaceKind space;
    FieldPtr field;

    std::string name() const;
};

/// The named invariants of a case with their structural data.
struct Suite {
    RingPtr ring;
    std::vector<Poly> primaries;
    std::vector<std::string> names;
    std::optional<Poly> secondary;   // Jacobian h where the construction gives one
    int secondary_degree = 0;        // degree of the module generator, 0 for none
    enum class Kind { Polynomial, Hypersurface } kind = Kind::Polynomial;
    bool same_as_gl2 = false;        // SL2 in even characteristic

    std::vector<int> degrees() const;
};

/// f1 = trace, f2 = det, f3 = P^1(det), f4 = product over the orbit of
/// linear forms attached to the irreducible quadratic g.
Suite gl2_suite(FieldPtr F, const Quadratic& g);

/// Jacobian of the primaries of a suite.
Poly jacobian_secondary(const Suite& s);

/// Odd q only: the full orbit product f4 (with its sign) and the half-orbit
/// square root f with f*f = f4, SL2-invariant.
std::pair<Poly, Poly> sl2_f4_and_halfroot(FieldPtr F, Felt delta);

/// SL2 on gl2 for odd q: trace, det, P^1(det), sqrt(f4).
Suite sl2_gl2_suite(FieldPtr F);

/// O2 on gl2: trace, det, b-c or (b-c)^2, N(a).
Suite o2_gl2_suite(FieldPtr F);

/// The third symmetric-space invariant: N(a) for odd q, the telescoping sum
/// in b and a+d for even q.
Poly symmetric_f3(FieldPtr F);

Suite o2_symmetric_suite(FieldPtr F);

/// Single generator b (even q) or b^2 (odd q).
Suite o2_alternating_suite(FieldPtr F);

/// Projection-based suites on the traceless space for GL2/SL2, built from
/// the matching gl2 suite.
Suite traceless_suite(GroupKind g, FieldPtr F, const Suite& base);

/// Dispatcher over the supported (group, space) rows.
Suite build_suite(const Case& c);

/// All supported case rows over the given field.
std::vector<Case> table_cases(FieldPtr F);

/// The projection pi : K[a,b,c,d] -> K[a,b,c] sending d to -a.
Poly project_traceless(const Poly& f, const RingPtr& sl2_ring);

/// The projection K[a,b,c,d] -> K[a,b,d] sending c to b.
Poly project_symmetric(const Poly& f, const RingPtr& sym_ring);

} // namespace invforge

#endif
