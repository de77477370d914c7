#ifndef INVFORGE_GROUPS_HPP
#define INVFORGE_GROUPS_HPP

#include "invforge/poly.hpp"

#include <set>
#include <span>

namespace invforge {

/// 2x2 matrix over F_q, row-major.
struct Mat2 {
    std::array<Felt, 4> a{0, 0, 0, 0};
    bool operator==(const Mat2&) const = default;
    auto operator<=>(const Mat2&) const = default;
};

Mat2 mat2_identity();
Mat2 mat2_mul(const Field& F, const Mat2& x, const Mat2& y);
Felt mat2_det(const Field& F, const Mat2& x);
Mat2 mat2_inverse(const Field& F, const Mat2& x); // throws on det 0
Mat2 mat2_transpose(const Mat2& x);

enum class GroupKind { GL2, SL2, O2, Unipotent };
enum class SpaceKind { Gl2, Sl2, Symmetric, Alternating };

std::string group_name(GroupKind g);
std::string space_name(SpaceKind s);

/// Coordinate ring of the space: gl2 -> (a,b,c,d), sl2 -> (a,b,c) with
/// matrix [a b; c -a], symmetric -> (a,b,d) with [a b; b d],
/// alternating -> (b) with [0 b; -b 0].
RingPtr space_ring(SpaceKind s, FieldPtr F);

/// Full element list; deterministic order.  GL2/SL2 capped at q <= 16.
std::vector<Mat2> enumerate_group(GroupKind g, const Field& F);

/// Small generating set (proper subset for GL2/SL2, full list otherwise).
std::vector<Mat2> group_generators(GroupKind g, const Field& F);

std::uint64_t group_order(GroupKind g, const Field& F);

/// Substitution on the space ring induced by sigma^-1 X sigma.
LinSub substitution_of(const Mat2& sigma, SpaceKind s, const RingPtr& ring);

/// A finite matrix group together with its faithful action on the chosen
/// coordinate ring.  `subs` is the deduplicated image; `gens` images of the
/// group generators (enough for kernel conditions).
struct Action {
    GroupKind group;
    SpaceKind space;
    RingPtr ring;
    std::vector<LinSub> subs;
    std::vector<LinSub> gens;
    std::uint64_t source_order = 0;
    std::uint64_t image_order = 0;
    bool gamma = false; // extended by tau_ad

    const Field& field() const { return ring->field(); }
};

Action conjugation_action(GroupKind g, SpaceKind s, FieldPtr F);

/// The coordinate swap a <-> d fixing b and c (gl2 ring only).
LinSub tau_ad_substitution(const RingPtr& gl2_ring);

/// Closure of the image together with tau_ad.
Action extend_gamma(const Action& base);

/// Dimension of the fixed subspace of the space under the subgroup, i.e.
/// the common kernel of (substitution matrix - identity).
int fixed_subspace_dim(const Action& a, std::span<const Mat2> subgroup);

/// Number of elements of the faithful image with rank(s - id) = 1.
int pseudoreflection_count(const Action& a);

std::set<Felt> representation_dets(const Action& a);

/// Invariant factors d_1 | d_2 | ... of the abelianization of the group
/// generated (as given) by the substitution list.
std::vector<std::uint64_t> abelianization(const std::vector<LinSub>& group);

/// |Hom(image abelianization, K^x)| = prod gcd(d_i, q-1).
std::uint64_t class_group_order(const Action& a);

/// Orbit of f under the faithful image, deduplicated, deterministic order.
std::vector<Poly> orbit(const Poly& f, const Action& a);
Poly orbit_product(const Poly& f, const Action& a);

} // namespace invforge

#endif
