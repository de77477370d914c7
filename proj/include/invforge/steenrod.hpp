#ifndef INVFORGE_STEENROD_HPP
#define INVFORGE_STEENROD_HPP

#include "invforge/poly.hpp"

namespace invforge {

/// Total Steenrod expansion of f: component i is the coefficient of T^i in
/// the image of f under the algebra map x -> x + x^q T.  Component 0 is f
/// itself and components vanish beyond deg f.
struct SteenrodExpansion {
    std::vector<Poly> components;

    const Poly& operator[](std::size_t i) const { return components[i]; }
    std::size_t size() const { return components.size(); }
};

SteenrodExpansion steenrod_total(const Poly& f);

/// P^i(f); zero beyond the expansion range.  Homogeneous of degree
/// deg f + i(q-1) for homogeneous f.
Poly steenrod_component(const Poly& f, unsigned i);

/// C(n, k) mod p by Lucas' theorem.
unsigned binomial_mod_p(std::uint64_t n, std::uint64_t k, unsigned p);

} // namespace invforge

#endif
