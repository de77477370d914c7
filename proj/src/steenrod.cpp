#include "invforge/steenrod.hpp"

#include <stdexcept>

namespace invforge {

unsigned binomial_mod_p(std::uint64_t n, std::uint64_t k, unsigned p) {
    // Lucas: product of digit-wise binomials base p
    unsigned r = 1;
    while (k > 0 || n > 0) {
        unsigned nd = unsigned(n % p), kd = unsigned(k % p);
        if (kd > nd) return 0;
        // C(nd, kd) mod p with nd, kd < p
        unsigned num = 1, den = 1;
        for (unsigned i = 0; i < kd; ++i) {
            num = num * ((nd - i) % p) % p;
            den = den * ((i + 1) % p) % p;
        }
        unsigned den_inv = 1, e = p - 2, base = den;
        while (e) {
            if (e & 1) den_inv = den_inv * base % p;
            base = base * base % p;
            e >>= 1;
        }
        r = r * (num * den_inv % p) % p;
        n /= p;
        k /= p;
    }
    return r;
}

SteenrodExpansion steenrod_total(const Poly& f) {
    const RingPtr& ring = f.ring();
    const Field& F = ring->field();
    const unsigned n = ring->arity();
    const unsigned q = F.q();
    const int d = f.degree();

    SteenrodExpansion out;
    out.components.assign(std::size_t(std::max(d, 0)) + 1, Poly(ring));
    if (f.is_zero()) {
        out.components.assign(1, Poly(ring));
        return out;
    }
    if (std::uint64_t(d) * q > 0xFFFF)
        throw std::invalid_argument("steenrod_total: output exponents overflow");

    // Per monomial, expand prod_i (x_i + x_i^q T)^{e_i}: each variable lane
    // contributes C(e_i, j_i) x_i^{e_i + (q-1) j_i} T^{j_i}.
    for (const Term& t : f.terms()) {
        // components of the monomial image, index = T-degree
        std::vector<std::vector<Term>> comp(mono_deg(t.m, n) + 1);
        comp[0].push_back({mono_one(), t.c});
        for (unsigned i = 0; i < n; ++i) {
            const unsigned e = mono_exp(t.m, i, n);
            if (e == 0) continue;
            std::vector<std::vector<Term>> next(comp.size());
            for (unsigned j = 0; j <= e; ++j) {
                const Felt bin = F.from_int(binomial_mod_p(e, j, F.p()));
                if (bin == 0) continue;
                const Mono factor = mono_var(i, n, e + (q - 1) * j);
                for (std::size_t tdeg = 0; tdeg + j < comp.size(); ++tdeg)
                    for (const Term& ct : comp[tdeg])
                        next[tdeg + j].push_back(
                            {mono_mul(ct.m, factor), F.mul(ct.c, bin)});
            }
            comp = std::move(next);
        }
        for (std::size_t j = 0; j < comp.size(); ++j)
            if (!comp[j].empty())
                out.components[j] =
                    out.components[j] + Poly(ring, std::move(comp[j]));
    }
    while (out.components.size() > 1 && out.components.back().is_zero())
        out.components.pop_back();
    return out;
}

Poly steenrod_component(const Poly& f, unsigned i) {
    SteenrodExpansion e = steenrod_total(f);
    if (i < e.size()) return e.components[i];
    return Poly(f.ring());
}

} // namespace invforge
