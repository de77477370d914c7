#ifndef INVFORGE_POLY_HPP
#define INVFORGE_POLY_HPP

#include "invforge/field.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace invforge {

// Monomials are packed exponent vectors: 16 bits per variable, the first
// (lex-greatest) variable in the top lane, so unsigned comparison of keys is
// exactly the lexicographic order on monomials.
using Mono = std::uint64_t;

inline Mono mono_one() { return 0; }
inline unsigned mono_exp(Mono m, unsigned i, unsigned n) {
    return unsigned(m >> (16 * (n - 1 - i))) & 0xFFFFu;
}
inline Mono mono_var(unsigned i, unsigned n, unsigned e = 1) {
    return Mono(e) << (16 * (n - 1 - i));
}
inline Mono mono_mul(Mono a, Mono b) { return a + b; }
inline unsigned mono_deg(Mono m, unsigned n) {
    unsigned d = 0;
    for (unsigned i = 0; i < n; ++i) d += mono_exp(m, i, n);
    return d;
}

/// Coefficient ring spec: the field plus an ordered variable list (the order
/// defines lex).
class Ring {
public:
    Ring(FieldPtr field, std::vector<std::string> vars);

    const Field& field() const { return *field_; }
    FieldPtr field_ptr() const { return field_; }
    unsigned arity() const { return unsigned(vars_.size()); }
    const std::vector<std::string>& vars() const { return vars_; }
    unsigned var_index(const std::string& name) const; // throws on unknown

    bool same_as(const Ring& o) const;

private:
    FieldPtr field_;
    std::vector<std::string> vars_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(FieldPtr field, std::vector<std::string> vars);

struct Term {
    Mono m;
    Felt c;
    auto operator<=>(const Term&) const = default;
};

/// Sparse exact multivariate polynomial.  Terms are kept canonical: strictly
/// descending monomial keys, no zero coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}
    Poly(RingPtr ring, std::vector<Term> terms);

    static Poly zero(RingPtr ring) { return Poly(std::move(ring)); }
    static Poly constant(RingPtr ring, Felt c);
    static Poly variable(RingPtr ring, unsigned i);
    static Poly monomial(RingPtr ring, Mono m, Felt c);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const; // -1 for zero
    bool is_homogeneous() const;

    Felt coeff(Mono m) const;
    Mono leading_monomial() const; // throws on zero

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    bool operator==(const Poly& o) const;

    Poly scaled(Felt c) const;
    Poly pow(std::uint64_t n) const;

    std::string str() const;

private:
    RingPtr ring_;
    std::vector<Term> terms_;
};

/// Invertible homogeneous linear change of variables: variable j maps to the
/// linear form with coefficient row j.
struct LinSub {
    RingPtr ring;
    std::vector<Felt> a; // n*n, row-major; image(x_j) = sum_i a[j*n+i] x_i

    unsigned n() const { return ring->arity(); }
    Felt at(unsigned j, unsigned i) const { return a[std::size_t(j) * n() + i]; }
    Poly image(unsigned j) const;
    bool operator==(const LinSub&) const;
};

LinSub identity_sub(RingPtr ring);

/// Sequencing: applying the result equals applying `first` and then
/// `second` to the outcome.
LinSub compose(const LinSub& first, const LinSub& second);

Poly apply_substitution(const Poly& f, const LinSub& s);

Poly partial_derivative(const Poly& f, unsigned var);
Poly partial_derivative(const Poly& f, const std::string& var);

/// Determinant of the Jacobian matrix of fs (count must equal the arity).
Poly jacobian_det(std::span<const Poly> fs);

/// Exact square root in characteristic two; throws when f is not a square.
Poly sqrt_char2(const Poly& f);

/// Ring map into `target` sending source variable i to images[i].
Poly map_ring(const Poly& f, const RingPtr& target, std::span<const Poly> images);

Felt evaluate(const Poly& f, std::span<const Felt> point);

/// Text form, e.g. "1*a^2*d + 2*b*c"; parse/print round-trip bit-exactly on
/// canonical output.
std::string to_text(const Poly& f);
Poly parse_poly(const RingPtr& ring, const std::string& text);

/// All monomials of the given total degree, lex-descending.
std::vector<Mono> degree_monomials(const Ring& ring, unsigned d);

} // namespace invforge

#endif
