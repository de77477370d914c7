#ifndef INVFORGE_FIELD_HPP
#define INVFORGE_FIELD_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace invforge {

/// Index of a field element in [0, q).  Index 0 is the zero element and the
/// base-p digits of the index are the coefficients of the element written as
/// a polynomial in the generator of the extension, constant digit first.
using Felt = std::uint16_t;

/// Exact arithmetic in F_q, q = p^e <= 2^16.  Multiplication runs through
/// exp/log tables over a fixed multiplicative generator; addition is
/// digit-wise mod p (table-backed for small q).  Instances are immutable
/// after construction and safe to share across threads.
class Field {
public:
    static std::shared_ptr<const Field> make(unsigned p, unsigned e);

    unsigned p() const { return p_; }
    unsigned e() const { return e_; }
    unsigned q() const { return q_; }
    std::string label() const; // "p" or "p^e"

    Felt add(Felt x, Felt y) const {
        if (!add_table_.empty()) return add_table_[std::size_t(x) * q_ + y];
        return add_slow(x, y);
    }
    Felt neg(Felt x) const { return neg_table_[x]; }
    Felt sub(Felt x, Felt y) const { return add(x, neg(y)); }
    Felt mul(Felt x, Felt y) const {
        if (x == 0 || y == 0) return 0;
        unsigned s = unsigned(log_table_[x]) + log_table_[y];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_table_[s];
    }
    Felt inv(Felt x) const;
    Felt div(Felt x, Felt y) const { return mul(x, inv(y)); }
    Felt pow(Felt x, std::uint64_t n) const;

    /// x -> x^p, and its two-sided inverse (F_q is perfect).
    Felt frobenius(Felt x) const { return pow(x, p_); }
    Felt frobenius_inverse(Felt x) const;

    /// Smallest r with r*r == x, or nullopt when x is a non-square.
    std::optional<Felt> sqrt(Felt x) const;
    bool is_square(Felt x) const;

    /// Embedding of the integers, k -> k mod p.
    Felt from_int(std::uint64_t k) const { return Felt(k % p_); }

    /// A fixed generator of the multiplicative group (1 when q = 2).
    Felt generator() const { return q_ == 2 ? Felt(1) : exp_table_[1]; }

    /// Coefficients of the defining modulus, degree e, constant first.
    const std::vector<std::uint16_t>& modulus() const { return modulus_; }
    const std::vector<Felt>& exp_table() const { return exp_table_; }

    std::uint16_t log_of(Felt x) const { return log_table_[x]; } // x != 0

private:
    Field() = default;

    Felt add_slow(Felt x, Felt y) const;

    unsigned p_ = 0, e_ = 0, q_ = 0;
    std::vector<std::uint16_t> modulus_;  // length e+1, coefficients in F_p
    std::vector<Felt> exp_table_;         // length q-1
    std::vector<std::uint16_t> log_table_; // length q, log_table_[0] unused
    std::vector<Felt> neg_table_;
    std::vector<Felt> add_table_;         // q*q when q <= 1024, else empty
};

using FieldPtr = std::shared_ptr<const Field>;

/// g(x) = x^2 - tau*x + delta, irreducible over F_q.
struct Quadratic {
    Felt tau = 0;
    Felt delta = 0;
};

/// Value of g at x.
Felt eval_quadratic(const Field& F, const Quadratic& g, Felt x);

/// Deterministic irreducible quadratic: for odd q the smallest delta with
/// x^2 + delta rootless (tau = 0); for even q tau = 1 and the smallest
/// workable delta.
Quadratic find_irreducible_quadratic(const Field& F);

bool is_prime(unsigned n);

/// Factors n as p^e for prime p; nullopt when n is not a prime power.
std::optional<std::pair<unsigned, unsigned>> prime_power(unsigned n);

} // namespace invforge

#endif
