#include "invforge/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace invforge {

namespace {

// --- Polynomial helpers over F_p (coefficient vectors, constant first). ---

using PolyP = std::vector<std::uint16_t>;

void trim(PolyP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyP mul_mod(const PolyP& a, const PolyP& b, const PolyP& m, unsigned p) {
    PolyP r(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = std::uint16_t((r[i + j] + unsigned(a[i]) * b[j]) % p);
    }
    trim(r);
    // reduce by the monic modulus
    const std::size_t dm = m.size() - 1;
    while (r.size() > dm) {
        const unsigned lead = r.back();
        const std::size_t shift = r.size() - 1 - dm;
        if (lead) {
            for (std::size_t i = 0; i <= dm; ++i) {
                unsigned v = r[shift + i] + unsigned(p - 1) * lead % p * m[i];
                r[shift + i] = std::uint16_t(v % p);
            }
        }
        r.pop_back();
        trim(r);
        if (r.size() <= dm) break;
    }
    trim(r);
    return r;
}

PolyP pow_mod(PolyP base, std::uint64_t n, const PolyP& m, unsigned p) {
    PolyP r{1};
    while (n) {
        if (n & 1) r = mul_mod(r, base, m, p);
        base = mul_mod(base, base, m, p);
        n >>= 1;
    }
    return r;
}

PolyP poly_mod(PolyP a, const PolyP& m, unsigned p) {
    PolyP one{1};
    return mul_mod(a, one, m, p);
}

PolyP poly_gcd(PolyP a, PolyP b, unsigned p) {
    auto inv_p = [p](unsigned x) {
        unsigned r = 1, e = p - 2, base = x % p;
        while (e) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b with b made monic
        unsigned lead_inv = inv_p(b.back());
        PolyP bm = b;
        for (auto& c : bm) c = std::uint16_t(unsigned(c) * lead_inv % p);
        while (a.size() >= bm.size() && !a.empty()) {
            unsigned lead = a.back();
            std::size_t shift = a.size() - bm.size();
            if (lead) {
                for (std::size_t i = 0; i < bm.size(); ++i) {
                    unsigned v = a[shift + i] + (p - 1) * lead % p * bm[i];
                    a[shift + i] = std::uint16_t(v % p);
                }
            }
            a.pop_back();
            trim(a);
        }
        std::swap(a, b);
        trim(b);
    }
    return a;
}

std::vector<unsigned> prime_factors(std::uint64_t n) {
    std::vector<unsigned> fs;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(unsigned(d));
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(unsigned(n));
    return fs;
}

// Rabin's criterion: f monic of degree e is irreducible over F_p iff
// x^(p^e) = x mod f and gcd(x^(p^(e/r)) - x, f) = 1 for each prime r | e.
bool irreducible_fp(const PolyP& f, unsigned p) {
    const unsigned e = unsigned(f.size()) - 1;
    if (e == 1) return true;
    PolyP x{0, 1};
    auto pk = [&](unsigned k) { // x^(p^k) mod f
        PolyP r = x;
        for (unsigned i = 0; i < k; ++i) r = pow_mod(r, p, f, p);
        return r;
    };
    PolyP top = pk(e);
    if (poly_mod(top, f, p) != poly_mod(x, f, p)) return false;
    for (unsigned r : prime_factors(e)) {
        PolyP g = pk(e / r);
        // g - x
        PolyP diff = g;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = std::uint16_t((diff[1] + p - 1) % p);
        trim(diff);
        PolyP gc = poly_gcd(diff, f, p);
        if (gc.size() != 1) return false;
    }
    return true;
}

} // namespace

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; std::uint64_t(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::optional<std::pair<unsigned, unsigned>> prime_power(unsigned n) {
    if (n < 2) return std::nullopt;
    unsigned p = n;
    for (unsigned d = 2; std::uint64_t(d) * d <= n; ++d) {
        if (n % d == 0) {
            p = d;
            break;
        }
    }
    unsigned e = 0, m = n;
    while (m % p == 0) {
        m /= p;
        ++e;
    }
    if (m != 1) return std::nullopt;
    return std::make_pair(p, e);
}

std::shared_ptr<const Field> Field::make(unsigned p, unsigned e) {
    if (!is_prime(p)) throw std::invalid_argument("Field::make: p is not prime");
    if (e < 1) throw std::invalid_argument("Field::make: e must be positive");
    std::uint64_t q64 = 1;
    for (unsigned i = 0; i < e; ++i) {
        q64 *= p;
        if (q64 > 65536) throw std::invalid_argument("Field::make: p^e exceeds 2^16");
    }
    const unsigned q = unsigned(q64);

    auto F = std::shared_ptr<Field>(new Field());
    F->p_ = p;
    F->e_ = e;
    F->q_ = q;

    // Deterministic modulus: smallest index of non-leading coefficients
    // (constant digit least significant) giving an irreducible monic poly.
    {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < e; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            PolyP f(e + 1, 0);
            std::uint64_t t = idx;
            for (unsigned i = 0; i < e; ++i) {
                f[i] = std::uint16_t(t % p);
                t /= p;
            }
            f[e] = 1;
            if (irreducible_fp(f, p)) {
                F->modulus_ = f;
                break;
            }
        }
        if (F->modulus_.empty()) throw std::logic_error("no irreducible modulus found");
    }

    // Digit views of indices and slow multiplication through the modulus.
    auto digits = [p, e](Felt x) {
        PolyP d(e, 0);
        unsigned t = x;
        for (unsigned i = 0; i < e; ++i) {
            d[i] = std::uint16_t(t % p);
            t /= p;
        }
        trim(d);
        return d;
    };
    auto pack = [p, e](const PolyP& d) {
        unsigned x = 0;
        for (unsigned i = e; i-- > 0;) x = x * p + (i < d.size() ? d[i] : 0);
        return Felt(x);
    };
    auto slow_mul = [&](Felt a, Felt b) {
        return pack(mul_mod(digits(a), digits(b), F->modulus_, p));
    };

    // neg table
    F->neg_table_.resize(q);
    for (unsigned x = 0; x < q; ++x) {
        PolyP d = digits(Felt(x));
        for (auto& c : d) c = std::uint16_t((p - c) % p);
        F->neg_table_[x] = pack(d);
    }

    // Smallest-index multiplicative generator.
    const auto rs = prime_factors(q - 1);
    Felt gen = 0;
    for (unsigned cand = 1; cand < q && !gen; ++cand) {
        if (q == 2) { gen = 1; break; }
        bool ok = true;
        for (unsigned r : rs) {
            // cand^((q-1)/r) via slow square-and-multiply
            std::uint64_t n = (q - 1) / r;
            Felt acc = 1, base = Felt(cand);
            while (n) {
                if (n & 1) acc = slow_mul(acc, base);
                base = slow_mul(base, base);
                n >>= 1;
            }
            if (acc == 1) {
                ok = false;
                break;
            }
        }
        if (ok) gen = Felt(cand);
    }
    if (!gen) throw std::logic_error("no generator found");

    F->exp_table_.resize(q - 1);
    F->log_table_.assign(q, 0);
    Felt cur = 1;
    for (unsigned i = 0; i < q - 1; ++i) {
        F->exp_table_[i] = cur;
        F->log_table_[cur] = std::uint16_t(i);
        cur = slow_mul(cur, gen);
    }
    if (cur != 1) throw std::logic_error("generator order mismatch");

    if (q <= 1024) {
        F->add_table_.resize(std::size_t(q) * q);
        for (unsigned x = 0; x < q; ++x)
            for (unsigned y = 0; y < q; ++y) {
                PolyP dx = digits(Felt(x)), dy = digits(Felt(y));
                PolyP s(e, 0);
                for (unsigned i = 0; i < e; ++i) {
                    unsigned xv = i < dx.size() ? dx[i] : 0;
                    unsigned yv = i < dy.size() ? dy[i] : 0;
                    s[i] = std::uint16_t((xv + yv) % p);
                }
                F->add_table_[std::size_t(x) * q + y] = pack(s);
            }
    }
    return F;
}

Felt Field::add_slow(Felt x, Felt y) const {
    unsigned r = 0, mult = 1;
    for (unsigned i = 0; i < e_; ++i) {
        unsigned dx = x % p_, dy = y % p_;
        x = Felt(x / p_);
        y = Felt(y / p_);
        r += (dx + dy) % p_ * mult;
        mult *= p_;
    }
    return Felt(r);
}

Felt Field::inv(Felt x) const {
    if (x == 0) throw std::domain_error("Field::inv: division by zero");
    unsigned l = log_table_[x];
    return exp_table_[l == 0 ? 0 : q_ - 1 - l];
}

Felt Field::pow(Felt x, std::uint64_t n) const {
    if (x == 0) return n == 0 ? Felt(1) : Felt(0);
    std::uint64_t l = (std::uint64_t(log_table_[x]) * (n % (q_ - 1))) % (q_ - 1);
    return exp_table_[l];
}

Felt Field::frobenius_inverse(Felt x) const {
    std::uint64_t n = 1;
    for (unsigned i = 0; i + 1 < e_; ++i) n *= p_;
    return pow(x, n); // x^(p^(e-1)), inverse of x -> x^p
}

std::optional<Felt> Field::sqrt(Felt x) const {
    if (x == 0) return Felt(0);
    if (p_ == 2) return pow(x, q_ / 2);
    unsigned l = log_table_[x];
    if (l & 1) return std::nullopt;
    Felt r1 = exp_table_[l / 2];
    Felt r2 = exp_table_[(l / 2 + (q_ - 1) / 2) % (q_ - 1)];
    return std::min(r1, r2);
}

bool Field::is_square(Felt x) const {
    if (x == 0 || p_ == 2) return true;
    return (log_table_[x] & 1) == 0;
}

std::string Field::label() const {
    if (e_ == 1) return std::to_string(p_);
    return std::to_string(p_) + "^" + std::to_string(e_);
}

Felt eval_quadratic(const Field& F, const Quadratic& g, Felt x) {
    // x^2 - tau*x + delta
    return F.add(F.sub(F.mul(x, x), F.mul(g.tau, x)), g.delta);
}

Quadratic find_irreducible_quadratic(const Field& F) {
    auto rootless = [&](const Quadratic& g) {
        for (unsigned a = 0; a < F.q(); ++a)
            if (eval_quadratic(F, g, Felt(a)) == 0) return false;
        return true;
    };
    Quadratic g;
    g.tau = (F.p() == 2) ? Felt(1) : Felt(0); // x^2 + delta never irreducible in char 2
    for (unsigned d = 1; d < F.q(); ++d) {
        g.delta = Felt(d);
        if (rootless(g)) return g;
    }
    throw std::logic_error("no irreducible quadratic found"); // unreachable over F_q
}

} // namespace invforge
