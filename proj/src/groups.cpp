#include "invforge/groups.hpp"
#include "invforge/fqlin.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

namespace invforge {

Mat2 mat2_identity() { return Mat2{{1, 0, 0, 1}}; }

Mat2 mat2_mul(const Field& F, const Mat2& x, const Mat2& y) {
    return Mat2{{
        F.add(F.mul(x.a[0], y.a[0]), F.mul(x.a[1], y.a[2])),
        F.add(F.mul(x.a[0], y.a[1]), F.mul(x.a[1], y.a[3])),
        F.add(F.mul(x.a[2], y.a[0]), F.mul(x.a[3], y.a[2])),
        F.add(F.mul(x.a[2], y.a[1]), F.mul(x.a[3], y.a[3])),
    }};
}

Felt mat2_det(const Field& F, const Mat2& x) {
    return F.sub(F.mul(x.a[0], x.a[3]), F.mul(x.a[1], x.a[2]));
}

Mat2 mat2_inverse(const Field& F, const Mat2& x) {
    const Felt d = mat2_det(F, x);
    if (d == 0) throw std::domain_error("mat2_inverse: singular matrix");
    const Felt di = F.inv(d);
    return Mat2{{F.mul(di, x.a[3]), F.mul(di, F.neg(x.a[1])),
                 F.mul(di, F.neg(x.a[2])), F.mul(di, x.a[0])}};
}

Mat2 mat2_transpose(const Mat2& x) { return Mat2{{x.a[0], x.a[2], x.a[1], x.a[3]}}; }

std::string group_name(GroupKind g) {
    switch (g) {
        case GroupKind::GL2: return "gl2";
        case GroupKind::SL2: return "sl2";
        case GroupKind::O2: return "o2";
        case GroupKind::Unipotent: return "unipotent";
    }
    return "?";
}

std::string space_name(SpaceKind s) {
    switch (s) {
        case SpaceKind::Gl2: return "gl2";
        case SpaceKind::Sl2: return "sl2";
        case SpaceKind::Symmetric: return "symmetric";
        case SpaceKind::Alternating: return "alternating";
    }
    return "?";
}

RingPtr space_ring(SpaceKind s, FieldPtr F) {
    switch (s) {
        case SpaceKind::Gl2: return make_ring(std::move(F), {"a", "b", "c", "d"});
        case SpaceKind::Sl2: return make_ring(std::move(F), {"a", "b", "c"});
        case SpaceKind::Symmetric: return make_ring(std::move(F), {"a", "b", "d"});
        case SpaceKind::Alternating: return make_ring(std::move(F), {"b"});
    }
    throw std::invalid_argument("space_ring: bad space");
}

std::uint64_t group_order(GroupKind g, const Field& F) {
    const std::uint64_t q = F.q();
    switch (g) {
        case GroupKind::GL2: return (q * q - 1) * (q * q - q);
        case GroupKind::SL2: return (q * q - 1) * q;
        case GroupKind::O2:
            if (q % 2 == 0) return q;
            return q % 4 == 1 ? 2 * (q - 1) : 2 * (q + 1);
        case GroupKind::Unipotent: return q;
    }
    throw std::invalid_argument("group_order: bad group");
}

std::vector<Mat2> enumerate_group(GroupKind g, const Field& F) {
    const unsigned q = F.q();
    std::vector<Mat2> out;
    switch (g) {
        case GroupKind::GL2:
        case GroupKind::SL2: {
            if (q > 16)
                throw std::invalid_argument("enumerate_group: q > 16 for GL2/SL2");
            for (unsigned a = 0; a < q; ++a)
                for (unsigned b = 0; b < q; ++b)
                    for (unsigned c = 0; c < q; ++c)
                        for (unsigned d = 0; d < q; ++d) {
                            Mat2 m{{Felt(a), Felt(b), Felt(c), Felt(d)}};
                            const Felt det = mat2_det(F, m);
                            if (g == GroupKind::GL2 ? det != 0 : det == 1)
                                out.push_back(m);
                        }
            break;
        }
        case GroupKind::O2: {
            // Phi(s, t, eps) = [s t; -eps t, eps s] over s^2 + t^2 = 1
            std::vector<Felt> signs{1};
            if (F.p() != 2) signs.push_back(F.neg(1));
            for (unsigned s = 0; s < q; ++s)
                for (unsigned t = 0; t < q; ++t) {
                    if (F.add(F.mul(Felt(s), Felt(s)), F.mul(Felt(t), Felt(t))) != 1)
                        continue;
                    for (Felt eps : signs) {
                        Mat2 m{{Felt(s), Felt(t), F.neg(F.mul(eps, Felt(t))),
                                F.mul(eps, Felt(s))}};
                        if (std::find(out.begin(), out.end(), m) == out.end())
                            out.push_back(m);
                    }
                }
            for (const Mat2& m : out)
                if (mat2_mul(F, mat2_transpose(m), m) != mat2_identity())
                    throw std::logic_error("enumerate_group: O2 element not orthogonal");
            break;
        }
        case GroupKind::Unipotent: {
            for (unsigned t = 0; t < q; ++t)
                out.push_back(Mat2{{1, Felt(t), 0, 1}});
            break;
        }
    }
    return out;
}

std::vector<Mat2> group_generators(GroupKind g, const Field& F) {
    std::vector<Mat2> out;
    // transvection parameters spanning F_q over F_p: the basis monomials
    // have indices p^0, ..., p^(e-1)
    std::vector<Felt> basis;
    {
        unsigned v = 1;
        for (unsigned i = 0; i < F.e(); ++i) {
            basis.push_back(Felt(v));
            v *= F.p();
        }
    }
    switch (g) {
        case GroupKind::GL2:
            out.push_back(Mat2{{F.generator(), 0, 0, 1}});
            out.push_back(Mat2{{1, 1, 0, 1}});
            out.push_back(Mat2{{0, 1, 1, 0}});
            break;
        case GroupKind::SL2:
            for (Felt b : basis) {
                out.push_back(Mat2{{1, b, 0, 1}});
                out.push_back(Mat2{{1, 0, b, 1}});
            }
            break;
        case GroupKind::O2:
            return enumerate_group(g, F); // small for every q in range
        case GroupKind::Unipotent:
            for (Felt b : basis) out.push_back(Mat2{{1, b, 0, 1}});
            break;
    }
    return out;
}

LinSub substitution_of(const Mat2& sigma, SpaceKind s, const RingPtr& ring) {
    const Field& F = ring->field();
    const unsigned n = ring->arity();
    const Mat2 si = mat2_inverse(F, sigma);

    // X as a 2x2 matrix of linear forms (coefficient rows over the variables)
    using Row = std::vector<Felt>;
    std::array<std::array<Row, 2>, 2> X;
    for (auto& r : X)
        for (auto& e : r) e.assign(n, 0);
    switch (s) {
        case SpaceKind::Gl2:
            X[0][0][0] = 1; X[0][1][1] = 1; X[1][0][2] = 1; X[1][1][3] = 1;
            break;
        case SpaceKind::Sl2:
            X[0][0][0] = 1; X[0][1][1] = 1; X[1][0][2] = 1; X[1][1][0] = F.neg(1);
            break;
        case SpaceKind::Symmetric:
            X[0][0][0] = 1; X[0][1][1] = 1; X[1][0][1] = 1; X[1][1][2] = 1;
            break;
        case SpaceKind::Alternating:
            X[0][1][0] = 1; X[1][0][0] = F.neg(1);
            break;
    }

    // M = sigma^-1 * X * sigma, entrywise linear forms
    std::array<std::array<Row, 2>, 2> M;
    for (unsigned r = 0; r < 2; ++r)
        for (unsigned c = 0; c < 2; ++c) {
            Row acc(n, 0);
            for (unsigned k = 0; k < 2; ++k)
                for (unsigned l = 0; l < 2; ++l) {
                    const Felt coef =
                        F.mul(si.a[r * 2 + k], sigma.a[l * 2 + c]);
                    if (!coef) continue;
                    for (unsigned i = 0; i < n; ++i)
                        acc[i] = F.add(acc[i], F.mul(coef, X[k][l][i]));
                }
            M[r][c] = std::move(acc);
        }

    auto neg_row = [&](const Row& r) {
        Row o(n);
        for (unsigned i = 0; i < n; ++i) o[i] = F.neg(r[i]);
        return o;
    };
    auto rows_equal = [](const Row& x, const Row& y) { return x == y; };

    LinSub sub{ring, std::vector<Felt>(std::size_t(n) * n, 0)};
    auto set_row = [&](unsigned j, const Row& r) {
        for (unsigned i = 0; i < n; ++i) sub.a[std::size_t(j) * n + i] = r[i];
    };
    switch (s) {
        case SpaceKind::Gl2:
            set_row(0, M[0][0]); set_row(1, M[0][1]);
            set_row(2, M[1][0]); set_row(3, M[1][1]);
            break;
        case SpaceKind::Sl2:
            if (!rows_equal(M[1][1], neg_row(M[0][0])))
                throw std::invalid_argument("substitution_of: sl2 not stable");
            set_row(0, M[0][0]); set_row(1, M[0][1]); set_row(2, M[1][0]);
            break;
        case SpaceKind::Symmetric:
            if (!rows_equal(M[0][1], M[1][0]))
                throw std::invalid_argument("substitution_of: symmetric space not stable");
            set_row(0, M[0][0]); set_row(1, M[0][1]); set_row(2, M[1][1]);
            break;
        case SpaceKind::Alternating:
            if (!rows_equal(M[1][0], neg_row(M[0][1])) ||
                std::any_of(M[0][0].begin(), M[0][0].end(), [](Felt x) { return x != 0; }))
                throw std::invalid_argument("substitution_of: alternating space not stable");
            set_row(0, M[0][1]);
            break;
    }
    return sub;
}

namespace {

bool pairing_allowed(GroupKind g, SpaceKind s) {
    switch (g) {
        case GroupKind::GL2:
        case GroupKind::SL2:
        case GroupKind::Unipotent:
            return s == SpaceKind::Gl2 || s == SpaceKind::Sl2;
        case GroupKind::O2:
            return s == SpaceKind::Gl2 || s == SpaceKind::Symmetric ||
                   s == SpaceKind::Alternating;
    }
    return false;
}

std::vector<LinSub> closure(const RingPtr& ring, std::vector<LinSub> seeds) {
    std::map<std::vector<Felt>, LinSub> seen;
    std::deque<LinSub> frontier;
    LinSub id = identity_sub(ring);
    seen.emplace(id.a, id);
    frontier.push_back(id);
    for (auto& s : seeds)
        if (seen.emplace(s.a, s).second) frontier.push_back(s);
    while (!frontier.empty()) {
        LinSub cur = frontier.front();
        frontier.pop_front();
        for (const LinSub& g : seeds) {
            LinSub nxt = compose(cur, g);
            if (seen.emplace(nxt.a, nxt).second) frontier.push_back(nxt);
        }
    }
    std::vector<LinSub> out;
    out.reserve(seen.size());
    for (auto& [k, v] : seen) out.push_back(v);
    return out;
}

unsigned scalar_kernel_count(GroupKind g, const Field& F) {
    switch (g) {
        case GroupKind::GL2: return F.q() - 1;
        case GroupKind::SL2: return F.p() == 2 ? 1 : 2;
        case GroupKind::O2: return F.p() == 2 ? 1 : 2;
        case GroupKind::Unipotent: return 1;
    }
    return 1;
}

} // namespace

Action conjugation_action(GroupKind g, SpaceKind s, FieldPtr F) {
    if (!pairing_allowed(g, s))
        throw std::invalid_argument("conjugation_action: unsupported pairing");
    Action a;
    a.group = g;
    a.space = s;
    a.ring = space_ring(s, F);
    a.source_order = group_order(g, *F);

    for (const Mat2& m : group_generators(g, *F))
        a.gens.push_back(substitution_of(m, s, a.ring));

    const bool enumerable =
        (g == GroupKind::O2 || g == GroupKind::Unipotent) || F->q() <= 5;
    if (enumerable) {
        std::map<std::vector<Felt>, LinSub> seen;
        const auto elems = enumerate_group(g, *F);
        if (elems.size() != a.source_order)
            throw std::logic_error("conjugation_action: order formula mismatch");
        for (const Mat2& m : elems) {
            LinSub sub = substitution_of(m, s, a.ring);
            seen.emplace(sub.a, std::move(sub));
        }
        for (auto& [k, v] : seen) a.subs.push_back(v);
    } else {
        a.subs = closure(a.ring, a.gens);
    }
    a.image_order = a.subs.size();

    if (s != SpaceKind::Alternating) {
        if (a.image_order * scalar_kernel_count(g, *F) != a.source_order)
            throw std::logic_error("conjugation_action: faithful image size mismatch");
    }
    return a;
}

LinSub tau_ad_substitution(const RingPtr& gl2_ring) {
    if (gl2_ring->arity() != 4)
        throw std::invalid_argument("tau_ad_substitution: gl2 ring required");
    LinSub s = identity_sub(gl2_ring);
    s.a[0 * 4 + 0] = 0; s.a[0 * 4 + 3] = 1; // a -> d
    s.a[3 * 4 + 3] = 0; s.a[3 * 4 + 0] = 1; // d -> a
    return s;
}

Action extend_gamma(const Action& base) {
    if (base.space != SpaceKind::Gl2)
        throw std::invalid_argument("extend_gamma: gl2 space required");
    Action g = base;
    std::vector<LinSub> seeds = base.subs;
    seeds.push_back(tau_ad_substitution(base.ring));
    g.subs = closure(base.ring, std::move(seeds));
    g.gens = base.gens;
    g.gens.push_back(tau_ad_substitution(base.ring));
    g.image_order = g.subs.size();
    g.source_order = g.subs.size(); // Gamma is defined inside GL(V)
    g.gamma = true;
    return g;
}

namespace {

FqMatrix sub_minus_identity(const LinSub& s) {
    const unsigned n = s.n();
    const Field& F = s.ring->field();
    FqMatrix m(s.ring->field_ptr(), n, n);
    for (unsigned j = 0; j < n; ++j)
        for (unsigned i = 0; i < n; ++i)
            m.at(j, i) = i == j ? F.sub(s.at(j, i), 1) : s.at(j, i);
    return m;
}

Felt det_n(const Field& F, const std::vector<Felt>& a, unsigned n) {
    // small n: elimination with pivot tracking
    std::vector<Felt> m = a;
    Felt det = 1;
    for (unsigned c = 0, r = 0; c < n && r < n; ++c) {
        unsigned piv = n;
        for (unsigned i = r; i < n; ++i)
            if (m[i * n + c] != 0) {
                piv = i;
                break;
            }
        if (piv == n) return 0;
        if (piv != r) {
            for (unsigned j = 0; j < n; ++j) std::swap(m[piv * n + j], m[r * n + j]);
            det = F.neg(det);
        }
        det = F.mul(det, m[r * n + c]);
        const Felt inv = F.inv(m[r * n + c]);
        for (unsigned i = r + 1; i < n; ++i) {
            const Felt f = F.mul(m[i * n + c], inv);
            if (!f) continue;
            for (unsigned j = c; j < n; ++j)
                m[i * n + j] = F.sub(m[i * n + j], F.mul(f, m[r * n + j]));
        }
        ++r;
    }
    return det;
}

} // namespace

int fixed_subspace_dim(const Action& a, std::span<const Mat2> subgroup) {
    const unsigned n = a.ring->arity();
    FqMatrix stacked(a.ring->field_ptr(), subgroup.size() * n, n);
    std::size_t r = 0;
    for (const Mat2& m : subgroup) {
        FqMatrix blk = sub_minus_identity(substitution_of(m, a.space, a.ring));
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) stacked.at(r * n + i, j) = blk.at(i, j);
        ++r;
    }
    return int(n - rank(std::move(stacked)));
}

int pseudoreflection_count(const Action& a) {
    int count = 0;
    for (const LinSub& s : a.subs)
        if (rank(sub_minus_identity(s)) == 1) ++count;
    return count;
}

std::set<Felt> representation_dets(const Action& a) {
    std::set<Felt> out;
    const Field& F = a.ring->field();
    for (const LinSub& s : a.subs) out.insert(det_n(F, s.a, s.n()));
    return out;
}

std::vector<std::uint64_t> abelianization(const std::vector<LinSub>& group) {
    if (group.empty()) return {};
    const RingPtr ring = group[0].ring;
    std::map<std::vector<Felt>, std::size_t> index;
    for (std::size_t i = 0; i < group.size(); ++i) index.emplace(group[i].a, i);
    const std::size_t N = group.size();
    if (index.size() != N) throw std::invalid_argument("abelianization: duplicates");

    auto mul_idx = [&](std::size_t i, std::size_t j) {
        auto it = index.find(compose(group[i], group[j]).a);
        if (it == index.end())
            throw std::invalid_argument("abelianization: set not closed");
        return it->second;
    };
    const std::size_t id = index.at(identity_sub(ring).a);
    std::vector<std::size_t> inv(N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if (mul_idx(i, j) == id) {
                inv[i] = j;
                break;
            }

    // commutator subgroup: closure of all [x, y]
    std::vector<bool> in_h(N, false);
    std::deque<std::size_t> frontier;
    auto add_h = [&](std::size_t x) {
        if (!in_h[x]) {
            in_h[x] = true;
            frontier.push_back(x);
        }
    };
    add_h(id);
    std::vector<std::size_t> comms;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            comms.push_back(mul_idx(mul_idx(i, j), mul_idx(inv[i], inv[j])));
    std::sort(comms.begin(), comms.end());
    comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
    for (std::size_t c : comms) add_h(c);
    while (!frontier.empty()) {
        std::size_t x = frontier.front();
        frontier.pop_front();
        for (std::size_t c : comms) add_h(mul_idx(x, c));
    }

    // quotient group on canonical coset representatives
    std::vector<std::size_t> h_elems;
    for (std::size_t i = 0; i < N; ++i)
        if (in_h[i]) h_elems.push_back(i);
    std::vector<std::size_t> coset_rep(N);
    std::map<std::size_t, std::size_t> rep_index; // rep -> dense id
    for (std::size_t x = 0; x < N; ++x) {
        std::size_t best = mul_idx(x, h_elems[0]);
        for (std::size_t h : h_elems) best = std::min(best, mul_idx(x, h));
        coset_rep[x] = best;
        rep_index.emplace(best, 0);
    }
    std::vector<std::size_t> reps;
    for (auto& [r, idx] : rep_index) {
        idx = reps.size();
        reps.push_back(r);
    }
    const std::size_t A = reps.size();
    auto qmul = [&](std::size_t x, std::size_t y) {
        return rep_index.at(coset_rep[mul_idx(reps[x], reps[y])]);
    };
    const std::size_t qid = rep_index.at(coset_rep[id]);

    // invariant factors from order statistics, prime by prime
    std::vector<unsigned> primes;
    {
        std::size_t m = A;
        for (std::size_t d = 2; d * d <= m; ++d)
            if (m % d == 0) {
                primes.push_back(unsigned(d));
                while (m % d == 0) m /= d;
            }
        if (m > 1) primes.push_back(unsigned(m));
    }
    auto qpow = [&](std::size_t x, std::uint64_t n) {
        std::size_t r = qid, base = x;
        while (n) {
            if (n & 1) r = qmul(r, base);
            base = qmul(base, base);
            n >>= 1;
        }
        return r;
    };
    std::vector<std::vector<std::uint64_t>> lambda_per_prime;
    for (unsigned r : primes) {
        std::vector<std::uint64_t> m_js{0}; // log_r of counts
        std::uint64_t pw = 1;
        while (true) {
            pw *= r;
            std::size_t cnt = 0;
            for (std::size_t x = 0; x < A; ++x)
                if (qpow(x, pw) == qid) ++cnt;
            std::uint64_t mj = 0, c = cnt;
            while (c > 1) {
                c /= r;
                ++mj;
            }
            m_js.push_back(mj);
            if (m_js.size() > 1 && m_js.back() == m_js[m_js.size() - 2]) break;
        }
        std::vector<std::uint64_t> d; // d_j = #{i : lambda_i >= j}
        for (std::size_t j = 1; j < m_js.size(); ++j)
            if (m_js[j] > m_js[j - 1]) d.push_back(m_js[j] - m_js[j - 1]);
        std::vector<std::uint64_t> lambda;
        for (std::uint64_t i = 1; !d.empty() && i <= d[0]; ++i) {
            std::uint64_t li = 0;
            for (std::uint64_t dj : d)
                if (dj >= i) ++li;
            lambda.push_back(li);
        }
        lambda_per_prime.push_back(std::move(lambda)); // descending by construction
    }
    std::size_t k = 0;
    for (auto& l : lambda_per_prime) k = std::max(k, l.size());
    std::vector<std::uint64_t> factors;
    for (std::size_t i = 0; i < k; ++i) {
        std::uint64_t f = 1;
        for (std::size_t pi = 0; pi < primes.size(); ++pi) {
            const auto& l = lambda_per_prime[pi];
            if (i < l.size())
                for (std::uint64_t j = 0; j < l[i]; ++j) f *= primes[pi];
        }
        factors.push_back(f);
    }
    std::sort(factors.begin(), factors.end()); // ascending divisibility chain
    return factors;
}

std::uint64_t class_group_order(const Action& a) {
    const std::uint64_t qm1 = a.ring->field().q() - 1;
    std::uint64_t order = 1;
    for (std::uint64_t d : abelianization(a.subs)) order *= std::gcd(d, qm1);
    return order;
}

std::vector<Poly> orbit(const Poly& f, const Action& a) {
    std::map<std::vector<Term>, Poly> seen;
    for (const LinSub& s : a.subs) {
        Poly g = apply_substitution(f, s);
        seen.emplace(g.terms(), std::move(g));
    }
    std::vector<Poly> out;
    out.reserve(seen.size());
    for (auto& [k, v] : seen) out.push_back(v);
    return out;
}

Poly orbit_product(const Poly& f, const Action& a) {
    Poly r = Poly::constant(f.ring(), 1);
    for (const Poly& g : orbit(f, a)) r = r * g;
    return r;
}

} // namespace invforge
