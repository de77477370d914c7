#include "invforge/lab.hpp"
#include "invforge/parallel.hpp"
#include "invforge/steenrod.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace invforge {

namespace {

constexpr std::int64_t kDegreePieceCap = 10000;

std::int64_t piece_dim(unsigned arity, unsigned d) {
    // C(d + arity - 1, arity - 1)
    std::int64_t r = 1;
    for (unsigned i = 1; i < arity; ++i) r = r * (d + i) / i;
    return r;
}

// Images of all monomials of consecutive degrees under one substitution,
// advanced level by level: image(m) = image(m / x_i) * image(x_i) with i the
// first active variable.
class ImageLadder {
public:
    explicit ImageLadder(const LinSub& s) : s_(s), n_(s.n()) {
        level_ = 0;
        cur_.assign(1, {{mono_one(), 1}});
        index_.clear();
        index_.emplace(mono_one(), 0);
        rows_.resize(n_);
        for (unsigned i = 0; i < n_; ++i) {
            const Poly img = s.image(i);
            rows_[i].assign(img.terms().begin(), img.terms().end());
        }
    }

    // images of the monomials of degree level+1, in lex-descending order
    const std::vector<std::vector<Term>>& advance(const std::vector<Mono>& monos) {
        const Field& F = s_.ring->field();
        std::vector<std::vector<Term>> next(monos.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 32) if (parallel::enabled() && monos.size() > 64)
#endif
        for (long long jj = 0; jj < (long long)monos.size(); ++jj) {
            const std::size_t j = std::size_t(jj);
            const Mono m = monos[j];
            unsigned i = 0;
            while (mono_exp(m, i, n_) == 0) ++i;
            const auto& base = cur_[index_.at(m - mono_var(i, n_))];
            // multiply the degree-(t-1) image by the linear image of x_i
            std::unordered_map<Mono, Felt> acc;
            acc.reserve(base.size() * 2);
            for (const Term& bt : base)
                for (const Term& lt : rows_[i]) {
                    const Mono key = mono_mul(bt.m, lt.m);
                    const Felt c = F.mul(bt.c, lt.c);
                    auto [it, fresh] = acc.try_emplace(key, c);
                    if (!fresh) {
                        it->second = F.add(it->second, c);
                        if (it->second == 0) acc.erase(it);
                    }
                }
            auto& out = next[j];
            out.reserve(acc.size());
            for (auto& [mm, cc] : acc) out.push_back({mm, cc});
            std::sort(out.begin(), out.end(),
                      [](const Term& x, const Term& y) { return x.m > y.m; });
        }
        cur_ = std::move(next);
        index_.clear();
        for (std::size_t j = 0; j < monos.size(); ++j) index_.emplace(monos[j], j);
        ++level_;
        return cur_;
    }

private:
    LinSub s_;
    unsigned n_;
    unsigned level_;
    std::vector<std::vector<Term>> cur_;
    std::unordered_map<Mono, std::size_t> index_;
    std::vector<std::vector<Term>> rows_;
};

const std::vector<LinSub>& pick_subs(const Action& a, bool use_all) {
    return use_all ? a.subs : a.gens;
}

// run the ladders once and call fn(d, monos, images) per degree 1..D
template <typename Fn>
void sweep_degrees(const Action& a, unsigned D, bool use_all, Fn&& fn) {
    const auto& subs = pick_subs(a, use_all);
    std::vector<ImageLadder> ladders;
    ladders.reserve(subs.size());
    for (const LinSub& s : subs) ladders.emplace_back(s);
    for (unsigned d = 1; d <= D; ++d) {
        if (piece_dim(a.ring->arity(), d) > kDegreePieceCap)
            throw std::invalid_argument("invariant space: degree piece too large");
        const auto monos = degree_monomials(*a.ring, d);
        std::vector<const std::vector<std::vector<Term>>*> images;
        images.reserve(ladders.size());
        for (auto& l : ladders) images.push_back(&l.advance(monos));
        fn(d, monos, images);
    }
}

using ImageRefs = std::vector<const std::vector<std::vector<Term>>*>;

FqMatrix stack_images(const RingPtr& ring, const std::vector<Mono>& monos,
                      const ImageRefs& images) {
    const Field& F = ring->field();
    const std::size_t N = monos.size();
    std::unordered_map<Mono, std::size_t> row_of;
    row_of.reserve(N * 2);
    for (std::size_t k = 0; k < N; ++k) row_of.emplace(monos[k], k);

    FqMatrix m(ring->field_ptr(), images.size() * N, N);
    for (std::size_t si = 0; si < images.size(); ++si) {
        const std::size_t base = si * N;
        for (std::size_t j = 0; j < N; ++j) {
            for (const Term& t : (*images[si])[j])
                m.at(base + row_of.at(t.m), j) = t.c;
            m.at(base + j, j) = F.sub(m.at(base + j, j), 1);
        }
    }
    return m;
}

} // namespace

std::int64_t invariant_dim(const Action& a, unsigned d, bool use_all) {
    if (d == 0) return 1;
    std::int64_t out = 0;
    sweep_degrees(a, d, use_all,
                  [&](unsigned dd, const std::vector<Mono>& monos, const ImageRefs& im) {
                      if (dd != d) return;
                      FqMatrix m = stack_images(a.ring, monos, im);
                      out = std::int64_t(monos.size()) - std::int64_t(rref(m).rank);
                  });
    return out;
}

std::vector<std::int64_t> invariant_dims_upto(const Action& a, unsigned D,
                                              bool use_all) {
    std::vector<std::int64_t> dims(D + 1, 0);
    dims[0] = 1;
    sweep_degrees(a, D, use_all,
                  [&](unsigned d, const std::vector<Mono>& monos, const ImageRefs& im) {
                      FqMatrix m = stack_images(a.ring, monos, im);
                      dims[d] = std::int64_t(monos.size()) - std::int64_t(rref(m).rank);
                  });
    return dims;
}

std::vector<Poly> invariant_basis(const Action& a, unsigned d, bool use_all) {
    if (d == 0) return {Poly::constant(a.ring, 1)};
    std::vector<Poly> out;
    sweep_degrees(a, d, use_all, [&](unsigned dd, const std::vector<Mono>& monos,
                                     const ImageRefs& im) {
        if (dd != d) return;
        const FqMatrix kb = kernel_basis(stack_images(a.ring, monos, im));
        const Field& F = a.ring->field();
        for (std::size_t r = 0; r < kb.rows(); ++r) {
            std::vector<Term> ts;
            for (std::size_t j = 0; j < monos.size(); ++j)
                if (kb.at(r, j) != 0) ts.push_back({monos[j], kb.at(r, j)});
            Poly f(a.ring, std::move(ts));
            if (!f.is_zero() && f.terms().front().c != 1)
                f = f.scaled(F.inv(f.terms().front().c));
            out.push_back(std::move(f));
        }
    });
    // re-check invariance; against the full image when the job is small
    const bool check_all = a.subs.size() * out.size() <= 512;
    const auto& checkers = check_all ? a.subs : a.gens;
    for (const Poly& f : out)
        for (const LinSub& s : checkers)
            if (!(apply_substitution(f, s) == f))
                throw std::logic_error("invariant_basis: non-invariant element");
    return out;
}

// ---- series ------------------------------------------------------------------

int SeriesSpec::degree() const {
    int num = 0;
    for (int k : numer_exps) num = std::max(num, k);
    int den = 0;
    for (int d : denom_degrees) den += d;
    return num - den;
}

SeriesSpec case_series(const Case& c) {
    const unsigned q = c.field->q();
    const bool even = c.field->p() == 2;
    const int qi = int(q);
    SeriesSpec s;
    switch (c.group) {
        case GroupKind::GL2:
        case GroupKind::SL2: {
            const bool gl_like = c.group == GroupKind::GL2 || even;
            if (c.space == SpaceKind::Gl2) {
                if (gl_like) {
                    s.numer_exps = {qi * qi};
                    s.denom_degrees = {1, 2, qi + 1, qi * qi - qi};
                } else {
                    s.numer_exps = {qi * (qi + 1) / 2};
                    s.denom_degrees = {1, 2, qi + 1, qi * (qi - 1) / 2};
                }
            } else if (c.space == SpaceKind::Sl2) {
                if (even) {
                    s.denom_degrees = {2, qi + 1, (qi * qi - qi) / 2};
                } else if (c.group == GroupKind::GL2) {
                    s.numer_exps = {qi * qi};
                    s.denom_degrees = {2, qi + 1, qi * qi - qi};
                } else {
                    s.numer_exps = {qi * (qi + 1) / 2};
                    s.denom_degrees = {2, qi + 1, qi * (qi - 1) / 2};
                }
            } else {
                throw std::invalid_argument("case_series: case not in the table");
            }
            break;
        }
        case GroupKind::O2: {
            int deg3 = even ? 1 : 2;
            int deg4;
            if (even)
                deg4 = qi;
            else
                deg4 = q % 4 == 1 ? (qi - 1) / 2 : (qi + 1) / 2;
            if (c.space == SpaceKind::Gl2) {
                s.numer_exps = {deg3 + deg4 - 1};
                s.denom_degrees = {1, 2, deg3, deg4};
            } else if (c.space == SpaceKind::Symmetric) {
                s.denom_degrees = {1, 2, even ? qi / 2 : deg4};
            } else {
                s.denom_degrees = {even ? 1 : 2};
            }
            break;
        }
        case GroupKind::Unipotent:
            throw std::invalid_argument("case_series: case not in the table");
    }
    return s;
}

std::vector<std::int64_t> product_series(std::span<const int> degrees, unsigned D) {
    std::vector<std::int64_t> u(D + 1, 0);
    u[0] = 1;
    for (int k : degrees)
        for (unsigned d = unsigned(k); d <= D; ++d) u[d] += u[d - unsigned(k)];
    return u;
}

std::vector<std::int64_t> expected_series(const Case& c, unsigned D) {
    const SeriesSpec s = case_series(c);
    auto u = product_series(s.denom_degrees, D);
    auto out = u;
    for (int k : s.numer_exps)
        for (unsigned d = unsigned(k); d <= D; ++d) out[d] += u[d - unsigned(k)];
    return out;
}

int expected_a_invariant(const Case& c) { return case_series(c).degree(); }

HilbertData hilbert_function(const Case& c, const Action& a, unsigned D) {
    HilbertData h;
    h.dims = invariant_dims_upto(a, D);
    h.expected = expected_series(c, D);
    h.a_invariant_expected = expected_a_invariant(c);
    return h;
}

// ---- ideal / subring tests -----------------------------------------------------

namespace {

void write_poly_row(FqMatrix& m, std::size_t row, const Poly& f,
                    const std::unordered_map<Mono, std::size_t>& col_of) {
    for (const Term& t : f.terms()) m.at(row, col_of.at(t.m)) = t.c;
}

// exponent tuples e >= 0 with sum e_i * deg_i = target
void knapsack(std::span<const int> degs, std::size_t i, int target,
              std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
    if (i + 1 == degs.size()) {
        if (target % degs[i] == 0) {
            cur.push_back(unsigned(target / degs[i]));
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (int e = 0; e * degs[i] <= target; ++e) {
        cur.push_back(unsigned(e));
        knapsack(degs, i + 1, target - e * degs[i], cur, out);
        cur.pop_back();
    }
}

} // namespace

FqMatrix span_matrix(std::span<const Poly> gens, unsigned d) {
    if (gens.empty()) throw std::invalid_argument("span_matrix: no generators");
    const RingPtr ring = gens[0].ring();
    const auto monos = degree_monomials(*ring, d);
    std::unordered_map<Mono, std::size_t> col_of;
    for (std::size_t j = 0; j < monos.size(); ++j) col_of.emplace(monos[j], j);

    std::vector<int> degs;
    for (const Poly& g : gens) {
        if (!g.is_homogeneous() || g.is_zero())
            throw std::invalid_argument("span_matrix: generators must be homogeneous");
        degs.push_back(g.degree());
    }
    std::vector<std::vector<unsigned>> tuples;
    std::vector<unsigned> cur;
    knapsack(degs, 0, int(d), cur, tuples);

    // cache powers of each generator
    std::vector<std::vector<Poly>> powers(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        unsigned maxe = 0;
        for (const auto& t : tuples) maxe = std::max(maxe, t[i]);
        powers[i].push_back(Poly::constant(ring, 1));
        for (unsigned e = 1; e <= maxe; ++e)
            powers[i].push_back(powers[i].back() * gens[i]);
    }

    FqMatrix m(ring->field_ptr(), tuples.size(), monos.size());
    for (std::size_t r = 0; r < tuples.size(); ++r) {
        Poly prod = Poly::constant(ring, 1);
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (tuples[r][i]) prod = prod * powers[i][tuples[r][i]];
        write_poly_row(m, r, prod, col_of);
    }
    return m;
}

bool hsop_check(std::span<const Poly> fs) {
    if (fs.empty()) throw std::invalid_argument("hsop_check: empty input");
    const RingPtr ring = fs[0].ring();
    const unsigned n = ring->arity();
    if (fs.size() != n)
        throw std::invalid_argument("hsop_check: need exactly arity polynomials");
    std::vector<int> degs;
    int top = 0;
    for (const Poly& f : fs) {
        if (f.is_zero() || !f.is_homogeneous())
            throw std::invalid_argument("hsop_check: inputs must be homogeneous and nonzero");
        if (!f.ring()->same_as(*ring))
            throw std::invalid_argument("hsop_check: ring mismatch");
        degs.push_back(f.degree());
        top += f.degree() - 1;
    }

    // complete-intersection prediction: prod (1 - z^deg) / (1 - z)^n
    const unsigned D = unsigned(top) + 2;
    std::vector<int> ones(n, 1);
    auto pred = product_series(ones, D);
    for (int k : degs) {
        // multiply by (1 - z^k)
        for (unsigned d = D;; --d) {
            if (d >= unsigned(k)) pred[d] -= pred[d - unsigned(k)];
            if (d == 0) break;
        }
    }

    for (unsigned d = 0; d <= D; ++d) {
        const auto monos = degree_monomials(*ring, d);
        std::size_t rows = 0;
        for (int k : degs)
            if (unsigned(k) <= d) rows += degree_monomials(*ring, d - unsigned(k)).size();
        std::unordered_map<Mono, std::size_t> col_of;
        for (std::size_t j = 0; j < monos.size(); ++j) col_of.emplace(monos[j], j);
        FqMatrix m(ring->field_ptr(), rows, monos.size());
        std::size_t r = 0;
        for (std::size_t i = 0; i < fs.size(); ++i) {
            if (unsigned(degs[i]) > d) continue;
            for (Mono mm : degree_monomials(*ring, d - unsigned(degs[i]))) {
                for (const Term& t : fs[i].terms())
                    m.at(r, col_of.at(mono_mul(mm, t.m))) = t.c;
                ++r;
            }
        }
        const std::int64_t quotient_dim =
            std::int64_t(monos.size()) - std::int64_t(rref(m).rank);
        if (quotient_dim != pred[d]) return false;
    }
    return true;
}

bool subring_membership(const Poly& f, std::span<const Poly> gens) {
    if (f.is_zero()) return true;
    if (!f.is_homogeneous())
        throw std::invalid_argument("subring_membership: f must be homogeneous");
    const unsigned d = unsigned(f.degree());
    FqMatrix span = span_matrix(gens, d);
    const Rref info = rref(span);

    const auto monos = degree_monomials(*f.ring(), d);
    std::unordered_map<Mono, std::size_t> col_of;
    for (std::size_t j = 0; j < monos.size(); ++j) col_of.emplace(monos[j], j);
    std::vector<Felt> v(monos.size(), 0);
    for (const Term& t : f.terms()) v[col_of.at(t.m)] = t.c;
    return in_row_span(span, info, v);
}

Poly find_secondary(const Action& a, std::span<const Poly> R_gens, unsigned d) {
    FqMatrix span = span_matrix(R_gens, d);
    const Rref info = rref(span);

    const auto monos = degree_monomials(*a.ring, d);
    std::unordered_map<Mono, std::size_t> col_of;
    for (std::size_t j = 0; j < monos.size(); ++j) col_of.emplace(monos[j], j);

    for (const Poly& f : invariant_basis(a, d)) {
        std::vector<Felt> v(monos.size(), 0);
        for (const Term& t : f.terms()) v[col_of.at(t.m)] = t.c;
        if (!in_row_span(span, info, v)) {
            const Field& F = a.ring->field();
            Poly out = f;
            if (out.terms().front().c != 1)
                out = out.scaled(F.inv(out.terms().front().c));
            return out;
        }
    }
    throw std::domain_error("find_secondary: every invariant of this degree lies in R");
}

} // namespace invforge
