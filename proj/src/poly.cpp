#include "invforge/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace invforge {

Ring::Ring(FieldPtr field, std::vector<std::string> vars)
    : field_(std::move(field)), vars_(std::move(vars)) {
    if (vars_.empty() || vars_.size() > 4)
        throw std::invalid_argument("Ring: arity must be between 1 and 4");
    for (std::size_t i = 0; i < vars_.size(); ++i)
        for (std::size_t j = i + 1; j < vars_.size(); ++j)
            if (vars_[i] == vars_[j])
                throw std::invalid_argument("Ring: duplicate variable name");
}

unsigned Ring::var_index(const std::string& name) const {
    for (unsigned i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    throw std::invalid_argument("Ring: unknown variable " + name);
}

bool Ring::same_as(const Ring& o) const {
    return field_->p() == o.field_->p() && field_->e() == o.field_->e() &&
           vars_ == o.vars_;
}

RingPtr make_ring(FieldPtr field, std::vector<std::string> vars) {
    return std::make_shared<Ring>(std::move(field), std::move(vars));
}

namespace {

void require_same_ring(const Poly& f, const Poly& g) {
    if (!f.ring() || !g.ring() || !f.ring()->same_as(*g.ring()))
        throw std::invalid_argument("poly op: ring mismatch");
}

std::vector<Term> canonicalize(const Field& F, std::vector<Term> ts) {
    std::sort(ts.begin(), ts.end(),
              [](const Term& x, const Term& y) { return x.m > y.m; });
    std::vector<Term> out;
    out.reserve(ts.size());
    for (const Term& t : ts) {
        if (!out.empty() && out.back().m == t.m)
            out.back().c = F.add(out.back().c, t.c);
        else
            out.push_back(t);
        if (!out.empty() && out.back().c == 0) out.pop_back();
    }
    return out;
}

} // namespace

Poly::Poly(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)) {
    terms_ = canonicalize(ring_->field(), std::move(terms));
}

Poly Poly::constant(RingPtr ring, Felt c) {
    Poly f(ring);
    if (c != 0) f.terms_.push_back({mono_one(), c});
    return f;
}

Poly Poly::variable(RingPtr ring, unsigned i) {
    if (i >= ring->arity()) throw std::invalid_argument("Poly::variable: bad index");
    Poly f(ring);
    f.terms_.push_back({mono_var(i, ring->arity()), 1});
    return f;
}

Poly Poly::monomial(RingPtr ring, Mono m, Felt c) {
    Poly f(ring);
    if (c != 0) f.terms_.push_back({m, c});
    return f;
}

int Poly::degree() const {
    int d = -1;
    const unsigned n = ring_->arity();
    for (const Term& t : terms_) d = std::max(d, int(mono_deg(t.m, n)));
    return d;
}

bool Poly::is_homogeneous() const {
    if (terms_.empty()) return true;
    const unsigned n = ring_->arity();
    const unsigned d = mono_deg(terms_.front().m, n);
    for (const Term& t : terms_)
        if (mono_deg(t.m, n) != d) return false;
    return true;
}

Felt Poly::coeff(Mono m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, Mono key) { return t.m > key; });
    if (it != terms_.end() && it->m == m) return it->c;
    return 0;
}

Mono Poly::leading_monomial() const {
    if (terms_.empty())
        throw std::domain_error("leading_monomial of the zero polynomial");
    return terms_.front().m;
}

Poly Poly::operator-() const {
    Poly r(ring_);
    const Field& F = ring_->field();
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_) r.terms_.push_back({t.m, F.neg(t.c)});
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    require_same_ring(*this, o);
    const Field& F = ring_->field();
    Poly r(ring_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        if (terms_[i].m > o.terms_[j].m)
            r.terms_.push_back(terms_[i++]);
        else if (terms_[i].m < o.terms_[j].m)
            r.terms_.push_back(o.terms_[j++]);
        else {
            Felt c = F.add(terms_[i].c, o.terms_[j].c);
            if (c != 0) r.terms_.push_back({terms_[i].m, c});
            ++i;
            ++j;
        }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    require_same_ring(*this, o);
    const Field& F = ring_->field();
    if (is_zero() || o.is_zero()) return Poly(ring_);
    // iterate the shorter factor outermost
    const Poly& small = terms_.size() <= o.terms_.size() ? *this : o;
    const Poly& big = terms_.size() <= o.terms_.size() ? o : *this;
    std::unordered_map<Mono, Felt> acc;
    acc.reserve(small.terms_.size() * 2 + big.terms_.size());
    for (const Term& s : small.terms_)
        for (const Term& b : big.terms_) {
            Mono m = mono_mul(s.m, b.m);
            Felt c = F.mul(s.c, b.c);
            auto [it, fresh] = acc.try_emplace(m, c);
            if (!fresh) {
                it->second = F.add(it->second, c);
                if (it->second == 0) acc.erase(it);
            }
        }
    Poly r(ring_);
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc) r.terms_.push_back({m, c});
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& x, const Term& y) { return x.m > y.m; });
    return r;
}

bool Poly::operator==(const Poly& o) const {
    if (!ring_ || !o.ring_) return terms_.empty() && o.terms_.empty();
    return ring_->same_as(*o.ring_) && terms_ == o.terms_;
}

Poly Poly::scaled(Felt c) const {
    Poly r(ring_);
    if (c == 0) return r;
    const Field& F = ring_->field();
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_) r.terms_.push_back({t.m, F.mul(t.c, c)});
    return r;
}

Poly Poly::pow(std::uint64_t n) const {
    Poly r = Poly::constant(ring_, 1);
    Poly base = *this;
    while (n) {
        if (n & 1) r = r * base;
        if (n >>= 1) base = base * base;
    }
    return r;
}

Poly LinSub::image(unsigned j) const {
    std::vector<Term> ts;
    const unsigned nn = n();
    for (unsigned i = 0; i < nn; ++i)
        if (at(j, i) != 0) ts.push_back({mono_var(i, nn), at(j, i)});
    return Poly(ring, std::move(ts));
}

bool LinSub::operator==(const LinSub& o) const {
    return ring->same_as(*o.ring) && a == o.a;
}

LinSub identity_sub(RingPtr ring) {
    const unsigned n = ring->arity();
    LinSub s{std::move(ring), std::vector<Felt>(std::size_t(n) * n, 0)};
    for (unsigned i = 0; i < n; ++i) s.a[std::size_t(i) * n + i] = 1;
    return s;
}

LinSub compose(const LinSub& first, const LinSub& second) {
    // image of x_j is first's row j pushed through second: the matrix product
    if (!first.ring->same_as(*second.ring))
        throw std::invalid_argument("compose: ring mismatch");
    const unsigned n = first.n();
    const Field& F = first.ring->field();
    LinSub r{first.ring, std::vector<Felt>(std::size_t(n) * n, 0)};
    for (unsigned j = 0; j < n; ++j)
        for (unsigned k = 0; k < n; ++k) {
            const Felt c = first.at(j, k);
            if (!c) continue;
            for (unsigned i = 0; i < n; ++i)
                r.a[std::size_t(j) * n + i] =
                    F.add(r.a[std::size_t(j) * n + i], F.mul(c, second.at(k, i)));
        }
    return r;
}

Poly apply_substitution(const Poly& f, const LinSub& s) {
    if (!f.ring() || !f.ring()->same_as(*s.ring))
        throw std::invalid_argument("apply_substitution: ring mismatch");
    const unsigned n = s.n();
    std::vector<Poly> var_images(n);
    for (unsigned i = 0; i < n; ++i) var_images[i] = s.image(i);

    // memoized monomial images: m = x_i * m' with i the first active lane
    std::unordered_map<Mono, Poly> memo;
    memo.emplace(mono_one(), Poly::constant(f.ring(), 1));
    auto image_of = [&](Mono m, auto&& self) -> const Poly& {
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        unsigned i = 0;
        while (mono_exp(m, i, n) == 0) ++i;
        const Poly& rest = self(m - mono_var(i, n), self);
        Poly val = rest * var_images[i];
        return memo.emplace(m, std::move(val)).first->second;
    };

    Poly out(f.ring());
    for (const Term& t : f.terms())
        out = out + image_of(t.m, image_of).scaled(t.c);
    return out;
}

Poly partial_derivative(const Poly& f, unsigned var) {
    const unsigned n = f.ring()->arity();
    if (var >= n) throw std::invalid_argument("partial_derivative: bad variable");
    const Field& F = f.ring()->field();
    std::vector<Term> ts;
    for (const Term& t : f.terms()) {
        const unsigned e = mono_exp(t.m, var, n);
        if (e == 0) continue;
        const Felt k = F.from_int(e);
        if (k == 0) continue; // exponent divisible by the characteristic
        ts.push_back({t.m - mono_var(var, n), F.mul(t.c, k)});
    }
    return Poly(f.ring(), std::move(ts));
}

Poly partial_derivative(const Poly& f, const std::string& var) {
    return partial_derivative(f, f.ring()->var_index(var));
}

namespace {

Poly det_recursive(const std::vector<Poly>& m, std::vector<unsigned> rows,
                   std::vector<unsigned> cols, const RingPtr& ring, unsigned n) {
    const Field& F = ring->field();
    if (rows.size() == 1) return m[std::size_t(rows[0]) * n + cols[0]];
    Poly acc(ring);
    const unsigned r0 = rows[0];
    std::vector<unsigned> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const Poly& entry = m[std::size_t(r0) * n + cols[k]];
        if (entry.is_zero()) continue;
        std::vector<unsigned> sub_cols;
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (j != k) sub_cols.push_back(cols[j]);
        Poly minor = det_recursive(m, sub_rows, sub_cols, ring, n);
        Poly contrib = entry * minor;
        if (k % 2 == 1) contrib = contrib.scaled(F.neg(1));
        acc = acc + contrib;
    }
    return acc;
}

} // namespace

Poly jacobian_det(std::span<const Poly> fs) {
    if (fs.empty()) throw std::invalid_argument("jacobian_det: empty input");
    const RingPtr ring = fs[0].ring();
    const unsigned n = ring->arity();
    if (fs.size() != n)
        throw std::invalid_argument("jacobian_det: need exactly arity polynomials");
    std::vector<Poly> m;
    m.reserve(std::size_t(n) * n);
    for (unsigned i = 0; i < n; ++i) {
        if (!fs[i].ring()->same_as(*ring))
            throw std::invalid_argument("jacobian_det: ring mismatch");
        for (unsigned j = 0; j < n; ++j) m.push_back(partial_derivative(fs[i], j));
    }
    std::vector<unsigned> idx(n);
    for (unsigned i = 0; i < n; ++i) idx[i] = i;
    return det_recursive(m, idx, idx, ring, n);
}

Poly sqrt_char2(const Poly& f) {
    const Field& F = f.ring()->field();
    if (F.p() != 2)
        throw std::domain_error("sqrt_char2: field characteristic is not two");
    const unsigned n = f.ring()->arity();
    std::vector<Term> ts;
    ts.reserve(f.terms().size());
    for (const Term& t : f.terms()) {
        Mono half = 0;
        for (unsigned i = 0; i < n; ++i) {
            const unsigned e = mono_exp(t.m, i, n);
            if (e & 1)
                throw std::domain_error("sqrt_char2: odd exponent, not a square");
            half |= mono_var(i, n, e / 2);
        }
        ts.push_back({half, F.frobenius_inverse(t.c)});
    }
    return Poly(f.ring(), std::move(ts));
}

Poly map_ring(const Poly& f, const RingPtr& target, std::span<const Poly> images) {
    const unsigned n = f.ring()->arity();
    if (images.size() != n)
        throw std::invalid_argument("map_ring: one image per source variable");
    for (const Poly& g : images)
        if (!g.ring()->same_as(*target))
            throw std::invalid_argument("map_ring: image outside target ring");
    std::unordered_map<Mono, Poly> memo;
    memo.emplace(mono_one(), Poly::constant(target, 1));
    auto image_of = [&](Mono m, auto&& self) -> const Poly& {
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        unsigned i = 0;
        while (mono_exp(m, i, n) == 0) ++i;
        const Poly& rest = self(m - mono_var(i, n), self);
        Poly val = rest * images[i];
        return memo.emplace(m, std::move(val)).first->second;
    };
    Poly out(target);
    for (const Term& t : f.terms())
        out = out + image_of(t.m, image_of).scaled(t.c);
    return out;
}

Felt evaluate(const Poly& f, std::span<const Felt> point) {
    const unsigned n = f.ring()->arity();
    if (point.size() != n) throw std::invalid_argument("evaluate: arity mismatch");
    const Field& F = f.ring()->field();
    Felt acc = 0;
    for (const Term& t : f.terms()) {
        Felt v = t.c;
        for (unsigned i = 0; i < n; ++i) {
            const unsigned e = mono_exp(t.m, i, n);
            if (e) v = F.mul(v, F.pow(point[i], e));
        }
        acc = F.add(acc, v);
    }
    return acc;
}

std::string to_text(const Poly& f) {
    if (f.is_zero()) return "0";
    const unsigned n = f.ring()->arity();
    const auto& vars = f.ring()->vars();
    std::ostringstream os;
    bool first = true;
    for (const Term& t : f.terms()) {
        if (!first) os << " + ";
        first = false;
        os << unsigned(t.c);
        for (unsigned i = 0; i < n; ++i) {
            const unsigned e = mono_exp(t.m, i, n);
            if (!e) continue;
            os << "*" << vars[i];
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

Poly parse_poly(const RingPtr& ring, const std::string& text) {
    const Field& F = ring->field();
    const unsigned n = ring->arity();
    std::vector<Term> ts;

    std::size_t pos = 0;
    auto trimmed = [](std::string s) {
        while (!s.empty() && s.front() == ' ') s.erase(s.begin());
        while (!s.empty() && s.back() == ' ') s.pop_back();
        return s;
    };
    while (pos <= text.size()) {
        std::size_t next = text.find(" + ", pos);
        std::string piece = trimmed(text.substr(
            pos, next == std::string::npos ? std::string::npos : next - pos));
        if (piece.empty()) throw std::invalid_argument("parse_poly: empty term");
        if (piece != "0") {
            Felt c = 1;
            Mono m = 0;
            std::size_t fp = 0;
            bool first_factor = true;
            while (fp < piece.size()) {
                std::size_t star = piece.find('*', fp);
                std::string fac = piece.substr(
                    fp, star == std::string::npos ? std::string::npos : star - fp);
                if (fac.empty()) throw std::invalid_argument("parse_poly: bad factor");
                if (first_factor && std::all_of(fac.begin(), fac.end(), ::isdigit)) {
                    unsigned long v = std::stoul(fac);
                    if (v >= F.q())
                        throw std::invalid_argument("parse_poly: coefficient out of range");
                    c = Felt(v);
                } else {
                    std::size_t caret = fac.find('^');
                    std::string name = fac.substr(0, caret);
                    unsigned e = 1;
                    if (caret != std::string::npos)
                        e = unsigned(std::stoul(fac.substr(caret + 1)));
                    m = mono_mul(m, mono_var(ring->var_index(name), n, e));
                }
                first_factor = false;
                fp = star == std::string::npos ? piece.size() : star + 1;
            }
            ts.push_back({m, c});
        }
        if (next == std::string::npos) break;
        pos = next + 3;
    }
    return Poly(ring, std::move(ts));
}

namespace {

void enum_monos(unsigned n, unsigned i, unsigned rem, Mono cur, std::vector<Mono>& out) {
    if (i + 1 == n) {
        out.push_back(cur | mono_var(i, n, rem));
        return;
    }
    for (int e = int(rem); e >= 0; --e)
        enum_monos(n, i + 1, rem - unsigned(e), cur | mono_var(i, n, unsigned(e)), out);
}

} // namespace

std::vector<Mono> degree_monomials(const Ring& ring, unsigned d) {
    std::vector<Mono> out;
    if (d > 0xFFFF) throw std::invalid_argument("degree_monomials: degree too large");
    enum_monos(ring.arity(), 0, d, 0, out);
    return out;
}

} // namespace invforge
