#include "invforge/lab.hpp"
#include "invforge/steenrod.hpp"

#include <chrono>
#include <sstream>

namespace invforge {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt_dims(std::span<const std::int64_t> v) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "]";
    return os.str();
}

std::string fmt_ints(std::span<const int> v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

struct Recorder {
    Report& rep;

    template <typename Fn>
    void run(const std::string& name, Fn&& fn) {
        Check ch;
        ch.name = name;
        const auto t0 = Clock::now();
        try {
            auto [expected, observed] = fn();
            ch.expected = expected;
            ch.observed = observed;
            ch.pass = expected == observed;
        } catch (const std::exception& ex) {
            ch.expected = ch.expected.empty() ? "ok" : ch.expected;
            ch.observed = std::string("exception: ") + ex.what();
            ch.pass = false;
        }
        ch.ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0)
                    .count();
        rep.checks.push_back(std::move(ch));
    }
};

using SO = std::pair<std::string, std::string>;

std::vector<int> expected_degrees(const Case& c) {
    const int q = int(c.field->q());
    const bool even = c.field->p() == 2;
    switch (c.group) {
        case GroupKind::GL2:
        case GroupKind::SL2: {
            const bool gl_like = c.group == GroupKind::GL2 || even;
            if (c.space == SpaceKind::Gl2)
                return gl_like ? std::vector<int>{1, 2, q + 1, q * q - q}
                               : std::vector<int>{1, 2, q + 1, q * (q - 1) / 2};
            if (even) return {2, q + 1, (q * q - q) / 2};
            return c.group == GroupKind::GL2
                       ? std::vector<int>{2, q + 1, q * q - q}
                       : std::vector<int>{2, q + 1, q * (q - 1) / 2};
        }
        case GroupKind::O2: {
            const int d4 = even ? q : (q % 4 == 1 ? (q - 1) / 2 : (q + 1) / 2);
            if (c.space == SpaceKind::Gl2)
                return {1, 2, even ? 1 : 2, d4};
            if (c.space == SpaceKind::Symmetric) return {1, 2, even ? q / 2 : d4};
            return {even ? 1 : 2};
        }
        case GroupKind::Unipotent:
            break;
    }
    throw std::invalid_argument("expected_degrees: case not in the table");
}

std::uint64_t expected_image_order(const Case& c) {
    const std::uint64_t q = c.field->q();
    const bool even = c.field->p() == 2;
    switch (c.group) {
        case GroupKind::GL2:
            return q * (q * q - 1);
        case GroupKind::SL2:
            return even ? q * (q * q - 1) : q * (q * q - 1) / 2;
        case GroupKind::O2: {
            const std::uint64_t g = group_order(GroupKind::O2, *c.field);
            if (c.space == SpaceKind::Alternating) return even ? 1 : 2;
            return even ? g : g / 2;
        }
        case GroupKind::Unipotent:
            return q;
    }
    return 0;
}

bool expected_ufd(const Case& c) {
    const bool even = c.field->p() == 2;
    switch (c.group) {
        case GroupKind::GL2:
            return even;
        case GroupKind::SL2:
            return true;
        case GroupKind::O2:
            return c.space == SpaceKind::Gl2 ? even : true;
        case GroupKind::Unipotent:
            return true;
    }
    return true;
}

std::int64_t piece_count(unsigned arity, unsigned d) {
    std::int64_t r = 1;
    for (unsigned i = 1; i < arity; ++i) r = r * (d + i) / i;
    return r;
}

bool hsop_feasible(const Case& c, const Suite& s) {
    (void)c;
    int top = 0;
    for (const Poly& f : s.primaries) top += f.degree() - 1;
    return piece_count(s.ring->arity(), unsigned(top) + 2) <= 2200;
}

} // namespace

int default_degree_cap(const Case& c) {
    const int q = int(c.field->q());
    switch (c.space) {
        case SpaceKind::Gl2:
            if (q <= 4) return std::max(q * q + 2, 12);
            return 8; // scaled down to keep runs short
        case SpaceKind::Sl2:
            if (q <= 5) return std::max(q * q + 2, 12);
            return 8;
        case SpaceKind::Symmetric:
            return q <= 9 ? 10 : 8;
        case SpaceKind::Alternating:
            return 8;
    }
    return 8;
}

bool Report::all_pass() const {
    for (const Check& ch : checks)
        if (!ch.pass) return false;
    return true;
}

Report verify_case(const Case& c, int max_degree) {
    Report rep;
    rep.c = c;
    Recorder rec{rep};
    const FieldPtr F = c.field;
    const unsigned q = F->q();
    const bool even = F->p() == 2;
    const int D = max_degree > 0 ? max_degree : default_degree_cap(c);

    Action act = conjugation_action(c.group, c.space, F);
    Suite suite = build_suite(c);

    rec.run("source_order", [&]() -> SO {
        return {std::to_string(group_order(c.group, *F)),
                std::to_string(act.source_order)};
    });
    rec.run("image_order", [&]() -> SO {
        return {std::to_string(expected_image_order(c)),
                std::to_string(act.image_order)};
    });
    rec.run("suite_degrees", [&]() -> SO {
        const auto want = expected_degrees(c);
        return {fmt_ints(want), fmt_ints(suite.degrees())};
    });
    rec.run("degree_product", [&]() -> SO {
        std::uint64_t prod = 1;
        for (const Poly& f : suite.primaries) prod *= std::uint64_t(f.degree());
        const std::uint64_t want =
            (suite.kind == Suite::Kind::Hypersurface ? 2 : 1) * act.image_order;
        return {std::to_string(want), std::to_string(prod)};
    });
    rec.run("primary_invariance", [&]() -> SO {
        for (const Poly& f : suite.primaries)
            for (const LinSub& s : act.subs)
                if (!(apply_substitution(f, s) == f)) return {"invariant", "moved"};
        return {"invariant", "invariant"};
    });
    if (suite.secondary) {
        rec.run("secondary_invariance", [&]() -> SO {
            for (const LinSub& s : act.subs)
                if (!(apply_substitution(*suite.secondary, s) == *suite.secondary))
                    return {"invariant", "moved"};
            return {"invariant", "invariant"};
        });
        rec.run("secondary_degree", [&]() -> SO {
            return {std::to_string(suite.secondary_degree),
                    std::to_string(suite.secondary->degree())};
        });
    }

    if (hsop_feasible(c, suite)) {
        rec.run("hsop_primaries", [&]() -> SO {
            return {"true", hsop_check(suite.primaries) ? "true" : "false"};
        });
    }

    {
        HilbertData h = hilbert_function(c, act, unsigned(D));
        rep.dims = h.dims;
        rep.expected_dims = h.expected;
        rec.run("hilbert_dims", [&]() -> SO {
            return {fmt_dims(h.expected), fmt_dims(h.dims)};
        });
        rec.run("a_invariant", [&]() -> SO {
            int want;
            if (suite.kind == Suite::Kind::Polynomial) {
                want = 0;
                for (const Poly& f : suite.primaries) want -= f.degree();
            } else {
                want = c.space == SpaceKind::Gl2 ? -4 : -3;
            }
            return {std::to_string(want), std::to_string(expected_a_invariant(c))};
        });
        if (suite.kind == Suite::Kind::Hypersurface) {
            rec.run("decomposition_count", [&]() -> SO {
                auto ci = product_series(expected_degrees(c), unsigned(D));
                std::vector<std::int64_t> sum = ci;
                for (unsigned d = unsigned(suite.secondary_degree); d <= unsigned(D); ++d)
                    sum[d] += ci[d - unsigned(suite.secondary_degree)];
                return {fmt_dims(sum), fmt_dims(h.dims)};
            });
        }
    }

    rec.run("pseudoreflections", [&]() -> SO {
        const int n = pseudoreflection_count(act);
        if (suite.kind == Suite::Kind::Hypersurface) return {"0", std::to_string(n)};
        if (act.image_order == 1) return {"0", std::to_string(n)};
        return {">=1", n >= 1 ? ">=1" : std::to_string(n)};
    });

    if (c.space == SpaceKind::Gl2) {
        rec.run("representation_dets", [&]() -> SO {
            const auto dets = representation_dets(act);
            std::ostringstream os;
            for (Felt d : dets) os << unsigned(d) << ";";
            return {"1;", os.str()};
        });
        rec.run("class_group_order", [&]() -> SO {
            std::uint64_t want;
            if (c.group == GroupKind::O2)
                want = even ? 1 : 4;
            else if (c.group == GroupKind::GL2)
                want = even ? 1 : 2;
            else
                want = 1;
            return {std::to_string(want), std::to_string(class_group_order(act))};
        });
        rec.run("ufd", [&]() -> SO {
            return {expected_ufd(c) ? "true" : "false",
                    class_group_order(act) == 1 ? "true" : "false"};
        });
    }

    if ((c.group == GroupKind::GL2 || c.group == GroupKind::SL2)) {
        rec.run("fixed_dim_unipotent", [&]() -> SO {
            const auto P = enumerate_group(GroupKind::Unipotent, *F);
            const int want = c.space == SpaceKind::Gl2 ? 2 : (even ? 2 : 1);
            return {std::to_string(want),
                    std::to_string(fixed_subspace_dim(act, P))};
        });
    }

    if (c.group == GroupKind::GL2 && c.space == SpaceKind::Gl2) {
        const Quadratic g = find_irreducible_quadratic(*F);
        rec.run("omega_orbit_size", [&]() -> SO {
            // seed: the (A=0, B=1) linear form b - delta*c + tau*d
            std::vector<Term> ts{{mono_var(1, 4), 1}};
            if (g.delta) ts.push_back({mono_var(2, 4), F->neg(g.delta)});
            if (g.tau) ts.push_back({mono_var(3, 4), g.tau});
            const Poly seed(act.ring, std::move(ts));
            return {std::to_string(q * q - q),
                    std::to_string(orbit(seed, act).size())};
        });
        Action gamma = extend_gamma(act);
        rec.run("gamma_order", [&]() -> SO {
            return {std::to_string(2 * act.image_order),
                    std::to_string(gamma.image_order)};
        });
        rec.run("tau_ad_fixes_primaries", [&]() -> SO {
            const LinSub tau = tau_ad_substitution(act.ring);
            for (const Poly& f : suite.primaries)
                if (!(apply_substitution(f, tau) == f)) return {"fixed", "moved"};
            return {"fixed", "fixed"};
        });
        rec.run("gamma_pseudoreflections", [&]() -> SO {
            return {">=1", pseudoreflection_count(gamma) >= 1 ? ">=1" : "0"};
        });
        if (suite.secondary) {
            const Poly& h = *suite.secondary;
            rec.run("tau_ad_h_sign", [&]() -> SO {
                const LinSub tau = tau_ad_substitution(act.ring);
                const Poly img = apply_substitution(h, tau);
                const Poly want = even ? h : -h;
                return {even ? "h" : "-h", img == want ? (even ? "h" : "-h") : "other"};
            });
            rec.run("h_sq_in_R", [&]() -> SO {
                return {"true",
                        subring_membership(h * h, suite.primaries) ? "true" : "false"};
            });
            rec.run("h_in_R", [&]() -> SO {
                return {even ? "true" : "false",
                        subring_membership(h, suite.primaries) ? "true" : "false"};
            });
        }
    }

    if (suite.kind == Suite::Kind::Hypersurface &&
        piece_count(act.ring->arity(), unsigned(suite.secondary_degree)) <= 2200) {
        rec.run("secondary_exists", [&]() -> SO {
            const Poly eta =
                find_secondary(act, suite.primaries, unsigned(suite.secondary_degree));
            return {"found", eta.is_zero() ? "zero" : "found"};
        });
    }

    if (c.space == SpaceKind::Sl2 && !even && suite.secondary) {
        rec.run("projected_jacobian", [&]() -> SO {
            // the projection flips the sign of the P^1(det) row
            return {"-jac", *suite.secondary == -jacobian_secondary(suite)
                                ? "-jac"
                                : "other"};
        });
    }

    if (c.group == GroupKind::O2 && c.space == SpaceKind::Gl2) {
        rec.run("orbit_a_size", [&]() -> SO {
            const std::uint64_t want =
                even ? act.source_order : act.source_order / 4;
            const Poly a = Poly::variable(act.ring, 0);
            return {std::to_string(want), std::to_string(orbit(a, act).size())};
        });
        rec.run("b_minus_c_sign", [&]() -> SO {
            const Poly bc = Poly::variable(act.ring, 1) - Poly::variable(act.ring, 2);
            for (const LinSub& s : act.subs) {
                const Poly img = apply_substitution(bc, s);
                if (!(img == bc) && !(img == -bc)) return {"+-(b-c)", "other"};
            }
            return {"+-(b-c)", "+-(b-c)"};
        });
    }

    if (c.group == GroupKind::O2 && c.space == SpaceKind::Symmetric && even) {
        rec.run("b_shift_formula", [&]() -> SO {
            // phi(t): b -> b + (t - t^2)(a + d)
            const Poly a = Poly::variable(act.ring, 0);
            const Poly b = Poly::variable(act.ring, 1);
            const Poly d = Poly::variable(act.ring, 2);
            for (const Mat2& m : enumerate_group(GroupKind::O2, *F)) {
                const Felt t = m.a[1];
                const LinSub s = substitution_of(m, SpaceKind::Symmetric, act.ring);
                const Felt coef = F->sub(t, F->mul(t, t));
                const Poly want = b + (a + d).scaled(coef);
                if (!(apply_substitution(b, s) == want)) return {"telescoping", "broken"};
            }
            return {"telescoping", "telescoping"};
        });
    }

    if (suite.same_as_gl2) {
        rec.run("same_as_gl2", [&]() -> SO { return {"true", "true"}; });
    }

    return rep;
}

} // namespace invforge
