#ifndef INVFORGE_LAB_HPP
#define INVFORGE_LAB_HPP

#include "invforge/constructions.hpp"
#include "invforge/fqlin.hpp"
#include "invforge/groups.hpp"

#include <cstdint>
#include <span>
#include <string>

namespace invforge {

// ---- degree-wise invariant spaces -----------------------------------------

/// Dimension of the space of invariants of the action in total degree d,
/// computed as the kernel of the stacked substitution constraints over the
/// action generators (use_all switches to every element of the image).
std::int64_t invariant_dim(const Action& a, unsigned d, bool use_all = false);

/// Basis of that space; every returned polynomial is re-checked against the
/// full image when it is small enough, otherwise against the generators.
std::vector<Poly> invariant_basis(const Action& a, unsigned d, bool use_all = false);

/// dims for d = 0..D computed degree by degree.
std::vector<std::int64_t> invariant_dims_upto(const Action& a, unsigned D,
                                              bool use_all = false);

// ---- closed-form series ----------------------------------------------------

/// Rational-series shape: numerator 1 + sum z^k over numer_exps (empty for a
/// plain product), denominator prod (1 - z^deg).
struct SeriesSpec {
    std::vector<int> numer_exps;
    std::vector<int> denom_degrees;

    int degree() const; // numerator degree minus denominator degree
};

SeriesSpec case_series(const Case& c);

/// Coefficients 0..D of prod 1/(1 - z^d) over the given degrees.
std::vector<std::int64_t> product_series(std::span<const int> degrees, unsigned D);

/// Coefficients 0..D of the case's closed form.
std::vector<std::int64_t> expected_series(const Case& c, unsigned D);

int expected_a_invariant(const Case& c);

struct HilbertData {
    std::vector<std::int64_t> dims;
    std::vector<std::int64_t> expected;
    int a_invariant_expected = 0;
};

HilbertData hilbert_function(const Case& c, const Action& a, unsigned D);

// ---- ideal and subring linear algebra --------------------------------------

/// Row space of all products of gens with total degree d (exponent tuples by
/// bounded knapsack), expressed over the degree-d monomial basis.
FqMatrix span_matrix(std::span<const Poly> gens, unsigned d);

/// Homogeneous-system-of-parameters test: the graded quotient by (fs) must
/// match the complete-intersection prediction through its top degree plus
/// one, in particular vanish beyond sum(deg - 1).
bool hsop_check(std::span<const Poly> fs);

/// Exact linear-algebra membership of f in the subalgebra generated by gens,
/// degree by degree.
bool subring_membership(const Poly& f, std::span<const Poly> gens);

/// Deterministic invariant of degree d outside the span of products of
/// R_gens; throws std::domain_error when no such element exists.
Poly find_secondary(const Action& a, std::span<const Poly> R_gens, unsigned d);

// ---- per-case verification ---------------------------------------------------

struct Check {
    std::string name;
    std::string expected;
    std::string observed;
    bool pass = false;
    std::int64_t ms = 0;
};

struct Report {
    Case c;
    std::vector<Check> checks;
    std::vector<std::int64_t> dims;
    std::vector<std::int64_t> expected_dims;

    bool all_pass() const;
};

/// Runs every applicable check for the case; failures are report entries,
/// not exceptions.  max_degree <= 0 picks the built-in cap.
Report verify_case(const Case& c, int max_degree = 0);

int default_degree_cap(const Case& c);

// ---- report serialization ----------------------------------------------------

std::string report_json(const Report& r);          // stable key order
std::string reports_json(std::span<const Report> rs);
std::string report_csv(const Report& r);           // dims table
std::string report_text(const Report& r);

} // namespace invforge

#endif
