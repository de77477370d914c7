#include "invforge/fqlin.hpp"
#include "invforge/parallel.hpp"

#include <algorithm>
#include <limits>

namespace invforge {

namespace {

// y[j] -= c * x[j] for j in [from, n); returns the nonzero count of y over
// the full width so callers can keep sparsity bookkeeping.
std::size_t axpy_sub(const Field& F, Felt* y, const Felt* x, Felt c,
                     std::size_t from, std::size_t n) {
    const Felt nc = F.neg(c);
    const unsigned qm1 = F.q() - 1;
    const std::uint16_t lnc = F.log_of(nc);
    for (std::size_t j = from; j < n; ++j) {
        if (x[j] == 0) continue;
        unsigned s = lnc + F.log_of(x[j]);
        if (s >= qm1) s -= qm1;
        y[j] = F.add(y[j], F.exp_table()[s]);
    }
    std::size_t nnz = 0;
    for (std::size_t j = 0; j < n; ++j) nnz += y[j] != 0;
    return nnz;
}

void scale_row(const Field& F, Felt* y, Felt c, std::size_t from, std::size_t n) {
    if (c == 1) return;
    for (std::size_t j = from; j < n; ++j)
        if (y[j]) y[j] = F.mul(y[j], c);
}

Rref rref_impl(FqMatrix& m, bool sparsity_pivot, bool allow_parallel) {
    const Field& F = m.field();
    const std::size_t R = m.rows(), C = m.cols();
    Rref out;

    std::vector<std::size_t> nnz(R, 0);
    if (sparsity_pivot)
        for (std::size_t i = 0; i < R; ++i) {
            std::size_t c = 0;
            const Felt* r = m.row(i);
            for (std::size_t j = 0; j < C; ++j) c += r[j] != 0;
            nnz[i] = c;
        }

    std::size_t r = 0;
    for (std::size_t col = 0; col < C && r < R; ++col) {
        std::size_t piv = R;
        if (sparsity_pivot) {
            std::size_t best = std::numeric_limits<std::size_t>::max();
            for (std::size_t i = r; i < R; ++i)
                if (m.at(i, col) != 0 && nnz[i] < best) {
                    best = nnz[i];
                    piv = i;
                }
        } else {
            for (std::size_t i = r; i < R; ++i)
                if (m.at(i, col) != 0) {
                    piv = i;
                    break;
                }
        }
        if (piv == R) continue;

        if (piv != r) {
            std::swap_ranges(m.row(piv), m.row(piv) + C, m.row(r));
            std::swap(nnz[piv], nnz[r]);
        }
        scale_row(F, m.row(r), F.inv(m.at(r, col)), col, C);

        const Felt* prow = m.row(r);
#ifdef _OPENMP
        const bool par = allow_parallel && parallel::enabled() &&
                         R * C >= (std::size_t(1) << 15);
#pragma omp parallel for schedule(dynamic, 16) if (par)
        for (long long ii = 0; ii < (long long)R; ++ii) {
            const std::size_t i = std::size_t(ii);
            if (i == r || m.at(i, col) == 0) continue;
            nnz[i] = axpy_sub(F, m.row(i), prow, m.at(i, col), col, C);
        }
#else
        (void)allow_parallel;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || m.at(i, col) == 0) continue;
            nnz[i] = axpy_sub(F, m.row(i), prow, m.at(i, col), col, C);
        }
#endif
        out.pivot_cols.push_back(col);
        ++r;
    }
    out.rank = r;
    return out;
}

} // namespace

Rref rref_reference(FqMatrix& m) { return rref_impl(m, false, false); }

Rref rref(FqMatrix& m) { return rref_impl(m, true, true); }

std::size_t rank(FqMatrix m) { return rref(m).rank; }

FqMatrix kernel_basis(const FqMatrix& m) {
    FqMatrix w = m;
    const Rref info = rref(w);
    const Field& F = w.field();
    const std::size_t C = w.cols();

    std::vector<bool> is_pivot(C, false);
    for (std::size_t c : info.pivot_cols) is_pivot[c] = true;

    const std::size_t k = C - info.rank;
    FqMatrix basis(w.field_ptr(), k, C);
    std::size_t bi = 0;
    for (std::size_t f = 0; f < C; ++f) {
        if (is_pivot[f]) continue;
        Felt* v = basis.row(bi);
        v[f] = 1;
        for (std::size_t pr = 0; pr < info.rank; ++pr)
            v[info.pivot_cols[pr]] = F.neg(w.at(pr, f));
        ++bi;
    }
    return basis;
}

std::vector<Felt> reduce_against(const FqMatrix& reduced, const Rref& info,
                                 std::span<const Felt> v) {
    const Field& F = reduced.field();
    std::vector<Felt> w(v.begin(), v.end());
    for (std::size_t pr = 0; pr < info.rank; ++pr) {
        const std::size_t pc = info.pivot_cols[pr];
        if (w[pc] == 0) continue;
        axpy_sub(F, w.data(), reduced.row(pr), w[pc], pc, w.size());
    }
    return w;
}

bool in_row_span(const FqMatrix& reduced, const Rref& info, std::span<const Felt> v) {
    auto w = reduce_against(reduced, info, v);
    return std::all_of(w.begin(), w.end(), [](Felt x) { return x == 0; });
}

} // namespace invforge
